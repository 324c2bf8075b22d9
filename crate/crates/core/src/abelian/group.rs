//! Finitely generated abelian groups and homomorphisms between them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::matrix::Matrix;
use crate::{Error, Result};

/// `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if torsion.iter().any(|&d| d < 2) {
            return Err(Error::invalid("torsion invariants must be at least 2"));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid("torsion invariants must form a divisibility chain"));
        }
        Ok(Self { rank, torsion })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// `Z/n`, with `n = 0` giving `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::zero(),
            n => Self { rank: 0, torsion: vec![n] },
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<u128> {
        (self.rank == 0).then(|| self.torsion.iter().map(|&d| d as u128).product())
    }

    /// Generators: free ones first, then one per invariant factor.
    pub fn to_cyclic_sum(&self) -> CyclicSum {
        CyclicSum::new(core::iter::repeat_n(0, self.rank).chain(self.torsion.iter().copied()).collect())
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An explicit direct sum of cyclic groups; `orders[i] = 0` marks a copy
/// of `Z`. Elements are integer vectors reduced modulo the orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CyclicSum {
    orders: Vec<u64>,
}

impl From<&FGAbelianGroup> for CyclicSum {
    fn from(g: &FGAbelianGroup) -> Self {
        g.to_cyclic_sum()
    }
}

impl CyclicSum {
    pub fn new(orders: Vec<u64>) -> Self {
        Self { orders }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn direct_sum(parts: &[CyclicSum]) -> CyclicSum {
        Self::new(parts.iter().flat_map(|p| p.orders.iter().copied()).collect())
    }

    pub fn repeat(&self, times: usize) -> CyclicSum {
        Self::new(core::iter::repeat_n(self.orders.iter().copied(), times).flatten().collect())
    }

    /// One column `order · e_i` for every generator of finite order.
    pub fn relations(&self) -> Matrix {
        let cols: Vec<Vec<i64>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut c = vec![0; self.ngens()];
                c[i] = d as i64;
                c
            })
            .collect();
        Matrix::from_cols(self.ngens(), &cols)
    }

    pub fn reduce(&self, v: &mut [i64]) {
        for (x, &d) in v.iter_mut().zip(&self.orders) {
            if d != 0 {
                *x = x.rem_euclid(d as i64);
            }
        }
    }

    pub fn reduced(&self, v: &[i64]) -> Vec<i64> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn is_zero_element(&self, v: &[i64]) -> bool {
        self.reduced(v).iter().all(|&x| x == 0)
    }

    pub fn classify(&self) -> FGAbelianGroup {
        Subquotient::new(&Matrix::identity(self.ngens()), &self.relations()).group
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&d| d != 0)
    }

    pub fn order(&self) -> Option<u128> {
        self.is_finite().then(|| self.orders.iter().map(|&d| d as u128).product())
    }

    /// All elements in mixed-radix order (first coordinate slowest).
    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_finite() {
            return Err(Error::Infinite(format!("group with orders {:?}", self.orders)));
        }
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..d as i64).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Position of a reduced element in `elements()`.
    pub fn element_index(&self, v: &[i64]) -> usize {
        let w = self.reduced(v);
        w.iter().zip(&self.orders).fold(0, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    /// Whether two matrices agree as maps into this group.
    pub fn same_map(&self, a: &Matrix, b: &Matrix) -> bool {
        a.rows() == b.rows()
            && a.cols() == b.cols()
            && (0..a.cols()).all(|j| {
                let diff: Vec<i64> = a.col(j).iter().zip(b.col(j)).map(|(x, y)| x - y).collect();
                self.is_zero_element(&diff)
            })
    }
}

impl fmt::Display for CyclicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.classify())
    }
}

/// A homomorphism given by its action on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbHom {
    source: CyclicSum,
    target: CyclicSum,
    matrix: Matrix,
}

impl AbHom {
    /// Checks the shape and that relations of the source map to zero.
    pub fn new(source: CyclicSum, target: CyclicSum, matrix: Matrix) -> Result<Self> {
        check_hom(&source, &target, &matrix)?;
        Ok(Self { source, target, matrix })
    }

    pub fn identity(g: &CyclicSum) -> Self {
        Self { source: g.clone(), target: g.clone(), matrix: Matrix::identity(g.ngens()) }
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.target.reduced(&self.matrix.mul_vec(v))
    }

    pub fn kernel(&self) -> FGAbelianGroup {
        let r = self.target.relations();
        let k = self.matrix.hstack(&r).kernel_basis();
        let gens = k.select_rows(&(0..self.source.ngens()).collect::<Vec<_>>());
        Subquotient::new(&gens, &self.source.relations()).group
    }

    pub fn cokernel(&self) -> FGAbelianGroup {
        let b = self.matrix.hstack(&self.target.relations());
        Subquotient::new(&Matrix::identity(self.target.ngens()), &b).group
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kernel().is_trivial() && self.cokernel().is_trivial()
    }
}

pub(crate) fn check_hom(source: &CyclicSum, target: &CyclicSum, m: &Matrix) -> Result<()> {
    if m.rows() != target.ngens() || m.cols() != source.ngens() {
        return Err(Error::invalid(format!(
            "matrix is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            target.ngens(),
            source.ngens()
        )));
    }
    let image = m.mul(&source.relations());
    if !target.same_map(&image, &Matrix::zeros(image.rows(), image.cols())) {
        return Err(Error::invalid("matrix does not respect the relations of its source"));
    }
    Ok(())
}

/// `L / B` for lattices `B ⊆ L ⊆ Z^m`, with coordinates and lifts.
///
/// Generators of the quotient come free ones first, then torsion in
/// increasing order, matching [`FGAbelianGroup::to_cyclic_sum`].
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub group: FGAbelianGroup,
    basis: super::matrix::Smith,
    coord: Matrix,
    lift: Matrix,
    ambient: usize,
}

impl Subquotient {
    /// `generators` spans `L`; the columns of `relations` must lie in `L`.
    pub fn new(generators: &Matrix, relations: &Matrix) -> Self {
        let ambient = generators.rows();
        let lb = generators.lattice_basis();
        let k = lb.cols();
        let basis = lb.smith();
        let cols: Vec<Vec<i64>> = (0..relations.cols())
            .map(|j| basis.solve(&relations.col(j)).expect("relations lie in the lattice"))
            .collect();
        let x = Matrix::from_cols(k, &cols);
        let s = x.smith();
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        let mut torsion_idx = Vec::new();
        for i in 0..k {
            if i >= s.rank {
                free.push(i);
            } else if s.diag[i] >= 2 {
                torsion_idx.push(i);
                torsion.push(s.diag[i] as u64);
            }
        }
        let sel: Vec<usize> = free.iter().chain(&torsion_idx).copied().collect();
        let group = FGAbelianGroup { rank: free.len(), torsion };
        let coord = s.p.select_rows(&sel);
        let lift = lb.mul(&s.p_inv.select_cols(&sel));
        Self { group, basis, coord, lift, ambient }
    }

    /// Coordinates of an ambient vector, or `None` outside `L`.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension");
        let x = self.basis.solve(v)?;
        let mut z = self.coord.mul_vec(&x);
        self.group.to_cyclic_sum().reduce(&mut z);
        Some(z)
    }

    /// Columns are ambient representatives of the quotient generators.
    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    /// Coordinates of each column of `m`; panics if a column is outside `L`.
    pub fn coords_matrix(&self, m: &Matrix) -> Matrix {
        let cols: Vec<Vec<i64>> =
            (0..m.cols()).map(|j| self.coords(&m.col(j)).expect("column lies in the lattice")).collect();
        Matrix::from_cols(self.group.to_cyclic_sum().ngens(), &cols)
    }
}
