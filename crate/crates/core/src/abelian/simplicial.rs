//! Truncated simplicial abelian groups and the Dold–Kan functors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::chain::{ChainComplex, Orientation};
use super::group::{check_hom, AbHom, CyclicSum, FGAbelianGroup, Subquotient};
use super::matrix::Matrix;
use crate::matching::{CheckReport, Failure, FailureKind};
use crate::simplex::{surjections, MonotoneMap};
use crate::sset::SimplicialSet;
use crate::{Error, Result};

/// Levels `0..=truncation` with faces and degeneracies as integer matrices
/// acting on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialAbelianGroup {
    levels: Vec<CyclicSum>,
    // faces[l][j]: level l -> l - 1
    faces: Vec<Vec<Matrix>>,
    // degens[l][j]: level l -> l + 1
    degens: Vec<Vec<Matrix>>,
}

impl SimplicialAbelianGroup {
    /// Checks shapes, that every operator respects relations, and the
    /// simplicial identities.
    pub fn new(levels: Vec<CyclicSum>, faces: Vec<Vec<Matrix>>, degens: Vec<Vec<Matrix>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("a simplicial abelian group needs at least level 0"));
        }
        let top = levels.len() - 1;
        if faces.len() != top + 1 || !faces[0].is_empty() || degens.len() != top {
            return Err(Error::invalid("operator tables do not match the truncation"));
        }
        for l in 1..=top {
            if faces[l].len() != l + 1 {
                return Err(Error::invalid(format!("level {l} needs {} faces", l + 1)));
            }
            for (j, d) in faces[l].iter().enumerate() {
                check_hom(&levels[l], &levels[l - 1], d).map_err(|e| Error::invalid(format!("face {j} at level {l}: {e}")))?;
            }
        }
        for l in 0..top {
            if degens[l].len() != l + 1 {
                return Err(Error::invalid(format!("level {l} needs {} degeneracies", l + 1)));
            }
            for (j, s) in degens[l].iter().enumerate() {
                check_hom(&levels[l], &levels[l + 1], s)
                    .map_err(|e| Error::invalid(format!("degeneracy {j} at level {l}: {e}")))?;
            }
        }
        let a = Self { levels, faces, degens };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let top = self.truncation();
        let check = |lhs: Matrix, rhs: Matrix, target: usize, level: usize, identity: String| -> Result<()> {
            let g = &self.levels[target];
            for c in 0..lhs.cols() {
                let diff: Vec<i64> = lhs.col(c).iter().zip(rhs.col(c)).map(|(x, y)| x - y).collect();
                if !g.is_zero_element(&diff) {
                    return Err(Error::IdentityViolation { identity, level, simplex: format!("generator {c}") });
                }
            }
            Ok(())
        };
        for l in 2..=top {
            for j in 1..=l {
                for i in 0..j {
                    check(
                        self.faces[l - 1][i].mul(&self.faces[l][j]),
                        self.faces[l - 1][j - 1].mul(&self.faces[l][i]),
                        l - 2,
                        l,
                        format!("d{i} d{j} = d{} d{i}", j - 1),
                    )?;
                }
            }
        }
        for l in 0..top {
            for j in 0..=l {
                let s = &self.degens[l][j];
                for i in 0..=l + 1 {
                    let lhs = self.faces[l + 1][i].mul(s);
                    let (rhs, name) = if i == j || i == j + 1 {
                        (Matrix::identity(self.levels[l].ngens()), format!("d{i} s{j} = id"))
                    } else if i < j {
                        (self.degens[l - 1][j - 1].mul(&self.faces[l][i]), format!("d{i} s{j} = s{} d{i}", j - 1))
                    } else {
                        (self.degens[l - 1][j].mul(&self.faces[l][i - 1]), format!("d{i} s{j} = s{j} d{}", i - 1))
                    };
                    check(lhs, rhs, l, l, name)?;
                }
                if l + 2 <= top {
                    for i in 0..=j {
                        check(
                            self.degens[l + 1][i].mul(s),
                            self.degens[l + 1][j + 1].mul(&self.degens[l][i]),
                            l + 2,
                            l,
                            format!("s{i} s{j} = s{} s{i}", j + 1),
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, l: usize) -> &CyclicSum {
        &self.levels[l]
    }

    pub fn levels(&self) -> &[CyclicSum] {
        &self.levels
    }

    pub fn face(&self, l: usize, j: usize) -> &Matrix {
        &self.faces[l][j]
    }

    pub fn degeneracy(&self, l: usize, j: usize) -> &Matrix {
        &self.degens[l][j]
    }

    /// The matrix of `theta^*` for `theta: [k] -> [l]`, mirroring
    /// [`SimplicialSet::act`].
    pub fn act_matrix(&self, theta: &MonotoneMap) -> Matrix {
        let (epi, mono) = theta.epi_mono_factor();
        let mut level = mono.codomain();
        let mut m = Matrix::identity(self.levels[level].ngens());
        for &v in mono.missed().iter().rev() {
            m = self.faces[level][v].mul(&m);
            level -= 1;
        }
        for p in epi.repeats() {
            m = self.degens[level][p].mul(&m);
            level += 1;
        }
        m
    }

    /// Every operator the identity.
    pub fn constant(group: &CyclicSum, truncation: usize) -> Self {
        let id = Matrix::identity(group.ngens());
        Self {
            levels: vec![group.clone(); truncation + 1],
            faces: (0..=truncation).map(|l| if l == 0 { Vec::new() } else { vec![id.clone(); l + 1] }).collect(),
            degens: (0..truncation).map(|l| vec![id.clone(); l + 1]).collect(),
        }
    }

    /// The levelwise free `Z/order`-module on a simplicial set (`order = 0`
    /// for integer coefficients).
    pub fn free_on(x: &SimplicialSet, order: u64) -> Self {
        let top = x.truncation();
        let levels = (0..=top).map(|l| CyclicSum::new(vec![order; x.level_size(l)])).collect();
        let table = |from: usize, to: usize, f: &dyn Fn(usize) -> usize| {
            let mut m = Matrix::zeros(x.level_size(to), x.level_size(from));
            for s in 0..x.level_size(from) {
                m[(f(s), s)] = 1;
            }
            m
        };
        let faces = (0..=top)
            .map(|l| if l == 0 { Vec::new() } else { (0..=l).map(|j| table(l, l - 1, &|s| x.face(l, j, s))).collect() })
            .collect();
        let degens = (0..top).map(|l| (0..=l).map(|j| table(l, l + 1, &|s| x.degeneracy(l, j, s))).collect()).collect();
        Self { levels, faces, degens }
    }

    /// The Moore complex with `d = Σ (-1)^i d_i`.
    pub fn unnormalized_complex(&self) -> ChainComplex {
        let differentials = (1..=self.truncation())
            .map(|n| {
                let mut d = Matrix::zeros(self.levels[n - 1].ngens(), self.levels[n].ngens());
                for (i, f) in self.faces[n].iter().enumerate() {
                    d = d.add(&f.scale(if i % 2 == 0 { 1 } else { -1 }));
                }
                d
            })
            .collect();
        ChainComplex::new(Orientation::Chain, self.levels.clone(), differentials).expect("simplicial identities give d∘d = 0")
    }

    /// `N_n = ⋂_{i ≥ 1} ker d_i` with differential `d_0`, together with the
    /// inclusions `N_n -> A_n`.
    pub fn normalization(&self) -> Normalization {
        let top = self.truncation();
        let mut parts: Vec<Subquotient> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let g = &self.levels[n];
            let lattice = if n == 0 {
                Matrix::identity(g.ngens())
            } else {
                let below = &self.levels[n - 1];
                let mut stacked = Matrix::zeros(0, g.ngens());
                for i in 1..=n {
                    stacked = stacked.vstack(&self.faces[n][i]);
                }
                let rel = Matrix::block_diag(&vec![below.relations(); n]);
                let k = stacked.hstack(&rel).kernel_basis();
                k.select_rows(&(0..g.ngens()).collect::<Vec<_>>())
            };
            parts.push(Subquotient::new(&lattice, &g.relations()));
        }
        let groups: Vec<CyclicSum> = parts.iter().map(|p| p.group.to_cyclic_sum()).collect();
        let differentials =
            (1..=top).map(|n| parts[n - 1].coords_matrix(&self.faces[n][0].mul(parts[n].lift()))).collect();
        let inclusions = parts.iter().map(|p| p.lift().clone()).collect();
        let complex =
            ChainComplex::new(Orientation::Chain, groups, differentials).expect("d_0 d_0 = d_0 d_1 vanishes on N");
        Normalization { complex, inclusions, parts }
    }

    pub fn normalized_complex(&self) -> ChainComplex {
        self.normalization().complex
    }

    /// `π_n` for `n` below the truncation; the top level lacks the
    /// boundaries needed to compute it.
    pub fn homotopy_groups(&self) -> Vec<FGAbelianGroup> {
        let mut h = self.normalized_complex().homology();
        h.truncate(self.truncation());
        h
    }

    /// Passes iff the normalized complex vanishes in degrees above `n`.
    pub fn is_abelian_hypergroupoid(&self, n: usize) -> Result<CheckReport> {
        let needed = n + crate::matching::HYPERGROUPOID_LEVELS;
        if self.truncation() < needed {
            return Err(Error::TruncationTooSmall { needed, found: self.truncation() });
        }
        let norm = self.normalized_complex();
        let mut report = CheckReport::default();
        for d in n + 1..=self.truncation() {
            let g = norm.group(d).classify();
            if !g.is_trivial() {
                report.failures.push(Failure {
                    level: d,
                    index: None,
                    kind: FailureKind::NonzeroNormalized { group: format!("{g}") },
                });
            }
        }
        Ok(report)
    }

    /// The simplicial set of elements; fails on an infinite level.
    pub fn underlying_sset(&self) -> Result<SimplicialSet> {
        let top = self.truncation();
        let elements: Vec<Vec<Vec<i64>>> = self.levels.iter().map(|g| g.elements()).collect::<Result<_>>()?;
        let names = elements
            .iter()
            .map(|lv| {
                lv.iter()
                    .map(|e| format!("({})", e.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",")))
                    .collect()
            })
            .collect();
        let table = |m: &Matrix, from: usize, to: usize| -> Vec<usize> {
            elements[from].iter().map(|e| self.levels[to].element_index(&m.mul_vec(e))).collect()
        };
        let mut faces = vec![Vec::new()];
        for l in 1..=top {
            faces.push(self.faces[l].iter().map(|m| table(m, l, l - 1)).collect());
        }
        let degens = (0..top).map(|l| self.degens[l].iter().map(|m| table(m, l, l + 1)).collect()).collect();
        Ok(SimplicialSet::build(names, faces, degens))
    }

    /// Whether `components[l]: self_l -> other_l` commute with all operators.
    pub fn is_morphism_via(&self, other: &Self, components: &[Matrix]) -> bool {
        let top = self.truncation();
        if other.truncation() != top || components.len() != top + 1 {
            return false;
        }
        if (0..=top).any(|l| check_hom(&self.levels[l], &other.levels[l], &components[l]).is_err()) {
            return false;
        }
        let faces_ok = (1..=top).all(|l| {
            (0..=l).all(|j| {
                other.levels[l - 1].same_map(
                    &components[l - 1].mul(&self.faces[l][j]),
                    &other.faces[l][j].mul(&components[l]),
                )
            })
        });
        let degens_ok = (0..top).all(|l| {
            (0..=l).all(|j| {
                other.levels[l + 1].same_map(
                    &components[l + 1].mul(&self.degens[l][j]),
                    &other.degens[l][j].mul(&components[l]),
                )
            })
        });
        faces_ok && degens_ok
    }

    pub fn is_isomorphism_via(&self, other: &Self, components: &[Matrix]) -> bool {
        self.is_morphism_via(other, components)
            && (0..=self.truncation()).all(|l| {
                AbHom::new(self.levels[l].clone(), other.levels[l].clone(), components[l].clone())
                    .map(|h| h.is_isomorphism())
                    .unwrap_or(false)
            })
    }
}

/// The normalized complex of a simplicial abelian group with its inclusion
/// into the Moore complex.
#[derive(Debug, Clone)]
pub struct Normalization {
    pub complex: ChainComplex,
    /// `inclusions[n]`: generators of `N_n` as elements of `A_n`
    pub inclusions: Vec<Matrix>,
    parts: Vec<Subquotient>,
}

impl Normalization {
    /// Coordinates in `N_n` of an element of `A_n` lying in `N_n`.
    pub fn coords(&self, n: usize, v: &[i64]) -> Option<Vec<i64>> {
        self.parts[n].coords(v)
    }
}

// Per level, the summands (η: [n] ↠ [k], offset) of Γ(C)_n.
struct Layout {
    summands: Vec<Vec<(MonotoneMap, usize)>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    levels: Vec<CyclicSum>,
}

impl Layout {
    fn new(c: &ChainComplex, truncation: usize) -> Self {
        let mut summands = Vec::new();
        let mut index = Vec::new();
        let mut levels = Vec::new();
        for n in 0..=truncation {
            let mut lv = Vec::new();
            let mut idx = BTreeMap::new();
            let mut parts = Vec::new();
            let mut offset = 0;
            for k in 0..=n.min(c.len().saturating_sub(1)) {
                for eta in surjections(n, k) {
                    idx.insert(eta.values().to_vec(), lv.len());
                    let g = c.group(k);
                    lv.push((eta, offset));
                    offset += g.ngens();
                    parts.push(g);
                }
            }
            summands.push(lv);
            index.push(idx);
            levels.push(CyclicSum::direct_sum(&parts));
        }
        Self { summands, index, levels }
    }

    fn offset(&self, n: usize, eta: &MonotoneMap) -> usize {
        self.summands[n][self.index[n][eta.values()]].1
    }
}

/// The denormalization `Γ(C)` through `truncation`: level `n` is the sum of
/// `C_k` over surjections `η: [n] ↠ [k]`. For `α: [m] -> [n]`, write
/// `η α = μ ε` with `ε` surjective and `μ` injective; `α^*` sends the
/// `η`-summand to the `ε`-summand by the identity if `μ = id`, by the
/// differential if `μ = δ^0`, and to zero otherwise.
pub fn denormalize(c: &ChainComplex, truncation: usize) -> Result<SimplicialAbelianGroup> {
    if c.orientation() == Orientation::Cochain && c.len() > 1 {
        return Err(Error::invalid("denormalization needs a complex in non-negative homological degrees"));
    }
    let layout = Layout::new(c, truncation);
    let act = |alpha: &MonotoneMap| -> Matrix {
        let (m, n) = (alpha.domain(), alpha.codomain());
        let mut out = Matrix::zeros(layout.levels[m].ngens(), layout.levels[n].ngens());
        for (eta, col) in &layout.summands[n] {
            let k = eta.codomain();
            let (epi, mono) = eta.compose(alpha).expect("composable").epi_mono_factor();
            let row = layout.offset(m, &epi);
            if mono.is_identity() {
                out.put(row, *col, &Matrix::identity(c.group(k).ngens()));
            } else if mono.domain() + 1 == k && mono.missed() == [0] {
                let (d, _) = c.outgoing(k).expect("differential out of a positive degree");
                out.put(row, *col, d);
            }
        }
        out
    };
    let faces = (0..=truncation)
        .map(|l| if l == 0 { Vec::new() } else { (0..=l).map(|j| act(&MonotoneMap::coface(j, l).unwrap())).collect() })
        .collect();
    let degens = (0..truncation).map(|l| (0..=l).map(|j| act(&MonotoneMap::codegeneracy(j, l).unwrap())).collect()).collect();
    SimplicialAbelianGroup::new(layout.levels.clone(), faces, degens)
}

/// `K(A, n) = Γ(A[-n])` through `truncation`.
pub fn em_space(a: &FGAbelianGroup, n: usize, truncation: usize) -> SimplicialAbelianGroup {
    denormalize(&ChainComplex::concentrated(a.to_cyclic_sum(), n), truncation).expect("Γ of a chain complex")
}

/// `N(Γ C)` with the chain map `C -> N(Γ C)` picking the identity summand.
/// Degrees of `C` above `truncation` are dropped.
pub fn dold_kan_unit(c: &ChainComplex, truncation: usize) -> Result<(ChainComplex, Vec<Matrix>)> {
    let gamma = denormalize(c, truncation)?;
    let layout = Layout::new(c, truncation);
    let norm = gamma.normalization();
    let mut comps = Vec::new();
    for k in 0..=truncation.min(c.len().saturating_sub(1)) {
        let g = c.group(k).ngens();
        let off = layout.offset(k, &MonotoneMap::identity(k));
        let mut e = Matrix::zeros(layout.levels[k].ngens(), g);
        e.put(off, 0, &Matrix::identity(g));
        comps.push(norm.parts[k].coords_matrix(&e));
    }
    Ok((norm.complex, comps))
}

/// `Γ(N A)` with the map `Γ(N A) -> A`, `(η, x) ↦ η^*(x)`.
pub fn dold_kan_counit(a: &SimplicialAbelianGroup) -> (SimplicialAbelianGroup, Vec<Matrix>) {
    let top = a.truncation();
    let norm = a.normalization();
    let gamma = denormalize(&norm.complex, top).expect("normalized complexes are chain complexes");
    let layout = Layout::new(&norm.complex, top);
    let comps = (0..=top)
        .map(|n| {
            let mut m = Matrix::zeros(a.level(n).ngens(), layout.levels[n].ngens());
            for (eta, off) in &layout.summands[n] {
                m.put(0, *off, &a.act_matrix(eta).mul(&norm.inclusions[eta.codomain()]));
            }
            m
        })
        .collect();
    (gamma, comps)
}
