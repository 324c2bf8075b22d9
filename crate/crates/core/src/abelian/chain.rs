//! Bounded chain and cochain complexes of finitely generated abelian groups.

use alloc::format;
use alloc::vec::Vec;

use super::group::{check_hom, CyclicSum, FGAbelianGroup, Subquotient};
use super::matrix::Matrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `differentials[i]: C_{i+1} -> C_i`
    Chain,
    /// `differentials[i]: C^i -> C^{i+1}`
    Cochain,
}

/// Groups in degrees `0..len`, zero outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    orientation: Orientation,
    groups: Vec<CyclicSum>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(orientation: Orientation, groups: Vec<CyclicSum>, differentials: Vec<Matrix>) -> Result<Self> {
        if differentials.len() + 1 != groups.len().max(1) {
            return Err(Error::invalid(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len().saturating_sub(1),
                differentials.len()
            )));
        }
        let c = Self { orientation, groups, differentials };
        for i in 0..c.differentials.len() {
            let (s, t) = c.endpoints(i);
            check_hom(&c.groups[s], &c.groups[t], &c.differentials[i])
                .map_err(|e| Error::invalid(format!("differential {i}: {e}")))?;
        }
        for i in 1..c.differentials.len() {
            let (first, second) = match orientation {
                Orientation::Chain => (&c.differentials[i], &c.differentials[i - 1]),
                Orientation::Cochain => (&c.differentials[i - 1], &c.differentials[i]),
            };
            let dd = second.mul(first);
            let target = match orientation {
                Orientation::Chain => &c.groups[i - 1],
                Orientation::Cochain => &c.groups[i + 1],
            };
            if !target.same_map(&dd, &Matrix::zeros(dd.rows(), dd.cols())) {
                return Err(Error::invalid(format!("d∘d is nonzero at differential {i}")));
            }
        }
        Ok(c)
    }

    /// `A` in degree `n`, zero elsewhere.
    pub fn concentrated(group: CyclicSum, n: usize) -> Self {
        let mut groups = alloc::vec![CyclicSum::zero(); n];
        groups.push(group);
        let differentials = (0..n).map(|i| Matrix::zeros(groups[i].ngens(), groups[i + 1].ngens())).collect();
        Self { orientation: Orientation::Chain, groups, differentials }
    }

    pub fn zero() -> Self {
        Self { orientation: Orientation::Chain, groups: Vec::new(), differentials: Vec::new() }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn groups(&self) -> &[CyclicSum] {
        &self.groups
    }

    pub fn group(&self, n: usize) -> CyclicSum {
        self.groups.get(n).cloned().unwrap_or_default()
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    // (source degree, target degree) of differentials[i]
    fn endpoints(&self, i: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Chain => (i + 1, i),
            Orientation::Cochain => (i, i + 1),
        }
    }

    /// The differential leaving degree `n`, with its target degree.
    pub fn outgoing(&self, n: usize) -> Option<(&Matrix, usize)> {
        match self.orientation {
            Orientation::Chain => (n >= 1 && n < self.groups.len()).then(|| (&self.differentials[n - 1], n - 1)),
            Orientation::Cochain => (n + 1 < self.groups.len()).then(|| (&self.differentials[n], n + 1)),
        }
    }

    /// The differential arriving in degree `n`, with its source degree.
    pub fn incoming(&self, n: usize) -> Option<(&Matrix, usize)> {
        match self.orientation {
            Orientation::Chain => (n + 1 < self.groups.len()).then(|| (&self.differentials[n], n + 1)),
            Orientation::Cochain => (n >= 1 && n < self.groups.len()).then(|| (&self.differentials[n - 1], n - 1)),
        }
    }

    /// Cycles modulo boundaries, computed on presentations.
    pub fn homology_at(&self, n: usize) -> FGAbelianGroup {
        if n >= self.groups.len() {
            return FGAbelianGroup::zero();
        }
        let g = &self.groups[n];
        let cycles = match self.outgoing(n) {
            None => Matrix::identity(g.ngens()),
            Some((d, t)) => {
                let k = d.hstack(&self.groups[t].relations()).kernel_basis();
                k.select_rows(&(0..g.ngens()).collect::<Vec<_>>())
            }
        };
        let boundaries = match self.incoming(n) {
            None => g.relations(),
            Some((d, _)) => d.hstack(&g.relations()),
        };
        Subquotient::new(&cycles, &boundaries).group
    }

    pub fn homology(&self) -> Vec<FGAbelianGroup> {
        (0..self.groups.len()).map(|n| self.homology_at(n)).collect()
    }

    /// Whether `components[n]: self_n -> other_n` commute with differentials.
    pub fn is_chain_map(&self, other: &ChainComplex, components: &[Matrix]) -> bool {
        if self.orientation != other.orientation {
            return false;
        }
        let degrees = self.len().max(other.len());
        let comp = |n: usize| -> Matrix {
            components.get(n).cloned().unwrap_or_else(|| Matrix::zeros(other.group(n).ngens(), self.group(n).ngens()))
        };
        for n in 0..degrees {
            let f = comp(n);
            if f.rows() != other.group(n).ngens()
                || f.cols() != self.group(n).ngens()
                || check_hom(&self.group(n), &other.group(n), &f).is_err()
            {
                return false;
            }
        }
        for n in 0..degrees {
            let t = match self.orientation {
                Orientation::Chain if n == 0 => continue,
                Orientation::Chain => n - 1,
                Orientation::Cochain => n + 1,
            };
            let d_self = self.outgoing(n).map(|(d, _)| d.clone()).unwrap_or_else(|| Matrix::zeros(self.group(t).ngens(), self.group(n).ngens()));
            let d_other = other.outgoing(n).map(|(d, _)| d.clone()).unwrap_or_else(|| Matrix::zeros(other.group(t).ngens(), other.group(n).ngens()));
            if !other.group(t).same_map(&comp(t).mul(&d_self), &d_other.mul(&comp(n))) {
                return false;
            }
        }
        true
    }

    /// A chain map that is an isomorphism in every degree.
    pub fn is_isomorphism_via(&self, other: &ChainComplex, components: &[Matrix]) -> bool {
        self.is_chain_map(other, components)
            && (0..self.len().max(other.len())).all(|n| {
                let (s, t) = (self.group(n), other.group(n));
                let f = components.get(n).cloned().unwrap_or_else(|| Matrix::zeros(t.ngens(), s.ngens()));
                super::group::AbHom::new(s, t, f).map(|h| h.is_isomorphism()).unwrap_or(false)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z() -> CyclicSum {
        CyclicSum::new(vec![0])
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::new(Orientation::Chain, vec![z(), z()], vec![Matrix::from_rows(1, &[vec![2]])]).unwrap();
        assert_eq!(c.homology(), vec![FGAbelianGroup::cyclic(2), FGAbelianGroup::zero()]);
        let d = ChainComplex::new(Orientation::Cochain, vec![z(), z()], vec![Matrix::from_rows(1, &[vec![2]])]).unwrap();
        assert_eq!(d.homology(), vec![FGAbelianGroup::zero(), FGAbelianGroup::cyclic(2)]);
    }

    #[test]
    fn zero_differentials_give_the_groups() {
        let gs = vec![z(), CyclicSum::new(vec![2, 3]), CyclicSum::new(vec![0, 4])];
        let ds = vec![Matrix::zeros(1, 2), Matrix::zeros(2, 2)];
        let c = ChainComplex::new(Orientation::Chain, gs.clone(), ds).unwrap();
        let h: Vec<FGAbelianGroup> = gs.iter().map(|g| g.classify()).collect();
        assert_eq!(c.homology(), h);
    }

    #[test]
    fn torsion_coefficients() {
        // Z/4 --2--> Z/4: both kernel and cokernel are Z/2
        let z4 = CyclicSum::new(vec![4]);
        let two = Matrix::from_rows(1, &[vec![2]]);
        let c = ChainComplex::new(Orientation::Chain, vec![z4.clone(), z4.clone()], vec![two.clone()]).unwrap();
        assert_eq!(c.homology(), vec![FGAbelianGroup::cyclic(2), FGAbelianGroup::cyclic(2)]);
        // Z/4 --2--> Z/4 --2--> Z/4 is exact in the middle
        let c = ChainComplex::new(Orientation::Chain, vec![z4.clone(), z4.clone(), z4], vec![two.clone(), two]).unwrap();
        assert!(c.homology()[1].is_trivial());
    }

    #[test]
    fn rejects_bad_complexes() {
        let one = Matrix::from_rows(1, &[vec![1]]);
        assert!(ChainComplex::new(Orientation::Chain, vec![z(), z(), z()], vec![one.clone(), one.clone()]).is_err());
        assert!(ChainComplex::new(Orientation::Chain, vec![z(), z()], vec![]).is_err());
        let z2 = CyclicSum::new(vec![2]);
        assert!(ChainComplex::new(Orientation::Chain, vec![z(), z2], vec![one]).is_err());
    }

    #[test]
    fn chain_maps() {
        let c = ChainComplex::new(Orientation::Chain, vec![z(), z()], vec![Matrix::from_rows(1, &[vec![2]])]).unwrap();
        let id = vec![Matrix::identity(1), Matrix::identity(1)];
        assert!(c.is_isomorphism_via(&c, &id));
        let neg = vec![Matrix::identity(1), Matrix::identity(1).scale(-1)];
        assert!(!c.is_chain_map(&c, &neg));
        assert_eq!(ChainComplex::concentrated(z(), 2).homology()[2], FGAbelianGroup::free(1));
    }
}
