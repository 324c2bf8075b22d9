use alloc::vec::Vec;

/// A function between finite sets `{0..n} -> {0..target_size}`.
#[derive(Debug, Clone, Copy)]
pub struct FiniteMap<'a> {
    pub values: &'a [usize],
    pub target_size: usize,
}

impl FiniteMap<'_> {
    pub fn is_surjective(&self) -> bool {
        let mut hit = alloc::vec![false; self.target_size];
        for &v in self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = alloc::vec![false; self.target_size];
        self.values.iter().all(|&v| !core::mem::replace(&mut hit[v], true))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FiniteMap<'_>) -> Vec<usize> {
        self.values.iter().map(|&v| next.values[v]).collect()
    }

    /// The base change of `self` along `g: Z -> target`, as the projection
    /// `Z ×_target source -> Z`.
    pub fn base_change(&self, g: &FiniteMap<'_>) -> Vec<usize> {
        let mut out = Vec::new();
        for (z, &gz) in g.values.iter().enumerate() {
            for &v in self.values {
                if v == gz {
                    out.push(z);
                }
            }
        }
        out
    }
}

/// A site on finite sets: a class of covering maps, closed under
/// composition and base change.
pub trait Site {
    fn is_cover(&self, map: &FiniteMap<'_>) -> bool;
}

/// Finite sets with surjections as covers.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteSets;

impl Site for FiniteSets {
    fn is_cover(&self, map: &FiniteMap<'_>) -> bool {
        map.is_surjective()
    }
}

/// The trivial topology: only bijections cover.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bijections;

impl Site for Bijections {
    fn is_cover(&self, map: &FiniteMap<'_>) -> bool {
        map.is_surjective() && map.is_injective()
    }
}
