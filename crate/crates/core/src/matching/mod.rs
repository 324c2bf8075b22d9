//! Matching objects and the horn-filling conditions built on them.
//!
//! A horn or boundary of `Δ^m` maps into `X` exactly when its faces form a
//! compatible tuple of `(m-1)`-simplices: for `i < j`, both present,
//! `d_i x_j = d_{j-1} x_i`. The matching maps send an `m`-simplex to its
//! tuple of faces; the Kan and hypergroupoid conditions ask these maps to
//! be surjective or bijective.

mod checks;
mod report;
mod site;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::sset::{SimplicialMorphism, SimplicialSet};
use crate::{Error, Result};

pub use checks::{
    is_cartesian, is_kan, is_n_hypergroupoid, is_relative_hypergroupoid, is_trivial_relative, HYPERGROUPOID_LEVELS,
};
pub use report::{CheckReport, Failure, FailureKind, LevelStat};
pub use site::{Bijections, FiniteMap, FiniteSets, Site};

/// Compatible face tuples for `Λ^{m,k}` (`omit = Some(k)`) or `∂Δ^m`
/// (`omit = None`). Entries are listed for `i = 0..=m`, skipping `k`.
pub fn matching_object(x: &SimplicialSet, m: usize, omit: Option<usize>) -> Result<Vec<Vec<usize>>> {
    check_range(x, m, omit)?;
    if m == 0 {
        // ∂Δ^0 is empty: exactly one (empty) tuple.
        return Ok(vec![Vec::new()]);
    }
    let indices: Vec<usize> = (0..=m).filter(|&i| Some(i) != omit).collect();
    let below = m - 1;
    // faces[j]: value of d_j -> simplices at level m-1 with that value
    let by_face: Vec<BTreeMap<usize, Vec<usize>>> = if below == 0 {
        Vec::new()
    } else {
        (0..=below)
            .map(|j| {
                let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for y in 0..x.level_size(below) {
                    map.entry(x.face(below, j, y)).or_default().push(y);
                }
                map
            })
            .collect()
    };
    let all: Vec<usize> = (0..x.level_size(below)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(indices.len());
    extend(x, below, &indices, &by_face, &all, &mut cur, &mut out);
    Ok(out)
}

fn extend(
    x: &SimplicialSet,
    below: usize,
    indices: &[usize],
    by_face: &[BTreeMap<usize, Vec<usize>>],
    all: &[usize],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let pos = cur.len();
    if pos == indices.len() {
        out.push(cur.clone());
        return;
    }
    let j = indices[pos];
    let candidates: &[usize] = if pos == 0 || below == 0 {
        all
    } else {
        // d_{i0} x_j = d_{j-1} x_{i0} for the first chosen index i0 < j
        let i0 = indices[0];
        match by_face[i0].get(&x.face(below, j - 1, cur[0])) {
            Some(v) => v,
            None => return,
        }
    };
    for &y in candidates {
        let ok = below == 0
            || indices[..pos]
                .iter()
                .zip(cur.iter())
                .all(|(&i, &xi)| x.face(below, i, y) == x.face(below, j - 1, xi));
        if ok {
            cur.push(y);
            extend(x, below, indices, by_face, all, cur, out);
            cur.pop();
        }
    }
}

fn check_range(x: &SimplicialSet, m: usize, omit: Option<usize>) -> Result<()> {
    if m > x.truncation() {
        return Err(Error::LevelOutOfRange { level: m, truncation: x.truncation() });
    }
    if let Some(k) = omit {
        if m == 0 || k > m {
            return Err(Error::IndexOutOfRange { index: k, bound: m });
        }
    }
    Ok(())
}

pub fn horn_matching_object(x: &SimplicialSet, m: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    matching_object(x, m, Some(k))
}

pub fn boundary_matching_object(x: &SimplicialSet, m: usize) -> Result<Vec<Vec<usize>>> {
    matching_object(x, m, None)
}

/// The faces of an `m`-simplex, skipping `omit`.
pub fn face_tuple(x: &SimplicialSet, m: usize, omit: Option<usize>, s: usize) -> Vec<usize> {
    if m == 0 {
        return Vec::new();
    }
    (0..=m).filter(|&i| Some(i) != omit).map(|i| x.face(m, i, s)).collect()
}

/// A point of a (relative) matching object: a face tuple in `X`, plus for
/// relative maps an `m`-simplex of the base `Y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatchTarget {
    pub tuple: Vec<usize>,
    pub base: Option<usize>,
}

/// A matching map `X_m -> M` with its fibers.
#[derive(Debug, Clone)]
pub struct MatchingMap {
    pub level: usize,
    pub omit: Option<usize>,
    pub targets: Vec<MatchTarget>,
    /// target index of every `m`-simplex of `X`
    pub image: Vec<usize>,
    pub fibers: Vec<Vec<usize>>,
}

impl MatchingMap {
    fn assemble(level: usize, omit: Option<usize>, targets: Vec<MatchTarget>, keys: Vec<MatchTarget>) -> Self {
        let lookup: BTreeMap<&MatchTarget, usize> = targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let image: Vec<usize> = keys.iter().map(|k| lookup[k]).collect();
        let mut fibers = vec![Vec::new(); targets.len()];
        for (s, &t) in image.iter().enumerate() {
            fibers[t].push(s);
        }
        Self { level, omit, targets, image, fibers }
    }

    pub fn as_finite_map(&self) -> FiniteMap<'_> {
        FiniteMap { values: &self.image, target_size: self.targets.len() }
    }

    pub fn is_surjective(&self) -> bool {
        self.fibers.iter().all(|f| !f.is_empty())
    }

    pub fn is_injective(&self) -> bool {
        self.fibers.iter().all(|f| f.len() <= 1)
    }

    pub fn is_bijective(&self) -> bool {
        self.fibers.iter().all(|f| f.len() == 1)
    }

    pub fn first_empty_fiber(&self) -> Option<usize> {
        self.fibers.iter().position(Vec::is_empty)
    }

    pub fn first_crowded_fiber(&self) -> Option<usize> {
        self.fibers.iter().position(|f| f.len() > 1)
    }

    fn stat(&self) -> LevelStat {
        LevelStat {
            level: self.level,
            index: self.omit,
            source: self.image.len(),
            target: self.targets.len(),
            min_fiber: self.fibers.iter().map(Vec::len).min().unwrap_or(0),
            max_fiber: self.fibers.iter().map(Vec::len).max().unwrap_or(0),
        }
    }
}

/// `X_m -> Hom(Λ^{m,k}, X)` (or `Hom(∂Δ^m, X)` when `omit` is `None`).
pub fn matching_map(x: &SimplicialSet, m: usize, omit: Option<usize>) -> Result<MatchingMap> {
    let targets = matching_object(x, m, omit)?
        .into_iter()
        .map(|tuple| MatchTarget { tuple, base: None })
        .collect();
    let keys = (0..x.level_size(m))
        .map(|s| MatchTarget { tuple: face_tuple(x, m, omit, s), base: None })
        .collect();
    Ok(MatchingMap::assemble(m, omit, targets, keys))
}

/// The partial matching map `X_m -> Hom(Λ^{m,k}, X)`.
pub fn partial_matching_map(x: &SimplicialSet, m: usize, k: usize) -> Result<MatchingMap> {
    matching_map(x, m, Some(k))
}

/// The relative matching map
/// `X_m -> Hom(K, X) ×_{Hom(K, Y)} Y_m` for `K` a horn or boundary of `Δ^m`.
pub fn relative_matching_map(f: &SimplicialMorphism, m: usize, omit: Option<usize>) -> Result<MatchingMap> {
    let (x, y) = (f.source(), f.target());
    if y.truncation() != x.truncation() {
        return Err(Error::TruncationMismatch { left: x.truncation(), right: y.truncation() });
    }
    let tuples = matching_object(x, m, omit)?;
    // base simplices grouped by their own face tuple
    let mut by_tuple: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for s in 0..y.level_size(m) {
        by_tuple.entry(face_tuple(y, m, omit, s)).or_default().push(s);
    }
    let below = m.saturating_sub(1);
    let mut targets = Vec::new();
    for t in tuples {
        let pushed: Vec<usize> = t.iter().map(|&e| f.apply(below, e)).collect();
        if let Some(bases) = by_tuple.get(&pushed) {
            for &b in bases {
                targets.push(MatchTarget { tuple: t.clone(), base: Some(b) });
            }
        }
    }
    let keys = (0..x.level_size(m))
        .map(|s| MatchTarget { tuple: face_tuple(x, m, omit, s), base: Some(f.apply(m, s)) })
        .collect();
    Ok(MatchingMap::assemble(m, omit, targets, keys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroupoid;
    use crate::sset::{boundary, hom_set, horn, point, standard_simplex};

    #[test]
    fn level_one_horns_are_vertices() {
        let b = FiniteGroupoid::symmetric_group(3).nerve(2);
        for k in 0..=1 {
            assert_eq!(horn_matching_object(&b, 1, k).unwrap().len(), b.level_size(0));
        }
        assert_eq!(boundary_matching_object(&b, 1).unwrap().len(), 1);
        let two = FiniteGroupoid::indiscrete(&["a", "b"]).nerve(2);
        assert_eq!(boundary_matching_object(&two, 1).unwrap().len(), 4);
    }

    #[test]
    fn group_nerve_inner_horn_is_pairs() {
        let g = FiniteGroupoid::symmetric_group(3);
        let b = g.nerve(3);
        assert_eq!(horn_matching_object(&b, 2, 1).unwrap().len(), 36);
        let z2 = FiniteGroupoid::cyclic_group(2).nerve(3);
        let pm = partial_matching_map(&z2, 2, 1).unwrap();
        assert!(pm.is_bijective());
        assert_eq!(pm.targets.len(), 4);
    }

    #[test]
    fn point_matching_objects_are_singletons() {
        let p = point(4);
        for m in 0..=4 {
            assert_eq!(boundary_matching_object(&p, m).unwrap().len(), 1);
        }
        let pm = partial_matching_map(&p, 3, 1).unwrap();
        assert!(pm.is_bijective());
    }

    #[test]
    fn hollow_triangle_has_unfillable_horn() {
        let b = boundary(2, 2);
        let pm = partial_matching_map(&b, 2, 1).unwrap();
        assert!(!pm.targets.is_empty());
        let missing = pm.first_empty_fiber().expect("unfilled horn");
        // the horn 01, 12 has no filler
        let t = &pm.targets[missing].tuple;
        assert!(t.iter().all(|&e| !b.is_degenerate(1, e)));
    }

    #[test]
    fn matching_objects_agree_with_hom_sets() {
        let t = 3;
        let corpus = [
            FiniteGroupoid::cyclic_group(2).nerve(t),
            boundary(2, t),
            standard_simplex(1, t),
            FiniteGroupoid::indiscrete(&["a", "b"]).nerve(t),
        ];
        for x in &corpus {
            for m in 1..=t {
                assert_eq!(
                    boundary_matching_object(x, m).unwrap().len(),
                    hom_set(&boundary(m, t), x).unwrap().len()
                );
                for k in 0..=m {
                    assert_eq!(
                        horn_matching_object(x, m, k).unwrap().len(),
                        hom_set(&horn(m, k, t).unwrap(), x).unwrap().len()
                    );
                }
            }
        }
    }

    #[test]
    fn range_errors() {
        let p = point(2);
        assert!(horn_matching_object(&p, 3, 0).is_err());
        assert!(horn_matching_object(&p, 2, 3).is_err());
        assert!(horn_matching_object(&p, 0, 0).is_err());
    }
}
