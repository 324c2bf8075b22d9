//! Local systems of finite sets over a simplicial set, and the Cartesian
//! morphisms they correspond to.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::matching::is_cartesian;
use crate::sset::construct::from_keys;
use crate::sset::{SimplicialMorphism, SimplicialSet};
use crate::{Error, Result};

/// Fibers over the vertices of `base` and transition bijections over its
/// edges. `transitions[z][b]` is the position in `F(d_1 z)` of the image of
/// the `b`-th element of `F(d_0 z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystemData {
    base: SimplicialSet,
    fibers: Vec<Vec<String>>,
    transitions: Vec<Vec<usize>>,
}

impl LocalSystemData {
    /// Checks sizes, bijectivity, identities on degenerate edges and the
    /// cocycle condition `θ(d_2 w) ∘ θ(d_0 w) = θ(d_1 w)`.
    pub fn new(base: SimplicialSet, fibers: Vec<Vec<String>>, transitions: Vec<Vec<usize>>) -> Result<Self> {
        if base.truncation() < 1 {
            return Err(Error::TruncationTooSmall { needed: 1, found: base.truncation() });
        }
        if fibers.len() != base.level_size(0) {
            return Err(Error::invalid(format!("{} fibers for {} vertices", fibers.len(), base.level_size(0))));
        }
        if transitions.len() != base.level_size(1) {
            return Err(Error::invalid(format!("{} transitions for {} edges", transitions.len(), base.level_size(1))));
        }
        for (z, t) in transitions.iter().enumerate() {
            let (from, to) = (base.face(1, 0, z), base.face(1, 1, z));
            let mut hit = alloc::vec![false; fibers[to].len()];
            let bijective = t.len() == fibers[from].len()
                && t.len() == fibers[to].len()
                && t.iter().all(|&v| v < hit.len() && !core::mem::replace(&mut hit[v], true));
            if !bijective {
                return Err(Error::invalid(format!("transition on {} is not a bijection", base.name(1, z))));
            }
        }
        for y in 0..base.level_size(0) {
            let z = base.degeneracy(0, 0, y);
            if transitions[z].iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::invalid(format!("transition on degenerate edge {} is not the identity", base.name(1, z))));
            }
        }
        if base.truncation() >= 2 {
            for w in 0..base.level_size(2) {
                let (t0, t1, t2) = (
                    &transitions[base.face(2, 0, w)],
                    &transitions[base.face(2, 1, w)],
                    &transitions[base.face(2, 2, w)],
                );
                if (0..t0.len()).any(|a| t2[t0[a]] != t1[a]) {
                    return Err(Error::CocycleViolation { simplex: base.name(2, w).into() });
                }
            }
        }
        Ok(Self { base, fibers, transitions })
    }

    pub fn base(&self) -> &SimplicialSet {
        &self.base
    }

    pub fn fibers(&self) -> &[Vec<String>] {
        &self.fibers
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    /// Same base, fiber sizes and transitions; element names may differ.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.base == other.base
            && self.transitions == other.transitions
            && self.fibers.iter().map(Vec::len).eq(other.fibers.iter().map(Vec::len))
    }

    /// Identity transitions on the same fiber everywhere.
    pub fn constant(base: SimplicialSet, fiber: &[String]) -> Result<Self> {
        let fibers = alloc::vec![fiber.to_vec(); base.level_size(0)];
        let transitions = alloc::vec![(0..fiber.len()).collect(); base.level_size(1)];
        Self::new(base, fibers, transitions)
    }
}

/// The total space `X -> Y` of a local system: `X_n` is the set of pairs
/// `(w, a)` with `a` in the fiber over vertex 0 of `w`. Only `d_0` moves
/// vertex 0, and it transports `a` along the inverse of `θ(w_{01})`.
pub fn local_system_total(data: &LocalSystemData) -> SimplicialMorphism {
    let y = &data.base;
    let top = y.truncation();
    // inverse transitions: F(d_1 z) -> F(d_0 z)
    let back: Vec<Vec<usize>> = data
        .transitions
        .iter()
        .map(|t| {
            let mut inv = alloc::vec![0; t.len()];
            for (i, &v) in t.iter().enumerate() {
                inv[v] = i;
            }
            inv
        })
        .collect();
    let levels: Vec<Vec<(usize, usize, usize)>> = (0..=top)
        .map(|n| {
            (0..y.level_size(n))
                .flat_map(|w| (0..data.fibers[y.vertex(n, w, 0)].len()).map(move |a| (n, w, a)))
                .collect()
        })
        .collect();
    let x = from_keys(
        levels.clone(),
        |&(n, w, a)| format!("({},{})", y.name(n, w), data.fibers[y.vertex(n, w, 0)][a]),
        |n, j, &(_, w, a)| {
            let a = if j == 0 { back[y.edge(n, w, 0, 1)][a] } else { a };
            (n - 1, y.face(n, j, w), a)
        },
        |n, j, &(_, w, a)| (n + 1, y.degeneracy(n, j, w), a),
    );
    let components = levels.iter().map(|lv| lv.iter().map(|&(_, w, _)| w).collect()).collect();
    SimplicialMorphism::build(x, y.clone(), components)
}

/// Fibers are the preimages of vertices, in index order; the transition
/// over an edge `z` sends `b ∈ F(d_0 z)` to `d_1` of the unique edge over
/// `z` with `d_0 = b`.
pub fn descent_data(f: &SimplicialMorphism) -> Result<LocalSystemData> {
    let report = is_cartesian(f)?;
    if !report.passed() {
        return Err(Error::NotCartesian(format!("{} failing pullback squares", report.failures.len())));
    }
    let (x, y) = (f.source(), f.target());
    let mut position = alloc::vec![0; x.level_size(0)];
    let mut fibers = alloc::vec![Vec::new(); y.level_size(0)];
    for v in 0..x.level_size(0) {
        let over = &mut fibers[f.apply(0, v)];
        position[v] = over.len();
        over.push(String::from(x.name(0, v)));
    }
    let mut lift: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in 0..x.level_size(1) {
        lift.insert((f.apply(1, e), x.face(1, 0, e)), e);
    }
    let mut members = alloc::vec![Vec::new(); y.level_size(0)];
    for v in 0..x.level_size(0) {
        members[f.apply(0, v)].push(v);
    }
    let transitions = (0..y.level_size(1))
        .map(|z| members[y.face(1, 0, z)].iter().map(|&b| position[x.face(1, 1, lift[&(z, b)])]).collect())
        .collect();
    LocalSystemData::new(y.clone(), fibers, transitions)
}

/// The comparison `X -> total(descent_data(f))` over `Y`, sending a simplex
/// to its image paired with its first vertex.
pub fn total_comparison(f: &SimplicialMorphism) -> Result<SimplicialMorphism> {
    let data = descent_data(f)?;
    let total = local_system_total(&data);
    let (x, y) = (f.source(), f.target());
    let mut position = alloc::vec![0; x.level_size(0)];
    let mut counts = alloc::vec![0; y.level_size(0)];
    for v in 0..x.level_size(0) {
        let c = &mut counts[f.apply(0, v)];
        position[v] = *c;
        *c += 1;
    }
    let mut components = Vec::new();
    for n in 0..=x.truncation() {
        // total simplices at level n are ordered by (w, a)
        let mut offset = alloc::vec![0; y.level_size(n) + 1];
        for w in 0..y.level_size(n) {
            offset[w + 1] = offset[w] + data.fibers[y.vertex(n, w, 0)].len();
        }
        components.push(
            (0..x.level_size(n))
                .map(|s| offset[f.apply(n, s)] + position[x.vertex(n, s, 0)])
                .collect(),
        );
    }
    SimplicialMorphism::new(x.clone(), total.source().clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroupoid;
    use crate::sset::{constant, coskeleton, projection, product};
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn bits() -> Vec<String> {
        vec!["0".to_string(), "1".to_string()]
    }

    fn double_cover() -> LocalSystemData {
        let y = FiniteGroupoid::cyclic_group(2).nerve(3);
        LocalSystemData::new(y, vec![bits()], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn constant_system_is_projection() {
        let y = FiniteGroupoid::symmetric_group(3).nerve(2);
        let d = LocalSystemData::constant(y.clone(), &bits()).unwrap();
        let t = local_system_total(&d);
        assert!(is_cartesian(&t).unwrap().passed());
        let p = projection(&y, &constant(&bits(), 2)).unwrap();
        assert_eq!(t.source().level_sizes(), product(&y, &constant(&bits(), 2)).unwrap().level_sizes());
        assert!(descent_data(&p).unwrap().is_isomorphic(&d));
    }

    #[test]
    fn double_cover_is_indiscrete() {
        let d = double_cover();
        let t = local_system_total(&d);
        t.source().validate().unwrap();
        assert!(is_cartesian(&t).unwrap().passed());
        let c = coskeleton(&constant(&bits(), 0), 0, 3).unwrap();
        assert_eq!(t.source().level_sizes(), c.level_sizes());
        let pi = crate::groupoid::fundamental_groupoid(t.source()).unwrap();
        assert!(crate::groupoid::find_isomorphism(&pi, &FiniteGroupoid::indiscrete(&["a", "b"])).is_some());
        let back = descent_data(&t).unwrap();
        assert_eq!(back.transitions()[1], vec![1, 0]);
        assert!(back.is_isomorphic(&d));
    }

    #[test]
    fn broken_cocycle_names_simplex() {
        let y = FiniteGroupoid::cyclic_group(3).nerve(2);
        // generator 1 swaps, 2 = 1+1 also swaps: 1|1 breaks the cocycle
        let err = LocalSystemData::new(y, vec![bits()], vec![vec![0, 1], vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::CocycleViolation { simplex: "1|1".into() });
    }

    #[test]
    fn degenerate_edges_must_be_identities() {
        let y = FiniteGroupoid::cyclic_group(2).nerve(2);
        assert!(LocalSystemData::new(y, vec![bits()], vec![vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn comparison_is_iso() {
        let d = double_cover();
        let t = local_system_total(&d);
        assert!(total_comparison(&t).unwrap().is_isomorphism());
        let y = FiniteGroupoid::indiscrete(&["p", "q"]).nerve(2);
        let p = projection(&y, &constant(&bits(), 2)).unwrap();
        assert!(total_comparison(&p).unwrap().is_isomorphism());
    }

    #[test]
    fn non_cartesian_rejected() {
        let y = crate::sset::standard_simplex(1, 2);
        assert!(matches!(descent_data(&crate::sset::to_point(&y)), Err(Error::NotCartesian(_))));
    }
}
