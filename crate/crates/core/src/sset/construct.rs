use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{SimplicialMorphism, SimplicialSet};
use crate::simplex::{monotone_maps, MonotoneMap};
use crate::{Error, Result};

/// Assembles a simplicial set from per-level keys and the face and
/// degeneracy action on keys.
pub(crate) fn from_keys<K: Ord + Clone>(
    levels: Vec<Vec<K>>,
    name: impl Fn(&K) -> String,
    face: impl Fn(usize, usize, &K) -> K,
    degeneracy: impl Fn(usize, usize, &K) -> K,
) -> SimplicialSet {
    let top = levels.len() - 1;
    let lookup: Vec<BTreeMap<K, usize>> = levels
        .iter()
        .map(|lv| lv.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();
    let names = levels.iter().map(|lv| lv.iter().map(&name).collect()).collect();
    let mut faces = vec![Vec::new()];
    for l in 1..=top {
        faces.push(
            (0..=l)
                .map(|j| levels[l].iter().map(|k| lookup[l - 1][&face(l, j, k)]).collect())
                .collect(),
        );
    }
    let degens = (0..top)
        .map(|l| {
            (0..=l)
                .map(|j| levels[l].iter().map(|k| lookup[l + 1][&degeneracy(l, j, k)]).collect())
                .collect()
        })
        .collect();
    SimplicialSet::build(names, faces, degens)
}

pub(crate) fn map_name(f: &MonotoneMap) -> String {
    let sep = if f.codomain() < 10 { "" } else { "." };
    let parts: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
    parts.join(sep)
}

fn simplex_levels(n: usize, truncation: usize, keep: impl Fn(&MonotoneMap) -> bool) -> Vec<Vec<MonotoneMap>> {
    (0..=truncation)
        .map(|i| monotone_maps(i, n).into_iter().filter(|f| keep(f)).collect())
        .collect()
}

fn simplicial_subset_of_simplex(n: usize, truncation: usize, keep: impl Fn(&MonotoneMap) -> bool) -> SimplicialSet {
    from_keys(
        simplex_levels(n, truncation, keep),
        map_name,
        |l, j, f| f.compose(&MonotoneMap::coface(j, l).unwrap()).unwrap(),
        |l, j, f| f.compose(&MonotoneMap::codegeneracy(j, l).unwrap()).unwrap(),
    )
}

/// `Δ^n`: level `i` is the set of monotone maps `[i] -> [n]`.
pub fn standard_simplex(n: usize, truncation: usize) -> SimplicialSet {
    simplicial_subset_of_simplex(n, truncation, |_| true)
}

/// `∂Δ^n`: simplices of `Δ^n` missing at least one vertex. `∂Δ^0` is empty.
pub fn boundary(n: usize, truncation: usize) -> SimplicialSet {
    simplicial_subset_of_simplex(n, truncation, |f| !f.missed().is_empty())
}

/// `Λ^{n,k}`: simplices of `Δ^n` missing some vertex other than `k`.
pub fn horn(n: usize, k: usize, truncation: usize) -> Result<SimplicialSet> {
    if n == 0 || k > n {
        return Err(Error::invalid(format!("no horn Λ^{{{n},{k}}}")));
    }
    Ok(simplicial_subset_of_simplex(n, truncation, |f| f.missed().iter().any(|&v| v != k)))
}

/// The constant simplicial set on a finite set.
pub fn constant(elements: &[String], truncation: usize) -> SimplicialSet {
    let n = elements.len();
    let ident: Vec<usize> = (0..n).collect();
    let names = vec![elements.to_vec(); truncation + 1];
    let mut faces = vec![Vec::new()];
    for l in 1..=truncation {
        faces.push(vec![ident.clone(); l + 1]);
    }
    let degens = (0..truncation).map(|l| vec![ident.clone(); l + 1]).collect();
    SimplicialSet::build(names, faces, degens)
}

/// `Δ^0`, the terminal object.
pub fn point(truncation: usize) -> SimplicialSet {
    constant(&["*".to_string()], truncation)
}

/// Levelwise product; the pair `(a, b)` at level `l` has index `a * |Y_l| + b`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialSet> {
    let top = x.truncation();
    if y.truncation() != top {
        return Err(Error::TruncationMismatch { left: top, right: y.truncation() });
    }
    let names = (0..=top)
        .map(|l| {
            let mut lv = Vec::with_capacity(x.level_size(l) * y.level_size(l));
            for a in x.names(l) {
                for b in y.names(l) {
                    lv.push(format!("({a},{b})"));
                }
            }
            lv
        })
        .collect();
    let pair = |l: usize, a: usize, b: usize| a * y.level_size(l) + b;
    let mut faces = vec![Vec::new()];
    for l in 1..=top {
        let mut tables = Vec::new();
        for j in 0..=l {
            let mut t = Vec::with_capacity(x.level_size(l) * y.level_size(l));
            for a in 0..x.level_size(l) {
                for b in 0..y.level_size(l) {
                    t.push(pair(l - 1, x.face(l, j, a), y.face(l, j, b)));
                }
            }
            tables.push(t);
        }
        faces.push(tables);
    }
    let mut degens = Vec::new();
    for l in 0..top {
        let mut tables = Vec::new();
        for j in 0..=l {
            let mut t = Vec::with_capacity(x.level_size(l) * y.level_size(l));
            for a in 0..x.level_size(l) {
                for b in 0..y.level_size(l) {
                    t.push(pair(l + 1, x.degeneracy(l, j, a), y.degeneracy(l, j, b)));
                }
            }
            tables.push(t);
        }
        degens.push(tables);
    }
    Ok(SimplicialSet::build(names, faces, degens))
}

/// `X ⊔ Y` together with the fold map to `X` when `Y = X`. Simplices of
/// `X` come first; names are tagged `0:` and `1:`.
pub fn disjoint_union(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialSet> {
    let top = x.truncation();
    if y.truncation() != top {
        return Err(Error::TruncationMismatch { left: top, right: y.truncation() });
    }
    let names = (0..=top)
        .map(|l| {
            x.names(l)
                .iter()
                .map(|a| format!("0:{a}"))
                .chain(y.names(l).iter().map(|b| format!("1:{b}")))
                .collect()
        })
        .collect();
    let join = |xt: &[usize], yt: &[usize], offset: usize| -> Vec<usize> {
        xt.iter().copied().chain(yt.iter().map(|&v| v + offset)).collect()
    };
    let mut faces = vec![Vec::new()];
    for l in 1..=top {
        faces.push(
            (0..=l)
                .map(|j| join(x.face_table(l, j), y.face_table(l, j), x.level_size(l - 1)))
                .collect(),
        );
    }
    let degens = (0..top)
        .map(|l| {
            (0..=l)
                .map(|j| join(x.degeneracy_table(l, j), y.degeneracy_table(l, j), x.level_size(l + 1)))
                .collect()
        })
        .collect();
    Ok(SimplicialSet::build(names, faces, degens))
}

/// The codiagonal `X ⊔ X -> X`.
pub fn fold(x: &SimplicialSet) -> SimplicialMorphism {
    let both = disjoint_union(x, x).expect("equal truncations");
    let components = x
        .level_sizes()
        .into_iter()
        .map(|n| (0..n).chain(0..n).collect())
        .collect();
    SimplicialMorphism::build(both, x.clone(), components)
}

/// The projection `X × Y -> X`.
pub fn projection(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialMorphism> {
    let p = product(x, y)?;
    let components = (0..=x.truncation())
        .map(|l| (0..x.level_size(l)).flat_map(|a| core::iter::repeat_n(a, y.level_size(l))).collect())
        .collect();
    Ok(SimplicialMorphism::build(p, x.clone(), components))
}

/// The unique map to `Δ^0`.
pub fn to_point(x: &SimplicialSet) -> SimplicialMorphism {
    let components = x.level_sizes().into_iter().map(|n| vec![0; n]).collect();
    SimplicialMorphism::build(x.clone(), point(x.truncation()), components)
}

/// The inclusion of a sub-object whose simplices share names with `outer`.
pub fn inclusion_by_name(inner: &SimplicialSet, outer: &SimplicialSet) -> Result<SimplicialMorphism> {
    let components = (0..=inner.truncation())
        .map(|l| {
            inner
                .names(l)
                .iter()
                .map(|n| {
                    outer
                        .index_of(l, n)
                        .ok_or_else(|| Error::invalid(format!("simplex {n} missing at level {l}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMorphism::new(inner.clone(), outer.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::count_monotone;

    #[test]
    fn standard_simplex_counts() {
        assert!(standard_simplex(0, 3).level_sizes().iter().all(|&n| n == 1));
        assert_eq!(standard_simplex(1, 1).level_sizes(), vec![2, 3]);
        assert_eq!(standard_simplex(2, 1).level_size(1), 6);
        for n in 0..4 {
            let s = standard_simplex(n, 4);
            s.validate().unwrap();
            for l in 0..=4 {
                assert_eq!(s.level_size(l) as u128, count_monotone(l, n));
            }
            assert_eq!(s.nondegenerate(n).len(), 1);
        }
    }

    #[test]
    fn boundary_examples() {
        assert!(boundary(0, 2).level_sizes().iter().all(|&n| n == 0));
        let b1 = boundary(1, 1);
        assert_eq!(b1.level_sizes(), vec![2, 2]);
        assert!((0..2).all(|x| b1.is_degenerate(1, x)));
        let b2 = boundary(2, 2);
        assert!(b2.nondegenerate(2).is_empty());
        assert_eq!(b2.nondegenerate(1).len(), 3);
    }

    #[test]
    fn horn_examples() {
        let h = horn(1, 0, 1).unwrap();
        assert_eq!(h.names(0), &["0".to_string()]);
        let h = horn(2, 1, 2).unwrap();
        let edges: Vec<&str> = h.nondegenerate(1).iter().map(|&e| h.name(1, e)).collect();
        // ∂^0 = {1,2}, ∂^2 = {0,1}; ∂^1 = {0,2} is missing.
        assert_eq!(edges, vec!["01", "12"]);
        assert!(horn(0, 0, 1).is_err());
        assert!(horn(2, 3, 1).is_err());
    }

    #[test]
    fn horn_boundary_simplex_inclusions() {
        for n in 1..=4 {
            let t = 4;
            let s = standard_simplex(n, t);
            let b = boundary(n, t);
            inclusion_by_name(&b, &s).unwrap();
            for k in 0..=n {
                let h = horn(n, k, t).unwrap();
                h.validate().unwrap();
                inclusion_by_name(&h, &b).unwrap();
            }
        }
    }

    #[test]
    fn products() {
        let x = standard_simplex(2, 3);
        let p = product(&point(3), &x).unwrap();
        assert_eq!(p.level_sizes(), x.level_sizes());
        let q = product(&standard_simplex(1, 2), &standard_simplex(1, 2)).unwrap();
        assert_eq!(q.level_size(1), 9);
        q.validate().unwrap();
        // symmetry through the swap
        let a = standard_simplex(1, 2);
        let b = standard_simplex(2, 2);
        let ab = product(&a, &b).unwrap();
        let ba = product(&b, &a).unwrap();
        let swap = (0..=2)
            .map(|l| {
                (0..ab.level_size(l))
                    .map(|i| {
                        let (u, v) = (i / b.level_size(l), i % b.level_size(l));
                        v * a.level_size(l) + u
                    })
                    .collect()
            })
            .collect();
        let m = SimplicialMorphism::new(ab, ba, swap).unwrap();
        assert!(m.is_isomorphism());
        assert!(product(&a, &standard_simplex(1, 3)).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let s = standard_simplex(2, 3);
        let top = s.index_of(2, "012").unwrap();
        let (e, y) = s.nondegenerate_decomposition(super::super::SimplexId { level: 2, index: top });
        assert!(e.is_identity());
        assert_eq!(y.index, top);
        let v = s.index_of(0, "1").unwrap();
        let sv = s.degeneracy(0, 0, v);
        let (e, y) = s.nondegenerate_decomposition(super::super::SimplexId { level: 1, index: sv });
        assert_eq!(e, MonotoneMap::codegeneracy(0, 0).unwrap());
        assert_eq!((y.level, y.index), (0, v));
    }

    #[test]
    fn act_matches_precomposition_on_simplex() {
        let n = 3;
        let s = standard_simplex(n, 4);
        for l in 0..=4 {
            for x in 0..s.level_size(l) {
                let f = MonotoneMap::new(n, s.name(l, x).chars().map(|c| c as usize - '0' as usize).collect()).unwrap();
                for k in 0..=4 {
                    for theta in monotone_maps(k, l) {
                        let y = s.act(&theta, x);
                        assert_eq!(s.name(k, y), map_name(&f.compose(&theta).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_union_and_fold() {
        let x = standard_simplex(1, 2);
        let f = fold(&x);
        assert_eq!(f.source().level_sizes(), vec![4, 6, 8]);
        f.source().validate().unwrap();
    }
}
