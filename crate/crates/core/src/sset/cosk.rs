use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::construct::{from_keys, standard_simplex};
use super::hom::{hom_set_with, EnumLimit, HomOrder, LevelMaps};
use super::{SimplicialMorphism, SimplicialSet};
use crate::simplex::{monotone_maps, MonotoneMap};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    // a simplex of X at a level <= m
    Base(usize),
    // a map (Δ^i)_{≤m} -> X_{≤m}, indexed by monotone maps [t] -> [i], t <= m
    Map(LevelMaps),
}

struct Cosk<'a> {
    x: &'a SimplicialSet,
    m: usize,
    // rank[i][t]: position of a monotone map [t] -> [i] in lexicographic order
    rank: Vec<Vec<BTreeMap<Vec<usize>, usize>>>,
}

impl Cosk<'_> {
    fn new(x: &SimplicialSet, m: usize, truncation: usize) -> Cosk<'_> {
        let rank = (0..=truncation)
            .map(|i| {
                (0..=m)
                    .map(|t| monotone_maps(t, i).into_iter().enumerate().map(|(r, f)| (f.values().to_vec(), r)).collect())
                    .collect()
            })
            .collect();
        Cosk { x, m, rank }
    }

    /// `alpha^*` for `alpha: [k] -> [i]`.
    fn act(&self, alpha: &MonotoneMap, key: &Key) -> Key {
        let (k, i) = (alpha.domain(), alpha.codomain());
        let value_at = |theta: &MonotoneMap| -> usize {
            // the X-simplex assigned to the simplex alpha∘theta of Δ^i
            let at = alpha.compose(theta).unwrap();
            match key {
                Key::Base(x) => self.x.act(&at, *x),
                Key::Map(phi) => phi[at.domain()][self.rank[i][at.domain()][at.values()]],
            }
        };
        if k <= self.m {
            Key::Base(value_at(&MonotoneMap::identity(k)))
        } else {
            Key::Map((0..=self.m).map(|t| monotone_maps(t, k).iter().map(value_at).collect()).collect())
        }
    }

    fn name(&self, key: &Key, level: usize) -> String {
        match key {
            Key::Base(x) => self.x.name(level, *x).into(),
            Key::Map(phi) => {
                // values on the non-degenerate m-simplices determine the map
                let parts: Vec<&str> = monotone_maps(self.m, level)
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.is_injective())
                    .map(|(r, _)| self.x.name(self.m, phi[self.m][r]))
                    .collect();
                format!("({})", parts.join(","))
            }
        }
    }
}

/// `cosk_m X` through level `truncation`: level `i` is
/// `Hom((Δ^i)_{≤m}, X_{≤m})`, which is `X_i` itself for `i ≤ m`.
pub fn coskeleton(x: &SimplicialSet, m: usize, truncation: usize) -> Result<SimplicialSet> {
    coskeleton_limited(x, m, truncation, EnumLimit::UNLIMITED)
}

pub fn coskeleton_limited(x: &SimplicialSet, m: usize, truncation: usize, limit: EnumLimit) -> Result<SimplicialSet> {
    if m > x.truncation() {
        return Err(Error::LevelOutOfRange { level: m, truncation: x.truncation() });
    }
    let xm = x.truncate(m)?;
    let mut levels: Vec<Vec<(usize, Key)>> = Vec::with_capacity(truncation + 1);
    for i in 0..=truncation {
        if i <= m {
            levels.push((0..x.level_size(i)).map(|s| (i, Key::Base(s))).collect());
        } else {
            let delta = standard_simplex(i, m);
            let maps = hom_set_with(&delta, &xm, HomOrder::Forward, limit)?;
            levels.push(maps.into_iter().map(|phi| (i, Key::Map(phi))).collect());
        }
    }
    let c = Cosk::new(x, m, truncation);
    Ok(from_keys(
        levels,
        |(l, k)| c.name(k, *l),
        |l, j, (_, k)| (l - 1, c.act(&MonotoneMap::coface(j, l).unwrap(), k)),
        |l, j, (_, k)| (l + 1, c.act(&MonotoneMap::codegeneracy(j, l).unwrap(), k)),
    ))
}

/// The comparison map `X -> cosk_m X` (at the truncation of `X`), sending a
/// simplex to the restriction of its characteristic map.
pub fn coskeleton_unit(x: &SimplicialSet, m: usize) -> Result<SimplicialMorphism> {
    let top = x.truncation();
    let target = coskeleton(x, m, top)?;
    let c = Cosk::new(x, m, top);
    let mut components = Vec::with_capacity(top + 1);
    for l in 0..=top {
        let mut comp = Vec::with_capacity(x.level_size(l));
        for s in 0..x.level_size(l) {
            let key = c.act(&MonotoneMap::identity(l), &Key::Base(s));
            let name = c.name(&key, l);
            comp.push(
                target
                    .index_of(l, &name)
                    .ok_or_else(|| Error::invalid(format!("no coskeleton simplex {name} at level {l}")))?,
            );
        }
        components.push(comp);
    }
    SimplicialMorphism::new(x.clone(), target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroupoid;
    use crate::sset::{constant, point};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn cosk_of_point_and_pairs() {
        let p = point(3);
        assert_eq!(coskeleton(&p, 0, 4).unwrap().level_sizes(), vec![1; 5]);
        let s = constant(&["a".to_string(), "b".to_string()], 0);
        let c = coskeleton(&s, 0, 4).unwrap();
        assert_eq!(c.level_sizes(), vec![2, 4, 8, 16, 32]);
        c.validate().unwrap();
        assert!(c.index_of(2, "(a,b,a)").is_some());
    }

    #[test]
    fn cosk_of_simplex_zero_is_itself() {
        let d0 = standard_simplex(0, 4);
        assert_eq!(coskeleton(&d0, 4, 4).unwrap(), d0);
    }

    #[test]
    fn cosk_is_idempotent() {
        let b = FiniteGroupoid::cyclic_group(2).nerve(2);
        for m in 0..=1 {
            let c1 = coskeleton(&b, m, 3).unwrap();
            let c2 = coskeleton(&c1, m, 3).unwrap();
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn nerve_is_two_coskeletal() {
        let b = FiniteGroupoid::symmetric_group(3).nerve(4);
        let unit = coskeleton_unit(&b, 2).unwrap();
        assert!(unit.is_isomorphism());
        let rebuilt = coskeleton(&b.truncate(2).unwrap(), 2, 4).unwrap();
        assert_eq!(rebuilt.level_sizes(), b.level_sizes());
    }

    #[test]
    fn out_of_range() {
        assert!(coskeleton(&point(1), 2, 3).is_err());
    }
}
