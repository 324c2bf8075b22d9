//! Enumeration of simplicial maps and simplicial mapping spaces.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::construct::{from_keys, product, standard_simplex};
use super::{SimplexId, SimplicialSet};
use crate::simplex::{monotone_maps, MonotoneMap};
use crate::{Error, Result};

/// Components of a simplicial map, one function per level.
pub type LevelMaps = Vec<Vec<usize>>;

/// Cap on the number of results an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimit(pub u64);

impl EnumLimit {
    pub const UNLIMITED: EnumLimit = EnumLimit(u64::MAX);
}

impl Default for EnumLimit {
    fn default() -> Self {
        Self::UNLIMITED
    }
}

/// Order in which the non-degenerate simplices of a level are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HomOrder {
    #[default]
    Forward,
    Reverse,
}

/// All simplicial maps `source -> target`.
pub fn hom_set(source: &SimplicialSet, target: &SimplicialSet) -> Result<Vec<LevelMaps>> {
    hom_set_with(source, target, HomOrder::Forward, EnumLimit::UNLIMITED)
}

struct Search<'a> {
    source: &'a SimplicialSet,
    target: &'a SimplicialSet,
    // non-degenerate simplices of the source in placement order
    order: Vec<SimplexId>,
    // decomposition of every simplex of the source
    decomp: Vec<Vec<(MonotoneMap, SimplexId)>>,
    // candidate target simplices indexed by the first face value, per level
    by_face0: Vec<BTreeMap<usize, Vec<usize>>>,
    image: Vec<Vec<usize>>,
    limit: EnumLimit,
    out: Vec<LevelMaps>,
}

/// `hom_set` with an explicit traversal order and result cap.
///
/// A non-degenerate simplex of `source` is placed as soon as all of its
/// faces are; each placement must agree with the images of those faces, so
/// inconsistent partial assignments are cut immediately. Degenerate simplices follow
/// from their Eilenberg–Zilber decomposition.
pub fn hom_set_with(
    source: &SimplicialSet,
    target: &SimplicialSet,
    order: HomOrder,
    limit: EnumLimit,
) -> Result<Vec<LevelMaps>> {
    let top = source.truncation();
    if target.truncation() != top {
        return Err(Error::TruncationMismatch { left: top, right: target.truncation() });
    }
    let decomp: Vec<Vec<(MonotoneMap, SimplexId)>> = (0..=top)
        .map(|l| {
            (0..source.level_size(l))
                .map(|x| source.nondegenerate_decomposition(SimplexId { level: l, index: x }))
                .collect()
        })
        .collect();
    let placement = placement_order(source, &decomp, order);
    let by_face0 = (0..=top)
        .map(|l| {
            let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for x in 0..target.level_size(l) {
                let key = if l == 0 { 0 } else { target.face(l, 0, x) };
                m.entry(key).or_default().push(x);
            }
            m
        })
        .collect();
    let mut search = Search {
        source,
        target,
        order: placement,
        decomp,
        by_face0,
        image: source.level_sizes().into_iter().map(|n| vec![usize::MAX; n]).collect(),
        limit,
        out: Vec::new(),
    };
    search.run(0)?;
    Ok(search.out)
}

/// Level order, except that a simplex is placed as soon as the roots of
/// all its faces are, so constraints bite early.
fn placement_order(source: &SimplicialSet, decomp: &[Vec<(MonotoneMap, SimplexId)>], order: HomOrder) -> Vec<SimplexId> {
    let top = source.truncation();
    let mut base = Vec::new();
    for l in 0..=top {
        let mut nd = source.nondegenerate(l);
        if order == HomOrder::Reverse {
            nd.reverse();
        }
        base.extend(nd.into_iter().map(|index| SimplexId { level: l, index }));
    }
    let roots = |s: &SimplexId| -> Vec<SimplexId> {
        if s.level == 0 {
            return Vec::new();
        }
        (0..=s.level).map(|j| decomp[s.level - 1][source.face(s.level, j, s.index)].1).collect()
    };
    let mut placed: Vec<Vec<bool>> = source.level_sizes().into_iter().map(|n| vec![false; n]).collect();
    let mut out = Vec::with_capacity(base.len());
    for s in &base {
        if placed[s.level][s.index] {
            continue;
        }
        placed[s.level][s.index] = true;
        out.push(*s);
        loop {
            let ready = base.iter().find(|t| {
                t.level > s.level && !placed[t.level][t.index] && roots(t).iter().all(|r| placed[r.level][r.index])
            });
            match ready {
                Some(t) => {
                    placed[t.level][t.index] = true;
                    out.push(*t);
                }
                None => break,
            }
        }
    }
    out
}

impl Search<'_> {
    fn image_of(&self, level: usize, x: usize) -> usize {
        let (epi, y) = &self.decomp[level][x];
        self.target.act(epi, self.image[y.level][y.index])
    }

    fn estimate(&self) -> u128 {
        self.order
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(self.target.level_size(s.level) as u128))
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        if pos == self.order.len() {
            if self.out.len() as u64 >= self.limit.0 {
                return Err(Error::EnumerationLimit { limit: self.limit.0, estimate: self.estimate() });
            }
            let maps: LevelMaps = (0..=self.source.truncation())
                .map(|l| (0..self.source.level_size(l)).map(|x| self.image_of(l, x)).collect())
                .collect();
            debug_assert_eq!(super::check_commutes(self.source, self.target, &maps), Ok(()));
            self.out.push(maps);
            return Ok(());
        }
        let SimplexId { level, index } = self.order[pos];
        let candidates: Vec<usize> = if level == 0 {
            (0..self.target.level_size(0)).collect()
        } else {
            let required: Vec<usize> = (0..=level)
                .map(|j| self.image_of(level - 1, self.source.face(level, j, index)))
                .collect();
            match self.by_face0[level].get(&required[0]) {
                None => Vec::new(),
                Some(xs) => xs
                    .iter()
                    .copied()
                    .filter(|&x| (1..=level).all(|j| self.target.face(level, j, x) == required[j]))
                    .collect(),
            }
        };
        for c in candidates {
            self.image[level][index] = c;
            self.run(pos + 1)?;
        }
        self.image[level][index] = usize::MAX;
        Ok(())
    }
}

/// The simplicial set `n ↦ Hom(Δ^n × X, Y)` for `n ≤ upto`, with its
/// elements listed per level.
#[derive(Debug, Clone)]
pub struct MappingSpace {
    pub levels: Vec<Vec<LevelMaps>>,
    pub space: SimplicialSet,
}

pub fn mapping_space(x: &SimplicialSet, y: &SimplicialSet, upto: usize, limit: EnumLimit) -> Result<MappingSpace> {
    let top = x.truncation();
    if y.truncation() != top {
        return Err(Error::TruncationMismatch { left: top, right: y.truncation() });
    }
    let simplices: Vec<SimplicialSet> = (0..=upto).map(|n| standard_simplex(n, top)).collect();
    let mut levels = Vec::with_capacity(upto + 1);
    for delta in &simplices {
        levels.push(hom_set_with(&product(delta, x)?, y, HomOrder::Forward, limit)?);
    }
    // index of a monotone map [t] -> [n] inside level t of Δ^n
    let rank: Vec<Vec<BTreeMap<Vec<usize>, usize>>> = (0..=upto)
        .map(|n| {
            (0..=top)
                .map(|t| {
                    monotone_maps(t, n).into_iter().enumerate().map(|(i, f)| (f.values().to_vec(), i)).collect()
                })
                .collect()
        })
        .collect();
    // precompose a map Δ^n × X -> Y with α × id for α: [k] -> [n]
    let pull = |alpha: &MonotoneMap, phi: &LevelMaps| -> LevelMaps {
        let (k, n) = (alpha.domain(), alpha.codomain());
        (0..=top)
            .map(|t| {
                let xs = x.level_size(t);
                monotone_maps(t, k)
                    .iter()
                    .flat_map(|beta| {
                        let ab = rank[n][t][alpha.compose(beta).unwrap().values()];
                        (0..xs).map(move |s| ab * xs + s)
                    })
                    .map(|i| phi[t][i])
                    .collect()
            })
            .collect()
    };
    let keyed: Vec<Vec<LevelMaps>> = levels.clone();
    let space = from_keys(
        keyed,
        |_| alloc::string::String::new(),
        |l, j, phi| pull(&MonotoneMap::coface(j, l).unwrap(), phi),
        |l, j, phi| pull(&MonotoneMap::codegeneracy(j, l).unwrap(), phi),
    );
    // give elements readable, unique names
    let names = levels
        .iter()
        .enumerate()
        .map(|(l, lv)| (0..lv.len()).map(|i| format!("h{l}.{i}")).collect())
        .collect();
    let (_, faces, degens) = space.into_raw();
    Ok(MappingSpace { levels, space: SimplicialSet::build(names, faces, degens) })
}

impl SimplicialSet {
    pub(crate) fn into_raw(self) -> (Vec<Vec<alloc::string::String>>, Vec<Vec<Vec<usize>>>, Vec<Vec<Vec<usize>>>) {
        (self.names, self.faces, self.degens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroupoid;
    use crate::sset::{boundary, check_commutes, horn, point};

    /// Unpruned oracle: every levelwise function, kept if it commutes.
    fn brute_force(k: &SimplicialSet, x: &SimplicialSet) -> Vec<LevelMaps> {
        let sizes = k.level_sizes();
        let mut slots = Vec::new();
        for (l, &n) in sizes.iter().enumerate() {
            for _ in 0..n {
                slots.push(x.level_size(l));
            }
        }
        let mut out = Vec::new();
        let space = slots.iter().fold(1u128, |a, &s| a * s as u128);
        assert!(space <= 300_000, "brute force space too large");
        if slots.contains(&0) {
            if slots.is_empty() {
                out.push(sizes.iter().map(|_| Vec::new()).collect());
            }
            return out;
        }
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut maps: LevelMaps = Vec::new();
            let mut p = 0;
            for &n in &sizes {
                maps.push(digits[p..p + n].to_vec());
                p += n;
            }
            if check_commutes(k, x, &maps).is_ok() {
                out.push(maps);
            }
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < slots[i] {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn hom_from_simplex_is_level() {
        let b = FiniteGroupoid::cyclic_group(2).nerve(3);
        for n in 0..=3 {
            let maps = hom_set(&standard_simplex(n, 3), &b).unwrap();
            assert_eq!(maps.len(), b.level_size(n));
            // evaluation at the top simplex is a bijection
            let top = standard_simplex(n, 3).index_of(n, &super::super::construct::map_name(&MonotoneMap::identity(n))).unwrap();
            let mut vals: Vec<usize> = maps.iter().map(|m| m[n][top]).collect();
            vals.sort();
            assert_eq!(vals, (0..b.level_size(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_hom_examples() {
        let b = FiniteGroupoid::cyclic_group(2).nerve(2);
        assert_eq!(hom_set(&boundary(0, 2), &b).unwrap().len(), 1);
        assert_eq!(hom_set(&standard_simplex(1, 2), &point(2)).unwrap().len(), 1);
        assert!(hom_set(&standard_simplex(1, 2), &point(3)).is_err());
    }

    #[test]
    fn pruned_agrees_with_brute_force() {
        let mut pairs = Vec::new();
        for t in 1..=2 {
            let targets = [
                FiniteGroupoid::cyclic_group(2).nerve(t),
                boundary(2, t),
                standard_simplex(1, t),
            ];
            let sources = [standard_simplex(1, t), boundary(2, t), horn(2, 1, t).unwrap(), horn(2, 0, t).unwrap()];
            for k in &sources {
                for x in &targets {
                    let space = k.level_sizes().iter().zip(x.level_sizes()).fold(1f64, |a, (&n, m)| a * (m as f64).powi(n as i32));
                    if space <= 300_000.0 {
                        pairs.push((k.clone(), x.clone()));
                    }
                }
            }
        }
        assert!(pairs.len() >= 12);
        for (k, x) in &pairs {
            {
                let mut fast = hom_set(k, x).unwrap();
                let mut slow = brute_force(k, x);
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow);
                let mut rev = hom_set_with(k, x, HomOrder::Reverse, EnumLimit::UNLIMITED).unwrap();
                rev.sort();
                assert_eq!(rev, fast);
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let b = FiniteGroupoid::cyclic_group(3).nerve(2);
        let err = hom_set_with(&boundary(2, 2), &b, HomOrder::Forward, EnumLimit(3)).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { limit: 3, .. }));
    }

    #[test]
    fn mapping_space_examples() {
        let b = FiniteGroupoid::cyclic_group(2).nerve(2);
        let m = mapping_space(&point(2), &b, 2, EnumLimit::UNLIMITED).unwrap();
        assert_eq!(m.space.level_sizes(), b.level_sizes());
        assert_eq!(m.space.level_size(1), 2);
        m.space.validate().unwrap();
        let x = standard_simplex(1, 2);
        let m = mapping_space(&x, &point(2), 2, EnumLimit::UNLIMITED).unwrap();
        assert_eq!(m.space.level_sizes(), vec![1, 1, 1]);
        let m = mapping_space(&x, &b, 1, EnumLimit::UNLIMITED).unwrap();
        m.space.validate().unwrap();
        // maps Δ^1 -> B(Z/2) are the two group elements
        assert_eq!(m.space.level_size(0), 2);
    }
}
