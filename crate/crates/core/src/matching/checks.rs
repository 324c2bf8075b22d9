use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{matching_map, relative_matching_map, CheckReport, Failure, FailureKind, MatchTarget, MatchingMap, Site};
use crate::sset::{SimplicialMorphism, SimplicialSet};
use crate::{Error, Result};

/// Horn conditions of an n-hypergroupoid are checked through level `n + 2`.
pub const HYPERGROUPOID_LEVELS: usize = 2;

#[derive(Clone, Copy)]
struct Demand<'a> {
    cover: Option<&'a dyn Site>,
    bijective: bool,
}

fn require(map: &MatchingMap, demand: Demand<'_>, report: &mut CheckReport) {
    report.stats.push(map.stat());
    let fail = |kind| Failure { level: map.level, index: map.omit, kind };
    let missing = map.first_empty_fiber().map(|t| {
        fail(FailureKind::MissingFiller { tuple: map.targets[t].tuple.clone(), base: map.targets[t].base })
    });
    let covered = demand.cover.is_none_or(|site| site.is_cover(&map.as_finite_map()));
    if !covered {
        report.failures.push(missing.clone().unwrap_or_else(|| {
            fail(FailureKind::NotCover {
                detail: format!("{} simplices over {} matching points", map.image.len(), map.targets.len()),
            })
        }));
    }
    if demand.bijective {
        if let (true, Some(m)) = (covered, missing) {
            report.failures.push(m);
        }
        if let Some(t) = map.first_crowded_fiber() {
            report.failures.push(fail(FailureKind::NonUniqueFiller {
                tuple: map.targets[t].tuple.clone(),
                base: map.targets[t].base,
                simplices: map.fibers[t].clone(),
            }));
        }
    }
}

struct Surjective;

impl Site for Surjective {
    fn is_cover(&self, map: &super::FiniteMap<'_>) -> bool {
        map.is_surjective()
    }
}

/// Kan condition: every partial matching map `X_m -> Hom(Λ^{m,k}, X)` with
/// `1 ≤ m ≤ upto` is surjective.
pub fn is_kan(x: &SimplicialSet, upto: usize) -> Result<CheckReport> {
    if upto > x.truncation() {
        return Err(Error::TruncationTooSmall { needed: upto, found: x.truncation() });
    }
    let mut report = CheckReport::default();
    for m in 1..=upto {
        for k in 0..=m {
            let map = matching_map(x, m, Some(k))?;
            require(&map, Demand { cover: Some(&Surjective), bijective: false }, &mut report);
        }
    }
    Ok(report)
}

/// Duskin–Glenn condition, made finite by reading `X` as
/// `cosk_{n+1}` of its `(n+1)`-truncation.
///
/// Levels above `n + 1` must be coskeletal (boundary matching maps
/// bijective); partial matching maps must be surjective for `m ≤ n + 2`
/// and bijective for `n < m ≤ n + 2`.
pub fn is_n_hypergroupoid(x: &SimplicialSet, n: usize) -> Result<CheckReport> {
    let needed = n + HYPERGROUPOID_LEVELS;
    if x.truncation() < needed {
        return Err(Error::TruncationTooSmall { needed, found: x.truncation() });
    }
    let mut report = CheckReport::default();
    for l in n + 2..=x.truncation() {
        let map = matching_map(x, l, None)?;
        require(&map, Demand { cover: None, bijective: true }, &mut report);
    }
    for m in 1..=needed {
        for k in 0..=m {
            let map = matching_map(x, m, Some(k))?;
            require(&map, Demand { cover: Some(&Surjective), bijective: m > n }, &mut report);
        }
    }
    Ok(report)
}

/// Cartesian morphism: every `X_n -> X_{n-1} ×_{Y_{n-1}, d_i} Y_n`,
/// `x ↦ (d_i x, f x)`, is a bijection.
pub fn is_cartesian(f: &SimplicialMorphism) -> Result<CheckReport> {
    let (x, y) = (f.source(), f.target());
    if x.truncation() != y.truncation() {
        return Err(Error::TruncationMismatch { left: x.truncation(), right: y.truncation() });
    }
    let mut report = CheckReport::default();
    for n in 1..=x.truncation() {
        let mut over: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..x.level_size(n - 1) {
            over.entry(f.apply(n - 1, s)).or_default().push(s);
        }
        for i in 0..=n {
            let mut targets = Vec::new();
            for b in 0..y.level_size(n) {
                for &s in over.get(&y.face(n, i, b)).map(Vec::as_slice).unwrap_or(&[]) {
                    targets.push(MatchTarget { tuple: vec![s], base: Some(b) });
                }
            }
            let keys = (0..x.level_size(n))
                .map(|s| MatchTarget { tuple: vec![x.face(n, i, s)], base: Some(f.apply(n, s)) })
                .collect();
            let map = MatchingMap::assemble(n, Some(i), targets, keys);
            require(&map, Demand { cover: None, bijective: true }, &mut report);
        }
    }
    Ok(report)
}

/// Trivial relative n-hypergroupoid: relative boundary matching maps are
/// covers at every stored level and bijections from level `n` up.
pub fn is_trivial_relative(f: &SimplicialMorphism, n: usize, site: &dyn Site) -> Result<CheckReport> {
    let top = f.source().truncation();
    if top < n + 1 {
        return Err(Error::TruncationTooSmall { needed: n + 1, found: top });
    }
    let mut report = CheckReport::default();
    for m in 0..=top {
        let map = relative_matching_map(f, m, None)?;
        require(&map, Demand { cover: Some(site), bijective: m >= n }, &mut report);
    }
    Ok(report)
}

/// Relative n-hypergroupoid: relative horn matching maps
/// `X_m -> Hom(Λ^{m,k}, X) ×_{Hom(Λ^{m,k}, Y)} Y_m` are covers for
/// `m ≤ n + 2` and bijections for `n < m ≤ n + 2`.
pub fn is_relative_hypergroupoid(f: &SimplicialMorphism, n: usize, site: &dyn Site) -> Result<CheckReport> {
    let needed = n + HYPERGROUPOID_LEVELS;
    let top = f.source().truncation();
    if top < needed {
        return Err(Error::TruncationTooSmall { needed, found: top });
    }
    let mut report = CheckReport::default();
    for m in 1..=needed {
        for k in 0..=m {
            let map = relative_matching_map(f, m, Some(k))?;
            require(&map, Demand { cover: Some(site), bijective: m > n }, &mut report);
        }
    }
    Ok(report)
}
