//! Levelwise-finite simplicial sets stored through a truncation level.
//!
//! Every simplex, degenerate or not, is stored explicitly up to the
//! truncation. Above it an object is read as its own coskeleton.

pub(crate) mod construct;
mod cosk;
mod hom;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::simplex::MonotoneMap;
use crate::{Error, Result};

pub use construct::{
    boundary, constant, disjoint_union, fold, horn, inclusion_by_name, point, product, projection, standard_simplex,
    to_point,
};
pub use cosk::{coskeleton, coskeleton_limited, coskeleton_unit};
pub use hom::{hom_set, hom_set_with, mapping_space, EnumLimit, HomOrder, LevelMaps, MappingSpace};

/// A simplex named by its level and its position within the level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId {
    pub level: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    names: Vec<Vec<String>>,
    // faces[l][j][x] = d_j x for x at level l >= 1; faces[0] is empty.
    faces: Vec<Vec<Vec<usize>>>,
    // degens[l][j][x] = s_j x for x at level l < truncation.
    degens: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    /// Builds and validates a truncated simplicial set.
    ///
    /// `faces[l]` holds `l + 1` functions `level l -> level l-1` (empty for
    /// `l = 0`), `degens[l]` holds `l + 1` functions `level l -> level l+1`
    /// for `l < truncation`.
    pub fn new(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let this = Self::from_parts(names, faces, degens)?;
        this.validate()?;
        Ok(this)
    }

    /// Checks shapes, ranges and name uniqueness, but not the simplicial
    /// identities.
    pub fn from_parts(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::invalid("a simplicial set needs at least level 0"));
        }
        let top = names.len() - 1;
        if faces.len() != top + 1 {
            return Err(Error::invalid(format!("expected face tables for {} levels", top + 1)));
        }
        if degens.len() != top {
            return Err(Error::invalid(format!("expected degeneracy tables for {top} levels")));
        }
        for (l, level) in names.iter().enumerate() {
            let mut sorted: Vec<&String> = level.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate simplex id {} at level {l}", w[0])));
            }
        }
        for (l, tables) in faces.iter().enumerate() {
            let want = if l == 0 { 0 } else { l + 1 };
            if tables.len() != want {
                return Err(Error::invalid(format!("level {l} needs {want} face maps")));
            }
            for (j, t) in tables.iter().enumerate() {
                check_table(t, names[l].len(), names[l - 1].len(), "face", l, j)?;
            }
        }
        for (l, tables) in degens.iter().enumerate() {
            if tables.len() != l + 1 {
                return Err(Error::invalid(format!("level {l} needs {} degeneracy maps", l + 1)));
            }
            for (j, t) in tables.iter().enumerate() {
                check_table(t, names[l].len(), names[l + 1].len(), "degeneracy", l, j)?;
            }
        }
        Ok(Self { names, faces, degens })
    }

    pub(crate) fn build(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Self {
        let this = Self { names, faces, degens };
        debug_assert_eq!(this.validate(), Ok(()));
        this
    }

    pub fn truncation(&self) -> usize {
        self.names.len() - 1
    }

    pub fn level_size(&self, level: usize) -> usize {
        self.names[level].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn names(&self, level: usize) -> &[String] {
        &self.names[level]
    }

    pub fn name(&self, level: usize, x: usize) -> &str {
        &self.names[level][x]
    }

    pub fn index_of(&self, level: usize, name: &str) -> Option<usize> {
        self.names.get(level)?.iter().position(|n| n == name)
    }

    pub fn is_empty(&self) -> bool {
        self.names[0].is_empty()
    }

    /// `d_j x` for `x` at `level >= 1`.
    pub fn face(&self, level: usize, j: usize, x: usize) -> usize {
        self.faces[level][j][x]
    }

    /// `s_j x` for `x` at `level < truncation`.
    pub fn degeneracy(&self, level: usize, j: usize, x: usize) -> usize {
        self.degens[level][j][x]
    }

    pub(crate) fn face_table(&self, level: usize, j: usize) -> &[usize] {
        &self.faces[level][j]
    }

    pub(crate) fn degeneracy_table(&self, level: usize, j: usize) -> &[usize] {
        &self.degens[level][j]
    }

    /// The action `theta^*` of a monotone map `theta: [k] -> [l]` on a
    /// simplex at level `l`; the result lives at level `k`.
    pub fn act(&self, theta: &MonotoneMap, x: usize) -> usize {
        let (epi, mono) = theta.epi_mono_factor();
        // Faces: drop missed vertices from the top down so lower indices stay put.
        let mut level = mono.codomain();
        let mut y = x;
        for &v in mono.missed().iter().rev() {
            y = self.faces[level][v][y];
            level -= 1;
        }
        // Degeneracies: repeat positions in increasing order of the final indexing.
        for p in epi.repeats() {
            y = self.degens[level][p][y];
            level += 1;
        }
        y
    }

    /// The `v`-th vertex of a simplex.
    pub fn vertex(&self, level: usize, x: usize, v: usize) -> usize {
        self.act(&MonotoneMap::from_values_unchecked(level, vec![v]), x)
    }

    /// The edge from vertex `a` to vertex `b` (`a <= b`) of a simplex.
    pub fn edge(&self, level: usize, x: usize, a: usize, b: usize) -> usize {
        self.act(&MonotoneMap::from_values_unchecked(level, vec![a, b]), x)
    }

    pub fn is_degenerate(&self, level: usize, x: usize) -> bool {
        level > 0 && (0..level).any(|i| self.degens[level - 1][i][self.faces[level][i][x]] == x)
    }

    pub fn nondegenerate(&self, level: usize) -> Vec<usize> {
        (0..self.level_size(level)).filter(|&x| !self.is_degenerate(level, x)).collect()
    }

    /// The unique `(epi, y)` with `y` non-degenerate and `x = epi^* y`.
    pub fn nondegenerate_decomposition(&self, s: SimplexId) -> (MonotoneMap, SimplexId) {
        let SimplexId { mut level, index: mut x } = s;
        let mut epi = MonotoneMap::identity(level);
        'outer: loop {
            for i in 0..level {
                let y = self.faces[level][i][x];
                if self.degens[level - 1][i][y] == x {
                    // x = s_i y, so the accumulated epi gains a codegeneracy in front.
                    let sigma = MonotoneMap::from_values_unchecked(
                        level - 1,
                        (0..=level).map(|t| if t <= i { t } else { t - 1 }).collect(),
                    );
                    epi = sigma.compose(&epi).expect("composable");
                    x = y;
                    level -= 1;
                    continue 'outer;
                }
            }
            break;
        }
        (epi, SimplexId { level, index: x })
    }

    /// Checks every simplicial identity wherever both sides are stored.
    pub fn validate(&self) -> Result<()> {
        let top = self.truncation();
        let fail = |identity: String, level: usize, x: usize| Error::IdentityViolation {
            identity,
            level,
            simplex: self.names[level][x].clone(),
        };
        for l in 2..=top {
            for x in 0..self.level_size(l) {
                for j in 1..=l {
                    for i in 0..j {
                        let lhs = self.faces[l - 1][i][self.faces[l][j][x]];
                        let rhs = self.faces[l - 1][j - 1][self.faces[l][i][x]];
                        if lhs != rhs {
                            return Err(fail(format!("d{i} d{j} = d{} d{i}", j - 1), l, x));
                        }
                    }
                }
            }
        }
        for l in 0..top {
            for x in 0..self.level_size(l) {
                for j in 0..=l {
                    let sx = self.degens[l][j][x];
                    for i in 0..=l + 1 {
                        let lhs = self.faces[l + 1][i][sx];
                        let ok = if i == j || i == j + 1 {
                            lhs == x
                        } else if i < j {
                            lhs == self.degens[l - 1][j - 1][self.faces[l][i][x]]
                        } else {
                            lhs == self.degens[l - 1][j][self.faces[l][i - 1][x]]
                        };
                        if !ok {
                            return Err(fail(format!("d{i} s{j}"), l, x));
                        }
                    }
                    if l + 1 < top {
                        for i in 0..=j {
                            let lhs = self.degens[l + 1][i][sx];
                            let rhs = self.degens[l + 1][j + 1][self.degens[l][i][x]];
                            if lhs != rhs {
                                return Err(fail(format!("s{i} s{j} = s{} s{i}", j + 1), l, x));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The levels `0..=m` of `self`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.truncation() {
            return Err(Error::LevelOutOfRange { level: m, truncation: self.truncation() });
        }
        Ok(Self {
            names: self.names[..=m].to_vec(),
            faces: self.faces[..=m].to_vec(),
            degens: self.degens[..m].to_vec(),
        })
    }

    /// The sub-object on the simplices flagged in `keep`, which must be
    /// closed under all operators.
    pub fn restrict(&self, keep: &[Vec<bool>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let top = self.truncation();
        let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        for l in 0..=top {
            let mut idx = vec![None; self.level_size(l)];
            let mut list = Vec::new();
            for x in 0..self.level_size(l) {
                if keep[l][x] {
                    idx[x] = Some(list.len());
                    list.push(x);
                }
            }
            new_index.push(idx);
            kept.push(list);
        }
        let remap = |l: usize, y: usize| {
            new_index[l][y].ok_or_else(|| Error::invalid("restriction is not closed under operators"))
        };
        let names = (0..=top)
            .map(|l| kept[l].iter().map(|&x| self.names[l][x].clone()).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for l in 1..=top {
            let mut tables = Vec::with_capacity(l + 1);
            for j in 0..=l {
                tables.push(kept[l].iter().map(|&x| remap(l - 1, self.faces[l][j][x])).collect::<Result<Vec<_>>>()?);
            }
            faces.push(tables);
        }
        let mut degens = Vec::with_capacity(top);
        for l in 0..top {
            let mut tables = Vec::with_capacity(l + 1);
            for j in 0..=l {
                tables.push(kept[l].iter().map(|&x| remap(l + 1, self.degens[l][j][x])).collect::<Result<Vec<_>>>()?);
            }
            degens.push(tables);
        }
        Ok((Self::build(names, faces, degens), kept))
    }

    /// Connected components of the 1-skeleton, as a component label per vertex.
    pub fn path_components(&self) -> Vec<usize> {
        let n = self.level_size(0);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if self.truncation() >= 1 {
            for e in 0..self.level_size(1) {
                let a = find(&mut parent, self.faces[1][0][e]);
                let b = find(&mut parent, self.faces[1][1][e]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }
}

fn check_table(t: &[usize], len: usize, bound: usize, what: &str, l: usize, j: usize) -> Result<()> {
    if t.len() != len {
        return Err(Error::invalid(format!("{what} {j} at level {l} has {} entries, expected {len}", t.len())));
    }
    if let Some(&bad) = t.iter().find(|&&y| y >= bound) {
        return Err(Error::invalid(format!("{what} {j} at level {l} points to missing simplex {bad}")));
    }
    Ok(())
}

/// A map of simplicial sets with matching truncations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMorphism {
    source: SimplicialSet,
    target: SimplicialSet,
    components: Vec<Vec<usize>>,
}

impl SimplicialMorphism {
    pub fn new(source: SimplicialSet, target: SimplicialSet, components: Vec<Vec<usize>>) -> Result<Self> {
        check_commutes(&source, &target, &components)?;
        Ok(Self { source, target, components })
    }

    pub(crate) fn build(source: SimplicialSet, target: SimplicialSet, components: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(check_commutes(&source, &target, &components), Ok(()));
        Self { source, target, components }
    }

    pub fn identity(x: SimplicialSet) -> Self {
        let components = x.level_sizes().into_iter().map(|n| (0..n).collect()).collect();
        Self { source: x.clone(), target: x, components }
    }

    pub fn source(&self) -> &SimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, level: usize, x: usize) -> usize {
        self.components[level][x]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SimplicialMorphism) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::invalid("morphisms are not composable"));
        }
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
            .collect();
        Ok(Self { source: self.source.clone(), target: next.target.clone(), components })
    }

    /// Whether every component is a bijection.
    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().enumerate().all(|(l, c)| {
            let mut seen = vec![false; self.target.level_size(l)];
            c.len() == seen.len() && c.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
        })
    }

    pub fn into_parts(self) -> (SimplicialSet, SimplicialSet, Vec<Vec<usize>>) {
        (self.source, self.target, self.components)
    }
}

pub(crate) fn check_commutes(source: &SimplicialSet, target: &SimplicialSet, components: &[Vec<usize>]) -> Result<()> {
    let top = source.truncation();
    if target.truncation() != top {
        return Err(Error::TruncationMismatch { left: top, right: target.truncation() });
    }
    if components.len() != top + 1 {
        return Err(Error::invalid("morphism needs one component per level"));
    }
    for l in 0..=top {
        check_table(&components[l], source.level_size(l), target.level_size(l), "component", l, 0)?;
    }
    let broken = |what: String, l: usize, x: usize| {
        Error::invalid(format!("morphism does not commute with {what} on {} at level {l}", source.name(l, x)))
    };
    for l in 1..=top {
        for j in 0..=l {
            for x in 0..source.level_size(l) {
                if components[l - 1][source.face(l, j, x)] != target.face(l, j, components[l][x]) {
                    return Err(broken(format!("d{j}"), l, x));
                }
            }
        }
    }
    for l in 0..top {
        for j in 0..=l {
            for x in 0..source.level_size(l) {
                if components[l + 1][source.degeneracy(l, j, x)] != target.degeneracy(l, j, components[l][x]) {
                    return Err(broken(format!("s{j}"), l, x));
                }
            }
        }
    }
    Ok(())
}
