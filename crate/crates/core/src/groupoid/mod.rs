//! Finite groupoids, their nerves, and the recovery of a groupoid from a
//! 1-hypergroupoid.
//!
//! Orientation: an edge `e` of a simplicial set runs from vertex 0
//! (`d_1 e`) to vertex 1 (`d_0 e`). The composite of `f: x -> y` and
//! `g: y -> z` is `d_1 w` for the unique 2-simplex `w` with `d_2 w = f`
//! and `d_0 w = g`.

pub mod local_system;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::matching::is_n_hypergroupoid;
use crate::sset::{SimplicialMorphism, SimplicialSet};
use crate::{Error, Result};

pub use local_system::{descent_data, local_system_total, total_comparison, LocalSystemData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    // (g, f) -> g ∘ f, for target(f) = source(g)
    compose: BTreeMap<(usize, usize), usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    /// Builds a groupoid and checks every law on every composable pair and
    /// triple.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: BTreeMap<(usize, usize), usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
    ) -> Result<Self> {
        let g = Self { objects, arrows, compose, identity, inverse };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let no = self.objects.len();
        let na = self.arrows.len();
        let bad = |m: String| Err(Error::Invalid(m));
        if let Some(a) = self.arrows.iter().find(|a| a.source >= no || a.target >= no) {
            return bad(format!("arrow {} has an unknown endpoint", a.name));
        }
        if self.identity.len() != no || self.inverse.len() != na {
            return bad("identity and inverse tables have the wrong size".into());
        }
        if self.identity.iter().chain(&self.inverse).any(|&a| a >= na) {
            return bad("identity or inverse refers to an unknown arrow".into());
        }
        for (x, &e) in self.identity.iter().enumerate() {
            if self.arrows[e].source != x || self.arrows[e].target != x {
                return bad(format!("identity of {} is not an endomorphism of it", self.objects[x]));
            }
        }
        for f in 0..na {
            for g in 0..na {
                let composable = self.arrows[f].target == self.arrows[g].source;
                match (composable, self.compose.get(&(g, f))) {
                    (true, None) => {
                        return bad(format!("missing composite {} ∘ {}", self.arrows[g].name, self.arrows[f].name))
                    }
                    (false, Some(_)) => {
                        return bad(format!("composite of non-composable {} and {}", self.arrows[g].name, self.arrows[f].name))
                    }
                    (true, Some(&gf)) => {
                        if gf >= na
                            || self.arrows[gf].source != self.arrows[f].source
                            || self.arrows[gf].target != self.arrows[g].target
                        {
                            return bad(format!("composite {} ∘ {} has wrong endpoints", self.arrows[g].name, self.arrows[f].name));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (f, a) in self.arrows.iter().enumerate() {
            if self.comp(f, self.identity[a.source]) != f || self.comp(self.identity[a.target], f) != f {
                return bad(format!("identity law fails for {}", a.name));
            }
            let inv = self.inverse[f];
            if self.arrows[inv].source != a.target
                || self.arrows[inv].target != a.source
                || self.comp(inv, f) != self.identity[a.source]
                || self.comp(f, inv) != self.identity[a.target]
            {
                return bad(format!("inverse law fails for {}", a.name));
            }
        }
        for (&(g, f), &gf) in &self.compose {
            for h in 0..na {
                if self.arrows[h].source == self.arrows[g].target && self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                    return bad(format!(
                        "associativity fails for {}, {}, {}",
                        self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                    ));
                }
            }
        }
        Ok(())
    }

    /// `g ∘ f`; panics when not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[&(g, f)]
    }

    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    pub fn composition_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.compose
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == x && self.arrows[a].target == y).collect()
    }

    /// The automorphism group of `x`, as arrow indices.
    pub fn vertex_group(&self, x: usize) -> Vec<usize> {
        self.hom(x, x)
    }

    /// A component label per object.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.objects.len()];
        let mut next = 0;
        for x in 0..self.objects.len() {
            if label[x] != usize::MAX {
                continue;
            }
            for a in &self.arrows {
                if a.source == x {
                    label[a.target] = next;
                }
            }
            next += 1;
        }
        label
    }

    /// A one-object groupoid from a group multiplication table.
    pub fn from_group(
        name: &str,
        elements: Vec<String>,
        unit: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let arrows = elements.into_iter().map(|e| Arrow { name: e, source: 0, target: 0 }).collect();
        let mut compose = BTreeMap::new();
        for g in 0..n {
            for f in 0..n {
                compose.insert((g, f), mul(g, f));
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| mul(b, a) == unit).ok_or_else(|| Error::invalid("element without inverse")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vec![name.to_string()], arrows, compose, vec![unit], inverse)
    }

    /// `Z/n` as a one-object groupoid; arrow `k` is the residue `k`.
    pub fn cyclic_group(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        Self::from_group("*", names, 0, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// The symmetric group on `n` letters, `g ∘ f` being composition of
    /// permutations.
    pub fn symmetric_group(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(n, &mut Vec::new(), &mut perms);
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms.iter().map(|p| p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")).collect();
        let unit = index[&(0..n).collect::<Vec<_>>()];
        Self::from_group("*", names, unit, |g, f| {
            let gf: Vec<usize> = (0..n).map(|i| perms[g][perms[f][i]]).collect();
            index[&gf]
        })
        .expect("symmetric group")
    }

    /// Only identity arrows.
    pub fn discrete(objects: &[&str]) -> Self {
        let n = objects.len();
        let arrows = objects.iter().enumerate().map(|(i, o)| Arrow { name: format!("id_{o}"), source: i, target: i }).collect();
        let compose = (0..n).map(|i| ((i, i), i)).collect();
        Self::new(objects.iter().map(|s| s.to_string()).collect(), arrows, compose, (0..n).collect(), (0..n).collect())
            .expect("discrete groupoid")
    }

    /// Exactly one arrow between any two objects.
    pub fn indiscrete(objects: &[&str]) -> Self {
        let n = objects.len();
        let idx = |a: usize, b: usize| a * n + b;
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                arrows.push(Arrow { name: format!("{}>{}", objects[a], objects[b]), source: a, target: b });
            }
        }
        let mut compose = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    compose.insert((idx(b, c), idx(a, b)), idx(a, c));
                }
            }
        }
        let identity = (0..n).map(|a| idx(a, a)).collect();
        let inverse = (0..n * n).map(|i| idx(i % n, i / n)).collect();
        Self::new(objects.iter().map(|s| s.to_string()).collect(), arrows, compose, identity, inverse)
            .expect("indiscrete groupoid")
    }

    /// Disjoint union; objects and arrows of `other` are tagged with `'`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (no, na) = (self.objects.len(), self.arrows.len());
        let objects = self.objects.iter().cloned().chain(other.objects.iter().map(|o| format!("{o}'"))).collect();
        let arrows = self
            .arrows
            .iter()
            .cloned()
            .chain(other.arrows.iter().map(|a| Arrow {
                name: format!("{}'", a.name),
                source: a.source + no,
                target: a.target + no,
            }))
            .collect();
        let compose = self
            .compose
            .iter()
            .map(|(&k, &v)| (k, v))
            .chain(other.compose.iter().map(|(&(g, f), &v)| ((g + na, f + na), v + na)))
            .collect();
        let identity = self.identity.iter().copied().chain(other.identity.iter().map(|&i| i + na)).collect();
        let inverse = self.inverse.iter().copied().chain(other.inverse.iter().map(|&i| i + na)).collect();
        Self::new(objects, arrows, compose, identity, inverse).expect("disjoint union")
    }

    /// Product groupoid; the pair `(a, b)` has index `a * |arrows(other)| + b`.
    pub fn product(&self, other: &Self) -> Self {
        let (mo, ma) = (other.objects.len(), other.arrows.len());
        let mut objects = Vec::new();
        for x in &self.objects {
            for y in &other.objects {
                objects.push(format!("({x},{y})"));
            }
        }
        let mut arrows = Vec::new();
        for a in &self.arrows {
            for b in &other.arrows {
                arrows.push(Arrow {
                    name: format!("({},{})", a.name, b.name),
                    source: a.source * mo + b.source,
                    target: a.target * mo + b.target,
                });
            }
        }
        let mut compose = BTreeMap::new();
        for (&(g, f), &gf) in &self.compose {
            for (&(g2, f2), &gf2) in &other.compose {
                compose.insert((g * ma + g2, f * ma + f2), gf * ma + gf2);
            }
        }
        let mut identity = Vec::new();
        for x in 0..self.objects.len() {
            for y in 0..mo {
                identity.push(self.identity[x] * ma + other.identity[y]);
            }
        }
        let mut inverse = Vec::new();
        for a in 0..self.arrows.len() {
            for b in 0..ma {
                inverse.push(self.inverse[a] * ma + other.inverse[b]);
            }
        }
        Self::new(objects, arrows, compose, identity, inverse).expect("product groupoid")
    }

    /// Composable strings of `n` arrows (`n ≥ 1`), in lexicographic order.
    pub fn strings(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for s in &out {
                let end = self.arrows[*s.last().unwrap()].target;
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == end {
                        let mut t = s.clone();
                        t.push(a);
                        next.push(t);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// The nerve through level `truncation`: level `n` is the set of
    /// composable strings `x_0 -> x_1 -> ... -> x_n`.
    pub fn nerve(&self, truncation: usize) -> SimplicialSet {
        // level 0 keys are [object], higher levels are arrow strings
        let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..self.objects.len()).map(|x| vec![x]).collect()];
        for n in 1..=truncation {
            levels.push(self.strings(n));
        }
        let name_of = |key: &Vec<usize>, level: usize| -> String {
            if level == 0 {
                self.objects[key[0]].clone()
            } else {
                key.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("|")
            }
        };
        let keyed: Vec<Vec<(usize, Vec<usize>)>> = levels
            .into_iter()
            .enumerate()
            .map(|(l, lv)| lv.into_iter().map(|k| (l, k)).collect())
            .collect();
        crate::sset::construct::from_keys(
            keyed,
            |(l, k)| name_of(k, *l),
            |l, j, (_, s)| {
                let out = if l == 1 {
                    let a = &self.arrows[s[0]];
                    vec![if j == 0 { a.target } else { a.source }]
                } else if j == 0 {
                    s[1..].to_vec()
                } else if j == l {
                    s[..l - 1].to_vec()
                } else {
                    let mut t = s[..j - 1].to_vec();
                    t.push(self.comp(s[j], s[j - 1]));
                    t.extend_from_slice(&s[j + 1..]);
                    t
                };
                (l - 1, out)
            },
            |l, j, (_, s)| {
                let out = if l == 0 {
                    vec![self.identity[s[0]]]
                } else {
                    let x = if j == 0 { self.arrows[s[0]].source } else { self.arrows[s[j - 1]].target };
                    let mut t = s[..j].to_vec();
                    t.push(self.identity[x]);
                    t.extend_from_slice(&s[j..]);
                    t
                };
                (l + 1, out)
            },
        )
    }
}

fn permutations(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if !cur.contains(&i) {
            cur.push(i);
            permutations(n, cur, out);
            cur.pop();
        }
    }
}

/// The groupoid with objects `X_0`, arrows `X_1` (from `d_1` to `d_0`),
/// identities `s_0`, composition through the unique fillers of inner
/// 2-horns and inverses through the unique fillers of outer 2-horns.
///
/// Refuses inputs that are not 1-hypergroupoids.
pub fn fundamental_groupoid(x: &SimplicialSet) -> Result<FiniteGroupoid> {
    let report = is_n_hypergroupoid(x, 1)?;
    if !report.passed() {
        return Err(Error::NotHypergroupoid(format!("{} failing matching conditions", report.failures.len())));
    }
    let objects: Vec<String> = x.names(0).to_vec();
    let arrows: Vec<Arrow> = (0..x.level_size(1))
        .map(|e| Arrow { name: x.name(1, e).into(), source: x.face(1, 1, e), target: x.face(1, 0, e) })
        .collect();
    // unique 2-simplex by (d_2, d_0), by (d_2, d_1) and by (d_1, d_0)
    let mut by_20 = BTreeMap::new();
    let mut by_21 = BTreeMap::new();
    let mut by_10 = BTreeMap::new();
    for w in 0..x.level_size(2) {
        let (d0, d1, d2) = (x.face(2, 0, w), x.face(2, 1, w), x.face(2, 2, w));
        by_20.insert((d2, d0), d1);
        by_21.insert((d2, d1), d0);
        by_10.insert((d1, d0), d2);
    }
    let mut compose = BTreeMap::new();
    for (f, af) in arrows.iter().enumerate() {
        for (g, ag) in arrows.iter().enumerate() {
            if af.target == ag.source {
                compose.insert((g, f), by_20[&(f, g)]);
            }
        }
    }
    let identity: Vec<usize> = (0..objects.len()).map(|v| x.degeneracy(0, 0, v)).collect();
    let mut inverse = Vec::with_capacity(arrows.len());
    for (f, a) in arrows.iter().enumerate() {
        // Λ^{2,0}: d_2 = f, d_1 = id_source gives the left inverse as d_0
        let left = by_21[&(f, identity[a.source])];
        // Λ^{2,2}: d_1 = id_target, d_0 = f gives the right inverse as d_2
        let right = by_10[&(identity[a.target], f)];
        if left != right {
            return Err(Error::NotHypergroupoid(format!("left and right inverses of {} differ", a.name)));
        }
        inverse.push(left);
    }
    FiniteGroupoid::new(objects, arrows, compose, identity, inverse)
}

/// An isomorphism of groupoids given by object and arrow bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidIso {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl GroupoidIso {
    /// Checks that the maps are bijective and preserve endpoints,
    /// composition and identities.
    pub fn verify(&self, g: &FiniteGroupoid, h: &FiniteGroupoid) -> bool {
        let bijective = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.len() == n && m.iter().all(|&v| v < n && !core::mem::replace(&mut seen[v], true))
        };
        bijective(&self.objects, h.objects.len())
            && bijective(&self.arrows, h.arrows.len())
            && g.arrows.iter().enumerate().all(|(a, arr)| {
                let b = &h.arrows[self.arrows[a]];
                b.source == self.objects[arr.source] && b.target == self.objects[arr.target]
            })
            && (0..g.objects.len()).all(|x| self.arrows[g.identity[x]] == h.identity[self.objects[x]])
            && g.compose.iter().all(|(&(b, a), &ba)| h.try_comp(self.arrows[b], self.arrows[a]) == Some(self.arrows[ba]))
    }
}

/// Searches for an isomorphism `g -> h` by backtracking.
pub fn find_isomorphism(g: &FiniteGroupoid, h: &FiniteGroupoid) -> Option<GroupoidIso> {
    if g.objects.len() != h.objects.len() || g.arrows.len() != h.arrows.len() {
        return None;
    }
    let n = g.objects.len();
    let mut objects = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_objects(g, h, 0, &mut objects, &mut used)
}

fn search_objects(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    pos: usize,
    objects: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<GroupoidIso> {
    if pos == objects.len() {
        let hom_sizes_match = g.arrows.iter().all(|a| {
            g.hom(a.source, a.target).len() == h.hom(objects[a.source], objects[a.target]).len()
        });
        if !hom_sizes_match {
            return None;
        }
        let mut arrows = vec![usize::MAX; g.arrows.len()];
        let mut taken = vec![false; h.arrows.len()];
        return search_arrows(g, h, 0, objects, &mut arrows, &mut taken)
            .map(|arrows| GroupoidIso { objects: objects.clone(), arrows });
    }
    for cand in 0..objects.len() {
        if !used[cand] {
            used[cand] = true;
            objects[pos] = cand;
            if let Some(iso) = search_objects(g, h, pos + 1, objects, used) {
                return Some(iso);
            }
            used[cand] = false;
        }
    }
    None
}

fn search_arrows(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    pos: usize,
    objects: &[usize],
    arrows: &mut Vec<usize>,
    taken: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    if pos == arrows.len() {
        let iso = GroupoidIso { objects: objects.to_vec(), arrows: arrows.clone() };
        return iso.verify(g, h).then(|| arrows.clone());
    }
    let a = &g.arrows[pos];
    let is_identity = g.identity[a.source] == pos;
    for cand in h.hom(objects[a.source], objects[a.target]) {
        if taken[cand] || (is_identity && h.identity[objects[a.source]] != cand) {
            continue;
        }
        arrows[pos] = cand;
        // composites among already-assigned arrows must be preserved
        let consistent = (0..=pos).all(|b| {
            [(pos, b), (b, pos)].iter().all(|&(p, q)| match g.try_comp(p, q) {
                Some(pq) if pq <= pos => h.try_comp(arrows[p], arrows[q]) == Some(arrows[pq]),
                _ => true,
            })
        });
        if consistent {
            taken[cand] = true;
            if let Some(done) = search_arrows(g, h, pos + 1, objects, arrows, taken) {
                return Some(done);
            }
            taken[cand] = false;
        }
    }
    arrows[pos] = usize::MAX;
    None
}

/// The simplicial map `N(G) -> N(H)` induced by a groupoid isomorphism
/// (or any functor given by object and arrow maps).
pub fn nerve_map(iso: &GroupoidIso, g: &FiniteGroupoid, h: &FiniteGroupoid, truncation: usize) -> Result<SimplicialMorphism> {
    let (ng, nh) = (g.nerve(truncation), h.nerve(truncation));
    let mut components = vec![iso.objects.clone()];
    for n in 1..=truncation {
        let index: BTreeMap<Vec<usize>, usize> = h.strings(n).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        components.push(
            g.strings(n)
                .iter()
                .map(|s| {
                    let t: Vec<usize> = s.iter().map(|&a| iso.arrows[a]).collect();
                    index.get(&t).copied().ok_or_else(|| Error::invalid("arrow map does not preserve composability"))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    SimplicialMorphism::new(ng, nh, components)
}

/// The comparison `X -> N(π X)` sending a simplex to its spine of edges
/// `(0→1, 1→2, ...)`. An isomorphism exactly when `X` is a 1-hypergroupoid.
pub fn spine_map(x: &SimplicialSet) -> Result<(FiniteGroupoid, SimplicialMorphism)> {
    let g = fundamental_groupoid(x)?;
    let top = x.truncation();
    let nerve = g.nerve(top);
    let mut components = vec![(0..x.level_size(0)).collect::<Vec<_>>()];
    for n in 1..=top {
        let index: BTreeMap<Vec<usize>, usize> = g.strings(n).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        components.push(
            (0..x.level_size(n))
                .map(|s| index[&(0..n).map(|i| x.edge(n, s, i, i + 1)).collect::<Vec<_>>()])
                .collect(),
        );
    }
    let m = SimplicialMorphism::new(x.clone(), nerve, components)?;
    Ok((g, m))
}
