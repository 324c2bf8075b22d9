//! Finite covers, their Čech nerves, and Čech cohomology of abelian
//! presheaves on the pieces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{ChainComplex, CyclicSum, FGAbelianGroup, Matrix, Orientation};
use crate::matching::{is_trivial_relative, CheckReport, FiniteSets};
use crate::sset::construct::from_keys;
use crate::sset::{constant, SimplicialMorphism};
use crate::{Error, Result};

/// Subsets `U_i` of a finite set `Y`, indexed in the given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCover {
    ambient: Vec<String>,
    labels: Vec<String>,
    pieces: Vec<BTreeSet<usize>>,
}

impl FiniteCover {
    /// Fails unless every point lies in some piece.
    pub fn new(ambient: Vec<String>, labels: Vec<String>, pieces: Vec<Vec<usize>>) -> Result<Self> {
        let c = Self::family(ambient, labels, pieces)?;
        if let Some(y) = (0..c.ambient.len()).find(|&y| !c.pieces.iter().any(|p| p.contains(&y))) {
            return Err(Error::invalid(format!("not a cover: {} lies in no piece", c.ambient[y])));
        }
        Ok(c)
    }

    /// A family of subsets with no covering requirement.
    pub fn family(ambient: Vec<String>, labels: Vec<String>, pieces: Vec<Vec<usize>>) -> Result<Self> {
        if labels.len() != pieces.len() {
            return Err(Error::invalid("one label per piece"));
        }
        if let Some(&bad) = pieces.iter().flatten().find(|&&y| y >= ambient.len()) {
            return Err(Error::IndexOutOfRange { index: bad, bound: ambient.len() });
        }
        let unique = |v: &[String]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        if !unique(&ambient) || !unique(&labels) {
            return Err(Error::invalid("duplicate point or piece label"));
        }
        Ok(Self { ambient, labels, pieces: pieces.into_iter().map(|p| p.into_iter().collect()).collect() })
    }

    /// Pieces given by point names, labelled `0, 1, …`.
    pub fn from_names(ambient: &[&str], pieces: &[&[&str]]) -> Result<Self> {
        let idx = |n: &str| {
            ambient.iter().position(|a| *a == n).ok_or_else(|| Error::invalid(format!("unknown point {n}")))
        };
        let pieces: Vec<Vec<usize>> = pieces.iter().map(|p| p.iter().map(|n| idx(n)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Self::new(
            ambient.iter().map(|s| s.to_string()).collect(),
            (0..pieces.len()).map(|i| i.to_string()).collect(),
            pieces,
        )
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pieces(&self) -> &[BTreeSet<usize>] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Points in every listed piece; the empty index set gives `Y`.
    pub fn intersection(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.ambient.len()).filter(|y| indices.iter().all(|&i| self.pieces[i].contains(y))).collect()
    }

    /// All index tuples of length `len` (repeats allowed) with nonempty
    /// intersection, in lexicographic order.
    pub fn tuples(&self, len: usize, strictly_increasing: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_tuples(len, strictly_increasing, &mut cur, &mut out);
        out
    }

    fn extend_tuples(&self, len: usize, inc: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = if inc { cur.last().map_or(0, |&i| i + 1) } else { 0 };
        for i in start..self.pieces.len() {
            cur.push(i);
            if !self.intersection(cur).is_empty() {
                self.extend_tuples(len, inc, cur, out);
            }
            cur.pop();
        }
    }

    /// Connected components of the graph on pieces with an edge for every
    /// nonempty pairwise overlap.
    pub fn overlap_components(&self) -> usize {
        let n = self.pieces.len();
        let mut label: Vec<Option<usize>> = vec![None; n];
        let mut count = 0;
        for s in 0..n {
            if label[s].is_some() {
                continue;
            }
            let mut stack = vec![s];
            label[s] = Some(count);
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if label[j].is_none() && !self.pieces[i].is_disjoint(&self.pieces[j]) {
                        label[j] = Some(count);
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        count
    }
}

/// The Čech nerve `Y̌ -> Y` with `Y` constant: level `n` holds pairs of a
/// point `y` and an index tuple `(i_0, …, i_n)` with `y` in every `U_{i_j}`.
pub fn cech_nerve(c: &FiniteCover, truncation: usize) -> SimplicialMorphism {
    let levels: Vec<Vec<(Vec<usize>, usize)>> = (0..=truncation)
        .map(|n| {
            c.tuples(n + 1, false)
                .into_iter()
                .flat_map(|t| c.intersection(&t).into_iter().map(move |y| (t.clone(), y)))
                .collect()
        })
        .collect();
    let x = from_keys(
        levels.clone(),
        |(t, y)| {
            let idx: Vec<&str> = t.iter().map(|&i| c.labels[i].as_str()).collect();
            format!("{}@{}", c.ambient[*y], idx.join(","))
        },
        |_, j, (t, y)| {
            let mut t = t.clone();
            t.remove(j);
            (t, *y)
        },
        |_, j, (t, y)| {
            let mut t = t.clone();
            t.insert(j, t[j]);
            (t, *y)
        },
    );
    let y = constant(&c.ambient, truncation);
    let components = levels.iter().map(|lv| lv.iter().map(|(_, y)| *y).collect()).collect();
    SimplicialMorphism::build(x, y, components)
}

/// The nerve over `Y` as a trivial relative 1-hypergroupoid of finite sets.
pub fn verify_nerve_trivial(c: &FiniteCover) -> Result<CheckReport> {
    is_trivial_relative(&cech_nerve(c, 3), 1, &FiniteSets)
}

/// Abelian groups on the intersections, keyed by sorted index sets (the
/// empty key standing for `Y`), with restrictions along inclusions that add
/// one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    values: BTreeMap<Vec<usize>, CyclicSum>,
    restrictions: BTreeMap<(Vec<usize>, Vec<usize>), Matrix>,
}

impl Presheaf {
    /// Checks that every nonempty intersection has a value, that each
    /// elementary restriction is a homomorphism, and that the two ways
    /// round every square agree.
    pub fn new(
        c: &FiniteCover,
        values: BTreeMap<Vec<usize>, CyclicSum>,
        restrictions: BTreeMap<(Vec<usize>, Vec<usize>), Matrix>,
    ) -> Result<Self> {
        let p = Self { values, restrictions };
        for key in p.values.keys() {
            if key.windows(2).any(|w| w[0] >= w[1]) || key.iter().any(|&i| i >= c.len()) {
                return Err(Error::invalid(format!("bad presheaf key {key:?}")));
            }
        }
        for n in 1..=c.len() {
            for t in c.tuples(n, true) {
                if !p.values.contains_key(&t) {
                    return Err(Error::invalid(format!("missing presheaf value on {}", key_name(c, &t))));
                }
            }
        }
        for ((s, t), m) in &p.restrictions {
            let elementary = t.len() == s.len() + 1 && s.iter().all(|i| t.contains(i));
            let (Some(fs), Some(ft)) = (p.values.get(s), p.values.get(t)) else {
                return Err(Error::invalid(format!("restriction between unknown keys {s:?} -> {t:?}")));
            };
            if !elementary {
                return Err(Error::invalid(format!("restriction {s:?} -> {t:?} is not along one added index")));
            }
            crate::abelian::AbHom::new(fs.clone(), ft.clone(), m.clone())
                .map_err(|e| Error::invalid(format!("restriction {} -> {}: {e}", key_name(c, s), key_name(c, t))))?;
        }
        for t in p.values.keys() {
            for (a, &i) in t.iter().enumerate() {
                let mut s = t.clone();
                s.remove(a);
                if p.values.contains_key(&s) && !p.restrictions.contains_key(&(s.clone(), t.clone())) {
                    return Err(Error::invalid(format!("missing restriction {} -> {}", key_name(c, &s), key_name(c, t))));
                }
                for (b, &j) in t.iter().enumerate() {
                    if j <= i {
                        continue;
                    }
                    let mut r = t.clone();
                    r.remove(b);
                    r.remove(a);
                    if !p.values.contains_key(&r) {
                        continue;
                    }
                    // r -> r+i -> t versus r -> r+j -> t
                    let via = |k: usize| {
                        let mut mid = r.clone();
                        let pos = mid.partition_point(|&x| x < k);
                        mid.insert(pos, k);
                        p.restrictions[&(mid.clone(), t.clone())].mul(&p.restrictions[&(r.clone(), mid)])
                    };
                    if !p.values[t].same_map(&via(i), &via(j)) {
                        return Err(Error::invalid(format!(
                            "restrictions from {} to {} do not commute",
                            key_name(c, &r),
                            key_name(c, t)
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// `A` on every nonempty intersection and on `Y`, identity restrictions.
    pub fn constant(c: &FiniteCover, a: &CyclicSum) -> Self {
        Self::build(c, |_| a.clone(), |_, _| Matrix::identity(a.ngens()))
    }

    /// Functions `U_S -> A`, restricted by restricting functions.
    pub fn functions(c: &FiniteCover, a: &CyclicSum) -> Self {
        let g = a.ngens();
        Self::build(
            c,
            |s| a.repeat(c.intersection(s).len()),
            |s, t| {
                let (us, ut) = (c.intersection(s), c.intersection(t));
                let mut m = Matrix::zeros(ut.len() * g, us.len() * g);
                for (row, y) in ut.iter().enumerate() {
                    let col = us.iter().position(|z| z == y).expect("smaller set");
                    m.put(row * g, col * g, &Matrix::identity(g));
                }
                m
            },
        )
    }

    fn build(c: &FiniteCover, value: impl Fn(&[usize]) -> CyclicSum, res: impl Fn(&[usize], &[usize]) -> Matrix) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Vec::new(), value(&[]));
        for n in 1..=c.len() {
            for t in c.tuples(n, true) {
                values.insert(t.clone(), value(&t));
            }
        }
        let mut restrictions = BTreeMap::new();
        for t in values.keys() {
            for a in 0..t.len() {
                let mut s = t.clone();
                s.remove(a);
                restrictions.insert((s.clone(), t.clone()), res(&s, t));
            }
        }
        Self { values, restrictions }
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, CyclicSum> {
        &self.values
    }

    pub fn restrictions(&self) -> &BTreeMap<(Vec<usize>, Vec<usize>), Matrix> {
        &self.restrictions
    }

    pub fn value(&self, key: &[usize]) -> Option<&CyclicSum> {
        self.values.get(key)
    }

    /// Restriction from `s` to a superset `t`, composed along indices added
    /// in increasing order.
    pub fn restriction(&self, s: &[usize], t: &[usize]) -> Result<Matrix> {
        let missing = || Error::invalid(format!("missing presheaf value on {t:?}"));
        let mut cur = s.to_vec();
        let mut m = Matrix::identity(self.values.get(s).ok_or_else(missing)?.ngens());
        for &i in t {
            if cur.contains(&i) {
                continue;
            }
            let mut next = cur.clone();
            let pos = next.partition_point(|&x| x < i);
            next.insert(pos, i);
            let step = self.restrictions.get(&(cur.clone(), next.clone())).ok_or_else(missing)?;
            m = step.mul(&m);
            cur = next;
        }
        Ok(m)
    }
}

fn key_name(c: &FiniteCover, key: &[usize]) -> String {
    if key.is_empty() {
        return "*".into();
    }
    key.iter().map(|&i| c.labels[i].as_str()).collect::<Vec<_>>().join(",")
}

fn sorted_key(t: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = t.iter().copied().collect();
    set.into_iter().collect()
}

fn complex(c: &FiniteCover, f: &Presheaf, max_degree: usize, strictly_increasing: bool) -> Result<ChainComplex> {
    let tuples: Vec<Vec<Vec<usize>>> = (0..=max_degree).map(|n| c.tuples(n + 1, strictly_increasing)).collect();
    let mut groups = Vec::new();
    let mut offsets: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
    for lv in &tuples {
        let mut parts = Vec::new();
        let mut off = BTreeMap::new();
        let mut at = 0;
        for t in lv {
            let g = f.value(&sorted_key(t)).ok_or_else(|| Error::invalid(format!("missing presheaf value on {}", key_name(c, &sorted_key(t)))))?;
            off.insert(t.clone(), at);
            at += g.ngens();
            parts.push(g.clone());
        }
        groups.push(CyclicSum::direct_sum(&parts));
        offsets.push(off);
    }
    let mut differentials = Vec::new();
    for n in 0..max_degree {
        let mut d = Matrix::zeros(groups[n + 1].ngens(), groups[n].ngens());
        for t in &tuples[n + 1] {
            for j in 0..t.len() {
                let mut s = t.clone();
                s.remove(j);
                let r = f.restriction(&sorted_key(&s), &sorted_key(t))?;
                let r = if j % 2 == 0 { r } else { r.scale(-1) };
                let (row, col) = (offsets[n + 1][t], offsets[n][&s]);
                for a in 0..r.rows() {
                    for b in 0..r.cols() {
                        d[(row + a, col + b)] += r[(a, b)];
                    }
                }
            }
        }
        differentials.push(d);
    }
    ChainComplex::new(Orientation::Cochain, groups, differentials)
}

/// `Č^n = ∏ F(U_{i_0 … i_n})` over all tuples with nonempty intersection,
/// for `n ≤ max_degree`, with `d = Σ (-1)^j` (restriction from the tuple
/// with `i_j` omitted).
pub fn cech_complex(c: &FiniteCover, f: &Presheaf, max_degree: usize) -> Result<ChainComplex> {
    complex(c, f, max_degree, false)
}

/// The same differential on strictly increasing tuples only.
pub fn alternating_complex(c: &FiniteCover, f: &Presheaf, max_degree: usize) -> Result<ChainComplex> {
    complex(c, f, max_degree, true)
}

/// `H^0 … H^max_degree`; one further degree is built so the last group has
/// its outgoing differential.
pub fn cech_cohomology(c: &FiniteCover, f: &Presheaf, max_degree: usize) -> Result<Vec<FGAbelianGroup>> {
    let mut h = cech_complex(c, f, max_degree + 1)?.homology();
    h.truncate(max_degree + 1);
    Ok(h)
}

pub fn alternating_cohomology(c: &FiniteCover, f: &Presheaf, max_degree: usize) -> Result<Vec<FGAbelianGroup>> {
    let mut h = alternating_complex(c, f, max_degree + 1)?.homology();
    h.truncate(max_degree + 1);
    Ok(h)
}
