//! The JSON document format.
//!
//! Every document is `{"kind": ..., "body": ...}`. Parsing resolves ids
//! and shapes first; anything wrong at that stage is a [`LoadError::Parse`].
//! The structural laws of each kind are then checked by the core
//! constructors, and a violation there is a [`LoadError::Invalid`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hgk_core::abelian::{ChainComplex, CyclicSum, FGAbelianGroup, Matrix, Orientation, SimplicialAbelianGroup};
use hgk_core::cech::{FiniteCover, Presheaf};
use hgk_core::groupoid::{Arrow, FiniteGroupoid, LocalSystemData};
use hgk_core::{SimplicialMorphism, SimplicialSet};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid {kind}: {source}")]
    Invalid { kind: &'static str, source: hgk_core::Error },
}

fn parse_err(msg: impl Into<String>) -> LoadError {
    LoadError::Parse(msg.into())
}

#[derive(Debug, Clone)]
pub enum Document {
    SimplicialSet(SimplicialSet),
    SimplicialAbelianGroup(SimplicialAbelianGroup),
    Groupoid(FiniteGroupoid),
    LocalSystem(LocalSystemData),
    Cover(FiniteCover),
    Presheaf(FiniteCover, Presheaf),
    ChainComplex(ChainComplex),
    Morphism(SimplicialMorphism),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SimplicialSet(_) => "simplicial-set",
            Document::SimplicialAbelianGroup(_) => "simplicial-abelian-group",
            Document::Groupoid(_) => "groupoid",
            Document::LocalSystem(_) => "local-system",
            Document::Cover(_) => "cover",
            Document::Presheaf(..) => "presheaf",
            Document::ChainComplex(_) => "chain-complex",
            Document::Morphism(_) => "morphism",
        }
    }

    pub fn to_value(&self) -> Value {
        let raw = match self {
            Document::SimplicialSet(x) => Raw::SimplicialSet(sset_body(x)),
            Document::SimplicialAbelianGroup(a) => Raw::SimplicialAbelianGroup(sag_body(a)),
            Document::Groupoid(g) => Raw::Groupoid(groupoid_body(g)),
            Document::LocalSystem(d) => Raw::LocalSystem(local_system_body(d)),
            Document::Cover(c) => Raw::Cover(cover_body(c)),
            Document::Presheaf(c, f) => Raw::Presheaf(presheaf_body(c, f)),
            Document::ChainComplex(c) => Raw::ChainComplex(chain_body(c)),
            Document::Morphism(f) => Raw::Morphism(morphism_body(f)),
        };
        serde_json::to_value(raw).expect("documents serialize")
    }

    /// Pretty-printed canonical form, newline terminated.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("documents serialize");
        s.push('\n');
        s
    }
}

pub fn parse(text: &str) -> Result<Document, LoadError> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    raw.into_document()
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "kebab-case", deny_unknown_fields)]
enum Raw {
    SimplicialSet(SsetBody),
    SimplicialAbelianGroup(SagBody),
    Groupoid(GroupoidBody),
    LocalSystem(LocalSystemBody),
    Cover(CoverBody),
    Presheaf(PresheafBody),
    ChainComplex(ChainBody),
    Morphism(MorphismBody),
}

type IdMap = BTreeMap<String, String>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SsetBody {
    truncation: usize,
    levels: Vec<Vec<String>>,
    faces: BTreeMap<String, IdMap>,
    degeneracies: BTreeMap<String, IdMap>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SagBody {
    truncation: usize,
    levels: Vec<GroupDesc>,
    faces: BTreeMap<String, Vec<Vec<i64>>>,
    degeneracies: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDesc {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidBody {
    objects: Vec<String>,
    arrows: Vec<ArrowDesc>,
    compose: Vec<[String; 3]>,
    identities: IdMap,
    inverses: IdMap,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalSystemBody {
    base: SsetBody,
    fibers: BTreeMap<String, Vec<String>>,
    transitions: BTreeMap<String, IdMap>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverBody {
    ambient: Vec<String>,
    pieces: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresheafBody {
    cover: CoverBody,
    values: BTreeMap<String, GroupDesc>,
    restrictions: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "kebab-case")]
enum OrientationDesc {
    #[default]
    Chain,
    Cochain,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainBody {
    #[serde(default)]
    orientation: OrientationDesc,
    groups: Vec<GroupDesc>,
    differentials: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismBody {
    source: SsetBody,
    target: SsetBody,
    components: Vec<IdMap>,
}

/// `{"rank": r, "torsion": [...]}` for groups in invariant-factor form;
/// `{"cyclic": [...]}` (0 meaning Z) for an arbitrary sum of cyclic groups
/// with its generators in that order.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupDesc {
    Canonical { rank: usize, torsion: Vec<u64> },
    Cyclic { cyclic: Vec<u64> },
}

impl GroupDesc {
    pub fn of_group(g: &FGAbelianGroup) -> Self {
        GroupDesc::Canonical { rank: g.rank(), torsion: g.torsion().to_vec() }
    }

    /// The canonical descriptor when the generators are already in
    /// invariant-factor order, the cyclic one otherwise.
    pub fn of_sum(g: &CyclicSum) -> Self {
        let rank = g.orders().iter().take_while(|&&o| o == 0).count();
        let torsion = &g.orders()[rank..];
        match FGAbelianGroup::new(rank, torsion.to_vec()) {
            Ok(c) if c.to_cyclic_sum() == *g => GroupDesc::Canonical { rank, torsion: torsion.to_vec() },
            _ => GroupDesc::Cyclic { cyclic: g.orders().to_vec() },
        }
    }

    pub fn to_sum(&self) -> Result<CyclicSum, LoadError> {
        match self {
            GroupDesc::Canonical { rank, torsion } => FGAbelianGroup::new(*rank, torsion.clone())
                .map(|g| g.to_cyclic_sum())
                .map_err(|e| parse_err(format!("group descriptor: {e}"))),
            GroupDesc::Cyclic { cyclic } => Ok(CyclicSum::new(cyclic.clone())),
        }
    }
}

/// Parses `0`, `Z`, `Z/n`, `Z^k` and sums of these joined by `+`.
pub fn parse_group(text: &str) -> Result<CyclicSum, String> {
    let mut orders = Vec::new();
    for part in text.split('+').map(str::trim) {
        if part == "0" {
            continue;
        }
        if part == "Z" {
            orders.push(0);
        } else if let Some(k) = part.strip_prefix("Z^") {
            let k: usize = k.parse().map_err(|_| format!("bad exponent in {part}"))?;
            orders.extend(std::iter::repeat_n(0, k));
        } else if let Some(n) = part.strip_prefix("Z/") {
            let n: u64 = n.parse().map_err(|_| format!("bad order in {part}"))?;
            if n == 0 {
                return Err("Z/0 is not allowed; write Z".into());
            }
            orders.push(n);
        } else {
            return Err(format!("cannot read group {text:?}; use forms like Z, Z/2, Z^2+Z/3"));
        }
    }
    Ok(CyclicSum::new(orders))
}

fn level_key(l: usize, j: usize) -> String {
    format!("{l},{j}")
}

fn index_of(names: &[String]) -> HashMap<&str, usize> {
    names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
}

fn unique(names: &[String], what: &str) -> Result<(), LoadError> {
    let mut seen = BTreeSet::new();
    match names.iter().find(|n| !seen.insert(n.as_str())) {
        Some(d) => Err(parse_err(format!("duplicate id {d:?} in {what}"))),
        None => Ok(()),
    }
}

// A total function `from -> to` given by ids.
fn id_table(map: &IdMap, from: &[String], to: &HashMap<&str, usize>, what: &str) -> Result<Vec<usize>, LoadError> {
    if map.len() != from.len() {
        if let Some(k) = map.keys().find(|k| !from.contains(k)) {
            return Err(parse_err(format!("{what}: unknown id {k:?}")));
        }
    }
    from.iter()
        .map(|x| {
            let y = map.get(x).ok_or_else(|| parse_err(format!("{what}: no value for {x:?}")))?;
            to.get(y.as_str()).copied().ok_or_else(|| parse_err(format!("{what}: unknown id {y:?}")))
        })
        .collect()
}

fn keyed_tables<'a, T>(
    map: &'a BTreeMap<String, T>,
    expected: &[(usize, usize)],
    what: &str,
) -> Result<Vec<&'a T>, LoadError> {
    let keys: BTreeSet<String> = expected.iter().map(|&(l, j)| level_key(l, j)).collect();
    if let Some(k) = map.keys().find(|k| !keys.contains(*k)) {
        return Err(parse_err(format!("unexpected {what} key {k:?}")));
    }
    expected
        .iter()
        .map(|&(l, j)| map.get(&level_key(l, j)).ok_or_else(|| parse_err(format!("missing {what} {:?}", level_key(l, j)))))
        .collect()
}

fn operator_keys(truncation: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let faces = (1..=truncation).flat_map(|l| (0..=l).map(move |j| (l, j))).collect();
    let degens = (0..truncation).flat_map(|l| (0..=l).map(move |j| (l, j))).collect();
    (faces, degens)
}

fn sset_from(b: &SsetBody) -> Result<SimplicialSet, LoadError> {
    let t = b.truncation;
    if b.levels.len() != t + 1 {
        return Err(parse_err(format!("truncation {t} needs {} levels, found {}", t + 1, b.levels.len())));
    }
    for (l, lv) in b.levels.iter().enumerate() {
        unique(lv, &format!("level {l}"))?;
    }
    let idx: Vec<HashMap<&str, usize>> = b.levels.iter().map(|lv| index_of(lv)).collect();
    let (fkeys, dkeys) = operator_keys(t);
    let ftables = keyed_tables(&b.faces, &fkeys, "face")?;
    let dtables = keyed_tables(&b.degeneracies, &dkeys, "degeneracy")?;
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t + 1];
    for (&(l, j), m) in fkeys.iter().zip(ftables) {
        faces[l].push(id_table(m, &b.levels[l], &idx[l - 1], &format!("face {}", level_key(l, j)))?);
    }
    let mut degens: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t];
    for (&(l, j), m) in dkeys.iter().zip(dtables) {
        degens[l].push(id_table(m, &b.levels[l], &idx[l + 1], &format!("degeneracy {}", level_key(l, j)))?);
    }
    let x = SimplicialSet::from_parts(b.levels.clone(), faces, degens).map_err(|e| parse_err(e.to_string()))?;
    x.validate().map_err(|source| LoadError::Invalid { kind: "simplicial-set", source })?;
    Ok(x)
}

fn sset_body(x: &SimplicialSet) -> SsetBody {
    let t = x.truncation();
    let (fkeys, dkeys) = operator_keys(t);
    let table = |l: usize, to: usize, op: &dyn Fn(usize) -> usize| -> IdMap {
        (0..x.level_size(l)).map(|s| (x.name(l, s).to_string(), x.name(to, op(s)).to_string())).collect()
    };
    SsetBody {
        truncation: t,
        levels: (0..=t).map(|l| x.names(l).to_vec()).collect(),
        faces: fkeys.iter().map(|&(l, j)| (level_key(l, j), table(l, l - 1, &|s| x.face(l, j, s)))).collect(),
        degeneracies: dkeys.iter().map(|&(l, j)| (level_key(l, j), table(l, l + 1, &|s| x.degeneracy(l, j, s)))).collect(),
    }
}

fn matrix_from(rows: &[Vec<i64>], shape: (usize, usize), what: &str) -> Result<Matrix, LoadError> {
    let (r, c) = shape;
    let bad = || parse_err(format!("{what}: expected a {r}x{c} matrix"));
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(bad());
    }
    Ok(Matrix::from_rows(c, rows))
}

fn sag_from(b: &SagBody) -> Result<SimplicialAbelianGroup, LoadError> {
    let t = b.truncation;
    if b.levels.len() != t + 1 {
        return Err(parse_err(format!("truncation {t} needs {} levels, found {}", t + 1, b.levels.len())));
    }
    let levels: Vec<CyclicSum> = b.levels.iter().map(GroupDesc::to_sum).collect::<Result<_, _>>()?;
    let (fkeys, dkeys) = operator_keys(t);
    let ftables = keyed_tables(&b.faces, &fkeys, "face")?;
    let dtables = keyed_tables(&b.degeneracies, &dkeys, "degeneracy")?;
    let mut faces: Vec<Vec<Matrix>> = vec![Vec::new(); t + 1];
    for (&(l, j), m) in fkeys.iter().zip(ftables) {
        let shape = (levels[l - 1].ngens(), levels[l].ngens());
        faces[l].push(matrix_from(m, shape, &format!("face {}", level_key(l, j)))?);
    }
    let mut degens: Vec<Vec<Matrix>> = vec![Vec::new(); t];
    for (&(l, j), m) in dkeys.iter().zip(dtables) {
        let shape = (levels[l + 1].ngens(), levels[l].ngens());
        degens[l].push(matrix_from(m, shape, &format!("degeneracy {}", level_key(l, j)))?);
    }
    SimplicialAbelianGroup::new(levels, faces, degens)
        .map_err(|source| LoadError::Invalid { kind: "simplicial-abelian-group", source })
}

fn sag_body(a: &SimplicialAbelianGroup) -> SagBody {
    let t = a.truncation();
    let (fkeys, dkeys) = operator_keys(t);
    SagBody {
        truncation: t,
        levels: a.levels().iter().map(GroupDesc::of_sum).collect(),
        faces: fkeys.iter().map(|&(l, j)| (level_key(l, j), a.face(l, j).to_rows())).collect(),
        degeneracies: dkeys.iter().map(|&(l, j)| (level_key(l, j), a.degeneracy(l, j).to_rows())).collect(),
    }
}

fn groupoid_from(b: &GroupoidBody) -> Result<FiniteGroupoid, LoadError> {
    unique(&b.objects, "objects")?;
    let ids: Vec<String> = b.arrows.iter().map(|a| a.id.clone()).collect();
    unique(&ids, "arrows")?;
    let obj = index_of(&b.objects);
    let arr = index_of(&ids);
    let o = |n: &str| obj.get(n).copied().ok_or_else(|| parse_err(format!("unknown object {n:?}")));
    let a = |n: &str| arr.get(n).copied().ok_or_else(|| parse_err(format!("unknown arrow {n:?}")));
    let arrows = b
        .arrows
        .iter()
        .map(|d| Ok(Arrow { name: d.id.clone(), source: o(&d.src)?, target: o(&d.tgt)? }))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let mut compose = BTreeMap::new();
    for [g, f, gf] in &b.compose {
        if compose.insert((a(g)?, a(f)?), a(gf)?).is_some() {
            return Err(parse_err(format!("composite of {g:?} and {f:?} given twice")));
        }
    }
    let identity = id_table(&b.identities, &b.objects, &arr, "identities")?;
    let inverse = id_table(&b.inverses, &ids, &arr, "inverses")?;
    FiniteGroupoid::new(b.objects.clone(), arrows, compose, identity, inverse)
        .map_err(|source| LoadError::Invalid { kind: "groupoid", source })
}

fn groupoid_body(g: &FiniteGroupoid) -> GroupoidBody {
    let name = |f: usize| g.arrows()[f].name.clone();
    GroupoidBody {
        objects: g.objects().to_vec(),
        arrows: g
            .arrows()
            .iter()
            .map(|a| ArrowDesc { id: a.name.clone(), src: g.objects()[a.source].clone(), tgt: g.objects()[a.target].clone() })
            .collect(),
        compose: g.composition_table().iter().map(|(&(x, y), &z)| [name(x), name(y), name(z)]).collect(),
        identities: (0..g.objects().len()).map(|x| (g.objects()[x].clone(), name(g.identity(x)))).collect(),
        inverses: (0..g.arrows().len()).map(|f| (name(f), name(g.inverse(f)))).collect(),
    }
}

fn local_system_from(b: &LocalSystemBody) -> Result<LocalSystemData, LoadError> {
    let base = sset_from(&b.base)?;
    if base.truncation() < 1 {
        return Err(parse_err("a local system needs a base of truncation at least 1"));
    }
    let vertices = base.names(0);
    if let Some(k) = b.fibers.keys().find(|k| !vertices.contains(k)) {
        return Err(parse_err(format!("fiber over unknown vertex {k:?}")));
    }
    let fibers: Vec<Vec<String>> = vertices
        .iter()
        .map(|v| {
            let f = b.fibers.get(v).ok_or_else(|| parse_err(format!("no fiber over vertex {v:?}")))?;
            unique(f, &format!("fiber over {v}"))?;
            Ok(f.clone())
        })
        .collect::<Result<_, LoadError>>()?;
    let edges = base.names(1);
    if let Some(k) = b.transitions.keys().find(|k| !edges.contains(k)) {
        return Err(parse_err(format!("transition on unknown edge {k:?}")));
    }
    let mut transitions = Vec::new();
    for (z, name) in edges.iter().enumerate() {
        let (src, tgt) = (base.face(1, 0, z), base.face(1, 1, z));
        match b.transitions.get(name) {
            Some(m) => {
                let to = index_of(&fibers[tgt]);
                transitions.push(id_table(m, &fibers[src], &to, &format!("transition on {name}"))?);
            }
            None if base.is_degenerate(1, z) => transitions.push((0..fibers[src].len()).collect()),
            None => return Err(parse_err(format!("no transition on edge {name:?}"))),
        }
    }
    LocalSystemData::new(base, fibers, transitions).map_err(|source| LoadError::Invalid { kind: "local-system", source })
}

fn local_system_body(d: &LocalSystemData) -> LocalSystemBody {
    let base = d.base();
    let fibers = d.fibers();
    LocalSystemBody {
        base: sset_body(base),
        fibers: base.names(0).iter().cloned().zip(fibers.iter().cloned()).collect(),
        transitions: (0..base.level_size(1))
            .map(|z| {
                let (src, tgt) = (base.face(1, 0, z), base.face(1, 1, z));
                let m = d.transitions()[z]
                    .iter()
                    .enumerate()
                    .map(|(b, &a)| (fibers[src][b].clone(), fibers[tgt][a].clone()))
                    .collect();
                (base.name(1, z).to_string(), m)
            })
            .collect(),
    }
}

// Piece labels in numeric order when they are all numbers.
fn ordered_labels(pieces: &BTreeMap<String, Vec<String>>) -> Vec<String> {
    let mut labels: Vec<String> = pieces.keys().cloned().collect();
    if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<u64>().unwrap());
    }
    labels
}

fn cover_from(b: &CoverBody) -> Result<FiniteCover, LoadError> {
    unique(&b.ambient, "ambient")?;
    let idx = index_of(&b.ambient);
    let labels = ordered_labels(&b.pieces);
    let pieces = labels
        .iter()
        .map(|l| {
            let p = &b.pieces[l];
            unique(p, &format!("piece {l}"))?;
            p.iter()
                .map(|y| idx.get(y.as_str()).copied().ok_or_else(|| parse_err(format!("piece {l}: unknown point {y:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    FiniteCover::new(b.ambient.clone(), labels, pieces).map_err(|source| LoadError::Invalid { kind: "cover", source })
}

fn cover_body(c: &FiniteCover) -> CoverBody {
    CoverBody {
        ambient: c.ambient().to_vec(),
        pieces: c
            .labels()
            .iter()
            .zip(c.pieces())
            .map(|(l, p)| (l.clone(), p.iter().map(|&y| c.ambient()[y].clone()).collect()))
            .collect(),
    }
}

fn key_name(c: &FiniteCover, key: &[usize]) -> String {
    if key.is_empty() {
        return "*".into();
    }
    key.iter().map(|&i| c.labels()[i].as_str()).collect::<Vec<_>>().join(",")
}

fn key_from(c: &FiniteCover, text: &str) -> Result<Vec<usize>, LoadError> {
    if text == "*" {
        return Ok(Vec::new());
    }
    let idx = index_of(c.labels());
    let mut key = text
        .split(',')
        .map(|l| idx.get(l.trim()).copied().ok_or_else(|| parse_err(format!("unknown piece {l:?} in key {text:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    key.sort_unstable();
    if key.windows(2).any(|w| w[0] == w[1]) {
        return Err(parse_err(format!("repeated piece in key {text:?}")));
    }
    Ok(key)
}

fn presheaf_from(b: &PresheafBody) -> Result<(FiniteCover, Presheaf), LoadError> {
    let c = cover_from(&b.cover)?;
    let mut values = BTreeMap::new();
    for (k, g) in &b.values {
        if values.insert(key_from(&c, k)?, g.to_sum()?).is_some() {
            return Err(parse_err(format!("presheaf value on {k:?} given twice")));
        }
    }
    let mut restrictions = BTreeMap::new();
    for (k, m) in &b.restrictions {
        let (s, t) = k.split_once("->").ok_or_else(|| parse_err(format!("restriction key {k:?} is not of the form S->T")))?;
        let (s, t) = (key_from(&c, s)?, key_from(&c, t)?);
        let missing = |key: &[usize]| parse_err(format!("restriction {k:?}: no value on {}", key_name(&c, key)));
        let rows = values.get(&t).ok_or_else(|| missing(&t))?.ngens();
        let cols = values.get(&s).ok_or_else(|| missing(&s))?.ngens();
        restrictions.insert((s, t), matrix_from(m, (rows, cols), &format!("restriction {k}"))?);
    }
    let f = Presheaf::new(&c, values, restrictions).map_err(|source| LoadError::Invalid { kind: "presheaf", source })?;
    Ok((c, f))
}

fn presheaf_body(c: &FiniteCover, f: &Presheaf) -> PresheafBody {
    PresheafBody {
        cover: cover_body(c),
        values: f.values().iter().map(|(k, g)| (key_name(c, k), GroupDesc::of_sum(g))).collect(),
        restrictions: f
            .restrictions()
            .iter()
            .map(|((s, t), m)| (format!("{}->{}", key_name(c, s), key_name(c, t)), m.to_rows()))
            .collect(),
    }
}

fn chain_from(b: &ChainBody) -> Result<ChainComplex, LoadError> {
    let groups: Vec<CyclicSum> = b.groups.iter().map(GroupDesc::to_sum).collect::<Result<_, _>>()?;
    let orientation = match b.orientation {
        OrientationDesc::Chain => Orientation::Chain,
        OrientationDesc::Cochain => Orientation::Cochain,
    };
    if b.differentials.len() != groups.len().saturating_sub(1) {
        return Err(parse_err(format!(
            "{} groups need {} differentials, found {}",
            groups.len(),
            groups.len().saturating_sub(1),
            b.differentials.len()
        )));
    }
    let differentials = b
        .differentials
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let (s, t) = match orientation {
                Orientation::Chain => (i + 1, i),
                Orientation::Cochain => (i, i + 1),
            };
            matrix_from(m, (groups[t].ngens(), groups[s].ngens()), &format!("differential {i}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ChainComplex::new(orientation, groups, differentials).map_err(|source| LoadError::Invalid { kind: "chain-complex", source })
}

fn chain_body(c: &ChainComplex) -> ChainBody {
    ChainBody {
        orientation: match c.orientation() {
            Orientation::Chain => OrientationDesc::Chain,
            Orientation::Cochain => OrientationDesc::Cochain,
        },
        groups: c.groups().iter().map(GroupDesc::of_sum).collect(),
        differentials: c.differentials().iter().map(Matrix::to_rows).collect(),
    }
}

fn morphism_from(b: &MorphismBody) -> Result<SimplicialMorphism, LoadError> {
    let source = sset_from(&b.source)?;
    let target = sset_from(&b.target)?;
    if source.truncation() != target.truncation() {
        return Err(parse_err("source and target have different truncations"));
    }
    if b.components.len() != source.truncation() + 1 {
        return Err(parse_err(format!("expected {} components", source.truncation() + 1)));
    }
    let components = b
        .components
        .iter()
        .enumerate()
        .map(|(l, m)| id_table(m, source.names(l), &index_of(target.names(l)), &format!("component {l}")))
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMorphism::new(source, target, components).map_err(|source| LoadError::Invalid { kind: "morphism", source })
}

fn morphism_body(f: &SimplicialMorphism) -> MorphismBody {
    let (x, y) = (f.source(), f.target());
    MorphismBody {
        source: sset_body(x),
        target: sset_body(y),
        components: (0..=x.truncation())
            .map(|l| (0..x.level_size(l)).map(|s| (x.name(l, s).to_string(), y.name(l, f.apply(l, s)).to_string())).collect())
            .collect(),
    }
}

impl Raw {
    fn into_document(self) -> Result<Document, LoadError> {
        Ok(match self {
            Raw::SimplicialSet(b) => Document::SimplicialSet(sset_from(&b)?),
            Raw::SimplicialAbelianGroup(b) => Document::SimplicialAbelianGroup(sag_from(&b)?),
            Raw::Groupoid(b) => Document::Groupoid(groupoid_from(&b)?),
            Raw::LocalSystem(b) => Document::LocalSystem(local_system_from(&b)?),
            Raw::Cover(b) => Document::Cover(cover_from(&b)?),
            Raw::Presheaf(b) => {
                let (c, f) = presheaf_from(&b)?;
                Document::Presheaf(c, f)
            }
            Raw::ChainComplex(b) => Document::ChainComplex(chain_from(&b)?),
            Raw::Morphism(b) => Document::Morphism(morphism_from(&b)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hgk_core::abelian::em_space;
    use hgk_core::cech::cech_nerve;
    use hgk_core::groupoid::local_system_total;
    use hgk_core::sset::boundary;

    fn roundtrip(doc: Document) {
        let text = doc.to_canonical_string();
        let back = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", doc.kind()));
        assert_eq!(back.to_canonical_string(), text, "{}", doc.kind());
    }

    fn cyclic4() -> FiniteCover {
        FiniteCover::from_names(&["a", "b", "c", "d"], &[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "a"]]).unwrap()
    }

    #[test]
    fn every_kind_roundtrips() {
        let z2 = FiniteGroupoid::cyclic_group(2);
        roundtrip(Document::SimplicialSet(z2.nerve(3)));
        roundtrip(Document::SimplicialSet(boundary(0, 2)));
        roundtrip(Document::Groupoid(FiniteGroupoid::symmetric_group(3)));
        roundtrip(Document::SimplicialAbelianGroup(em_space(&FGAbelianGroup::cyclic(3), 1, 3)));
        let bits = vec!["0".to_string(), "1".to_string()];
        let ls = LocalSystemData::new(z2.nerve(2), vec![bits], vec![vec![0, 1], vec![1, 0]]).unwrap();
        roundtrip(Document::Morphism(local_system_total(&ls)));
        roundtrip(Document::LocalSystem(ls));
        let c = cyclic4();
        roundtrip(Document::Presheaf(c.clone(), Presheaf::functions(&c, &CyclicSum::new(vec![2]))));
        roundtrip(Document::Morphism(cech_nerve(&c, 2)));
        roundtrip(Document::Cover(c));
        let two = Matrix::from_rows(1, &[vec![2]]);
        let cx = ChainComplex::new(Orientation::Cochain, vec![CyclicSum::new(vec![0]); 2], vec![two]).unwrap();
        roundtrip(Document::ChainComplex(cx));
    }

    #[test]
    fn group_descriptors() {
        assert_eq!(GroupDesc::of_sum(&CyclicSum::new(vec![0, 2, 4])), GroupDesc::Canonical { rank: 1, torsion: vec![2, 4] });
        assert_eq!(GroupDesc::of_sum(&CyclicSum::new(vec![2, 0])), GroupDesc::Cyclic { cyclic: vec![2, 0] });
        assert_eq!(GroupDesc::of_sum(&CyclicSum::new(vec![2, 3])), GroupDesc::Cyclic { cyclic: vec![2, 3] });
        assert_eq!(parse_group("Z^2 + Z/3").unwrap(), CyclicSum::new(vec![0, 0, 3]));
        assert_eq!(parse_group("0").unwrap(), CyclicSum::zero());
        assert!(parse_group("Q").is_err());
        assert!(parse_group("Z/0").is_err());
    }

    #[test]
    fn parse_and_invariant_errors_differ() {
        assert!(matches!(parse("{"), Err(LoadError::Parse(_))));
        assert!(matches!(parse(r#"{"kind": "sheaf", "body": {}}"#), Err(LoadError::Parse(_))));
        let cover = r#"{"kind": "cover", "body": {"ambient": ["a", "b"], "pieces": {"0": ["a"]}}}"#;
        assert!(matches!(parse(cover), Err(LoadError::Invalid { kind: "cover", .. })));
        let unknown = r#"{"kind": "cover", "body": {"ambient": ["a"], "pieces": {"0": ["z"]}}}"#;
        assert!(matches!(parse(unknown), Err(LoadError::Parse(_))));
        let chain = r#"{"kind": "chain-complex", "body": {"groups": [{"rank": 1, "torsion": []}], "differentials": [], "extra": 1}}"#;
        assert!(matches!(parse(chain), Err(LoadError::Parse(_))));
    }

    #[test]
    fn numeric_labels_keep_numeric_order() {
        let pieces: Vec<Vec<&str>> = (0..11).map(|_| vec!["a"]).collect();
        let refs: Vec<&[&str]> = pieces.iter().map(|p| p.as_slice()).collect();
        let c = FiniteCover::from_names(&["a"], &refs).unwrap();
        let back = parse(&Document::Cover(c.clone()).to_canonical_string()).unwrap();
        match back {
            Document::Cover(b) => assert_eq!(b.labels(), c.labels()),
            _ => unreachable!(),
        }
    }
}
