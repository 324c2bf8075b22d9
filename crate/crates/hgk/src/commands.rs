//! The three commands, each producing a [`RunReport`].

use std::path::{Path, PathBuf};

use hgk_core::abelian::{denormalize, em_space, Orientation};
use hgk_core::cech::{cech_cohomology, cech_nerve, verify_nerve_trivial, Presheaf};
use hgk_core::groupoid::{fundamental_groupoid, local_system_total};
use hgk_core::matching::{is_cartesian, is_kan, is_n_hypergroupoid, is_relative_hypergroupoid, is_trivial_relative};
use hgk_core::sset::{boundary, coskeleton_limited, hom_set_with, HomOrder};
use hgk_core::{EnumLimit, FiniteSets, SimplicialSet};
use serde_json::{json, Value};

use crate::document::{parse, parse_group, Document, GroupDesc, LoadError};
use crate::report::{exit, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Kan,
    Hypergroupoid,
    Cartesian,
    TrivialRelative,
    RelativeHypergroupoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum What {
    Nerve,
    Pi,
    Homology,
    Em,
    Cech,
    Cosk,
    HomCount,
    Normalize,
    Denormalize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SheafKind {
    #[default]
    Constant,
    Functions,
}

#[derive(Debug, Clone)]
pub struct ComputeArgs {
    pub file: Option<PathBuf>,
    pub what: What,
    pub n: Option<usize>,
    pub coeff: Option<String>,
    pub out: Option<PathBuf>,
    pub truncation: Option<usize>,
    pub source: Option<PathBuf>,
    pub sheaf: SheafKind,
}

#[derive(Debug, Clone)]
pub enum Command {
    Validate { file: PathBuf },
    Check { file: PathBuf, kind: CheckKind, n: usize, upto: Option<usize> },
    Compute(ComputeArgs),
}

/// Settings read from the environment.
#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    pub max_enum: Option<u64>,
}

impl Settings {
    pub fn from_env() -> Result<Self, String> {
        match std::env::var("HGK_MAX_ENUM") {
            Ok(v) => v
                .trim()
                .parse()
                .map(|n| Settings { max_enum: Some(n) })
                .map_err(|_| format!("HGK_MAX_ENUM must be a non-negative integer, got {v:?}")),
            Err(_) => Ok(Settings::default()),
        }
    }

    fn limit(&self) -> EnumLimit {
        self.max_enum.map_or(EnumLimit::UNLIMITED, EnumLimit)
    }
}

// An early exit with its status code.
struct Abort {
    code: i32,
    message: String,
}

impl Abort {
    fn usage(message: impl Into<String>) -> Self {
        Abort { code: exit::USAGE, message: message.into() }
    }

    fn core(module: &str, e: hgk_core::Error) -> Self {
        Abort::usage(format!("{module}: {e}"))
    }
}

type Step<T> = Result<T, Abort>;

fn read(path: &Path) -> Step<String> {
    std::fs::read_to_string(path).map_err(|e| Abort::usage(format!("cannot read {}: {e}", path.display())))
}

// Invalid documents fail `validate` and are a precondition error elsewhere.
fn load(path: &Path, invalid_code: i32) -> Step<Document> {
    parse(&read(path)?).map_err(|e| match e {
        LoadError::Parse(_) => Abort { code: exit::PARSE, message: format!("{}: {e}", path.display()) },
        LoadError::Invalid { .. } => Abort { code: invalid_code, message: format!("{}: {e}", path.display()) },
    })
}

pub fn execute(command: &Command, echo: Vec<String>, settings: Settings) -> RunReport {
    let mut report = RunReport::new(echo);
    let outcome = match command {
        Command::Validate { file } => validate(file, &mut report),
        Command::Check { file, kind, n, upto } => check(file, *kind, *n, *upto, &mut report),
        Command::Compute(args) => compute(args, settings, &mut report),
    };
    if let Err(a) = outcome {
        report.fail_with(a.code, a.message);
    }
    report
}

fn validate(file: &Path, report: &mut RunReport) -> Step<()> {
    let doc = match load(file, exit::FAIL) {
        Err(a) if a.code == exit::FAIL => {
            report.verdict("structural invariants", false, Some(a.message));
            return Ok(());
        }
        other => other?,
    };
    report.verdict(format!("{} schema", doc.kind()), true, None);
    report.verdict("structural invariants", true, None);
    report.summary.push(describe_document(&doc));
    Ok(())
}

fn describe_document(doc: &Document) -> String {
    match doc {
        Document::SimplicialSet(x) => format!("simplicial set, level sizes {:?}", x.level_sizes()),
        Document::SimplicialAbelianGroup(a) => {
            let levels: Vec<String> = a.levels().iter().map(|g| g.classify().to_string()).collect();
            format!("simplicial abelian group, levels [{}]", levels.join(", "))
        }
        Document::Groupoid(g) => format!("groupoid, {} objects, {} arrows", g.objects().len(), g.arrows().len()),
        Document::LocalSystem(d) => format!("local system over a base with level sizes {:?}", d.base().level_sizes()),
        Document::Cover(c) => format!("cover of {} points by {} pieces", c.ambient().len(), c.len()),
        Document::Presheaf(c, f) => format!("presheaf on {} intersections of a {}-piece cover", f.values().len(), c.len()),
        Document::ChainComplex(c) => format!("chain complex of length {}", c.len()),
        Document::Morphism(f) => {
            format!("morphism, source sizes {:?}, target sizes {:?}", f.source().level_sizes(), f.target().level_sizes())
        }
    }
}

fn mismatch(doc: &Document, wanted: &str) -> Abort {
    Abort::usage(format!("this operation needs {wanted}, got a {} document", doc.kind()))
}

fn check(file: &Path, kind: CheckKind, n: usize, upto: Option<usize>, report: &mut RunReport) -> Step<()> {
    let doc = load(file, exit::USAGE)?;
    let module = "matching-kan";
    let site = FiniteSets;
    match (kind, &doc) {
        (CheckKind::Kan, Document::SimplicialSet(_) | Document::SimplicialAbelianGroup(_)) => {
            let x = match &doc {
                Document::SimplicialSet(x) => x.clone(),
                Document::SimplicialAbelianGroup(a) => a.underlying_sset().map_err(|e| Abort::core("abelian", e))?,
                _ => unreachable!(),
            };
            let upto = upto.unwrap_or(x.truncation());
            let r = is_kan(&x, upto).map_err(|e| Abort::core(module, e))?;
            report.check(&format!("kan through level {upto}"), &r, &x, None);
        }
        (CheckKind::Hypergroupoid, Document::SimplicialSet(x)) => {
            let r = is_n_hypergroupoid(x, n).map_err(|e| Abort::core(module, e))?;
            report.check(&format!("{n}-hypergroupoid"), &r, x, None);
        }
        (CheckKind::Hypergroupoid, Document::SimplicialAbelianGroup(a)) => {
            let r = a.is_abelian_hypergroupoid(n).map_err(|e| Abort::core("abelian", e))?;
            report.check(&format!("{n}-hypergroupoid (normalized complex)"), &r, &boundary(0, a.truncation()), None);
        }
        (CheckKind::Cartesian, Document::Morphism(_) | Document::LocalSystem(_)) => {
            let f = match &doc {
                Document::Morphism(f) => f.clone(),
                Document::LocalSystem(d) => local_system_total(d),
                _ => unreachable!(),
            };
            let r = is_cartesian(&f).map_err(|e| Abort::core(module, e))?;
            report.check("cartesian", &r, f.source(), Some(f.target()));
        }
        (CheckKind::TrivialRelative, Document::Cover(c)) => {
            let r = verify_nerve_trivial(c).map_err(|e| Abort::core("cech", e))?;
            let f = cech_nerve(c, 3);
            report.check("Čech nerve is a trivial relative 1-hypergroupoid", &r, f.source(), Some(f.target()));
        }
        (CheckKind::TrivialRelative, Document::Morphism(f)) => {
            let r = is_trivial_relative(f, n, &site).map_err(|e| Abort::core(module, e))?;
            report.check(&format!("trivial relative {n}-hypergroupoid"), &r, f.source(), Some(f.target()));
        }
        (CheckKind::RelativeHypergroupoid, Document::Morphism(_) | Document::LocalSystem(_)) => {
            let f = match &doc {
                Document::Morphism(f) => f.clone(),
                Document::LocalSystem(d) => local_system_total(d),
                _ => unreachable!(),
            };
            let r = is_relative_hypergroupoid(&f, n, &site).map_err(|e| Abort::core(module, e))?;
            report.check(&format!("relative {n}-hypergroupoid"), &r, f.source(), Some(f.target()));
        }
        (CheckKind::Kan | CheckKind::Hypergroupoid, _) => return Err(mismatch(&doc, "a simplicial set or simplicial abelian group")),
        (CheckKind::TrivialRelative, _) => return Err(mismatch(&doc, "a morphism or a cover")),
        (CheckKind::Cartesian | CheckKind::RelativeHypergroupoid, _) => {
            return Err(mismatch(&doc, "a morphism or a local system"))
        }
    }
    Ok(())
}

fn groups_value(groups: &[hgk_core::abelian::FGAbelianGroup]) -> Value {
    serde_json::to_value(groups.iter().map(GroupDesc::of_group).collect::<Vec<_>>()).expect("descriptors serialize")
}

fn group_lines(prefix: &str, groups: &[hgk_core::abelian::FGAbelianGroup]) -> Vec<String> {
    groups.iter().enumerate().map(|(i, g)| format!("{prefix}{i} = {g}")).collect()
}

fn emit(doc: &Document, out: Option<&Path>, mut extra: serde_json::Map<String, Value>) -> Step<Value> {
    match out {
        Some(path) => {
            std::fs::write(path, doc.to_canonical_string())
                .map_err(|e| Abort::usage(format!("cannot write {}: {e}", path.display())))?;
            extra.insert("written".into(), Value::String(path.display().to_string()));
        }
        None => {
            extra.insert("document".into(), doc.to_value());
        }
    }
    Ok(Value::Object(extra))
}

fn sizes(x: &SimplicialSet) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("level-sizes".into(), json!(x.level_sizes()));
    m
}

fn compute(args: &ComputeArgs, settings: Settings, report: &mut RunReport) -> Step<()> {
    let doc = match (&args.file, args.what) {
        (None, What::Em) => None,
        (Some(_), What::Em) => return Err(Abort::usage("em takes no input file; use --coeff, --n and --truncation")),
        (Some(f), _) => Some(load(f, exit::USAGE)?),
        (None, _) => return Err(Abort::usage("this computation needs an input file")),
    };
    let out = args.out.as_deref();
    let coeff = |default: &str| {
        parse_group(args.coeff.as_deref().unwrap_or(default)).map_err(|e| Abort::usage(format!("--coeff: {e}")))
    };
    let result = match (args.what, doc.as_ref()) {
        (What::Nerve, Some(Document::Groupoid(g))) => {
            let t = args.truncation.or(args.n).unwrap_or(3);
            let x = g.nerve(t);
            report.summary.push(format!("level sizes {:?}", x.level_sizes()));
            let extra = sizes(&x);
            emit(&Document::SimplicialSet(x), out, extra)?
        }
        (What::Pi, Some(Document::SimplicialSet(x))) => {
            let g = fundamental_groupoid(x).map_err(|e| Abort::core("groupoids", e))?;
            report.summary.push(format!("{} objects, {} arrows", g.objects().len(), g.arrows().len()));
            emit(&Document::Groupoid(g), out, serde_json::Map::new())?
        }
        (What::Pi | What::Homology, Some(Document::SimplicialAbelianGroup(a))) => {
            let pi = a.homotopy_groups();
            report.summary.extend(group_lines("pi_", &pi));
            json!({ "groups": groups_value(&pi) })
        }
        (What::Homology, Some(Document::ChainComplex(c))) => {
            let h = c.homology();
            let prefix = if c.orientation() == Orientation::Chain { "H_" } else { "H^" };
            report.summary.extend(group_lines(prefix, &h));
            json!({ "groups": groups_value(&h) })
        }
        (What::Em, None) => {
            let a = coeff("Z/2")?.classify();
            let n = args.n.ok_or_else(|| Abort::usage("em needs --n"))?;
            let t = args.truncation.unwrap_or(n + 2);
            let k = em_space(&a, n, t);
            let pi = k.homotopy_groups();
            report.summary.push(format!("K({a}, {n}) through level {t}"));
            report.summary.extend(group_lines("pi_", &pi));
            let mut extra = serde_json::Map::new();
            extra.insert("homotopy-groups".into(), groups_value(&pi));
            emit(&Document::SimplicialAbelianGroup(k), out, extra)?
        }
        (What::Cech, Some(Document::Cover(c))) => {
            let a = coeff("Z")?;
            let f = match args.sheaf {
                SheafKind::Constant => Presheaf::constant(c, &a),
                SheafKind::Functions => Presheaf::functions(c, &a),
            };
            cech_result(c, &f, args.n.unwrap_or(2), report)?
        }
        (What::Cech, Some(Document::Presheaf(c, f))) => cech_result(c, f, args.n.unwrap_or(2), report)?,
        (What::Cosk, Some(Document::SimplicialSet(x))) => {
            let m = args.n.ok_or_else(|| Abort::usage("cosk needs --n"))?;
            let t = args.truncation.unwrap_or(x.truncation());
            let c = coskeleton_limited(x, m, t, settings.limit()).map_err(|e| Abort::core("ssets-core", e))?;
            report.summary.push(format!("level sizes {:?}", c.level_sizes()));
            let extra = sizes(&c);
            emit(&Document::SimplicialSet(c), out, extra)?
        }
        (What::HomCount, Some(Document::SimplicialSet(target))) => {
            let path = args.source.as_deref().ok_or_else(|| Abort::usage("hom-count needs --source PATH"))?;
            let source = match load(path, exit::USAGE)? {
                Document::SimplicialSet(s) => s,
                other => return Err(mismatch(&other, "a simplicial set as --source")),
            };
            let maps = hom_set_with(&source, target, HomOrder::Forward, settings.limit())
                .map_err(|e| Abort::core("ssets-core", e))?;
            report.summary.push(format!("{} simplicial maps", maps.len()));
            json!({ "count": maps.len() })
        }
        (What::Normalize, Some(Document::SimplicialAbelianGroup(a))) => {
            let c = a.normalized_complex();
            report.summary.push(format!("normalized complex of length {}", c.len()));
            emit(&Document::ChainComplex(c), out, serde_json::Map::new())?
        }
        (What::Denormalize, Some(Document::ChainComplex(c))) => {
            let t = args.truncation.or(args.n).unwrap_or(c.len().max(3));
            let a = denormalize(c, t).map_err(|e| Abort::core("abelian", e))?;
            let levels: Vec<String> = a.levels().iter().map(|g| g.classify().to_string()).collect();
            report.summary.push(format!("levels [{}]", levels.join(", ")));
            emit(&Document::SimplicialAbelianGroup(a), out, serde_json::Map::new())?
        }
        (what, Some(d)) => return Err(mismatch(d, expected_input(what))),
        (_, None) => unreachable!(),
    };
    report.result = Some(result);
    Ok(())
}

fn expected_input(what: What) -> &'static str {
    match what {
        What::Nerve => "a groupoid",
        What::Pi => "a simplicial set or simplicial abelian group",
        What::Homology => "a chain complex or simplicial abelian group",
        What::Em => "no input",
        What::Cech => "a cover or a presheaf",
        What::Cosk | What::HomCount => "a simplicial set",
        What::Normalize => "a simplicial abelian group",
        What::Denormalize => "a chain complex",
    }
}

fn cech_result(c: &hgk_core::cech::FiniteCover, f: &Presheaf, top: usize, report: &mut RunReport) -> Step<Value> {
    let h = cech_cohomology(c, f, top).map_err(|e| Abort::core("cech", e))?;
    report.summary.extend(group_lines("H^", &h));
    Ok(json!({ "cohomology": groups_value(&h) }))
}

