//! Run reports: a deterministic JSON form and a human-readable form.

use std::fmt::Write as _;
use std::time::Duration;

use hgk_core::{CheckReport, Failure, FailureKind, SimplicialSet};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Lines shown only in the human format.
    #[serde(skip)]
    pub summary: Vec<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            status: Status::Pass,
            exit_code: exit::PASS,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            result: None,
            error: None,
            summary: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn error(command: Vec<String>, code: i32, message: impl Into<String>) -> Self {
        let mut r = Self::new(command);
        r.fail_with(code, message);
        r
    }

    pub fn fail_with(&mut self, code: i32, message: impl Into<String>) {
        self.status = if code == exit::FAIL { Status::Fail } else { Status::Error };
        self.exit_code = code;
        self.error = Some(message.into());
    }

    pub fn verdict(&mut self, check: impl Into<String>, passed: bool, detail: Option<String>) {
        self.verdicts.push(Verdict { check: check.into(), passed, detail });
        if !passed && self.status == Status::Pass {
            self.status = Status::Fail;
            self.exit_code = exit::FAIL;
        }
    }

    /// Records a structural check, naming the simplices of every witness.
    /// `base` names the simplices of the target for relative checks.
    pub fn check(&mut self, name: &str, report: &CheckReport, source: &SimplicialSet, base: Option<&SimplicialSet>) {
        let detail = (!report.passed()).then(|| format!("{} failing matching map(s)", report.failures.len()));
        self.verdict(name, report.passed(), detail);
        self.witnesses.extend(report.failures.iter().map(|f| witness(f, source, base)));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(out, "{}: {status}", self.command.join(" "));
        for v in &self.verdicts {
            let mark = if v.passed { "ok  " } else { "FAIL" };
            match &v.detail {
                Some(d) => _ = writeln!(out, "  [{mark}] {} ({d})", v.check),
                None => _ = writeln!(out, "  [{mark}] {}", v.check),
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness: {}", describe(w));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(out, "  time: {:.3} ms", self.wall_time.as_secs_f64() * 1e3);
        out
    }
}

fn name(x: &SimplicialSet, level: usize, s: usize) -> String {
    x.name(level, s).to_string()
}

fn witness(f: &Failure, x: &SimplicialSet, base: Option<&SimplicialSet>) -> Value {
    let m = f.level;
    let shape = match f.index {
        Some(k) => format!("horn {m},{k}"),
        None => format!("boundary {m}"),
    };
    let faces = |tuple: &[usize]| -> Vec<String> {
        if m == 0 {
            return Vec::new();
        }
        tuple.iter().map(|&s| name(x, m - 1, s)).collect()
    };
    let base_name = |b: &Option<usize>| -> Value {
        match (b, base) {
            (Some(b), Some(y)) => Value::String(name(y, m, *b)),
            _ => Value::Null,
        }
    };
    match &f.kind {
        FailureKind::MissingFiller { tuple, base: b } => json!({
            "kind": "missing-filler", "level": m, "shape": shape, "faces": faces(tuple), "base": base_name(b),
        }),
        FailureKind::NonUniqueFiller { tuple, base: b, simplices } => json!({
            "kind": "non-unique-filler", "level": m, "shape": shape, "faces": faces(tuple), "base": base_name(b),
            "simplices": simplices.iter().map(|&s| name(x, m, s)).collect::<Vec<_>>(),
        }),
        FailureKind::NotCover { detail } => json!({
            "kind": "not-cover", "level": m, "shape": shape, "detail": detail,
        }),
        FailureKind::NonzeroNormalized { group } => json!({
            "kind": "nonzero-normalized", "level": m, "group": group,
        }),
    }
}

fn describe(w: &Value) -> String {
    let kind = w["kind"].as_str().unwrap_or("?");
    let level = &w["level"];
    match kind {
        "nonzero-normalized" => format!("normalized complex is {} in degree {level}", w["group"].as_str().unwrap_or("?")),
        "not-cover" => format!("{}: {}", w["shape"].as_str().unwrap_or("?"), w["detail"].as_str().unwrap_or("")),
        _ => {
            let faces: Vec<&str> = w["faces"].as_array().map(|a| a.iter().filter_map(Value::as_str).collect()).unwrap_or_default();
            let mut s = format!("{} {kind} for faces ({})", w["shape"].as_str().unwrap_or("?"), faces.join(", "));
            if let Some(b) = w["base"].as_str() {
                let _ = write!(s, " over {b}");
            }
            if let Some(fs) = w["simplices"].as_array() {
                let fs: Vec<&str> = fs.iter().filter_map(Value::as_str).collect();
                let _ = write!(s, ": {}", fs.join(", "));
            }
            s
        }
    }
}
