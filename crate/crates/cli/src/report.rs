//! Report assembly and rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sscurv_core::connection::{non_metricity, torsion};
use sscurv_core::frame::{validate, GeometrySpec, ScalarJet};
use sscurv_core::probes::{Analysis, ProbeResult, ProbeStatus, ProbeValue};
use sscurv_core::soliton::{proof_step_probes, residual, SolitonProblem};
use sscurv_core::{Rat, Result, Tensor};

use crate::format::{geometry_file, GeometryFile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (text, json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub required: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationEntry {
    pub valid: bool,
    pub checks: Vec<CheckEntry>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parallel_xi: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub levi_civita: Tensor,
    pub ssnmc: Tensor,
    pub riemann: Tensor,
    pub hat_riemann: Tensor,
    pub ricci: Tensor,
    pub hat_ricci: Tensor,
    pub scalar: Rat,
    pub hat_scalar: Rat,
    pub torsion: Tensor,
    pub non_metricity: Tensor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum ValueEntry {
    Scalar(Rat),
    Tensor(Tensor),
    List(Vec<ValueEntry>),
}

impl From<&ProbeValue> for ValueEntry {
    fn from(v: &ProbeValue) -> Self {
        match v {
            ProbeValue::Scalar(r) => ValueEntry::Scalar(r.clone()),
            ProbeValue::Tensor(t) => ValueEntry::Tensor(t.clone()),
            ProbeValue::List(l) => ValueEntry::List(l.iter().map(ValueEntry::from).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeEntry {
    pub id: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub lhs: Option<ValueEntry>,
    pub rhs: Option<ValueEntry>,
    pub max_abs_deviation: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&ProbeResult> for ProbeEntry {
    fn from(r: &ProbeResult) -> Self {
        ProbeEntry {
            id: r.id.clone(),
            status: r.status.label().to_string(),
            reason: match &r.status {
                ProbeStatus::Skipped(why) => Some(why.clone()),
                _ => None,
            },
            lhs: r.lhs.as_ref().map(ValueEntry::from),
            rhs: r.rhs.as_ref().map(ValueEntry::from),
            max_abs_deviation: r.max_abs_deviation.clone(),
            note: r.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionEntry {
    pub checks: Vec<CheckEntry>,
    pub conclusion_holds: bool,
    pub satisfied: Vec<String>,
    pub hypotheses_hold: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolitonEntry {
    pub kind: String,
    pub lambda: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    pub is_soliton: bool,
    pub classification: String,
    pub hat_hessian_convention: String,
    pub residual: Tensor,
    pub conclusion: ConclusionEntry,
    pub proof_steps: Vec<ProbeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub geometry: GeometryFile,
    pub validation: ValidationEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Tables>,
    pub probes: Vec<ProbeEntry>,
    pub solitons: Vec<SolitonEntry>,
    pub version: String,
    pub input_digest: String,
}

impl Report {
    /// 1 when any probe failed unexpectedly, or (under `strict`) reported a
    /// known mismatch; 2 when the geometry did not validate; 0 otherwise.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if !self.validation.valid {
            return 2;
        }
        let statuses = self
            .probes
            .iter()
            .chain(self.solitons.iter().flat_map(|s| s.proof_steps.iter()))
            .map(|p| p.status.as_str());
        let mut code = 0;
        for s in statuses {
            match s {
                "fail" => return 1,
                "paper-mismatch" if strict => code = 1,
                _ => {}
            }
        }
        code
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => render_text(self),
        }
    }
}

/// SHA-256 of the canonical geometry JSON (compact, fixed field order).
pub fn input_digest(file: &GeometryFile) -> String {
    let canonical = serde_json::to_string(file).expect("geometry serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// What to include beyond validation.
#[derive(Debug, Clone, Default)]
pub struct ReportRequest {
    pub tables: bool,
    pub probes: Vec<sscurv_core::ProbeId>,
    pub soliton: Option<SolitonProblem>,
}

pub fn validation_entry(spec: &GeometrySpec, notes: &[String]) -> ValidationEntry {
    let v = validate(spec);
    ValidationEntry {
        valid: v.is_valid(),
        checks: v
            .checks
            .iter()
            .map(|c| CheckEntry {
                name: c.name.to_string(),
                passed: c.passed,
                required: c.required,
                detail: c.detail.clone(),
            })
            .collect(),
        warnings: v.warnings.clone(),
        notes: notes.to_vec(),
        parallel_xi: None,
    }
}

pub fn tables(a: &Analysis) -> Tables {
    Tables {
        levi_civita: a.lc.coefficients().clone(),
        ssnmc: a.hat.coefficients().clone(),
        riemann: a.lc_curvature.riemann().clone(),
        hat_riemann: a.hat_curvature.riemann().clone(),
        ricci: a.lc_curvature.ricci().clone(),
        hat_ricci: a.hat_curvature.ricci().clone(),
        scalar: a.lc_curvature.scalar().clone(),
        hat_scalar: a.hat_curvature.scalar().clone(),
        torsion: torsion(&a.hat, &a.spec.frame),
        non_metricity: non_metricity(&a.hat, &a.spec.metric),
    }
}

fn soliton_entry(a: &Analysis, problem: &SolitonProblem) -> Result<SolitonEntry> {
    let v = residual(a, problem)?;
    let steps = proof_step_probes(a, problem)?;
    Ok(SolitonEntry {
        kind: problem.kind.as_str().to_string(),
        lambda: problem.lambda.clone(),
        m: problem.m,
        is_soliton: v.is_soliton,
        classification: v.classification.as_str().to_string(),
        hat_hessian_convention: "vector-gradient: Hess + (xi f) g".to_string(),
        residual: v.residual.clone(),
        conclusion: ConclusionEntry {
            checks: v
                .conclusion
                .checks
                .iter()
                .map(|c| CheckEntry {
                    name: c.name.clone(),
                    passed: c.holds,
                    required: false,
                    detail: c.detail.clone(),
                })
                .collect(),
            conclusion_holds: v.conclusion.conclusion_holds,
            satisfied: v.conclusion.satisfied.clone(),
            hypotheses_hold: v.conclusion.hypotheses_hold,
            note: v.conclusion.note.clone(),
        },
        proof_steps: steps.iter().map(ProbeEntry::from).collect(),
    })
}

/// Validates and, if valid, evaluates everything in `req`. An invalid
/// geometry yields a report with only the validation section filled.
pub fn build_report(
    spec: &GeometrySpec,
    jet: Option<&ScalarJet>,
    notes: &[String],
    req: &ReportRequest,
) -> Result<Report> {
    let geometry = geometry_file(spec, jet);
    let input_digest = input_digest(&geometry);
    let mut validation = validation_entry(spec, notes);
    let mut report = Report {
        geometry,
        validation: validation.clone(),
        tables: None,
        probes: Vec::new(),
        solitons: Vec::new(),
        version: VERSION.to_string(),
        input_digest,
    };
    if !validation.valid {
        return Ok(report);
    }
    let a = Analysis::new(spec.clone())?;
    validation.parallel_xi = Some(a.parallel);
    report.validation = validation;
    if req.tables {
        report.tables = Some(tables(&a));
    }
    report.probes = crate::suite::run_ids(&a, &req.probes)
        .iter()
        .map(ProbeEntry::from)
        .collect();
    if let Some(p) = &req.soliton {
        report.solitons.push(soliton_entry(&a, p)?);
    }
    Ok(report)
}

fn basis(label: &str, i: usize) -> String {
    format!("{label}{}", i + 1)
}

/// `-k1 + 1/2 k3`, or `0`.
pub fn vector_expr(label: &str, v: &[Rat]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = basis(label, i);
        let mag = c.abs();
        let term = if mag == Rat::one() {
            name
        } else {
            format!("{mag} {name}")
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn matrix_lines(out: &mut String, t: &Tensor) {
    let n = t.dim();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| t[[i, j]].to_string()).collect();
        let _ = writeln!(out, "    [{}]", row.join(", "));
    }
}

fn connection_lines(out: &mut String, label: &str, gamma: &Tensor, symbol: &str) {
    let n = gamma.dim();
    for i in 0..n {
        for j in 0..n {
            let v: Vec<Rat> = (0..n).map(|k| gamma[[k, i, j]].clone()).collect();
            let _ = writeln!(
                out,
                "  {symbol}_{{{}}} {} = {}",
                basis(label, i),
                basis(label, j),
                vector_expr(label, &v)
            );
        }
    }
}

fn curvature_lines(out: &mut String, label: &str, r: &Tensor, symbol: &str) {
    let n = r.dim();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v: Vec<Rat> = (0..n).map(|l| r[[l, k, i, j]].clone()).collect();
                let _ = writeln!(
                    out,
                    "  {symbol}({},{}){} = {}",
                    basis(label, i),
                    basis(label, j),
                    basis(label, k),
                    vector_expr(label, &v)
                );
            }
        }
    }
}

fn value_text(v: &ValueEntry) -> String {
    match v {
        ValueEntry::Scalar(r) => r.to_string(),
        ValueEntry::Tensor(t) => {
            let nonzero: Vec<String> = sscurv_core::tensor::multi_indices(t.dim(), t.rank())
                .zip(t.components())
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| {
                    let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                    format!("[{}]={}", idx.join(","), c)
                })
                .collect();
            if nonzero.is_empty() {
                format!("0 ({})", t.signature())
            } else {
                format!("{} ({})", nonzero.join(" "), t.signature())
            }
        }
        ValueEntry::List(l) => {
            let parts: Vec<String> = l.iter().map(value_text).collect();
            format!("<{}>", parts.join("; "))
        }
    }
}

fn probe_line(out: &mut String, p: &ProbeEntry, indent: &str) {
    let tag = match p.status.as_str() {
        "pass" => "PASS",
        "fail" => "FAIL",
        "skipped" => "SKIP",
        _ => "MISMATCH",
    };
    let _ = write!(out, "{indent}{tag:<8} {}", p.id);
    if let Some(reason) = &p.reason {
        let _ = write!(out, " ({reason})");
    }
    if tag == "FAIL" || tag == "MISMATCH" {
        let _ = write!(out, "  deviation {}", p.max_abs_deviation);
        if let (Some(l), Some(r)) = (&p.lhs, &p.rhs) {
            let _ = write!(out, "\n{indent}         lhs: {}\n{indent}         rhs: {}", value_text(l), value_text(r));
        }
    }
    out.push('\n');
    if let Some(note) = &p.note {
        let _ = writeln!(out, "{indent}         note: {note}");
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let label = r.geometry.label.clone().unwrap_or_else(|| "e".into());
    let _ = writeln!(out, "geometry: {} (dim {}, frame {}1..{}{})", r.geometry.name, r.geometry.dim, label, label, r.geometry.dim);
    let v = &r.validation;
    let _ = writeln!(out, "validation: {}", if v.valid { "valid" } else { "INVALID" });
    for c in &v.checks {
        let mark = if c.passed { "ok" } else if c.required { "FAILED" } else { "no" };
        let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.detail);
    }
    if let Some(p) = v.parallel_xi {
        let _ = writeln!(out, "  xi parallel: {p}");
    }
    for n in &v.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    for w in &v.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }

    if let Some(t) = &r.tables {
        let _ = writeln!(out, "\nLevi-Civita connection:");
        connection_lines(&mut out, &label, &t.levi_civita, "∇");
        let _ = writeln!(out, "SSNMC:");
        connection_lines(&mut out, &label, &t.ssnmc, "∇̂");
        let _ = writeln!(out, "curvature (Levi-Civita):");
        curvature_lines(&mut out, &label, &t.riemann, "R");
        let _ = writeln!(out, "  Ricci tensor S:");
        matrix_lines(&mut out, &t.ricci);
        let _ = writeln!(out, "  scalar curvature r = {}", t.scalar);
        let _ = writeln!(out, "curvature (SSNMC):");
        curvature_lines(&mut out, &label, &t.hat_riemann, "R̂");
        let _ = writeln!(out, "  Ricci tensor Ŝ:");
        matrix_lines(&mut out, &t.hat_ricci);
        let _ = writeln!(out, "  scalar curvature r̂ = {}", t.hat_scalar);
        let _ = writeln!(out, "torsion (SSNMC):");
        let n = t.torsion.dim();
        for i in 0..n {
            for j in i + 1..n {
                let vals: Vec<Rat> = (0..n).map(|k| t.torsion[[k, i, j]].clone()).collect();
                let _ = writeln!(out, "  T̂({},{}) = {}", basis(&label, i), basis(&label, j), vector_expr(&label, &vals));
            }
        }
        let _ = writeln!(out, "non-metricity (SSNMC), nonzero components:");
        let mut any = false;
        for idx in sscurv_core::tensor::multi_indices(n, 3) {
            let c = &t.non_metricity[&idx[..]];
            if !c.is_zero() {
                any = true;
                let _ = writeln!(
                    out,
                    "  (∇̂_{{{}}} g)({},{}) = {c}",
                    basis(&label, idx[0]),
                    basis(&label, idx[1]),
                    basis(&label, idx[2])
                );
            }
        }
        if !any {
            let _ = writeln!(out, "  none");
        }
    }

    if !r.probes.is_empty() {
        let _ = writeln!(out, "\nprobes:");
        for p in &r.probes {
            probe_line(&mut out, p, "  ");
        }
    }

    for s in &r.solitons {
        let _ = write!(out, "\nsoliton {} with lambda = {}", s.kind, s.lambda);
        if let Some(m) = s.m {
            let _ = write!(out, ", m = {m}");
        }
        let _ = writeln!(
            out,
            ": {} ({})",
            if s.is_soliton { "soliton" } else { "not a soliton" },
            s.classification
        );
        let _ = writeln!(out, "  residual:");
        matrix_lines(&mut out, &s.residual);
        let _ = writeln!(out, "  conclusion: {}", s.conclusion.note);
        for c in &s.conclusion.checks {
            let _ = writeln!(out, "    [{}] {}: {}", if c.passed { "yes" } else { "no" }, c.name, c.detail);
        }
        let _ = writeln!(out, "  proof steps:");
        for p in &s.proof_steps {
            probe_line(&mut out, p, "    ");
        }
    }

    let _ = writeln!(out, "\nversion {}  input sha256 {}", r.version, r.input_digest);
    out
}
