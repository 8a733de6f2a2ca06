//! One test per acceptance criterion. Each prints a single PASS/FAIL line to
//! the raw stderr handle so the line shows up even when output is captured.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use sscurv_harness::fuzz::FuzzReport;
use sscurv_harness::report::{Report, ValueEntry};
use sscurv_core::tensor::delta;
use sscurv_core::{Rat, Tensor};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn sscurv(args: &[&str]) -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sscurv"))
        .args(args)
        .output()
        .expect("binary runs");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        elapsed: start.elapsed(),
    }
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn report(out: &Outcome) -> Report {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stderr))
}

struct Criterion {
    number: u32,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Self {
        Criterion {
            number,
            title,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(self) {
        let line = if self.failures.is_empty() {
            format!("criterion {}: PASS  {}", self.number, self.title)
        } else {
            format!(
                "criterion {}: FAIL  {}: {}",
                self.number,
                self.title,
                self.failures.join("; ")
            )
        };
        let _ = writeln!(std::io::stderr(), "{line}");
        assert!(self.failures.is_empty(), "{line}");
    }
}

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn probe<'a>(rep: &'a Report, id: &str) -> &'a sscurv_harness::report::ProbeEntry {
    rep.probes
        .iter()
        .find(|p| p.id == id)
        .unwrap_or_else(|| panic!("probe {id} missing"))
}

#[test]
fn criterion_1_example1_reproduction() {
    let mut c = Criterion::new(1, "example1 tables reproduced exactly");
    let out = sscurv(&["compute", "--builtin", "example1", "--format", "json"]);
    c.check(out.code == 0, format!("exit code {}", out.code));
    c.check(out.elapsed < Duration::from_secs(1), format!("took {:?}", out.elapsed));
    let rep = report(&out);
    let t = rep.tables.expect("tables present");

    // Γ^k_{ij}: ∇_{k_i} k_j = Σ_k Γ^k_{ij} k_k, stored [k, i, j], 0-based.
    let lc_expected = [
        ((0, 2), [-1, 0, 0]),
        ((0, 0), [0, 0, 1]),
        ((1, 1), [0, 0, 1]),
        ((1, 2), [0, -1, 0]),
        ((0, 1), [0, 0, 0]),
        ((1, 0), [0, 0, 0]),
        ((2, 0), [0, 0, 0]),
        ((2, 1), [0, 0, 0]),
        ((2, 2), [0, 0, 0]),
    ];
    for ((i, j), v) in lc_expected {
        for k in 0..3 {
            c.check(
                t.levi_civita[[k, i, j]] == r(v[k]),
                format!("Levi-Civita nabla_k{} k{} component {}", i + 1, j + 1, k + 1),
            );
        }
    }
    let hat_expected = [((0, 2), [0, 0, 0]), ((2, 2), [0, 0, 1])];
    for ((i, j), v) in hat_expected {
        for k in 0..3 {
            c.check(
                t.ssnmc[[k, i, j]] == r(v[k]),
                format!("SSNMC nabla_k{} k{} component {}", i + 1, j + 1, k + 1),
            );
        }
    }
    // R(k_i,k_j)k_k = Σ_l R^l_{kij} k_l.
    let curvature = [
        ((0, 1, 2), [0, 0, 0]),
        ((1, 2, 2), [0, -1, 0]),
        ((0, 2, 2), [-1, 0, 0]),
        ((0, 1, 1), [-1, 0, 0]),
        ((1, 2, 1), [0, 0, 1]),
        ((0, 2, 1), [0, 0, 0]),
        ((0, 1, 0), [0, 1, 0]),
        ((1, 2, 0), [0, 0, 0]),
        ((0, 2, 0), [0, 0, 1]),
    ];
    for ((i, j, k), v) in curvature {
        for l in 0..3 {
            c.check(
                t.riemann[[l, k, i, j]] == r(v[l]),
                format!("R(k{},k{})k{} component {}", i + 1, j + 1, k + 1, l + 1),
            );
        }
    }
    let minus_two_id = Tensor::from_fn(3, t.ricci.slots(), |x| r(-2) * delta(x[0], x[1]));
    c.check(t.ricci == minus_two_id, "S = -2 id");
    c.check(t.scalar == r(-6), format!("r = {}", t.scalar));
    c.check(
        t.torsion[[0, 0, 2]] == r(1) && t.torsion[[1, 0, 2]].is_zero() && t.torsion[[2, 0, 2]].is_zero(),
        "torsion(k1,k3) = k1",
    );
    c.check(t.non_metricity[[0, 0, 2]] == r(-1), "(hat-nabla_k1 g)(k1,k3) = -1");
    c.finish();
}

#[test]
fn criterion_2_general_identity_suite() {
    let mut c = Criterion::new(2, "general identities pass on example1, h2xr, flat");
    let ids = "A1-torsion,B2,B3,first-Bianchi,LC-conformal-vanishes";
    for name in ["example1", "h2xr", "flat"] {
        let out = sscurv(&["probe", "--builtin", name, "--ids", ids, "--format", "json"]);
        c.check(out.code == 0, format!("{name}: exit code {}", out.code));
        let rep = report(&out);
        c.check(rep.probes.len() == 5, format!("{name}: {} probes ran", rep.probes.len()));
        for p in &rep.probes {
            c.check(p.status == "pass", format!("{name}: {} is {}", p.id, p.status));
        }
    }
    c.finish();
}

#[test]
fn criterion_3_parallel_suite_on_h2xr() {
    let mut c = Criterion::new(3, "h2xr parallel suite, mismatches only B10 and B17");
    let out = sscurv(&["probe", "--builtin", "h2xr", "--suite", "all", "--format", "json"]);
    let rep = report(&out);
    for id in ["B5", "B6", "B7", "B8", "B9", "B11", "B12", "B13", "B15", "B20", "B22", "B23"] {
        let p = probe(&rep, id);
        c.check(
            p.status == "pass",
            format!("{id} is {} (deviation {})", p.status, p.max_abs_deviation),
        );
    }
    let b10 = probe(&rep, "B10");
    c.check(b10.status == "paper-mismatch", format!("B10 is {}", b10.status));
    c.check(b10.lhs == Some(ValueEntry::Scalar(r(0))), "B10 computed hat-r = 0");
    c.check(b10.rhs == Some(ValueEntry::Scalar(r(-4))), "B10 reference r - 2 = -4");
    let b17 = probe(&rep, "B17");
    c.check(b17.status == "paper-mismatch", format!("B17 is {}", b17.status));
    match &b17.lhs {
        Some(ValueEntry::Tensor(q)) => c.check(
            (0..3).all(|l| q[[l, 0]] == -delta(l, 0)),
            "B17 computed hat-Q e1 = -e1",
        ),
        other => c.check(false, format!("B17 lhs is {other:?}")),
    }
    let mismatched: Vec<&str> = rep
        .probes
        .iter()
        .filter(|p| p.status == "paper-mismatch")
        .map(|p| p.id.as_str())
        .collect();
    c.check(
        mismatched == ["B10", "B17"],
        format!("mismatching probes are {mismatched:?}"),
    );
    c.finish();
}

#[test]
fn criterion_4_soliton_checks() {
    let mut c = Criterion::new(4, "soliton residuals and conclusions");

    let out = sscurv(&[
        "soliton", "--builtin", "h2xr", "--type", "yamabe", "--lambda", "0", "--format", "json",
    ]);
    let rep = report(&out);
    let s = &rep.solitons[0];
    c.check(s.is_soliton, "(i) h2xr Yamabe zero jet is a soliton");
    c.check(
        s.conclusion.satisfied.iter().any(|d| d == "trivial-jet"),
        format!("(i) satisfied disjuncts {:?}", s.conclusion.satisfied),
    );

    let jet = fixture("identity_jet.json");
    let out = sscurv(&[
        "soliton", "--builtin", "flat", "--xi", "0,0,0", "--jet", &jet, "--type", "ricci",
        "--lambda", "-1", "--format", "json",
    ]);
    let rep = report(&out);
    c.check(rep.solitons[0].is_soliton, "(ii) flat Gaussian Ricci soliton");

    let out = sscurv(&[
        "soliton", "--builtin", "h2xr", "--type", "ricci", "--lambda", "-2", "--format", "json",
    ]);
    let rep = report(&out);
    let s = &rep.solitons[0];
    c.check(!s.is_soliton, "(iii) h2xr Ricci lambda -2 is not a soliton");
    let want = Tensor::from_fn(3, s.residual.slots(), |x| {
        if x[0] == x[1] {
            [r(-3), r(-3), r(0)][x[0]].clone()
        } else {
            Rat::zero()
        }
    });
    c.check(s.residual == want, format!("(iii) residual {:?}", s.residual));
    c.finish();
}

#[test]
fn criterion_5_fuzzed_invariants() {
    let mut c = Criterion::new(5, "fuzz seed 42, 1000 candidates");
    let general_ids = ["A1-torsion", "B2", "B3", "B15", "first-Bianchi", "LC-conformal-vanishes"];

    let out = sscurv(&["fuzz", "--seed", "42", "--count", "1000", "--format", "json"]);
    c.check(out.elapsed < Duration::from_secs(30), format!("unfiltered run took {:?}", out.elapsed));
    let all: FuzzReport = serde_json::from_str(&out.stdout).unwrap();
    c.check(all.generated == 1000, format!("generated {}", all.generated));
    for t in all.tallies.iter().filter(|t| general_ids.contains(&t.id.as_str())) {
        c.check(t.fail == 0, format!("{} failed {} times", t.id, t.fail));
        c.check(t.pass == all.accepted, format!("{} passed {} of {}", t.id, t.pass, all.accepted));
    }
    c.check(all.unexpected_fails.is_empty(), format!("{} unexpected fails", all.unexpected_fails.len()));

    let out = sscurv(&["fuzz", "--seed", "42", "--count", "1000", "--parallel", "--format", "json"]);
    c.check(out.elapsed < Duration::from_secs(30), format!("parallel run took {:?}", out.elapsed));
    let par: FuzzReport = serde_json::from_str(&out.stdout).unwrap();
    c.check(par.accepted > 0, "some geometry has parallel xi");
    c.check(par.accepted == par.accepted_parallel_xi, "filter keeps only parallel xi");
    for id in ["B8", "B9", "B11", "B12", "B13"] {
        let t = par.tallies.iter().find(|t| t.id == id).unwrap();
        c.check(t.pass == par.accepted, format!("{id} passed {} of {}", t.pass, par.accepted));
    }
    c.check(
        par.parallel_mismatch_ids == ["B10", "B17"],
        format!("mismatching probes {:?}", par.parallel_mismatch_ids),
    );
    c.finish();
}

#[test]
fn criterion_6_input_robustness() {
    let mut c = Criterion::new(6, "Jacobi violation exits 2, --strict exits 1");
    let out = sscurv(&["validate", &fixture("jacobi_violation.json")]);
    c.check(out.code == 2, format!("Jacobi violation exit code {}", out.code));
    c.check(
        out.stderr.contains("(i,j,k) = (1,2,3)"),
        format!("stderr names no triple: {}", out.stderr.trim()),
    );
    let lax = sscurv(&["probe", "--builtin", "h2xr", "--suite", "all"]);
    c.check(lax.code == 0, format!("non-strict exit code {}", lax.code));
    let strict = sscurv(&["probe", "--builtin", "h2xr", "--suite", "all", "--strict"]);
    c.check(strict.code == 1, format!("strict exit code {}", strict.code));
    c.finish();
}

#[test]
fn criterion_7_determinism() {
    let mut c = Criterion::new(7, "identical invocations give byte-identical JSON");
    let jet = fixture("identity_jet.json");
    let runs: [&[&str]; 4] = [
        &["compute", "--builtin", "example1", "--format", "json"],
        &["probe", "--builtin", "h2xr", "--format", "json"],
        &["soliton", "--builtin", "flat", "--xi", "0,0,0", "--jet", &jet, "--type", "mquasi", "--m", "2", "--lambda", "1/2", "--format", "json"],
        &["fuzz", "--seed", "42", "--count", "200", "--format", "json"],
    ];
    for args in runs {
        let a = sscurv(args);
        let b = sscurv(args);
        c.check(!a.stdout.is_empty(), format!("{}: empty output", args[0]));
        c.check(a.stdout == b.stdout, format!("{}: outputs differ", args[0]));
    }
    c.finish();
}
