//! Seeded random structure constants run through the full probe suite.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sscurv_core::frame::{validate, FrameAlgebra, GeometrySpec, MetricFrame};
use sscurv_core::probes::{probe, Analysis, ProbeId, ProbeStatus};
use sscurv_core::{Rat, Result};

use crate::format::{geometry_file, GeometryFile};
use crate::report::VERSION;

/// Each of the `C^k_{ij}` (`i < j`) is drawn from the pool with this
/// probability and left at zero otherwise.
pub const ENTRY_DENSITY: (u32, u32) = (1, 3);

pub fn default_pool() -> Vec<Rat> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(n, d)| Rat::new(n, d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub seed: u64,
    pub pool: Vec<Rat>,
    pub require_parallel_xi: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 1000,
            seed: 42,
            pool: default_pool(),
            require_parallel_xi: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeTally {
    pub id: String,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub paper_mismatch: usize,
}

impl ProbeTally {
    fn record(&mut self, status: &ProbeStatus) {
        match status {
            ProbeStatus::Pass => self.pass += 1,
            ProbeStatus::Fail => self.fail += 1,
            ProbeStatus::Skipped(_) => self.skipped += 1,
            ProbeStatus::PaperMismatch => self.paper_mismatch += 1,
        }
    }
}

/// A reproducible failing case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub probe: String,
    pub max_abs_deviation: Rat,
    pub geometry: GeometryFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub entry_density: String,
    pub generated: usize,
    pub rejected_jacobi: usize,
    pub rejected_parallel: usize,
    pub accepted: usize,
    pub accepted_parallel_xi: usize,
    /// Over every accepted geometry.
    pub tallies: Vec<ProbeTally>,
    /// Over accepted geometries whose ξ is parallel.
    pub parallel_tallies: Vec<ProbeTally>,
    /// Probes that reported a known mismatch on some parallel geometry.
    pub parallel_mismatch_ids: Vec<String>,
    pub unexpected_fails: Vec<Counterexample>,
    pub version: String,
}

impl FuzzReport {
    pub fn tally(&self, id: ProbeId) -> Option<&ProbeTally> {
        self.tallies.iter().find(|t| t.id == id.as_str())
    }

    pub fn parallel_tally(&self, id: ProbeId) -> Option<&ProbeTally> {
        self.parallel_tallies.iter().find(|t| t.id == id.as_str())
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if !self.unexpected_fails.is_empty() {
            1
        } else if strict && self.tallies.iter().any(|t| t.paper_mismatch > 0) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fuzz report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let pool: Vec<String> = c.pool.iter().map(Rat::to_string).collect();
        let _ = writeln!(
            out,
            "fuzz: seed {} count {} pool {{{}}} density {} require-parallel-xi {}",
            c.seed,
            c.count,
            pool.join(", "),
            self.entry_density,
            c.require_parallel_xi
        );
        let _ = writeln!(
            out,
            "generated {}  rejected (Jacobi) {}  rejected (xi not parallel) {}  accepted {}  with parallel xi {}",
            self.generated,
            self.rejected_jacobi,
            self.rejected_parallel,
            self.accepted,
            self.accepted_parallel_xi
        );
        let _ = writeln!(out, "{:<24}{:>8}{:>8}{:>8}{:>10}", "probe", "pass", "fail", "skip", "mismatch");
        for t in &self.tallies {
            let _ = writeln!(
                out,
                "{:<24}{:>8}{:>8}{:>8}{:>10}",
                t.id, t.pass, t.fail, t.skipped, t.paper_mismatch
            );
        }
        let _ = writeln!(
            out,
            "mismatching probes on parallel-xi geometries: {{{}}}",
            self.parallel_mismatch_ids.join(", ")
        );
        if self.unexpected_fails.is_empty() {
            let _ = writeln!(out, "unexpected fails: none");
        } else {
            let _ = writeln!(out, "unexpected fails: {}", self.unexpected_fails.len());
            for f in &self.unexpected_fails {
                let geometry = serde_json::to_string(&f.geometry).expect("geometry serializes");
                let _ = writeln!(
                    out,
                    "  #{} {} deviation {}: {}",
                    f.index, f.probe, f.max_abs_deviation, geometry
                );
            }
        }
        let _ = writeln!(out, "version {}", self.version);
        out
    }
}

/// Candidate number `index` of the stream; the frame is `e1, e2, e3` with the
/// identity metric and ξ = e3.
fn candidate(rng: &mut ChaCha8Rng, pool: &[Rat], seed: u64, index: usize) -> Result<GeometrySpec> {
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 0..3 {
                if rng.random_ratio(ENTRY_DENSITY.0, ENTRY_DENSITY.1) {
                    let v = pool[rng.random_range(0..pool.len())].clone();
                    if !v.is_zero() {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
    }
    GeometrySpec::new(
        format!("fuzz-{seed}-{index}"),
        FrameAlgebra::from_brackets(3, &entries)?,
        MetricFrame::identity(3)?,
        vec![Rat::zero(), Rat::zero(), Rat::one()],
    )
}

pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let ids = ProbeId::ALL;
    let blank = |id: &ProbeId| ProbeTally {
        id: id.as_str().to_string(),
        ..Default::default()
    };
    let mut tallies: Vec<ProbeTally> = ids.iter().map(blank).collect();
    let mut parallel_tallies: Vec<ProbeTally> = ids.iter().map(blank).collect();
    let mut report = FuzzReport {
        config: config.clone(),
        entry_density: format!("{}/{}", ENTRY_DENSITY.0, ENTRY_DENSITY.1),
        generated: 0,
        rejected_jacobi: 0,
        rejected_parallel: 0,
        accepted: 0,
        accepted_parallel_xi: 0,
        tallies: Vec::new(),
        parallel_tallies: Vec::new(),
        parallel_mismatch_ids: Vec::new(),
        unexpected_fails: Vec::new(),
        version: VERSION.to_string(),
    };
    if config.pool.is_empty() {
        return Err(sscurv_core::GeometryError::Invalid("empty coefficient pool".into()));
    }

    for index in 0..config.count {
        let spec = candidate(&mut rng, &config.pool, config.seed, index)?;
        report.generated += 1;
        if !validate(&spec).is_valid() {
            report.rejected_jacobi += 1;
            continue;
        }
        let analysis = Analysis::new(spec)?;
        if config.require_parallel_xi && !analysis.parallel {
            report.rejected_parallel += 1;
            continue;
        }
        report.accepted += 1;
        if analysis.parallel {
            report.accepted_parallel_xi += 1;
        }
        for (slot, &id) in ids.iter().enumerate() {
            let res = probe(&analysis, id);
            tallies[slot].record(&res.status);
            if analysis.parallel {
                parallel_tallies[slot].record(&res.status);
            }
            if res.status == ProbeStatus::Fail {
                report.unexpected_fails.push(Counterexample {
                    index,
                    probe: res.id.clone(),
                    max_abs_deviation: res.max_abs_deviation.clone(),
                    geometry: geometry_file(&analysis.spec, None),
                });
            }
        }
    }

    report.parallel_mismatch_ids = parallel_tallies
        .iter()
        .filter(|t| t.paper_mismatch > 0)
        .map(|t| t.id.clone())
        .collect();
    report.tallies = tallies;
    report.parallel_tallies = parallel_tallies;
    Ok(report)
}
