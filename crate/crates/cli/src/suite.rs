use std::fmt;
use std::str::FromStr;

use sscurv_core::probes::{probe, Analysis, ProbeId, ProbeResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Suite {
    General,
    Parallel,
    #[default]
    All,
}

impl Suite {
    pub fn ids(self) -> Vec<ProbeId> {
        match self {
            Suite::General => ProbeId::GENERAL.to_vec(),
            Suite::Parallel => ProbeId::PARALLEL.to_vec(),
            Suite::All => ProbeId::ALL.to_vec(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::General => "general",
            Suite::Parallel => "parallel",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "general" => Ok(Suite::General),
            "parallel" => Ok(Suite::Parallel),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite '{other}' (general, parallel, all)")),
        }
    }
}

/// Runs probes in a fixed order: the suite order, or `ids` as given.
pub fn run_ids(analysis: &Analysis, ids: &[ProbeId]) -> Vec<ProbeResult> {
    ids.iter().map(|&id| probe(analysis, id)).collect()
}

pub fn run_suite(analysis: &Analysis, suite: Suite) -> Vec<ProbeResult> {
    run_ids(analysis, &suite.ids())
}
