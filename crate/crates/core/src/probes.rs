//! Identity probes.
//!
//! Each probe evaluates one curvature identity with both sides computed
//! independently: the left side directly from the connection coefficients,
//! the right side from the closed-form relation being checked. Hatted
//! quantities always come straight from `Γ̂`; the closed-form relations are
//! cross-checks and never feed back into the computed tables.

use std::fmt;
use std::str::FromStr;

use crate::connection::{
    alpha_star, is_parallel, levi_civita, nabla_psi, non_metricity, semi_symmetric_torsion,
    ssnmc, torsion, Connection,
};
use crate::curvature::{conformal, curvature, projective, CurvatureBundle};
use crate::error::{GeometryError, Result};
use crate::frame::{validate, GeometrySpec, ValidationReport};
use crate::rat::Rat;
use crate::tensor::{delta, Slot, Tensor};

const U: Slot = Slot::Up;
const D: Slot = Slot::Down;

/// Everything computed once per geometry: both connections, both curvature
/// bundles, α* and the parallelness flag.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub spec: GeometrySpec,
    pub validation: ValidationReport,
    pub lc: Connection,
    pub hat: Connection,
    pub lc_curvature: CurvatureBundle,
    pub hat_curvature: CurvatureBundle,
    pub alpha_star: Tensor,
    pub parallel: bool,
}

impl Analysis {
    /// Validates `spec` and computes the connection and curvature tables.
    pub fn new(spec: GeometrySpec) -> Result<Self> {
        let validation = validate(&spec);
        if !validation.is_valid() {
            let reasons: Vec<String> = validation
                .failures()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            return Err(GeometryError::Invalid(reasons.join("; ")));
        }
        let lc = levi_civita(&spec.frame, &spec.metric)?;
        let hat = ssnmc(&lc, &spec.distinguished)?;
        let lc_curvature = curvature(&lc, &spec.frame, &spec.metric)?;
        let hat_curvature = curvature(&hat, &spec.frame, &spec.metric)?;
        let alpha_star = alpha_star(&lc, &spec.distinguished)?;
        let parallel = is_parallel(&lc, &spec.distinguished)?;
        Ok(Analysis {
            spec,
            validation,
            lc,
            hat,
            lc_curvature,
            hat_curvature,
            alpha_star,
            parallel,
        })
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn unit_xi(&self) -> bool {
        self.spec.distinguished.is_unit()
    }

    pub fn torsion(&self) -> Tensor {
        torsion(&self.hat, &self.spec.frame)
    }

    pub fn non_metricity(&self) -> Tensor {
        non_metricity(&self.hat, &self.spec.metric)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProbeId {
    A1Torsion,
    B2,
    B3,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B11,
    B12,
    B13,
    B14,
    B15,
    B17,
    B18,
    B20,
    B22,
    B23,
    FirstBianchi,
    LcConformalVanishes,
}

impl ProbeId {
    pub const ALL: [ProbeId; 21] = [
        ProbeId::A1Torsion,
        ProbeId::B2,
        ProbeId::B3,
        ProbeId::B15,
        ProbeId::FirstBianchi,
        ProbeId::LcConformalVanishes,
        ProbeId::B5,
        ProbeId::B6,
        ProbeId::B7,
        ProbeId::B8,
        ProbeId::B9,
        ProbeId::B10,
        ProbeId::B11,
        ProbeId::B12,
        ProbeId::B13,
        ProbeId::B14,
        ProbeId::B17,
        ProbeId::B18,
        ProbeId::B20,
        ProbeId::B22,
        ProbeId::B23,
    ];

    /// Identities valid for every geometry.
    pub const GENERAL: [ProbeId; 6] = [
        ProbeId::A1Torsion,
        ProbeId::B2,
        ProbeId::B3,
        ProbeId::B15,
        ProbeId::FirstBianchi,
        ProbeId::LcConformalVanishes,
    ];

    /// Identities that assume ξ is a unit parallel field.
    pub const PARALLEL: [ProbeId; 15] = [
        ProbeId::B5,
        ProbeId::B6,
        ProbeId::B7,
        ProbeId::B8,
        ProbeId::B9,
        ProbeId::B10,
        ProbeId::B11,
        ProbeId::B12,
        ProbeId::B13,
        ProbeId::B14,
        ProbeId::B17,
        ProbeId::B18,
        ProbeId::B20,
        ProbeId::B22,
        ProbeId::B23,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProbeId::A1Torsion => "A1-torsion",
            ProbeId::B2 => "B2",
            ProbeId::B3 => "B3",
            ProbeId::B5 => "B5",
            ProbeId::B6 => "B6",
            ProbeId::B7 => "B7",
            ProbeId::B8 => "B8",
            ProbeId::B9 => "B9",
            ProbeId::B10 => "B10",
            ProbeId::B11 => "B11",
            ProbeId::B12 => "B12",
            ProbeId::B13 => "B13",
            ProbeId::B14 => "B14",
            ProbeId::B15 => "B15",
            ProbeId::B17 => "B17",
            ProbeId::B18 => "B18",
            ProbeId::B20 => "B20",
            ProbeId::B22 => "B22",
            ProbeId::B23 => "B23",
            ProbeId::FirstBianchi => "first-Bianchi",
            ProbeId::LcConformalVanishes => "LC-conformal-vanishes",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ProbeId::A1Torsion => "torsion of the SSNMC is psi(V)U - psi(U)V",
            ProbeId::B2 => "(hat-nabla_U g)(V,Y) = -psi(V)g(U,Y) - psi(Y)g(U,V)",
            ProbeId::B3 => "hat-R(U,V)Y = R(U,V)Y - a*(V,Y)U + a*(U,Y)V",
            ProbeId::B5 => "R(U,V)xi = 0",
            ProbeId::B6 => "S(U,xi) = 0",
            ProbeId::B7 => "(nabla_U psi)V = 0",
            ProbeId::B8 => "hat-R(U,V)Y = R(U,V)Y + psi(Y)[psi(V)U - psi(U)V]",
            ProbeId::B9 => "hat-S(U,V) = S(U,V) + 2 psi(U)psi(V)",
            ProbeId::B10 => "hat-r = r - 2",
            ProbeId::B11 => "hat-R(U,V)xi = psi(V)U - psi(U)V",
            ProbeId::B12 => "psi(hat-R(U,V)Y) = 0",
            ProbeId::B13 => "hat-S(U,xi) = 2 psi(U) and hat-Q xi = 2 xi",
            ProbeId::B14 => "xi(hat-r) = 0",
            ProbeId::B15 => "3-dimensional decomposition of R in terms of S, Q, r",
            ProbeId::B17 => "hat-Q U = (hat-r/2 + 1)U - (hat-r/2 - 1)psi(U)xi",
            ProbeId::B18 => "(nabla_V hat-Q)U = (V hat-r)/2 [U - psi(U)xi]",
            ProbeId::B20 => "hat-P = P",
            ProbeId::B22 => "hat-C - C equals the reference psi/xi correction terms",
            ProbeId::B23 => "hat-C(U,V)xi = C(U,V)xi",
            ProbeId::FirstBianchi => "R(U,V)Y + R(V,Y)U + R(Y,U)V = 0 for Levi-Civita",
            ProbeId::LcConformalVanishes => "conformal tensor of Levi-Civita vanishes in dimension 3",
        }
    }

    pub fn requires_parallel(self) -> bool {
        ProbeId::PARALLEL.contains(&self)
    }

    pub fn requires_dim3(self) -> bool {
        matches!(
            self,
            ProbeId::B15
                | ProbeId::B20
                | ProbeId::B22
                | ProbeId::B23
                | ProbeId::LcConformalVanishes
        )
    }

    /// Relations whose reference form is known to disagree with direct
    /// computation; a mismatch is reported as `PaperMismatch`, not `Fail`.
    pub fn is_discrepancy_probe(self) -> bool {
        matches!(self, ProbeId::B10 | ProbeId::B17 | ProbeId::B22)
    }
}

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProbeId {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        ProbeId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(key))
            .or(match key.to_ascii_lowercase().as_str() {
                "a1" => Some(ProbeId::A1Torsion),
                "bianchi" => Some(ProbeId::FirstBianchi),
                "c-vanishes" => Some(ProbeId::LcConformalVanishes),
                _ => None,
            })
            .ok_or_else(|| GeometryError::UnknownProbe(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeValue {
    Scalar(Rat),
    Tensor(Tensor),
    List(Vec<ProbeValue>),
}

impl ProbeValue {
    fn max_abs_deviation(&self, other: &ProbeValue) -> Rat {
        match (self, other) {
            (ProbeValue::Scalar(a), ProbeValue::Scalar(b)) => (a - b).abs(),
            (ProbeValue::Tensor(a), ProbeValue::Tensor(b)) => a
                .max_abs_deviation(b)
                .expect("probe sides have matching shapes"),
            (ProbeValue::List(a), ProbeValue::List(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.max_abs_deviation(y))
                .max()
                .unwrap_or_else(Rat::zero),
            _ => panic!("probe sides have different kinds"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeStatus {
    Pass,
    Fail,
    Skipped(String),
    PaperMismatch,
}

impl ProbeStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ProbeStatus::Pass => "pass",
            ProbeStatus::Fail => "fail",
            ProbeStatus::Skipped(_) => "skipped",
            ProbeStatus::PaperMismatch => "paper-mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub id: String,
    pub status: ProbeStatus,
    pub lhs: Option<ProbeValue>,
    pub rhs: Option<ProbeValue>,
    pub max_abs_deviation: Rat,
    pub note: Option<String>,
}

impl ProbeResult {
    /// Exact comparison; a mismatch becomes `PaperMismatch` when
    /// `discrepancy` is set and `Fail` otherwise.
    pub fn compare(id: impl Into<String>, lhs: ProbeValue, rhs: ProbeValue, discrepancy: bool) -> Self {
        let max_abs_deviation = lhs.max_abs_deviation(&rhs);
        let status = if max_abs_deviation.is_zero() {
            ProbeStatus::Pass
        } else if discrepancy {
            ProbeStatus::PaperMismatch
        } else {
            ProbeStatus::Fail
        };
        ProbeResult {
            id: id.into(),
            status,
            lhs: Some(lhs),
            rhs: Some(rhs),
            max_abs_deviation,
            note: None,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        ProbeResult {
            id: id.into(),
            status: ProbeStatus::Skipped(reason.into()),
            lhs: None,
            rhs: None,
            max_abs_deviation: Rat::zero(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == ProbeStatus::Pass
    }
}

pub const PARALLEL_SKIP: &str = "parallel-xi hypothesis fails";
pub const UNIT_SKIP: &str = "unit-xi hypothesis fails";
pub const DIM3_SKIP: &str = "identity is specific to dimension 3";

/// Runs one probe on a prepared analysis.
pub fn probe(analysis: &Analysis, id: ProbeId) -> ProbeResult {
    if id.requires_dim3() && analysis.dim() != 3 {
        return ProbeResult::skipped(id.as_str(), DIM3_SKIP);
    }
    if id.requires_parallel() {
        if !analysis.parallel {
            return ProbeResult::skipped(id.as_str(), PARALLEL_SKIP);
        }
        if !analysis.unit_xi() {
            return ProbeResult::skipped(id.as_str(), UNIT_SKIP);
        }
    }
    let (lhs, rhs, note) = evaluate(analysis, id);
    let result = ProbeResult::compare(id.as_str(), lhs, rhs, id.is_discrepancy_probe());
    match note {
        Some(n) => result.with_note(n),
        None => result,
    }
}

/// Convenience wrapper that analyses `spec` first.
pub fn probe_geometry(spec: &GeometrySpec, id: ProbeId) -> Result<ProbeResult> {
    let analysis = Analysis::new(spec.clone())?;
    Ok(probe(&analysis, id))
}

fn tensor(t: Tensor) -> ProbeValue {
    ProbeValue::Tensor(t)
}

fn evaluate(a: &Analysis, id: ProbeId) -> (ProbeValue, ProbeValue, Option<String>) {
    let n = a.dim();
    let g = &a.spec.metric;
    let dist = &a.spec.distinguished;
    let psi = dist.psi();
    let xi = dist.xi();
    let lc = &a.lc_curvature;
    let hat = &a.hat_curvature;
    let udd = [U, D, D];
    let uddd = [U, D, D, D];

    match id {
        ProbeId::A1Torsion => (
            tensor(a.torsion()),
            tensor(semi_symmetric_torsion(dist)),
            None,
        ),
        ProbeId::B2 => {
            let rhs = Tensor::from_fn(n, &[D, D, D], |x| {
                let (i, j, k) = (x[0], x[1], x[2]);
                -(&psi[j] * g.g(i, k)) - &psi[k] * g.g(i, j)
            });
            (tensor(a.non_metricity()), tensor(rhs), None)
        }
        ProbeId::B3 => {
            let al = &a.alpha_star;
            let rhs = Tensor::from_fn(n, &uddd, |x| {
                let (l, k, i, j) = (x[0], x[1], x[2], x[3]);
                lc.r(l, k, i, j) - &al[[j, k]] * delta(l, i) + &al[[i, k]] * delta(l, j)
            });
            (tensor(hat.riemann().clone()), tensor(rhs), None)
        }
        ProbeId::B5 => {
            let lhs = Tensor::from_fn(n, &udd, |x| {
                (0..n).map(|k| lc.r(x[0], k, x[1], x[2]) * &xi[k]).sum()
            });
            (tensor(lhs), tensor(Tensor::zeros(n, &udd)), None)
        }
        ProbeId::B6 => {
            let s = lc.ricci();
            let lhs = Tensor::from_fn(n, &[D], |x| (0..n).map(|k| &s[[x[0], k]] * &xi[k]).sum());
            (tensor(lhs), tensor(Tensor::zeros(n, &[D])), None)
        }
        ProbeId::B7 => (
            tensor(nabla_psi(&a.lc, dist)),
            tensor(Tensor::zeros(n, &[D, D])),
            None,
        ),
        ProbeId::B8 => {
            let rhs = Tensor::from_fn(n, &uddd, |x| {
                let (l, k, i, j) = (x[0], x[1], x[2], x[3]);
                lc.r(l, k, i, j) + &psi[k] * (&psi[j] * delta(l, i) - &psi[i] * delta(l, j))
            });
            (tensor(hat.riemann().clone()), tensor(rhs), None)
        }
        ProbeId::B9 => {
            let s = lc.ricci();
            let rhs = Tensor::from_fn(n, &[D, D], |x| {
                &s[[x[0], x[1]]] + Rat::from_int(2) * &psi[x[0]] * &psi[x[1]]
            });
            (tensor(hat.ricci().clone()), tensor(rhs), None)
        }
        ProbeId::B10 => {
            let predicted = lc.scalar() - Rat::from_int(2);
            let traced = lc.scalar() + Rat::from_int(2);
            let note = format!(
                "computed hat-r = {}, reference relation gives r - 2 = {}, tracing hat-S = S + 2 psi ⊗ psi gives r + 2 = {}",
                hat.scalar(),
                predicted,
                traced
            );
            (
                ProbeValue::Scalar(hat.scalar().clone()),
                ProbeValue::Scalar(predicted),
                Some(note),
            )
        }
        ProbeId::B11 => {
            let lhs = Tensor::from_fn(n, &udd, |x| {
                (0..n).map(|k| hat.r(x[0], k, x[1], x[2]) * &xi[k]).sum()
            });
            let rhs = Tensor::from_fn(n, &udd, |x| {
                let (l, i, j) = (x[0], x[1], x[2]);
                &psi[j] * delta(l, i) - &psi[i] * delta(l, j)
            });
            (tensor(lhs), tensor(rhs), None)
        }
        ProbeId::B12 => {
            let lhs = Tensor::from_fn(n, &[D, D, D], |x| {
                (0..n).map(|l| &psi[l] * hat.r(l, x[0], x[1], x[2])).sum()
            });
            (tensor(lhs), tensor(Tensor::zeros(n, &[D, D, D])), None)
        }
        ProbeId::B13 => {
            let s = hat.ricci();
            let q = hat.ricci_op();
            let s_xi = Tensor::from_fn(n, &[D], |x| (0..n).map(|k| &s[[x[0], k]] * &xi[k]).sum());
            let q_xi = Tensor::from_fn(n, &[U], |x| (0..n).map(|i| &q[[x[0], i]] * &xi[i]).sum());
            let two = Rat::from_int(2);
            let two_psi = Tensor::covector(psi.iter().map(|p| p * &two).collect());
            let two_xi = Tensor::vector(xi.iter().map(|p| p * &two).collect());
            (
                ProbeValue::List(vec![tensor(s_xi), tensor(q_xi)]),
                ProbeValue::List(vec![tensor(two_psi), tensor(two_xi)]),
                None,
            )
        }
        ProbeId::B14 => (
            // A frame derivative of a constant.
            ProbeValue::Scalar(Rat::zero()),
            ProbeValue::Scalar(Rat::zero()),
            Some(format!(
                "hat-r = {} is constant on a homogeneous geometry, so xi(hat-r) = 0 trivially",
                hat.scalar()
            )),
        ),
        ProbeId::B15 => {
            let s = lc.ricci();
            let q = lc.ricci_op();
            let half_r = lc.scalar() * Rat::new(1, 2);
            let rhs = Tensor::from_fn(n, &uddd, |x| {
                let (l, k, i, j) = (x[0], x[1], x[2], x[3]);
                g.g(j, k) * &q[[l, i]] - g.g(i, k) * &q[[l, j]] + &s[[j, k]] * delta(l, i)
                    - &s[[i, k]] * delta(l, j)
                    - (g.g(j, k) * delta(l, i) - g.g(i, k) * delta(l, j)) * &half_r
            });
            (tensor(lc.riemann().clone()), tensor(rhs), None)
        }
        ProbeId::B17 => {
            let half_r = hat.scalar() * Rat::new(1, 2);
            let a1 = &half_r + Rat::one();
            let a2 = &half_r - Rat::one();
            let rhs = Tensor::from_fn(n, &[U, D], |x| {
                let (l, i) = (x[0], x[1]);
                &a1 * delta(l, i) - &a2 * &psi[i] * &xi[l]
            });
            let note = format!("evaluated with the computed hat-r = {}", hat.scalar());
            (tensor(hat.ricci_op().clone()), tensor(rhs), Some(note))
        }
        ProbeId::B18 => {
            // ((∇_{e_j} Q̂) e_i)^l = Γ^l_{jm} Q̂^m_i - Q̂^l_m Γ^m_{ji}, indexed [l, j, i].
            let q = hat.ricci_op();
            let lhs = Tensor::from_fn(n, &udd, |x| {
                let (l, j, i) = (x[0], x[1], x[2]);
                (0..n)
                    .map(|m| a.lc.gamma(l, j, m) * &q[[m, i]] - &q[[l, m]] * a.lc.gamma(m, j, i))
                    .sum()
            });
            (
                tensor(lhs),
                tensor(Tensor::zeros(n, &udd)),
                Some("right side vanishes: V(hat-r) = 0 since hat-r is constant".into()),
            )
        }
        ProbeId::B20 => (
            tensor(projective(hat).expect("dimension 3")),
            tensor(projective(lc).expect("dimension 3")),
            None,
        ),
        ProbeId::B22 => {
            let c_hat = conformal(hat, g).expect("dimension 3");
            let c_lc = conformal(lc, g).expect("dimension 3");
            let lhs = &c_hat - &c_lc;
            let correction = |xi_sign: i64| {
                let two_s = Rat::from_int(2 * xi_sign);
                Tensor::from_fn(n, &uddd, |x| {
                    let (l, k, i, j) = (x[0], x[1], x[2], x[3]);
                    -(&psi[j] * &psi[k] * delta(l, i)) + &psi[i] * &psi[k] * delta(l, j)
                        + &two_s * &xi[l] * g.g(j, k) * &psi[i]
                        - &two_s * &xi[l] * g.g(i, k) * &psi[j]
                        + g.g(j, k) * delta(l, i)
                        - g.g(i, k) * delta(l, j)
                })
            };
            let reference = correction(1);
            let flipped = correction(-1);
            let note = format!(
                "right side is the reference correction with the hatted 1-form read as psi; \
                 the same expression with the two xi-terms negated {} the direct difference",
                if flipped == lhs { "matches" } else { "does not match" }
            );
            (tensor(lhs), tensor(reference), Some(note))
        }
        ProbeId::B23 => {
            let c_hat = conformal(hat, g).expect("dimension 3");
            let c_lc = conformal(lc, g).expect("dimension 3");
            let along_xi = |c: &Tensor| {
                Tensor::from_fn(n, &udd, |x| {
                    (0..n).map(|k| &c[[x[0], k, x[1], x[2]]] * &xi[k]).sum()
                })
            };
            (tensor(along_xi(&c_hat)), tensor(along_xi(&c_lc)), None)
        }
        ProbeId::FirstBianchi => (
            tensor(lc.first_bianchi()),
            tensor(Tensor::zeros(n, &uddd)),
            None,
        ),
        ProbeId::LcConformalVanishes => (
            tensor(conformal(lc, g).expect("dimension 3")),
            tensor(Tensor::zeros(n, &uddd)),
            None,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FrameAlgebra, MetricFrame};

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn spec(entries: &[(usize, usize, usize, i64)]) -> GeometrySpec {
        let entries: Vec<_> = entries.iter().map(|&(i, j, k, v)| (i, j, k, r(v))).collect();
        GeometrySpec::new(
            "t",
            FrameAlgebra::from_brackets(3, &entries).unwrap(),
            MetricFrame::identity(3).unwrap(),
            vec![r(0), r(0), r(1)],
        )
        .unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in ProbeId::ALL {
            assert_eq!(id.as_str().parse::<ProbeId>().unwrap(), id);
        }
        assert_eq!("bianchi".parse::<ProbeId>().unwrap(), ProbeId::FirstBianchi);
        assert!("B16".parse::<ProbeId>().is_err());
    }

    #[test]
    fn example1_b3_passes_and_b13_skips() {
        let a = Analysis::new(spec(&[(0, 2, 0, -1), (1, 2, 1, -1)])).unwrap();
        assert!(probe(&a, ProbeId::B3).is_pass());
        assert_eq!(
            probe(&a, ProbeId::B13).status,
            ProbeStatus::Skipped(PARALLEL_SKIP.into())
        );
    }

    #[test]
    fn h2xr_b9_passes_b10_mismatches() {
        let a = Analysis::new(spec(&[(0, 1, 0, -1)])).unwrap();
        assert!(probe(&a, ProbeId::B9).is_pass());
        let b10 = probe(&a, ProbeId::B10);
        assert_eq!(b10.status, ProbeStatus::PaperMismatch);
        assert_eq!(b10.lhs, Some(ProbeValue::Scalar(r(0))));
        assert_eq!(b10.rhs, Some(ProbeValue::Scalar(r(-4))));
        assert_eq!(b10.max_abs_deviation, r(4));
    }

    #[test]
    fn invalid_geometry_is_rejected() {
        let bad = spec(&[(0, 1, 2, 1), (1, 2, 1, 1)]);
        assert!(matches!(Analysis::new(bad), Err(GeometryError::Invalid(_))));
    }

    #[test]
    fn non_unit_parallel_xi_skips() {
        let s = spec(&[]).with_xi(vec![r(0), r(0), r(2)]).unwrap();
        let a = Analysis::new(s).unwrap();
        assert!(a.parallel);
        assert_eq!(
            probe(&a, ProbeId::B9).status,
            ProbeStatus::Skipped(UNIT_SKIP.into())
        );
    }
}
