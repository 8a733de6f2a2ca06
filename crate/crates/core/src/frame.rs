//! Input geometry: a frame Lie algebra with constant structure constants, a
//! constant-component metric, the distinguished field ξ with its 1-form ψ,
//! and scalar fields carried as 2-jets at the evaluation point.
//!
//! All stored components are constant in the frame, so frame derivatives of
//! any of them vanish.

use std::fmt;

use crate::error::{GeometryError, Result};
use crate::rat::Rat;
use crate::tensor::{delta, multi_indices, Slot, Tensor};

const UDD: [Slot; 3] = [Slot::Up, Slot::Down, Slot::Down];
const DD: [Slot; 2] = [Slot::Down, Slot::Down];

pub const MAX_DIM: usize = 4;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(GeometryError::DimensionOutOfRange(dim))
    } else {
        Ok(())
    }
}

/// Structure constants `C^k_{ij}` with `[e_i, e_j] = C^k_{ij} e_k`, stored
/// as a `(1,2)` tensor indexed `[k, i, j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameAlgebra {
    constants: Tensor,
}

impl FrameAlgebra {
    pub fn new(constants: Tensor) -> Result<Self> {
        check_dim(constants.dim())?;
        if constants.slots() != UDD {
            return Err(GeometryError::Valence(format!(
                "structure constants must be a (1,2) tensor 'udd', got '{}'",
                constants.signature()
            )));
        }
        Ok(FrameAlgebra { constants })
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        FrameAlgebra::new(Tensor::zeros(dim, &UDD))
    }

    /// Builds the algebra from bracket entries `(i, j, k, c)` meaning
    /// `C^k_{ij} = c`, with `C^k_{ji} = -c` filled in automatically.
    /// Conflicting or diagonal nonzero entries are rejected.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Rat)]) -> Result<Self> {
        check_dim(dim)?;
        let mut c = Tensor::zeros(dim, &UDD);
        let mut assigned = vec![false; dim * dim * dim];
        for (i, j, k, value) in entries {
            let (i, j, k) = (*i, *j, *k);
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(GeometryError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                if !value.is_zero() {
                    return Err(GeometryError::Invalid(format!(
                        "[e{0}, e{0}] must vanish but C^{1}_{{{0}{0}}} = {2}",
                        i + 1,
                        k + 1,
                        value
                    )));
                }
                continue;
            }
            for (a, b, v) in [(i, j, value.clone()), (j, i, -value)] {
                let slot = (k * dim + a) * dim + b;
                if assigned[slot] && c[[k, a, b]] != v {
                    return Err(GeometryError::Invalid(format!(
                        "conflicting values for C^{}_{{{}{}}}: {} vs {}",
                        k + 1,
                        a + 1,
                        b + 1,
                        c[[k, a, b]],
                        v
                    )));
                }
                assigned[slot] = true;
                c.set(&[k, a, b], v)?;
            }
        }
        FrameAlgebra::new(c)
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn constants(&self) -> &Tensor {
        &self.constants
    }

    /// `C^k_{ij}`.
    pub fn c(&self, k: usize, i: usize, j: usize) -> &Rat {
        &self.constants[[k, i, j]]
    }

    /// First `(k, i, j)` with `C^k_{ij} != -C^k_{ji}`.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        multi_indices(n, 3)
            .map(|v| (v[0], v[1], v[2]))
            .find(|&(k, i, j)| self.c(k, i, j) != &-self.c(k, j, i))
    }

    /// `J^l_{ijk} = Σ_m (C^m_{ij} C^l_{mk} + C^m_{jk} C^l_{mi} + C^m_{ki} C^l_{mj})`.
    pub fn jacobi_sum(&self, i: usize, j: usize, k: usize, l: usize) -> Rat {
        (0..self.dim())
            .map(|m| {
                self.c(m, i, j) * self.c(l, m, k)
                    + self.c(m, j, k) * self.c(l, m, i)
                    + self.c(m, k, i) * self.c(l, m, j)
            })
            .sum()
    }

    /// First triple `(i, j, k)` (with the offending output index `l` and the
    /// nonzero sum) where the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<JacobiViolation> {
        let n = self.dim();
        for v in multi_indices(n, 3) {
            for l in 0..n {
                let sum = self.jacobi_sum(v[0], v[1], v[2], l);
                if !sum.is_zero() {
                    return Some(JacobiViolation {
                        triple: (v[0], v[1], v[2]),
                        component: l,
                        sum,
                    });
                }
            }
        }
        None
    }

    /// Bracket of two frame-component vectors.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut acc = Rat::zero();
                for i in 0..n {
                    for j in 0..n {
                        let c = self.c(k, i, j);
                        if !c.is_zero() {
                            acc += &(c * &u[i] * &v[j]);
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    /// 0-based `(i, j, k)`.
    pub triple: (usize, usize, usize),
    pub component: usize,
    pub sum: Rat,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "Jacobi identity fails for (i,j,k) = ({},{},{}): component e{} of the cyclic sum is {}",
            i + 1,
            j + 1,
            k + 1,
            self.component + 1,
            self.sum
        )
    }
}

/// Constant-component metric `g_ij` with its exact inverse `g^ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricFrame {
    g: Tensor,
    g_inv: Tensor,
}

impl MetricFrame {
    /// Requires a square `(0,2)` tensor with nonzero determinant. Symmetry
    /// and positivity are checked by [`validate`].
    pub fn new(g: Tensor) -> Result<Self> {
        check_dim(g.dim())?;
        if g.slots() != DD {
            return Err(GeometryError::Valence(format!(
                "metric must be a (0,2) tensor, got '{}'",
                g.signature()
            )));
        }
        let n = g.dim();
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| g[[i, j]].clone()).collect())
            .collect();
        let inv = invert(&rows)
            .ok_or_else(|| GeometryError::DegenerateMetric("determinant is zero".into()))?;
        let g_inv = Tensor::from_fn(n, &[Slot::Up, Slot::Up], |idx| inv[idx[0]][idx[1]].clone());
        Ok(MetricFrame { g, g_inv })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        MetricFrame::new(Tensor::from_fn(dim, &DD, |idx| delta(idx[0], idx[1])))
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GeometryError::Shape("metric must be square".into()));
        }
        MetricFrame::new(Tensor::from_fn(n, &DD, |idx| rows[idx[0]][idx[1]].clone()))
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn tensor(&self) -> &Tensor {
        &self.g
    }

    pub fn inverse(&self) -> &Tensor {
        &self.g_inv
    }

    pub fn g(&self, i: usize, j: usize) -> &Rat {
        &self.g[[i, j]]
    }

    pub fn g_inv(&self, i: usize, j: usize) -> &Rat {
        &self.g_inv[[i, j]]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.g(i, j) == self.g(j, i)))
    }

    /// Leading principal minors, in order of size.
    pub fn leading_minors(&self) -> Vec<Rat> {
        let n = self.dim();
        (1..=n)
            .map(|size| {
                let rows: Vec<Vec<Rat>> = (0..size)
                    .map(|i| (0..size).map(|j| self.g(i, j).clone()).collect())
                    .collect();
                determinant(&rows)
            })
            .collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_minors().iter().all(Rat::is_positive)
    }

    /// `g(u, v)` for contravariant component vectors.
    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let n = self.dim();
        let mut acc = Rat::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &(self.g(i, j) * &u[i] * &v[j]);
            }
        }
        acc
    }

    /// `v_i = g_ij v^j`.
    pub fn lower_vector(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.g(i, j) * &v[j]).sum())
            .collect()
    }

    /// `w^i = g^ij w_j`.
    pub fn raise_covector(&self, w: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.g_inv(i, j) * &w[j]).sum())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Flips one slot with `g^{-1}` (`Up`) or `g` (`Down`); slot order is kept.
pub fn raise_lower(t: &Tensor, g: &MetricFrame, slot: usize, direction: Direction) -> Result<Tensor> {
    if slot >= t.rank() {
        return Err(GeometryError::Valence(format!(
            "slot {slot} out of range for rank {}",
            t.rank()
        )));
    }
    if t.dim() != g.dim() {
        return Err(GeometryError::Shape(format!(
            "tensor dim {} vs metric dim {}",
            t.dim(),
            g.dim()
        )));
    }
    let (from, to, matrix) = match direction {
        Direction::Up => (Slot::Down, Slot::Up, g.inverse()),
        Direction::Down => (Slot::Up, Slot::Down, g.tensor()),
    };
    if t.slots()[slot] != from {
        return Err(GeometryError::SlotKind {
            slot,
            expected: from,
            found: t.slots()[slot],
        });
    }
    let mut slots = t.slots().to_vec();
    slots[slot] = to;
    let n = t.dim();
    let mut src = vec![0; t.rank()];
    Ok(Tensor::from_fn(n, &slots, |idx| {
        src.copy_from_slice(idx);
        let mut acc = Rat::zero();
        for m in 0..n {
            let w = &matrix[[idx[slot], m]];
            if w.is_zero() {
                continue;
            }
            src[slot] = m;
            acc += &(w * &t[&src[..]]);
        }
        acc
    }))
}

/// The distinguished field ξ and its dual 1-form `ψ_i = g_ij ξ^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishedField {
    xi: Vec<Rat>,
    psi: Vec<Rat>,
    norm_sq: Rat,
}

impl DistinguishedField {
    pub fn new(xi: Vec<Rat>, metric: &MetricFrame) -> Result<Self> {
        if xi.len() != metric.dim() {
            return Err(GeometryError::Shape(format!(
                "xi has {} components, metric dim is {}",
                xi.len(),
                metric.dim()
            )));
        }
        let psi = metric.lower_vector(&xi);
        let norm_sq = metric.inner(&xi, &xi);
        Ok(DistinguishedField { xi, psi, norm_sq })
    }

    pub fn xi(&self) -> &[Rat] {
        &self.xi
    }

    pub fn psi(&self) -> &[Rat] {
        &self.psi
    }

    pub fn xi_tensor(&self) -> Tensor {
        Tensor::vector(self.xi.clone())
    }

    pub fn psi_tensor(&self) -> Tensor {
        Tensor::covector(self.psi.clone())
    }

    /// `g(ξ, ξ)`.
    pub fn norm_sq(&self) -> &Rat {
        &self.norm_sq
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq == Rat::one()
    }

    /// ξ = 0, the ∇̂ = ∇ limit.
    pub fn is_degenerate(&self) -> bool {
        self.xi.iter().all(Rat::is_zero)
    }

    /// `ψ(u)` for a contravariant component vector.
    pub fn psi_of(&self, u: &[Rat]) -> Rat {
        self.psi.iter().zip(u).map(|(a, b)| a * b).sum()
    }
}

/// 2-jet of a scalar field `f` at the evaluation point: `d_i = e_i f` and
/// `dd_ij = e_i(e_j f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarJet {
    d: Tensor,
    dd: Tensor,
}

impl ScalarJet {
    /// Checks `dd_ij - dd_ji = C^k_{ij} d_k`.
    pub fn new(d: Vec<Rat>, dd: Vec<Vec<Rat>>, frame: &FrameAlgebra) -> Result<Self> {
        let n = frame.dim();
        if d.len() != n || dd.len() != n || dd.iter().any(|r| r.len() != n) {
            return Err(GeometryError::Shape(format!(
                "jet must have d of length {n} and dd of shape {n}x{n}"
            )));
        }
        let jet = ScalarJet {
            d: Tensor::covector(d),
            dd: Tensor::from_fn(n, &DD, |idx| dd[idx[0]][idx[1]].clone()),
        };
        jet.check_consistency(frame)?;
        Ok(jet)
    }

    pub fn zero(dim: usize) -> Self {
        ScalarJet {
            d: Tensor::zeros(dim, &[Slot::Down]),
            dd: Tensor::zeros(dim, &DD),
        }
    }

    fn check_consistency(&self, frame: &FrameAlgebra) -> Result<()> {
        let n = frame.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.dd[[i, j]] - &self.dd[[j, i]];
                let rhs: Rat = (0..n).map(|k| frame.c(k, i, j) * &self.d[[k]]).sum();
                if lhs != rhs {
                    return Err(GeometryError::InconsistentJet {
                        i: i + 1,
                        j: j + 1,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.d.dim()
    }

    pub fn d(&self) -> &Tensor {
        &self.d
    }

    pub fn dd(&self) -> &Tensor {
        &self.dd
    }

    pub fn d_components(&self) -> Vec<Rat> {
        self.d.components().to_vec()
    }

    /// Constant potential: every derivative vanishes.
    pub fn is_trivial(&self) -> bool {
        self.d.is_zero() && self.dd.is_zero()
    }
}

/// `(Df)^k = g^{kj} d_j`.
pub fn gradient(jet: &ScalarJet, g: &MetricFrame) -> Tensor {
    Tensor::vector(g.raise_covector(jet.d().components()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometrySpec {
    pub name: String,
    /// Basis label used in reports (`e` renders as `e1, e2, ...`).
    pub label: String,
    pub frame: FrameAlgebra,
    pub metric: MetricFrame,
    pub distinguished: DistinguishedField,
}

impl GeometrySpec {
    pub fn new(
        name: impl Into<String>,
        frame: FrameAlgebra,
        metric: MetricFrame,
        xi: Vec<Rat>,
    ) -> Result<Self> {
        if frame.dim() != metric.dim() {
            return Err(GeometryError::Shape(format!(
                "frame dim {} vs metric dim {}",
                frame.dim(),
                metric.dim()
            )));
        }
        let distinguished = DistinguishedField::new(xi, &metric)?;
        Ok(GeometrySpec {
            name: name.into(),
            label: "e".into(),
            frame,
            metric,
            distinguished,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_xi(self, xi: Vec<Rat>) -> Result<Self> {
        let distinguished = DistinguishedField::new(xi, &self.metric)?;
        Ok(GeometrySpec {
            distinguished,
            ..self
        })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Structural checks gate acceptance; capability checks (unit ξ) only
    /// record a property.
    pub required: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationCheck> {
        self.checks.iter().filter(|c| c.required && !c.passed)
    }
}

pub fn validate(spec: &GeometrySpec) -> ValidationReport {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();

    let anti = spec.frame.antisymmetry_violation();
    checks.push(ValidationCheck {
        name: "antisymmetry",
        passed: anti.is_none(),
        required: true,
        detail: match anti {
            None => "C^k_ij = -C^k_ji".into(),
            Some((k, i, j)) => format!(
                "C^{}_{{{}{}}} != -C^{}_{{{}{}}}",
                k + 1,
                i + 1,
                j + 1,
                k + 1,
                j + 1,
                i + 1
            ),
        },
    });

    let jac = spec.frame.jacobi_violation();
    checks.push(ValidationCheck {
        name: "jacobi",
        passed: jac.is_none(),
        required: true,
        detail: match jac {
            None => "cyclic sum vanishes for every triple".into(),
            Some(v) => v.to_string(),
        },
    });

    let sym = spec.metric.is_symmetric();
    checks.push(ValidationCheck {
        name: "metric-symmetric",
        passed: sym,
        required: true,
        detail: if sym {
            "g_ij = g_ji".into()
        } else {
            "metric is not symmetric".into()
        },
    });

    let minors = spec.metric.leading_minors();
    let pd = sym && minors.iter().all(Rat::is_positive);
    checks.push(ValidationCheck {
        name: "metric-positive-definite",
        passed: pd,
        required: true,
        detail: format!(
            "leading principal minors [{}]",
            minors
                .iter()
                .map(Rat::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    });

    let dist = &spec.distinguished;
    let lowered = spec.metric.lower_vector(dist.xi());
    let compatible = lowered == dist.psi();
    checks.push(ValidationCheck {
        name: "psi-xi-compatible",
        passed: compatible,
        required: true,
        detail: "psi_i = g_ij xi^j".into(),
    });

    checks.push(ValidationCheck {
        name: "unit-xi",
        passed: dist.is_unit(),
        required: false,
        detail: format!("g(xi, xi) = {}", dist.norm_sq()),
    });

    if dist.is_degenerate() {
        warnings.push("xi = 0: the SSNMC coincides with the Levi-Civita connection".into());
    } else if !dist.is_unit() {
        warnings.push(format!(
            "xi is not a unit field (g(xi, xi) = {}); unit-xi probes will be skipped",
            dist.norm_sq()
        ));
    }

    ValidationReport { checks, warnings }
}

/// Exact determinant by fraction-preserving Gaussian elimination.
pub fn determinant(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Exact inverse by Gauss-Jordan elimination; `None` when singular.
pub fn invert(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| delta(i, j)));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let inv_p = a[col][col].recip()?;
        for c in 0..2 * n {
            a[col][c] *= &inv_p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn example1() -> GeometrySpec {
        let frame =
            FrameAlgebra::from_brackets(3, &[(0, 2, 0, r(-1)), (1, 2, 1, r(-1))]).unwrap();
        GeometrySpec::new("example1", frame, MetricFrame::identity(3).unwrap(), ints(&[0, 0, 1]))
            .unwrap()
    }

    #[test]
    fn example1_validates() {
        let report = validate(&example1());
        assert!(report.is_valid(), "{report:?}");
        assert!(report.check("unit-xi").unwrap().passed);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn abelian_validates() {
        let spec = GeometrySpec::new(
            "flat",
            FrameAlgebra::abelian(3).unwrap(),
            MetricFrame::identity(3).unwrap(),
            ints(&[0, 0, 1]),
        )
        .unwrap();
        assert!(validate(&spec).is_valid());
    }

    // Brute-force bracket expansion of [[a,b],c] + [[b,c],a] + [[c,a],b].
    fn cyclic_bracket_sum(frame: &FrameAlgebra, i: usize, j: usize, k: usize) -> Vec<Rat> {
        let e = |n: usize| (0..frame.dim()).map(|m| delta(m, n)).collect::<Vec<_>>();
        let (a, b, c) = (e(i), e(j), e(k));
        let t1 = frame.bracket(&frame.bracket(&a, &b), &c);
        let t2 = frame.bracket(&frame.bracket(&b, &c), &a);
        let t3 = frame.bracket(&frame.bracket(&c, &a), &b);
        (0..frame.dim())
            .map(|m| &t1[m] + &t2[m] + &t3[m])
            .collect()
    }

    #[test]
    fn jacobi_violation_is_reported_with_triple() {
        // [e1,e2] = e3, [e2,e3] = e2: by hand the cyclic sum at (1,2,3) is -e3.
        let frame =
            FrameAlgebra::from_brackets(3, &[(0, 1, 2, r(1)), (1, 2, 1, r(1))]).unwrap();
        assert_eq!(cyclic_bracket_sum(&frame, 0, 1, 2), ints(&[0, 0, -1]));
        let v = frame.jacobi_violation().expect("violation");
        let (i, j, k) = v.triple;
        let mut sorted = [i, j, k];
        sorted.sort();
        assert_eq!(sorted, [0, 1, 2]);
        let spec = GeometrySpec::new("bad", frame, MetricFrame::identity(3).unwrap(), ints(&[0, 0, 1]))
            .unwrap();
        let report = validate(&spec);
        assert!(!report.is_valid());
        assert!(report.check("jacobi").unwrap().detail.contains("(i,j,k)"));
    }

    #[test]
    fn triple_cycle_algebra_satisfies_jacobi() {
        // C^1_12 = C^2_13 = C^3_23 = 1: expanding by hand, [[e1,e2],e3] = e2,
        // [[e2,e3],e1] = -e2 and [[e3,e1],e2] = 0, so the cyclic sum is zero.
        let frame = FrameAlgebra::from_brackets(
            3,
            &[(0, 1, 0, r(1)), (0, 2, 1, r(1)), (1, 2, 2, r(1))],
        )
        .unwrap();
        assert_eq!(cyclic_bracket_sum(&frame, 0, 1, 2), ints(&[0, 0, 0]));
        assert!(frame.jacobi_violation().is_none());
    }

    #[test]
    fn jacobi_sum_matches_bracket_expansion() {
        let frame = FrameAlgebra::from_brackets(
            3,
            &[(0, 1, 2, r(2)), (1, 2, 0, Rat::new(1, 2)), (0, 2, 1, r(-1)), (0, 1, 0, r(1))],
        )
        .unwrap();
        for v in multi_indices(3, 3) {
            let expanded = cyclic_bracket_sum(&frame, v[0], v[1], v[2]);
            for l in 0..3 {
                assert_eq!(frame.jacobi_sum(v[0], v[1], v[2], l), expanded[l]);
            }
        }
    }

    #[test]
    fn conflicting_brackets_rejected() {
        let err = FrameAlgebra::from_brackets(3, &[(0, 2, 0, r(-1)), (2, 0, 0, r(-1))]);
        assert!(err.is_err());
        let ok = FrameAlgebra::from_brackets(3, &[(0, 2, 0, r(-1)), (2, 0, 0, r(1))]);
        assert!(ok.is_ok());
    }

    #[test]
    fn gradient_examples() {
        let frame = FrameAlgebra::abelian(3).unwrap();
        let id = MetricFrame::identity(3).unwrap();
        let zero = ScalarJet::zero(3);
        assert!(gradient(&zero, &id).is_zero());

        let jet = ScalarJet::new(ints(&[1, 2, 3]), vec![vec![Rat::zero(); 3]; 3], &frame).unwrap();
        assert_eq!(gradient(&jet, &id).components(), &ints(&[1, 2, 3])[..]);

        let diag = MetricFrame::from_rows(&[ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 4])])
            .unwrap();
        let jet = ScalarJet::new(ints(&[0, 0, 1]), vec![vec![Rat::zero(); 3]; 3], &frame).unwrap();
        assert_eq!(
            gradient(&jet, &diag).components(),
            &[r(0), r(0), Rat::new(1, 4)][..]
        );
    }

    #[test]
    fn inconsistent_jet_rejected() {
        // h2xr: [e1,e2] = -e1 forces dd_12 - dd_21 = -d_1.
        let frame = FrameAlgebra::from_brackets(3, &[(0, 1, 0, r(-1))]).unwrap();
        let err = ScalarJet::new(ints(&[1, 0, 0]), vec![vec![Rat::zero(); 3]; 3], &frame);
        assert!(matches!(err, Err(GeometryError::InconsistentJet { i: 1, j: 2, .. })));
        let dd = vec![ints(&[0, -1, 0]), ints(&[0, 0, 0]), ints(&[0, 0, 0])];
        assert!(ScalarJet::new(ints(&[1, 0, 0]), dd, &frame).is_ok());
    }

    #[test]
    fn lower_and_raise_examples() {
        let id = MetricFrame::identity(3).unwrap();
        let v = Tensor::vector(ints(&[0, 0, 1]));
        let low = raise_lower(&v, &id, 0, Direction::Down).unwrap();
        assert_eq!(low.slots(), &[Slot::Down]);
        assert_eq!(low.components(), &ints(&[0, 0, 1])[..]);
        assert!(raise_lower(&v, &id, 0, Direction::Up).is_err());
    }

    #[test]
    fn singular_metric_rejected() {
        let rows = [ints(&[1, 1, 0]), ints(&[1, 1, 0]), ints(&[0, 0, 1])];
        assert!(matches!(
            MetricFrame::from_rows(&rows),
            Err(GeometryError::DegenerateMetric(_))
        ));
    }

    #[test]
    fn non_positive_metric_fails_validation() {
        let metric =
            MetricFrame::from_rows(&[ints(&[1, 0, 0]), ints(&[0, -1, 0]), ints(&[0, 0, 1])]).unwrap();
        let spec = GeometrySpec::new("lorentz", FrameAlgebra::abelian(3).unwrap(), metric, ints(&[0, 0, 1]))
            .unwrap();
        let report = validate(&spec);
        assert!(!report.check("metric-positive-definite").unwrap().passed);
        assert!(!report.is_valid());
    }

    #[test]
    fn degenerate_xi_warns_but_validates() {
        let spec = example1().with_xi(ints(&[0, 0, 0])).unwrap();
        let report = validate(&spec);
        assert!(report.is_valid());
        assert!(!report.check("unit-xi").unwrap().passed);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn inverse_is_exact() {
        let rows = vec![
            vec![r(2), Rat::new(1, 2), r(0)],
            vec![Rat::new(1, 2), r(1), Rat::new(-1, 3)],
            vec![r(0), Rat::new(-1, 3), r(3)],
        ];
        let inv = invert(&rows).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rat = (0..3).map(|m| &rows[i][m] * &inv[m][j]).sum();
                assert_eq!(s, delta(i, j));
            }
        }
    }
}
