//! Curvature of a connection and the tensors derived from it.
//!
//! `R(e_i, e_j) e_k = R^l_{kij} e_l`, stored as a `(1,3)` tensor indexed
//! `[l, k, i, j]`. The Ricci tensor is `S(V, Y) = tr(U ↦ R(U, V) Y)`, so
//! `S_{jk} = Σ_i R^i_{kij}`, and the Ricci operator satisfies
//! `g(QU, V) = S(U, V)`.

use crate::connection::{Connection, ConnectionKind};
use crate::error::{GeometryError, Result};
use crate::frame::{FrameAlgebra, MetricFrame};
use crate::rat::Rat;
use crate::tensor::{delta, Slot, Tensor};

const UDDD: [Slot; 4] = [Slot::Up, Slot::Down, Slot::Down, Slot::Down];
const DD: [Slot; 2] = [Slot::Down, Slot::Down];
const UD: [Slot; 2] = [Slot::Up, Slot::Down];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureBundle {
    riemann: Tensor,
    ricci: Tensor,
    scalar: Rat,
    ricci_op: Tensor,
    source: ConnectionKind,
}

/// With constant coefficients the derivative terms drop out of
/// `R(U,V)Y = ∇_U ∇_V Y - ∇_V ∇_U Y - ∇_[U,V] Y`, leaving
/// `R^l_{kij} = Γ^m_{jk} Γ^l_{im} - Γ^m_{ik} Γ^l_{jm} - C^m_{ij} Γ^l_{mk}`.
pub fn curvature(conn: &Connection, frame: &FrameAlgebra, g: &MetricFrame) -> Result<CurvatureBundle> {
    let n = conn.dim();
    if frame.dim() != n || g.dim() != n {
        return Err(GeometryError::Shape(format!(
            "connection dim {n}, frame dim {}, metric dim {}",
            frame.dim(),
            g.dim()
        )));
    }
    let riemann = Tensor::from_fn(n, &UDDD, |idx| {
        let (l, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = Rat::zero();
        for m in 0..n {
            acc += conn.gamma(m, j, k) * conn.gamma(l, i, m);
            acc -= conn.gamma(m, i, k) * conn.gamma(l, j, m);
            acc -= frame.c(m, i, j) * conn.gamma(l, m, k);
        }
        acc
    });
    let ricci = Tensor::from_fn(n, &DD, |idx| {
        let (j, k) = (idx[0], idx[1]);
        (0..n).map(|i| riemann[[i, k, i, j]].clone()).sum()
    });
    let scalar = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .map(|(j, k)| g.g_inv(j, k) * &ricci[[j, k]])
        .sum();
    let ricci_op = Tensor::from_fn(n, &UD, |idx| {
        let (l, i) = (idx[0], idx[1]);
        (0..n).map(|k| g.g_inv(l, k) * &ricci[[i, k]]).sum()
    });
    Ok(CurvatureBundle {
        riemann,
        ricci,
        scalar,
        ricci_op,
        source: conn.kind(),
    })
}

impl CurvatureBundle {
    pub fn dim(&self) -> usize {
        self.riemann.dim()
    }

    pub fn riemann(&self) -> &Tensor {
        &self.riemann
    }

    /// `R^l_{kij}`: component `l` of `R(e_i, e_j) e_k`.
    pub fn r(&self, l: usize, k: usize, i: usize, j: usize) -> &Rat {
        &self.riemann[[l, k, i, j]]
    }

    pub fn ricci(&self) -> &Tensor {
        &self.ricci
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    /// `Q^l_i` with `Q e_i = Q^l_i e_l`.
    pub fn ricci_op(&self) -> &Tensor {
        &self.ricci_op
    }

    pub fn source(&self) -> ConnectionKind {
        self.source
    }

    /// `R(u, v) y` for constant-component vectors.
    pub fn apply(&self, u: &[Rat], v: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        (0..n)
            .map(|l| {
                let mut acc = Rat::zero();
                for i in 0..n {
                    if u[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if v[j].is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            if y[k].is_zero() {
                                continue;
                            }
                            acc += &(self.r(l, k, i, j) * &u[i] * &v[j] * &y[k]);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// `R(U,V)Y + R(V,Y)U + R(Y,U)V` in components.
    pub fn first_bianchi(&self) -> Tensor {
        Tensor::from_fn(self.dim(), &UDDD, |idx| {
            let (l, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
            self.r(l, k, i, j) + self.r(l, i, j, k) + self.r(l, j, k, i)
        })
    }

    /// `R^l_{kij} = -R^l_{kji}` for every component.
    pub fn is_antisymmetric(&self) -> bool {
        let r = &self.riemann;
        r.permute(&[0, 1, 3, 2]).map(|p| &p + r).is_ok_and(|s| s.is_zero())
    }
}

/// `κ(u,v) = g(R(u,v)v, u) / (g(u,u) g(v,v) - g(u,v)^2)`.
pub fn sectional(bundle: &CurvatureBundle, g: &MetricFrame, u: &[Rat], v: &[Rat]) -> Result<Rat> {
    let n = bundle.dim();
    if u.len() != n || v.len() != n {
        return Err(GeometryError::Shape(format!("plane vectors must have {n} components")));
    }
    let area = g.inner(u, u) * g.inner(v, v) - {
        let uv = g.inner(u, v);
        &uv * &uv
    };
    let rvv = bundle.apply(u, v, v);
    let num = g.inner(&rvv, u);
    num.checked_div(&area).ok_or(GeometryError::DegeneratePlane)
}

/// `κ (g_jk δ^l_i - g_ik δ^l_j)`, the curvature of constant sectional curvature κ.
pub fn constant_curvature_form(g: &MetricFrame, kappa: &Rat) -> Tensor {
    Tensor::from_fn(g.dim(), &UDDD, |idx| {
        let (l, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
        (g.g(j, k) * delta(l, i) - g.g(i, k) * delta(l, j)) * kappa
    })
}

/// The single κ with `R = κ (g ∧ g)` componentwise, if any.
pub fn constant_sectional(bundle: &CurvatureBundle, g: &MetricFrame) -> Option<Rat> {
    let unit = constant_curvature_form(g, &Rat::one());
    let (pos, base) = unit
        .components()
        .iter()
        .enumerate()
        .find(|(_, b)| !b.is_zero())?;
    let kappa = &bundle.riemann.components()[pos] / base;
    let candidate = unit.scale(&kappa);
    (candidate == bundle.riemann).then_some(kappa)
}

fn require_dim3(bundle: &CurvatureBundle) -> Result<()> {
    if bundle.dim() != 3 {
        Err(GeometryError::UnsupportedDimension {
            expected: 3,
            found: bundle.dim(),
        })
    } else {
        Ok(())
    }
}

/// `P(U,V)Y = R(U,V)Y - ½ [S(V,Y)U - S(U,Y)V]`.
pub fn projective(bundle: &CurvatureBundle) -> Result<Tensor> {
    require_dim3(bundle)?;
    let half = Rat::new(1, 2);
    let s = &bundle.ricci;
    Ok(Tensor::from_fn(3, &UDDD, |idx| {
        let (l, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
        bundle.r(l, k, i, j) - (&s[[j, k]] * delta(l, i) - &s[[i, k]] * delta(l, j)) * &half
    }))
}

/// `C(U,V)Y = R(U,V)Y - [S(V,Y)U - S(U,Y)V + g(V,Y)QU - g(U,Y)QV]
///            + (r/2) [g(V,Y)U - g(U,Y)V]`.
pub fn conformal(bundle: &CurvatureBundle, g: &MetricFrame) -> Result<Tensor> {
    require_dim3(bundle)?;
    if g.dim() != 3 {
        return Err(GeometryError::UnsupportedDimension {
            expected: 3,
            found: g.dim(),
        });
    }
    let half_r = &bundle.scalar * Rat::new(1, 2);
    let s = &bundle.ricci;
    let q = &bundle.ricci_op;
    Ok(Tensor::from_fn(3, &UDDD, |idx| {
        let (l, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
        let bracket = &s[[j, k]] * delta(l, i) - &s[[i, k]] * delta(l, j) + g.g(j, k) * &q[[l, i]]
            - g.g(i, k) * &q[[l, j]];
        let metric_part = (g.g(j, k) * delta(l, i) - g.g(i, k) * delta(l, j)) * &half_r;
        bundle.r(l, k, i, j) - bracket + metric_part
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{levi_civita, ssnmc};
    use crate::frame::DistinguishedField;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn e(i: usize) -> Vec<Rat> {
        (0..3).map(|m| delta(m, i)).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn setup(entries: &[(usize, usize, usize, i64)]) -> (FrameAlgebra, MetricFrame, Connection, Connection) {
        let entries: Vec<_> = entries.iter().map(|&(i, j, k, v)| (i, j, k, r(v))).collect();
        let frame = FrameAlgebra::from_brackets(3, &entries).unwrap();
        let g = MetricFrame::identity(3).unwrap();
        let dist = DistinguishedField::new(ints(&[0, 0, 1]), &g).unwrap();
        let lc = levi_civita(&frame, &g).unwrap();
        let hat = ssnmc(&lc, &dist).unwrap();
        (frame, g, lc, hat)
    }

    #[test]
    fn flat_is_flat() {
        let (frame, g, lc, _) = setup(&[]);
        let b = curvature(&lc, &frame, &g).unwrap();
        assert!(b.riemann().is_zero());
        assert!(b.ricci().is_zero());
        assert!(b.scalar().is_zero());
        assert_eq!(constant_sectional(&b, &g), Some(Rat::zero()));
        assert_eq!(sectional(&b, &g, &e(0), &e(1)).unwrap(), Rat::zero());
        assert!(projective(&b).unwrap().is_zero());
    }

    #[test]
    fn h2xr_hat_curvature() {
        let (frame, g, lc, hat) = setup(&[(0, 1, 0, -1)]);
        let lcb = curvature(&lc, &frame, &g).unwrap();
        assert_eq!(lcb.scalar(), &r(-2));
        let b = curvature(&hat, &frame, &g).unwrap();
        assert_eq!(b.apply(&e(0), &e(2), &e(2)), e(0));
        let diag = Tensor::from_fn(3, &DD, |i| {
            if i[0] != i[1] {
                r(0)
            } else if i[0] == 2 {
                r(2)
            } else {
                r(-1)
            }
        });
        assert_eq!(b.ricci(), &diag);
        assert!(b.scalar().is_zero());
        assert_eq!(sectional(&b, &g, &e(0), &e(2)).unwrap(), r(1));
        assert_eq!(sectional(&b, &g, &e(0), &e(1)).unwrap(), r(-1));
        assert_eq!(constant_sectional(&b, &g), None);
    }

    #[test]
    fn sectional_degenerate_plane() {
        let (frame, g, lc, _) = setup(&[(0, 1, 0, -1)]);
        let b = curvature(&lc, &frame, &g).unwrap();
        assert_eq!(
            sectional(&b, &g, &e(0), &ints(&[2, 0, 0])),
            Err(GeometryError::DegeneratePlane)
        );
    }

    #[test]
    fn sectional_invariant_under_plane_basis_change() {
        let (frame, g, lc, _) = setup(&[(0, 2, 0, -1), (1, 2, 1, -1), (0, 1, 2, 0)]);
        let b = curvature(&lc, &frame, &g).unwrap();
        let u = ints(&[1, 2, 0]);
        let v = ints(&[0, 1, 1]);
        let u2: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| a * r(2) + b * r(3)).collect();
        let v2: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| a - b).collect();
        assert_eq!(
            sectional(&b, &g, &u, &v).unwrap(),
            sectional(&b, &g, &u2, &v2).unwrap()
        );
    }

    #[test]
    fn lc_conformal_vanishes_on_h2xr() {
        let (frame, g, lc, _) = setup(&[(0, 1, 0, -1)]);
        let b = curvature(&lc, &frame, &g).unwrap();
        assert!(conformal(&b, &g).unwrap().is_zero());
        assert!(b.first_bianchi().is_zero());
        assert!(b.is_antisymmetric());
    }

    #[test]
    fn projective_requires_dim_three() {
        let frame = FrameAlgebra::abelian(2).unwrap();
        let g = MetricFrame::identity(2).unwrap();
        let lc = levi_civita(&frame, &g).unwrap();
        let b = curvature(&lc, &frame, &g).unwrap();
        assert_eq!(
            projective(&b),
            Err(GeometryError::UnsupportedDimension {
                expected: 3,
                found: 2
            })
        );
        assert!(conformal(&b, &g).is_err());
    }
}
