//! Levi-Civita and semi-symmetric non-metric connections.
//!
//! Coefficients follow `∇_{e_i} e_j = Γ^k_{ij} e_k`, stored as a `(1,2)`
//! tensor indexed `[k, i, j]`; the first lower index is the direction of
//! differentiation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::frame::{DistinguishedField, FrameAlgebra, MetricFrame};
use crate::rat::Rat;
use crate::tensor::{delta, Slot, Tensor};

const UDD: [Slot; 3] = [Slot::Up, Slot::Down, Slot::Down];
const DD: [Slot; 2] = [Slot::Down, Slot::Down];
const DDD: [Slot; 3] = [Slot::Down, Slot::Down, Slot::Down];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectionKind {
    LeviCivita,
    Ssnmc,
    Custom,
}

impl ConnectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConnectionKind::LeviCivita => "levi-civita",
            ConnectionKind::Ssnmc => "ssnmc",
            ConnectionKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ConnectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
    kind: ConnectionKind,
}

impl Connection {
    /// Injects arbitrary coefficients.
    pub fn custom(gamma: Tensor) -> Result<Self> {
        if gamma.slots() != UDD {
            return Err(GeometryError::Valence(format!(
                "connection coefficients must be 'udd', got '{}'",
                gamma.signature()
            )));
        }
        Ok(Connection {
            gamma,
            kind: ConnectionKind::Custom,
        })
    }

    pub fn kind(&self) -> ConnectionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn coefficients(&self) -> &Tensor {
        &self.gamma
    }

    /// `Γ^k_{ij}`.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Rat {
        &self.gamma[[k, i, j]]
    }

    /// `∇_u v` for constant-component vector fields.
    pub fn covariant(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut acc = Rat::zero();
                for i in 0..n {
                    if u[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if v[j].is_zero() {
                            continue;
                        }
                        acc += &(self.gamma(k, i, j) * &u[i] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    fn require(&self, kind: ConnectionKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(GeometryError::ConnectionKind {
                expected: kind.as_str(),
                found: self.kind.as_str(),
            })
        }
    }
}

/// Koszul formula with constant metric components: only the three bracket
/// terms survive,
/// `2 g(∇_{e_i} e_j, e_k) = -g(e_i,[e_j,e_k]) - g(e_j,[e_i,e_k]) + g(e_k,[e_i,e_j])`.
pub fn levi_civita(frame: &FrameAlgebra, g: &MetricFrame) -> Result<Connection> {
    let n = frame.dim();
    if g.dim() != n {
        return Err(GeometryError::Shape(format!(
            "frame dim {n} vs metric dim {}",
            g.dim()
        )));
    }
    let half = Rat::new(1, 2);
    let lowered = Tensor::from_fn(n, &DDD, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = Rat::zero();
        for m in 0..n {
            acc -= frame.c(m, j, k) * g.g(i, m);
            acc -= frame.c(m, i, k) * g.g(j, m);
            acc += frame.c(m, i, j) * g.g(k, m);
        }
        acc * &half
    });
    let gamma = Tensor::from_fn(n, &UDD, |idx| {
        let (l, i, j) = (idx[0], idx[1], idx[2]);
        (0..n).map(|k| g.g_inv(l, k) * &lowered[[i, j, k]]).sum()
    });
    let conn = Connection {
        gamma,
        kind: ConnectionKind::LeviCivita,
    };
    if !torsion(&conn, frame).is_zero() {
        return Err(GeometryError::Invalid(
            "Koszul connection has torsion; structure constants are not antisymmetric".into(),
        ));
    }
    if !non_metricity(&conn, g).is_zero() {
        return Err(GeometryError::Invalid(
            "Koszul connection is not metric; metric is not symmetric".into(),
        ));
    }
    Ok(conn)
}

/// `∇̂_U V = ∇_U V + ψ(V) U`, i.e. `Γ̂^k_{ij} = Γ^k_{ij} + ψ_j δ^k_i`.
pub fn ssnmc(lc: &Connection, dist: &DistinguishedField) -> Result<Connection> {
    lc.require(ConnectionKind::LeviCivita)?;
    let psi = dist.psi();
    let gamma = Tensor::from_fn(lc.dim(), &UDD, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        lc.gamma(k, i, j) + &psi[j] * delta(k, i)
    });
    Ok(Connection {
        gamma,
        kind: ConnectionKind::Ssnmc,
    })
}

/// `T^k_{ij} = Γ^k_{ij} - Γ^k_{ji} - C^k_{ij}`.
pub fn torsion(conn: &Connection, frame: &FrameAlgebra) -> Tensor {
    Tensor::from_fn(conn.dim(), &UDD, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        conn.gamma(k, i, j) - conn.gamma(k, j, i) - frame.c(k, i, j)
    })
}

/// Semi-symmetric torsion `T(U,V) = ψ(V)U - ψ(U)V` in components.
pub fn semi_symmetric_torsion(dist: &DistinguishedField) -> Tensor {
    let psi = dist.psi();
    Tensor::from_fn(psi.len(), &UDD, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        &psi[j] * delta(k, i) - &psi[i] * delta(k, j)
    })
}

pub fn is_semi_symmetric(t: &Tensor, dist: &DistinguishedField) -> bool {
    t.slots() == UDD && *t == semi_symmetric_torsion(dist)
}

/// `(∇_{e_i} g)(e_j, e_k) = -Γ^m_{ij} g_mk - Γ^m_{ik} g_jm`, indexed `[i, j, k]`.
pub fn non_metricity(conn: &Connection, g: &MetricFrame) -> Tensor {
    let n = conn.dim();
    Tensor::from_fn(n, &DDD, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = Rat::zero();
        for m in 0..n {
            acc -= conn.gamma(m, i, j) * g.g(m, k);
            acc -= conn.gamma(m, i, k) * g.g(j, m);
        }
        acc
    })
}

/// `∇_{e_i} ξ = 0` for every `i`.
pub fn is_parallel(lc: &Connection, dist: &DistinguishedField) -> Result<bool> {
    lc.require(ConnectionKind::LeviCivita)?;
    let n = lc.dim();
    let xi = dist.xi();
    Ok((0..n).all(|i| {
        (0..n).all(|k| {
            (0..n)
                .map(|j| lc.gamma(k, i, j) * &xi[j])
                .sum::<Rat>()
                .is_zero()
        })
    }))
}

/// `(∇_{e_i} ψ)(e_j) = -ψ(∇_{e_i} e_j)`, indexed `[i, j]`.
pub fn nabla_psi(conn: &Connection, dist: &DistinguishedField) -> Tensor {
    let n = conn.dim();
    let psi = dist.psi();
    Tensor::from_fn(n, &DD, |idx| {
        -(0..n)
            .map(|k| conn.gamma(k, idx[0], idx[1]) * &psi[k])
            .sum::<Rat>()
    })
}

/// `α*(U,V) = (∇_U ψ)(V) - ψ(U)ψ(V)`.
pub fn alpha_star(lc: &Connection, dist: &DistinguishedField) -> Result<Tensor> {
    lc.require(ConnectionKind::LeviCivita)?;
    let psi = dist.psi();
    let grad = nabla_psi(lc, dist);
    Ok(Tensor::from_fn(lc.dim(), &DD, |idx| {
        &grad[[idx[0], idx[1]]] - &psi[idx[0]] * &psi[idx[1]]
    }))
}
