#![allow(dead_code)]

use proptest::prelude::*;
use sscurv_core::frame::{FrameAlgebra, GeometrySpec, MetricFrame, ScalarJet};
use sscurv_core::tensor::{Slot, Tensor};
use sscurv_core::Rat;

pub fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn pool() -> impl Strategy<Value = Rat> {
    prop::sample::select(vec![
        q(-2, 1),
        q(-1, 1),
        q(-1, 2),
        q(0, 1),
        q(0, 1),
        q(0, 1),
        q(1, 2),
        q(1, 1),
        q(2, 1),
    ])
}

fn eps(i: usize, j: usize, l: usize) -> i64 {
    if i == j || j == l || i == l {
        0
    } else if (i, j, l) == (0, 1, 2) || (i, j, l) == (1, 2, 0) || (i, j, l) == (2, 0, 1) {
        1
    } else {
        -1
    }
}

/// Three-dimensional algebra in Bianchi form
/// `C^k_{ij} = ε_{ijl} n^{lk} + a_i δ^k_j - a_j δ^k_i`, which satisfies
/// Jacobi whenever `n a = 0`.
pub fn bianchi_algebra() -> impl Strategy<Value = FrameAlgebra> {
    (prop::collection::vec(pool(), 6), prop::collection::vec(pool(), 3))
        .prop_map(|(nv, a)| {
            let n = [
                [nv[0].clone(), nv[3].clone(), nv[4].clone()],
                [nv[3].clone(), nv[1].clone(), nv[5].clone()],
                [nv[4].clone(), nv[5].clone(), nv[2].clone()],
            ];
            (n, a)
        })
        .prop_filter("n a = 0", |(n, a)| {
            (0..3).all(|k| (0..3).map(|l| &n[k][l] * &a[l]).sum::<Rat>().is_zero())
        })
        .prop_map(|(n, a)| {
            let c = Tensor::from_fn(3, &[Slot::Up, Slot::Down, Slot::Down], |x| {
                let (k, i, j) = (x[0], x[1], x[2]);
                let rot: Rat = (0..3).map(|l| r(eps(i, j, l)) * &n[l][k]).sum();
                let delta = |a: usize, b: usize| if a == b { Rat::one() } else { Rat::zero() };
                rot + &a[i] * delta(k, j) - &a[j] * delta(k, i)
            });
            FrameAlgebra::new(c).unwrap()
        })
}

/// `L Lᵀ` with `L` lower triangular and positive diagonal.
pub fn spd_metric(dim: usize) -> impl Strategy<Value = MetricFrame> {
    let diag = prop::sample::select(vec![q(1, 2), q(1, 1), q(2, 1), q(3, 2)]);
    (
        prop::collection::vec(diag, dim),
        prop::collection::vec(pool(), dim * (dim - 1) / 2),
    )
        .prop_map(move |(d, off)| {
            let mut l = vec![vec![Rat::zero(); dim]; dim];
            let mut it = off.into_iter();
            for i in 0..dim {
                l[i][i] = d[i].clone();
                for j in 0..i {
                    l[i][j] = it.next().unwrap();
                }
            }
            let rows: Vec<Vec<Rat>> = (0..dim)
                .map(|i| (0..dim).map(|j| (0..dim).map(|k| &l[i][k] * &l[j][k]).sum()).collect())
                .collect();
            MetricFrame::from_rows(&rows).unwrap()
        })
}

pub fn vector(dim: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(pool(), dim)
}

pub fn general_geometry() -> impl Strategy<Value = GeometrySpec> {
    (bianchi_algebra(), spd_metric(3), vector(3)).prop_map(|(frame, metric, xi)| {
        GeometrySpec::new("fuzz", frame, metric, xi).unwrap()
    })
}

/// Two-dimensional algebra `[e1,e2] = a e1 + b e2` plus a central direction
/// `e3` orthogonal to it with unit length; ξ = e3 is a unit parallel field.
pub fn parallel_geometry() -> impl Strategy<Value = GeometrySpec> {
    (pool(), pool(), spd_metric(2)).prop_map(|(a, b, m2)| {
        let frame = FrameAlgebra::from_brackets(3, &[(0, 1, 0, a), (0, 1, 1, b)]).unwrap();
        let rows: Vec<Vec<Rat>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| match (i, j) {
                        (2, 2) => Rat::one(),
                        (2, _) | (_, 2) => Rat::zero(),
                        _ => m2.g(i, j).clone(),
                    })
                    .collect()
            })
            .collect();
        let metric = MetricFrame::from_rows(&rows).unwrap();
        GeometrySpec::new("parallel", frame, metric, vec![r(0), r(0), r(1)]).unwrap()
    })
}

/// A consistent jet: symmetric part drawn freely, antisymmetric part fixed by
/// `dd_ij - dd_ji = C^k_{ij} d_k`.
pub fn jet_for(frame: &FrameAlgebra, d: Vec<Rat>, sym: Vec<Rat>) -> ScalarJet {
    let n = frame.dim();
    let half = q(1, 2);
    let mut it = sym.into_iter().cycle();
    let mut s = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = it.next().unwrap_or_else(Rat::zero);
            s[i][j] = v.clone();
            s[j][i] = v;
        }
    }
    let dd: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let skew: Rat = (0..n).map(|k| frame.c(k, i, j) * &d[k]).sum();
                    &s[i][j] + &skew * &half
                })
                .collect()
        })
        .collect();
    ScalarJet::new(d, dd, frame).unwrap()
}
