//! Dense tensor components over frame indices.
//!
//! A [`Tensor`] carries an ordered list of slots, each either contravariant
//! ([`Slot::Up`]) or covariant ([`Slot::Down`]), and `dim^rank` exact
//! components stored row-major (last slot fastest). Indices are 0-based.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Up,
    Down,
}

impl Slot {
    pub fn flipped(self) -> Slot {
        match self {
            Slot::Up => Slot::Down,
            Slot::Down => Slot::Up,
        }
    }

    fn code(self) -> char {
        match self {
            Slot::Up => 'u',
            Slot::Down => 'd',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tensor {
    dim: usize,
    slots: Vec<Slot>,
    components: Vec<Rat>,
}

fn pow(dim: usize, rank: usize) -> usize {
    (0..rank).fold(1usize, |acc, _| acc * dim)
}

/// Iterates all multi-indices of the given rank in row-major order.
pub fn multi_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = pow(dim, rank);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for slot in (0..rank).rev() {
            idx[slot] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

impl Tensor {
    pub fn zeros(dim: usize, slots: &[Slot]) -> Tensor {
        Tensor {
            dim,
            slots: slots.to_vec(),
            components: vec![Rat::zero(); pow(dim, slots.len())],
        }
    }

    pub fn from_fn(dim: usize, slots: &[Slot], mut f: impl FnMut(&[usize]) -> Rat) -> Tensor {
        let components = multi_indices(dim, slots.len()).map(|idx| f(&idx)).collect();
        Tensor {
            dim,
            slots: slots.to_vec(),
            components,
        }
    }

    /// Builds a tensor from row-major components, checking the length.
    pub fn from_components(dim: usize, slots: &[Slot], components: Vec<Rat>) -> Result<Tensor> {
        let expected = pow(dim, slots.len());
        if components.len() != expected {
            return Err(GeometryError::Shape(format!(
                "expected {expected} components, got {}",
                components.len()
            )));
        }
        Ok(Tensor {
            dim,
            slots: slots.to_vec(),
            components,
        })
    }

    pub fn scalar(value: Rat) -> Tensor {
        Tensor {
            dim: 1,
            slots: Vec::new(),
            components: vec![value],
        }
    }

    pub fn vector(components: Vec<Rat>) -> Tensor {
        Tensor {
            dim: components.len(),
            slots: vec![Slot::Up],
            components,
        }
    }

    pub fn covector(components: Vec<Rat>) -> Tensor {
        Tensor {
            dim: components.len(),
            slots: vec![Slot::Down],
            components,
        }
    }

    /// The `(1,1)` identity `δ^i_j`.
    pub fn identity(dim: usize) -> Tensor {
        Tensor::from_fn(dim, &[Slot::Up, Slot::Down], |idx| delta(idx[0], idx[1]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// `(contravariant count, covariant count)`.
    pub fn valence(&self) -> (usize, usize) {
        let p = self.slots.iter().filter(|s| **s == Slot::Up).count();
        (p, self.slots.len() - p)
    }

    pub fn components(&self) -> &[Rat] {
        &self.components
    }

    /// Slot signature such as `"udd"`.
    pub fn signature(&self) -> String {
        self.slots.iter().map(|s| s.code()).collect()
    }

    fn offset(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.slots.len() {
            return Err(GeometryError::Valence(format!(
                "rank-{} access on rank-{} tensor",
                idx.len(),
                self.slots.len()
            )));
        }
        let mut flat = 0;
        for &i in idx {
            if i >= self.dim {
                return Err(GeometryError::IndexOutOfRange {
                    index: i,
                    dim: self.dim,
                });
            }
            flat = flat * self.dim + i;
        }
        Ok(flat)
    }

    pub fn get(&self, idx: &[usize]) -> Result<&Rat> {
        let at = self.offset(idx)?;
        Ok(&self.components[at])
    }

    pub fn set(&mut self, idx: &[usize], value: Rat) -> Result<()> {
        let at = self.offset(idx)?;
        self.components[at] = value;
        Ok(())
    }

    /// Value of a rank-0 tensor.
    pub fn scalar_value(&self) -> Result<&Rat> {
        if !self.slots.is_empty() {
            return Err(GeometryError::Valence(format!(
                "expected scalar, got rank {}",
                self.slots.len()
            )));
        }
        Ok(&self.components[0])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Rat::is_zero)
    }

    pub fn same_shape(&self, other: &Tensor) -> bool {
        (self.slots.is_empty() && other.slots.is_empty())
            || (self.dim == other.dim && self.slots == other.slots)
    }

    fn check_shape(&self, other: &Tensor) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(GeometryError::Shape(format!(
                "{} (dim {}) vs {} (dim {})",
                self.signature(),
                self.dim,
                other.signature(),
                other.dim
            )))
        }
    }

    pub fn checked_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(&Rat, &Rat) -> Rat) -> Tensor {
        Tensor {
            dim: self.dim,
            slots: self.slots.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Tensor {
        Tensor {
            dim: self.dim,
            slots: self.slots.clone(),
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> Tensor {
        self.map(|x| x * factor)
    }

    /// Largest `|a - b|` over all components.
    pub fn max_abs_deviation(&self, other: &Tensor) -> Result<Rat> {
        self.check_shape(other)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rat::zero))
    }

    /// Outer product; slots of `self` come first.
    pub fn tensor_product(&self, other: &Tensor) -> Result<Tensor> {
        if !self.slots.is_empty() && !other.slots.is_empty() && self.dim != other.dim {
            return Err(GeometryError::Shape(format!(
                "dimensions {} and {} differ",
                self.dim, other.dim
            )));
        }
        let dim = if self.slots.is_empty() {
            other.dim
        } else {
            self.dim
        };
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut components = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                components.push(a * b);
            }
        }
        Ok(Tensor {
            dim,
            slots,
            components,
        })
    }

    /// Trace over one contravariant and one covariant slot (positions in the
    /// slot list). The remaining slots keep their relative order.
    pub fn contract(&self, upper_slot: usize, lower_slot: usize) -> Result<Tensor> {
        let rank = self.slots.len();
        for slot in [upper_slot, lower_slot] {
            if slot >= rank {
                return Err(GeometryError::Valence(format!(
                    "slot {slot} out of range for rank {rank}"
                )));
            }
        }
        if self.slots[upper_slot] != Slot::Up {
            return Err(GeometryError::SlotKind {
                slot: upper_slot,
                expected: Slot::Up,
                found: self.slots[upper_slot],
            });
        }
        if self.slots[lower_slot] != Slot::Down {
            return Err(GeometryError::SlotKind {
                slot: lower_slot,
                expected: Slot::Down,
                found: self.slots[lower_slot],
            });
        }
        let kept: Vec<usize> = (0..rank)
            .filter(|&s| s != upper_slot && s != lower_slot)
            .collect();
        let slots: Vec<Slot> = kept.iter().map(|&s| self.slots[s]).collect();
        let mut full = vec![0; rank];
        let result = Tensor::from_fn(self.dim, &slots, |idx| {
            for (pos, &s) in kept.iter().enumerate() {
                full[s] = idx[pos];
            }
            let mut acc = Rat::zero();
            for m in 0..self.dim {
                full[upper_slot] = m;
                full[lower_slot] = m;
                acc += &self[&full[..]];
            }
            acc
        });
        Ok(if slots.is_empty() {
            Tensor::scalar(result.components[0].clone())
        } else {
            result
        })
    }

    /// Reorders slots: slot `p` of the result is slot `order[p]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Tensor> {
        let rank = self.slots.len();
        let mut seen = vec![false; rank];
        if order.len() != rank || order.iter().any(|&o| o >= rank || std::mem::replace(&mut seen[o], true)) {
            return Err(GeometryError::Valence(format!(
                "{order:?} is not a permutation of 0..{rank}"
            )));
        }
        let slots: Vec<Slot> = order.iter().map(|&o| self.slots[o]).collect();
        let mut src = vec![0; rank];
        Ok(Tensor::from_fn(self.dim, &slots, |idx| {
            for (p, &o) in order.iter().enumerate() {
                src[o] = idx[p];
            }
            self[&src[..]].clone()
        }))
    }

    /// `(T + T with slots a and b swapped) / 2`; both slots must have the same kind.
    pub fn symmetrize(&self, a: usize, b: usize) -> Result<Tensor> {
        let rank = self.slots.len();
        if a >= rank || b >= rank || self.slots[a] != self.slots[b] {
            return Err(GeometryError::Valence(format!(
                "cannot symmetrize slots {a} and {b} of {}",
                self.signature()
            )));
        }
        let mut order: Vec<usize> = (0..rank).collect();
        order.swap(a, b);
        let swapped = self.permute(&order)?;
        let half = Rat::new(1, 2);
        Ok(self.zip_with(&swapped, |x, y| (x + y) * &half))
    }
}

pub fn delta(i: usize, j: usize) -> Rat {
    if i == j {
        Rat::one()
    } else {
        Rat::zero()
    }
}

impl Index<&[usize]> for Tensor {
    type Output = Rat;

    fn index(&self, idx: &[usize]) -> &Rat {
        match self.get(idx) {
            Ok(v) => v,
            Err(e) => panic!("tensor index {idx:?}: {e}"),
        }
    }
}

impl<const N: usize> Index<[usize; N]> for Tensor {
    type Output = Rat;

    fn index(&self, idx: [usize; N]) -> &Rat {
        &self[&idx[..]]
    }
}

impl Add for &Tensor {
    type Output = Tensor;

    fn add(self, rhs: &Tensor) -> Tensor {
        self.checked_add(rhs).expect("tensor addition")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;

    fn sub(self, rhs: &Tensor) -> Tensor {
        self.checked_sub(rhs).expect("tensor subtraction")
    }
}

impl Neg for &Tensor {
    type Output = Tensor;

    fn neg(self) -> Tensor {
        self.map(|x| -x)
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor[{}; dim {}](", self.signature(), self.dim)?;
        for (n, c) in self.components.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn trace_of_identity_is_dim() {
        let id = Tensor::identity(3);
        let tr = id.contract(0, 1).unwrap();
        assert_eq!(tr.scalar_value().unwrap(), &r(3));
    }

    #[test]
    fn psi_of_xi_via_contraction() {
        let xi = Tensor::vector(vec![r(0), r(0), r(1)]);
        let psi = Tensor::covector(vec![r(0), r(0), r(1)]);
        let t = xi.tensor_product(&psi).unwrap();
        assert_eq!(t.valence(), (1, 1));
        assert_eq!(t.contract(0, 1).unwrap().scalar_value().unwrap(), &r(1));
    }

    #[test]
    fn contract_rejects_wrong_kinds() {
        let g = Tensor::zeros(3, &[Slot::Down, Slot::Down]);
        assert!(matches!(
            g.contract(0, 1),
            Err(GeometryError::SlotKind { slot: 0, .. })
        ));
        let id = Tensor::identity(3);
        assert!(id.contract(1, 0).is_err());
        assert!(id.contract(0, 2).is_err());
    }

    #[test]
    fn bounds_and_rank_checked() {
        let t = Tensor::zeros(3, &[Slot::Up, Slot::Down]);
        assert!(matches!(
            t.get(&[0, 3]),
            Err(GeometryError::IndexOutOfRange { index: 3, dim: 3 })
        ));
        assert!(matches!(t.get(&[0]), Err(GeometryError::Valence(_))));
        assert_eq!(t.components().len(), 9);
    }

    #[test]
    fn permute_and_symmetrize() {
        let t = Tensor::from_fn(2, &[Slot::Down, Slot::Down], |i| r((i[0] * 2 + i[1]) as i64));
        let tt = t.permute(&[1, 0]).unwrap();
        assert_eq!(tt[[0, 1]], t[[1, 0]]);
        let s = t.symmetrize(0, 1).unwrap();
        assert_eq!(s[[0, 1]], Rat::new(3, 2));
        assert_eq!(s[[0, 1]], s[[1, 0]]);
        assert!(t.permute(&[0, 0]).is_err());
    }

    #[test]
    fn multi_index_order_is_row_major() {
        let all: Vec<_> = multi_indices(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
