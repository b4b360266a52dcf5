use std::collections::HashMap;

use crate::combinatorics::{exponent_of, ExponentVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on materialized dense entries.
pub const DEFAULT_DENSE_CAP: usize = 10_000_000;

/// Default relative tolerance for symmetry checks.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-12;

/// Full cubical order-`k` array over `C^n`, row-major with the first index slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<S> {
    order: usize,
    dim: usize,
    entries: Vec<S>,
}

/// Number of entries `n^k`, checked against `cap`.
pub(crate) fn dense_len(order: usize, dim: usize, cap: usize) -> Result<usize> {
    let requested = (dim as u128).checked_pow(order as u32).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::Capacity { requested, cap });
    }
    Ok(requested as usize)
}

impl<S: Scalar> DenseTensor<S> {
    pub fn new(order: usize, dim: usize, entries: Vec<S>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let len = dense_len(order, dim, usize::MAX)?;
        if entries.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "order {order} dimension {dim} needs {len} entries, got {}",
                entries.len()
            )));
        }
        Ok(Self { order, dim, entries })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Self::zeros_with_cap(order, dim, DEFAULT_DENSE_CAP)
    }

    pub fn zeros_with_cap(order: usize, dim: usize, cap: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let len = dense_len(order, dim, cap)?;
        Ok(Self {
            order,
            dim,
            entries: vec![S::zero(); len],
        })
    }

    /// Builds a tensor by evaluating `f` at every index tuple.
    pub fn from_fn(order: usize, dim: usize, f: impl FnMut(&[usize]) -> S) -> Result<Self> {
        Self::from_fn_with_cap(order, dim, DEFAULT_DENSE_CAP, f)
    }

    pub fn from_fn_with_cap(
        order: usize,
        dim: usize,
        cap: usize,
        mut f: impl FnMut(&[usize]) -> S,
    ) -> Result<Self> {
        let mut t = Self::zeros_with_cap(order, dim, cap)?;
        let mut idx = vec![0usize; order];
        for slot in t.entries.iter_mut() {
            *slot = f(&idx);
            advance(&mut idx, dim);
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &j| acc * self.dim + j)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let off = self.offset(idx);
        self.entries[off] = value;
    }

    /// Iterates `(index tuple, entry)` in storage order.
    pub fn indexed(&self) -> impl Iterator<Item = (Vec<usize>, &S)> + '_ {
        let mut idx = vec![0usize; self.order];
        let dim = self.dim;
        self.entries.iter().map(move |e| {
            let here = idx.clone();
            advance(&mut idx, dim);
            (here, e)
        })
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// Largest deviation of an entry from its sorted-index representative,
    /// together with the offending index and its representative.
    pub(crate) fn worst_asymmetry(&self) -> (f64, Vec<usize>, Vec<usize>) {
        let mut worst = (0.0, Vec::new(), Vec::new());
        for (idx, e) in self.indexed() {
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted == idx {
                continue;
            }
            let d = (e.clone() - self.get(&sorted).clone()).modulus();
            if d > worst.0 {
                worst = (d, idx, sorted);
            }
        }
        worst
    }

    /// True iff every entry matches its sorted-index representative within
    /// `tol * (1 + max|a|)`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let bound = tol * (1.0 + self.max_modulus());
        self.worst_asymmetry().0 <= bound
    }

    /// Projection onto symmetric tensors: each entry becomes the mean of its
    /// permutation class.
    pub fn symmetrize(&self) -> Self {
        let mut classes: HashMap<ExponentVector, (S, u64)> = HashMap::new();
        for (idx, e) in self.indexed() {
            let slot = classes
                .entry(exponent_of(&idx, self.dim))
                .or_insert_with(|| (S::zero(), 0));
            slot.0 = slot.0.clone() + e.clone();
            slot.1 += 1;
        }
        let means: HashMap<ExponentVector, S> = classes
            .into_iter()
            .map(|(p, (sum, count))| (p, sum / S::from_u64(count)))
            .collect();
        let entries = self
            .indexed()
            .map(|(idx, _)| means[&exponent_of(&idx, self.dim)].clone())
            .collect();
        Self {
            order: self.order,
            dim: self.dim,
            entries,
        }
    }

    /// Euclidean (Frobenius) distance between two dense tensors.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.order, self.dim, other.order, other.dim
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a.clone() - b.clone()).modulus().powi(2))
            .sum::<f64>()
            .sqrt())
    }
}

/// Odometer increment of a row-major index tuple.
pub(crate) fn advance(idx: &mut [usize], dim: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return;
        }
        *slot = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t222(a122: f64, a212: f64, a221: f64) -> DenseTensor<f64> {
        DenseTensor::from_fn(3, 2, |idx| match idx {
            [0, 1, 1] => a122,
            [1, 0, 1] => a212,
            [1, 1, 0] => a221,
            _ => 0.0,
        })
        .unwrap()
    }

    #[test]
    fn construction_validates_entry_count() {
        assert!(DenseTensor::<f64>::new(2, 3, vec![0.0; 8]).is_err());
        assert!(DenseTensor::<f64>::new(2, 0, vec![]).is_err());
        let t = DenseTensor::new(0, 3, vec![5.0]).unwrap();
        assert_eq!(*t.get(&[]), 5.0);
    }

    #[test]
    fn capacity_cap_is_enforced() {
        let err = DenseTensor::<f64>::zeros_with_cap(4, 10, 1000).unwrap_err();
        assert_eq!(err, Error::Capacity { requested: 10_000, cap: 1000 });
    }

    #[test]
    fn symmetry_detection() {
        assert!(t222(1.0, 1.0, 1.0).is_symmetric(1e-12));
        assert!(!t222(1.0, 0.5, 1.0).is_symmetric(1e-12));
    }

    #[test]
    fn symmetrize_examples() {
        let out = t222(6.0, 0.0, 0.0).symmetrize();
        assert_eq!(out, t222(2.0, 2.0, 2.0));

        let sym = t222(1.0, 1.0, 1.0);
        assert_eq!(sym.symmetrize(), sym);

        let m = DenseTensor::new(2, 2, vec![1.0, 2.0, 4.0, 3.0]).unwrap();
        assert_eq!(m.symmetrize().entries(), &[1.0, 3.0, 3.0, 3.0]);
    }

    #[test]
    fn symmetrize_agrees_with_permutation_average() {
        // brute force: average over all 3! permutations, k = 3, n = 3
        let a = DenseTensor::from_fn(3, 3, |i| (i[0] * 9 + i[1] * 3 + i[2]) as f64 * 0.37 - 2.0).unwrap();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let brute = DenseTensor::from_fn(3, 3, |i| {
            perms.iter().map(|p| *a.get(&[i[p[0]], i[p[1]], i[p[2]]])).sum::<f64>() / 6.0
        })
        .unwrap();
        let fast = a.symmetrize();
        assert!(fast.frobenius_distance(&brute).unwrap() < 1e-12);
        // brute-force permutation scan of the symmetry contract
        for (i, e) in fast.indexed() {
            for p in &perms {
                assert!((fast.get(&[i[p[0]], i[p[1]], i[p[2]]]) - e).abs() < 1e-12);
            }
        }
        assert!(fast.is_symmetric(1e-12));
    }
}
