use std::collections::BTreeMap;

use crate::combinatorics::{enumerate_exponents, exponent_of, multinomial, ExponentVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::dense::{DenseTensor, DEFAULT_DENSE_CAP};

/// Order-`k` symmetric tensor over `C^n`, stored as one value per exponent class.
///
/// The value at `p` is the common entry `a_j` of every index tuple `j` whose
/// multiplicities are `p`. Absent keys are zero and zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTensor<S> {
    order: usize,
    dim: usize,
    coeffs: BTreeMap<ExponentVector, S>,
}

impl<S: Scalar> SymmetricTensor<S> {
    pub fn zero(order: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        Ok(Self {
            order,
            dim,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a tensor from `(exponent, value)` pairs; repeated keys are summed.
    pub fn from_coeffs<I>(order: usize, dim: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, S)>,
    {
        let mut t = Self::zero(order, dim)?;
        for (p, v) in coeffs {
            if p.nvars() != dim || p.degree() as usize != order {
                return Err(Error::ShapeMismatch(format!(
                    "exponent {p:?} does not have degree {order} in {dim} variables"
                )));
            }
            t.add_at(p, v);
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<ExponentVector, S> {
        &self.coeffs
    }

    pub fn get(&self, p: &ExponentVector) -> S {
        self.coeffs.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_at(&mut self, p: ExponentVector, v: S) {
        let sum = self.get(&p) + v;
        if sum.is_zero() {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, sum);
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!(
                "(order {}, dim {}) vs (order {}, dim {})",
                self.order, self.dim, other.order, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (p, v) in &other.coeffs {
            out.add_at(p.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, alpha: &S) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, v)| (p.clone(), alpha.clone() * v.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self {
            order: self.order,
            dim: self.dim,
            coeffs,
        }
    }

    /// Applies `f` to every stored coefficient.
    pub fn map<U: Scalar>(&self, f: impl Fn(&S) -> U) -> SymmetricTensor<U> {
        SymmetricTensor {
            order: self.order,
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, v)| (p.clone(), f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Compresses a dense tensor that is symmetric within `tol` (relative to `1 + max|a|`).
    pub fn compress(dense: &DenseTensor<S>, tol: f64) -> Result<Self> {
        let (deviation, index, canonical) = dense.worst_asymmetry();
        if deviation > tol * (1.0 + dense.max_modulus()) {
            return Err(Error::SymmetryViolation {
                index,
                canonical,
                deviation,
            });
        }
        let coeffs = enumerate_exponents(dense.order(), dense.dim())
            .into_iter()
            .map(|p| {
                let v = dense.get(&p.canonical_indices()).clone();
                (p, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(Self {
            order: dense.order(),
            dim: dense.dim(),
            coeffs,
        })
    }

    pub fn decompress(&self) -> Result<DenseTensor<S>> {
        self.decompress_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn decompress_with_cap(&self, cap: usize) -> Result<DenseTensor<S>> {
        DenseTensor::from_fn_with_cap(self.order, self.dim, cap, |idx| {
            self.get(&exponent_of(idx, self.dim))
        })
    }

    /// Frobenius norm of the dense array, computed in compressed form.
    pub fn frobenius_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(p, v)| multinomial(p).map_or(f64::INFINITY, |m| m as f64) * v.modulus().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `sqrt(sum_p multinomial(p) |a_p - b_p|^2)`, the dense Euclidean distance.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        let mut acc = 0.0;
        for p in self.coeffs.keys().chain(other.coeffs.keys().filter(|p| !self.coeffs.contains_key(*p))) {
            let d = (self.get(p) - other.get(p)).modulus();
            acc += multinomial(p)? as f64 * d * d;
        }
        Ok(acc.sqrt())
    }

    /// Coefficient vector in enumeration order, zeros included.
    pub fn to_vec(&self) -> Vec<S> {
        enumerate_exponents(self.order, self.dim)
            .iter()
            .map(|p| self.get(p))
            .collect()
    }
}

/// `v^{⊗k}`: the class value at `p` is `prod_i v_i^{p_i}`.
pub fn outer_power<S: Scalar>(v: &[S], order: usize) -> Result<SymmetricTensor<S>> {
    if v.is_empty() {
        return Err(Error::Invalid("outer power of an empty vector".into()));
    }
    let coeffs = enumerate_exponents(order, v.len()).into_iter().map(|p| {
        let value = p
            .exponents()
            .iter()
            .zip(v)
            .fold(S::one(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize));
        (p, value)
    });
    SymmetricTensor::from_coeffs(order, v.len(), coeffs)
}
