//! Symmetric outer product decompositions `A = sum_i w_i v_i^{⊗k}`.
//!
//! Constructive routes: the `k`-term decomposition of the binary form
//! `z1 z2^{k-1}`, the matrix-pencil decomposition of binary cubics over `R`
//! and `C`, and the low-rank sequences that converge to higher-rank limits.

mod border;
mod monomial;
mod pencil;

pub use border::{
    border_sequence, convergence_profile, loglog_slope, BorderKind, BorderSequence,
    BorderSequenceSpec,
};
pub use monomial::{decompose_binary_monomial, decompose_monomial_rank_k};
pub use pencil::{
    classify_quadratic, decompose_sym222_pencil, pencil_quadratic, sym222_slices, PencilClass,
    PencilOutcome, PencilReality, DEGENERACY_TOL,
};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{outer_power, SymmetricTensor};

/// Field over which a decomposition is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

/// Imaginary parts below this are treated as zero for real-field checks.
pub const REAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Term<S> {
    pub weight: S,
    pub vector: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricDecomposition<S> {
    order: usize,
    dim: usize,
    field: Field,
    terms: Vec<Term<S>>,
}

impl<S: Scalar> SymmetricDecomposition<S> {
    /// Validates the terms and normalizes each vector so that its first
    /// nonzero component is 1, moving the scale into the weight. Zero-weight
    /// terms are dropped.
    pub fn new(order: usize, dim: usize, field: Field, terms: Vec<Term<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let mut normalized = Vec::with_capacity(terms.len());
        for (i, t) in terms.into_iter().enumerate() {
            if t.vector.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "term {i}: vector has length {}, expected {dim}",
                    t.vector.len()
                )));
            }
            let Some(lead) = t.vector.iter().find(|x| !x.is_zero()).cloned() else {
                return Err(Error::Invalid(format!("term {i}: zero vector")));
            };
            if field == Field::Real
                && (t.weight.parts().1.abs() > REAL_TOL
                    || t.vector.iter().any(|x| x.parts().1.abs() > REAL_TOL))
            {
                return Err(Error::Invalid(format!(
                    "term {i}: complex entries in a real-field decomposition"
                )));
            }
            let weight = t.weight * num_traits::pow(lead.clone(), order);
            if weight.is_zero() {
                continue;
            }
            let vector = t.vector.into_iter().map(|x| x / lead.clone()).collect();
            normalized.push(Term { weight, vector });
        }
        Ok(Self {
            order,
            dim,
            field,
            terms: normalized,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn vectors(&self) -> Vec<Vec<S>> {
        self.terms.iter().map(|t| t.vector.clone()).collect()
    }

    /// Sorts terms by (re, im) of the second vector component, ties by weight.
    pub fn canonicalize(mut self) -> Self {
        let key = |t: &Term<S>| {
            let (a, b) = t.vector.get(1).map_or((0.0, 0.0), Scalar::parts);
            let (c, d) = t.weight.parts();
            [a, b, c, d]
        };
        self.terms.sort_by(|x, y| {
            key(x)
                .iter()
                .zip(key(y).iter())
                .map(|(u, v)| u.partial_cmp(v).unwrap_or(Ordering::Equal))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        });
        self
    }

    /// Re-tags the decomposition as real when every entry is real within `REAL_TOL`.
    pub fn with_field(self, field: Field) -> Result<Self> {
        Self::new(self.order, self.dim, field, self.terms)
    }
}

/// `sum_i w_i v_i^{⊗k}` in compressed form.
pub fn reconstruct<S: Scalar>(d: &SymmetricDecomposition<S>) -> Result<SymmetricTensor<S>> {
    let mut acc = SymmetricTensor::zero(d.order, d.dim)?;
    for t in &d.terms {
        acc = acc.add(&outer_power(&t.vector, d.order)?.scale(&t.weight))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub residual: f64,
    pub ok: bool,
    pub stated_rank: usize,
}

/// Residual `||reconstruct(D) - A||_F`; accepted when `<= tol * (1 + ||A||_F)`.
pub fn verify<S: Scalar>(d: &SymmetricDecomposition<S>, a: &SymmetricTensor<S>, tol: f64) -> Result<VerifyReport> {
    if d.order != a.order() || d.dim != a.dim() {
        return Err(Error::ShapeMismatch(format!(
            "decomposition is (order {}, dim {}), tensor is (order {}, dim {})",
            d.order,
            d.dim,
            a.order(),
            a.dim()
        )));
    }
    let residual = reconstruct(d)?.frobenius_distance(a)?;
    Ok(VerifyReport {
        residual,
        ok: residual <= tol * (1.0 + a.frobenius_norm()),
        stated_rank: d.rank(),
    })
}
