//! Sequences of low-rank symmetric tensors whose limit has higher rank.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{power_span_rank, SymmetricTensor};

use super::{decompose_monomial_rank_k, reconstruct, Field, SymmetricDecomposition, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BorderKind {
    /// `(1/e)[(x + e y)^k - x^k]`: rank 2, limit of rank `k`.
    Rank2ToK { order: usize },
    /// `e^2 (x + y/e)^3 + e^2 (x - y/e)^3`: rank 2, limit of rank 3.
    Rank2To3,
    /// `(1/e)[(x + e y)^3 - x^3 + (z + e x)^3 - z^3]`: rank 4, limit `x^2 y + x z^2`.
    TangentSum,
}

impl BorderKind {
    pub fn order(&self) -> usize {
        match self {
            BorderKind::Rank2ToK { order } => *order,
            BorderKind::Rank2To3 | BorderKind::TangentSum => 3,
        }
    }

    /// Number of base vectors the sequence is built from.
    pub fn base_count(&self) -> usize {
        match self {
            BorderKind::TangentSum => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BorderSequenceSpec<T> {
    kind: BorderKind,
    base: Vec<Vec<Complex<T>>>,
}

impl<T: Real> BorderSequenceSpec<T> {
    /// Checks the base vector count, their common length, and linear independence.
    pub fn new(kind: BorderKind, base: Vec<Vec<Complex<T>>>) -> Result<Self> {
        if kind.order() < 2 {
            return Err(Error::Invalid(format!("border sequence needs order >= 2, got {}", kind.order())));
        }
        if base.len() != kind.base_count() {
            return Err(Error::Invalid(format!(
                "{kind:?} needs {} base vectors, got {}",
                kind.base_count(),
                base.len()
            )));
        }
        let dim = base[0].len();
        if dim == 0 || base.iter().any(|v| v.len() != dim) {
            return Err(Error::ShapeMismatch("base vectors must share a nonzero length".into()));
        }
        if power_span_rank(&base, 1, T::of(1e-10))? != base.len() {
            return Err(Error::Invalid("base vectors must be linearly independent".into()));
        }
        Ok(Self { kind, base })
    }

    /// The same kind built on the first standard basis vectors of `C^dim`.
    pub fn standard(kind: BorderKind, dim: usize) -> Result<Self> {
        let base = (0..kind.base_count())
            .map(|i| {
                let mut v = vec![Complex::zero(); dim];
                if i < dim {
                    v[i] = Complex::one();
                }
                v
            })
            .collect();
        Self::new(kind, base)
    }

    pub fn kind(&self) -> BorderKind {
        self.kind
    }

    pub fn base(&self) -> &[Vec<Complex<T>>] {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base[0].len()
    }

    fn field(&self) -> Field {
        if self.base.iter().flatten().all(|z| z.im == T::zero()) {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BorderSequence<T> {
    pub kind: BorderKind,
    pub epsilon: f64,
    /// The sequence element, reconstructed from `witness`.
    pub a_eps: SymmetricTensor<Complex<T>>,
    /// The closed-form limit as `epsilon -> 0`.
    pub limit: SymmetricTensor<Complex<T>>,
    /// Low-rank decomposition of `a_eps`.
    pub witness: SymmetricDecomposition<Complex<T>>,
    /// A decomposition of the limit with more terms than the witness, when one is known.
    pub limit_decomposition: Option<SymmetricDecomposition<Complex<T>>>,
}

fn lin<T: Real>(a: T, x: &[Complex<T>], b: T, y: &[Complex<T>]) -> Vec<Complex<T>> {
    x.iter().zip(y).map(|(u, v)| u * a + v * b).collect()
}

fn term<T: Real>(w: T, v: Vec<Complex<T>>) -> Term<Complex<T>> {
    Term {
        weight: Complex::new(w, T::zero()),
        vector: v,
    }
}

/// Derivative of `(x + e y)^k` at `e = 0`, as a `k`-term decomposition.
///
/// Its quantic is `k (y.z)(x.z)^{k-1}`; substituting `z1 -> y.z`, `z2 -> x.z`
/// in the decomposition of `z1 z2^{k-1}` gives directions `y + b_i x`.
fn tangent_decomposition<T: Real>(x: &[Complex<T>], y: &[Complex<T>], k: usize) -> Result<SymmetricDecomposition<Complex<T>>> {
    let base = decompose_monomial_rank_k::<T>(k)?;
    let scale = T::of(k as f64);
    let terms = base
        .terms()
        .iter()
        .map(|t| {
            let b = t.vector[1];
            Term {
                weight: t.weight * scale,
                vector: y.iter().zip(x).map(|(u, v)| u + v * b).collect(),
            }
        })
        .collect();
    SymmetricDecomposition::new(k, x.len(), Field::Complex, terms)
}

/// Builds `A_e`, its low-rank witness and the limit for one `epsilon > 0`.
pub fn border_sequence<T: Real>(spec: &BorderSequenceSpec<T>, epsilon: f64) -> Result<BorderSequence<T>> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Invalid(format!("epsilon must be positive and finite, got {epsilon}")));
    }
    let e = T::of(epsilon);
    let one = T::one();
    let (k, n, field) = (spec.kind.order(), spec.dim(), spec.field());
    let b = &spec.base;
    let (witness_terms, limit_decomposition) = match spec.kind {
        BorderKind::Rank2ToK { .. } => {
            let (x, y) = (&b[0], &b[1]);
            let terms = vec![term(one / e, lin(one, x, e, y)), term(-one / e, x.clone())];
            (terms, tangent_decomposition(x, y, k)?)
        }
        BorderKind::Rank2To3 => {
            let (x, y) = (&b[0], &b[1]);
            let e2 = e * e;
            let terms = vec![
                term(e2, lin(one, x, one / e, y)),
                term(e2, lin(one, x, -one / e, y)),
            ];
            let limit = vec![
                term(one, lin(one, x, one, y)),
                term(one, lin(one, x, -one, y)),
                term(T::of(-2.0), x.clone()),
            ];
            (terms, SymmetricDecomposition::new(3, n, field, limit)?)
        }
        BorderKind::TangentSum => {
            let (x, y, z) = (&b[0], &b[1], &b[2]);
            let terms = vec![
                term(one / e, lin(one, x, e, y)),
                term(-one / e, x.clone()),
                term(one / e, lin(one, z, e, x)),
                term(-one / e, z.clone()),
            ];
            let limit = tangent_decomposition(x, y, 3)?;
            let other = tangent_decomposition(z, x, 3)?;
            let mut all = limit.terms().to_vec();
            all.extend_from_slice(other.terms());
            (terms, SymmetricDecomposition::new(3, n, Field::Complex, all)?)
        }
    };
    let witness = SymmetricDecomposition::new(k, n, field, witness_terms)?;
    let limit = reconstruct(&limit_decomposition)?;
    // the tangent limit's six-term form is an expansion aid, not a minimal decomposition
    let limit_decomposition = match spec.kind {
        BorderKind::TangentSum => None,
        _ => Some(limit_decomposition),
    };
    Ok(BorderSequence {
        kind: spec.kind,
        epsilon,
        a_eps: reconstruct(&witness)?,
        limit,
        witness,
        limit_decomposition,
    })
}

/// `(epsilon, ||A_e - A_0||_F)` for each epsilon.
pub fn convergence_profile<T: Real>(spec: &BorderSequenceSpec<T>, epsilons: &[f64]) -> Result<Vec<(f64, f64)>> {
    epsilons
        .iter()
        .map(|&e| {
            let s = border_sequence(spec, e)?;
            Ok((e, s.a_eps.frobenius_distance(&s.limit)?))
        })
        .collect()
}

/// Least-squares slope of `log(distance)` against `log(epsilon)`.
pub fn loglog_slope(profile: &[(f64, f64)]) -> Result<f64> {
    if profile.len() < 2 || profile.iter().any(|&(e, d)| e <= 0.0 || d <= 0.0) {
        return Err(Error::Invalid("slope needs at least two points with positive coordinates".into()));
    }
    let pts: Vec<(f64, f64)> = profile.iter().map(|&(e, d)| (e.ln(), d.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Invalid("slope needs distinct epsilon values".into()));
    }
    Ok(sxy / sxx)
}
