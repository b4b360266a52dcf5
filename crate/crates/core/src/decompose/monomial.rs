use num_complex::Complex;
use num_traits::{One, Zero};

use crate::combinatorics::ExponentVector;
use crate::error::{Error, Result};
use crate::linalg::{solve, CMatrix};
use crate::scalar::Real;
use crate::tensor::SymmetricTensor;

use super::{Field, SymmetricDecomposition, Term};

/// `k`-term decomposition of the binary form `z1 z2^{k-1}`:
/// `sum_i w_i (z1 + b_i z2)^k` with `b_i` the `k`-th roots of unity.
///
/// The nodes are distinct and sum to zero, which makes the moment system
/// `sum_i w_i b_i^t = m_t` (`t = 0..k`) consistent; `m_{k-1} = 1/k` and all
/// other moments vanish. The first `k` equations form a Vandermonde system.
pub fn decompose_monomial_rank_k<T: Real>(order: usize) -> Result<SymmetricDecomposition<Complex<T>>> {
    if order < 2 {
        return Err(Error::Invalid(format!("monomial construction needs order >= 2, got {order}")));
    }
    let k = order;
    let nodes: Vec<Complex<T>> = (0..k)
        .map(|i| Complex::from_polar(T::one(), T::TAU() * T::of(i as f64) / T::of(k as f64)))
        .collect();
    let mut vandermonde = CMatrix::zeros(k, k);
    for (i, b) in nodes.iter().enumerate() {
        let mut power = Complex::one();
        for t in 0..k {
            vandermonde.set(t, i, power);
            power = power * b;
        }
    }
    let mut moments = vec![Complex::zero(); k];
    moments[k - 1] = Complex::new(T::one() / T::of(k as f64), T::zero());
    let weights = solve(&vandermonde, &moments)?;
    let terms = nodes
        .into_iter()
        .zip(weights)
        .map(|(b, w)| Term {
            weight: w,
            vector: vec![Complex::one(), b],
        })
        .collect();
    Ok(SymmetricDecomposition::new(k, 2, Field::Complex, terms)?.canonicalize())
}

/// Decomposes a binary tensor whose only nonzero class is `(1, k-1)` or
/// `(k-1, 1)`, i.e. a multiple of `z1 z2^{k-1}` or `z1^{k-1} z2`.
pub fn decompose_binary_monomial<T: Real>(a: &SymmetricTensor<Complex<T>>) -> Result<SymmetricDecomposition<Complex<T>>> {
    let k = a.order();
    if a.dim() != 2 || k < 2 || a.coeffs().len() != 1 {
        return Err(Error::NotApplicable(
            "monomial method needs a binary tensor of the form c*z1*z2^(k-1) or c*z1^(k-1)*z2".into(),
        ));
    }
    let (p, value) = a.coeffs().iter().next().expect("one coefficient");
    let swap = if *p == ExponentVector::from(vec![1, k as u32 - 1]) {
        false
    } else if *p == ExponentVector::from(vec![k as u32 - 1, 1]) {
        true
    } else {
        return Err(Error::NotApplicable(format!(
            "monomial method cannot decompose a tensor supported on exponent {p:?}"
        )));
    };
    // the base decomposition has class value 1/k at (1, k-1)
    let scale = *value * T::of(k as f64);
    let base = decompose_monomial_rank_k::<T>(k)?;
    let terms = base
        .terms()
        .iter()
        .map(|t| {
            let mut vector = t.vector.clone();
            if swap {
                vector.swap(0, 1);
            }
            Term {
                weight: t.weight * scale,
                vector,
            }
        })
        .collect();
    Ok(SymmetricDecomposition::new(k, 2, Field::Complex, terms)?.canonicalize())
}
