//! Homogeneous polynomials (quantics) in the multinomial-scaled basis.
//!
//! A quantic of degree `k` in `n` variables is stored as coefficients `a_p`
//! with `F(x) = sum_p C(k; p) a_p x^p`. In this basis the correspondence with
//! symmetric tensors is the identity on stored data and the apolar form is
//! `<F, G> = sum_p C(k; p) a_p b_p`.

mod text;

pub use text::{format_coefficient, parse_quantic, render_quantic};

use std::collections::BTreeMap;

use crate::combinatorics::{enumerate_exponents, multinomial, ExponentVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::SymmetricTensor;

#[derive(Clone, Debug, PartialEq)]
pub struct Quantic<S> {
    degree: usize,
    nvars: usize,
    terms: BTreeMap<ExponentVector, S>,
}

/// Linear form `beta . x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<S> {
    pub beta: Vec<S>,
}

impl<S: Scalar> LinearForm<S> {
    pub fn new(beta: Vec<S>) -> Self {
        Self { beta }
    }

    pub fn nvars(&self) -> usize {
        self.beta.len()
    }
}

impl<S: Scalar> Quantic<S> {
    pub fn zero(degree: usize, nvars: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Invalid("a quantic needs at least one variable".into()));
        }
        Ok(Self {
            degree,
            nvars,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a quantic from scaled-basis coefficients `a_p`.
    pub fn from_scaled<I>(degree: usize, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, S)>,
    {
        let t = SymmetricTensor::from_coeffs(degree, nvars, terms)?;
        Ok(tensor_to_quantic(&t))
    }

    /// Builds a quantic from ordinary monomial coefficients `c_p = C(k; p) a_p`.
    pub fn from_monomials<I>(degree: usize, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, S)>,
    {
        let scaled = terms
            .into_iter()
            .map(|(p, c)| {
                let m = multinomial(&p)?;
                Ok((p, c / S::from_u64(m)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_scaled(degree, nvars, scaled)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Scaled-basis coefficients `a_p`.
    pub fn terms(&self) -> &BTreeMap<ExponentVector, S> {
        &self.terms
    }

    pub fn scaled_coeff(&self, p: &ExponentVector) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    /// Ordinary monomial coefficient `C(k; p) a_p` of `x^p`.
    pub fn monomial_coeff(&self, p: &ExponentVector) -> Result<S> {
        Ok(S::from_u64(multinomial(p)?) * self.scaled_coeff(p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(tensor_to_quantic(
            &quantic_to_tensor(self).add(&quantic_to_tensor(other))?,
        ))
    }

    pub fn scale(&self, alpha: &S) -> Self {
        tensor_to_quantic(&quantic_to_tensor(self).scale(alpha))
    }

    /// `F(x) = sum_p C(k; p) a_p x^p`.
    pub fn evaluate(&self, x: &[S]) -> Result<S> {
        if x.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "quantic has {} variables, point has {}",
                self.nvars,
                x.len()
            )));
        }
        let mut acc = S::zero();
        for (p, a) in &self.terms {
            let mono = p
                .exponents()
                .iter()
                .zip(x)
                .fold(S::one(), |m, (&e, xi)| m * num_traits::pow(xi.clone(), e as usize));
            acc = acc + S::from_u64(multinomial(p)?) * a.clone() * mono;
        }
        Ok(acc)
    }

    /// The scaled monomial `C(k; p) x^p`, i.e. the quantic with `a_p = 1`.
    pub fn scaled_monomial(p: &ExponentVector) -> Result<Self> {
        Self::from_scaled(p.degree() as usize, p.nvars(), [(p.clone(), S::one())])
    }
}

/// Quantic associated with a symmetric tensor (identity on stored coefficients).
pub fn tensor_to_quantic<S: Scalar>(a: &SymmetricTensor<S>) -> Quantic<S> {
    Quantic {
        degree: a.order(),
        nvars: a.dim(),
        terms: a.coeffs().clone(),
    }
}

/// Symmetric tensor associated with a quantic.
pub fn quantic_to_tensor<S: Scalar>(f: &Quantic<S>) -> SymmetricTensor<S> {
    SymmetricTensor::from_coeffs(f.degree, f.nvars, f.terms.clone())
        .expect("quantic invariants guarantee a valid tensor")
}

impl<S: Scalar> From<&SymmetricTensor<S>> for Quantic<S> {
    fn from(a: &SymmetricTensor<S>) -> Self {
        tensor_to_quantic(a)
    }
}

impl<S: Scalar> From<&Quantic<S>> for SymmetricTensor<S> {
    fn from(f: &Quantic<S>) -> Self {
        quantic_to_tensor(f)
    }
}

/// Apolar bilinear form `<F, G> = sum_p C(k; p) a_p b_p`.
///
/// Symmetric and non-degenerate, but not Hermitian: no norm is derived from it.
pub fn apolar_form<S: Scalar>(f: &Quantic<S>, g: &Quantic<S>) -> Result<S> {
    if f.degree != g.degree || f.nvars != g.nvars {
        return Err(Error::ShapeMismatch(format!(
            "apolar form needs equal shapes: (degree {}, {} vars) vs (degree {}, {} vars)",
            f.degree, f.nvars, g.degree, g.nvars
        )));
    }
    let mut acc = S::zero();
    for (p, a) in &f.terms {
        if let Some(b) = g.terms.get(p) {
            acc = acc + S::from_u64(multinomial(p)?) * a.clone() * b.clone();
        }
    }
    Ok(acc)
}

/// Veronese map `beta -> (beta . x)^k`; scaled coefficients are `beta^p`.
pub fn veronese<S: Scalar>(l: &LinearForm<S>, degree: usize) -> Result<Quantic<S>> {
    if l.beta.is_empty() {
        return Err(Error::Invalid("linear form has no variables".into()));
    }
    let terms = enumerate_exponents(degree, l.nvars()).into_iter().map(|p| {
        let v = p
            .exponents()
            .iter()
            .zip(&l.beta)
            .fold(S::one(), |m, (&e, b)| m * num_traits::pow(b.clone(), e as usize));
        (p, v)
    });
    Quantic::from_scaled(degree, l.nvars(), terms)
}
