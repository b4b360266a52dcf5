//! Complex symmetric tensors and their symmetric outer product decompositions.
//!
//! The core types are generic over the scalar: `f32`, `f64`, their complex
//! counterparts, and exact rationals (`Rational64`, `Complex<Rational64>`).
//! The aliases below fix the common double-precision complex choice.

pub mod combinatorics;
pub mod decompose;
pub mod error;
pub mod json;
pub mod linalg;
pub mod montecarlo;
pub mod quantic;
pub mod rank_oracle;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

use num_complex::Complex;
use num_rational::Rational64;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type SymTensor = tensor::SymmetricTensor<C64>;
pub type SymTensorC32 = tensor::SymmetricTensor<C32>;
pub type DenseTensorC64 = tensor::DenseTensor<C64>;
pub type QuanticC64 = quantic::Quantic<C64>;
pub type Decomposition = decompose::SymmetricDecomposition<C64>;

/// Gaussian rationals, for exact reconstruction checks.
pub type ExactComplex = Complex<Rational64>;
pub type ExactSymTensor = tensor::SymmetricTensor<ExactComplex>;
pub type ExactDecomposition = decompose::SymmetricDecomposition<ExactComplex>;
