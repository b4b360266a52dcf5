//! Scalar abstraction shared by every tensor container.
//!
//! Containers are generic over [`Scalar`], which is implemented for real and
//! complex floats as well as exact rationals. Numerical routines (ranks,
//! pencils, least squares) are generic over [`Real`] and work in
//! `Complex<T>`.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{Float, FloatConst, Num, ToPrimitive};

/// Field element stored in tensors, quantics and decompositions.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// Embeds a nonnegative integer (multinomial counts, class sizes).
    fn from_u64(n: u64) -> Self;

    /// Real and imaginary parts, rounded to `f64`.
    fn parts(&self) -> (f64, f64);

    /// Absolute value as `f64`; used for every tolerance comparison.
    fn modulus(&self) -> f64 {
        let (re, im) = self.parts();
        re.hypot(im)
    }
}

/// Floating-point real type backing the numerical algorithms.
pub trait Real: Float + FloatConst + Scalar + Default {
    fn of(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

macro_rules! real_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_u64(n: u64) -> Self {
                n as $t
            }
            fn parts(&self) -> (f64, f64) {
                (*self as f64, 0.0)
            }
        }
    };
}

real_float_scalar!(f32);
real_float_scalar!(f64);

impl<T: Real> Scalar for Complex<T> {
    fn from_u64(n: u64) -> Self {
        Complex::new(T::from_u64(n), T::zero())
    }
    fn parts(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

fn ratio_to_f64(r: &Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Rational64 {
    fn from_u64(n: u64) -> Self {
        Rational64::from_integer(n as i64)
    }
    fn parts(&self) -> (f64, f64) {
        (ratio_to_f64(self), 0.0)
    }
}

impl Scalar for Complex<Rational64> {
    fn from_u64(n: u64) -> Self {
        Complex::new(Rational64::from_integer(n as i64), Rational64::from_integer(0))
    }
    fn parts(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

/// Converts a `Complex<T>` to `Complex<f64>`.
pub fn to_c64<S: Scalar>(z: &S) -> Complex<f64> {
    let (re, im) = z.parts();
    Complex::new(re, im)
}

/// Converts a `Complex<f64>` into `Complex<T>`.
pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}
