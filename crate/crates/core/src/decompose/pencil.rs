//! Binary cubics (order 3, dimension 2) through the pencil of their slices.
//!
//! With slices `A0 = [a_{1jk}]` and `A1 = [a_{2jk}]`, a two-term
//! decomposition `w1 v1^3 + w2 v2^3` makes `det(A0 - m A1)` vanish exactly at
//! `m = x_i / y_i` for `v_i = (x_i, y_i)`. The quadratic is solved in
//! homogeneous form so an infinite root (`y_i = 0`) needs no special case.

use num_complex::Complex;

use crate::combinatorics::{enumerate_exponents, multinomial, ExponentVector};
use crate::error::{Error, Result};
use crate::linalg::{least_squares, solve, CMatrix};
use crate::scalar::{Real, Scalar};
use crate::tensor::{outer_power, SymmetricTensor};

use super::{verify, Field, SymmetricDecomposition, Term};

/// Relative discriminant threshold below which a pencil is degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

const VERIFY_TOL: f64 = 1e-9;

/// Reality of the pencil eigenvalues of a real 2x2x2 tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PencilReality {
    /// Two distinct real roots: real rank 2.
    Real2,
    /// Complex-conjugate roots: real rank 3.
    Complex3,
    /// Repeated or undefined roots.
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PencilClass {
    Rank2,
    RealRank3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PencilOutcome<T> {
    pub class: PencilClass,
    pub decomposition: SymmetricDecomposition<Complex<T>>,
}

/// Slices `[A0, A1]` of a symmetric order-3 binary tensor, `A_i[j][k] = a_{ijk}`.
pub fn sym222_slices<S: Scalar>(a: &SymmetricTensor<S>) -> Result<[[[S; 2]; 2]; 2]> {
    if a.order() != 3 || a.dim() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "pencil method needs order 3 and dimension 2, got order {} dimension {}",
            a.order(),
            a.dim()
        )));
    }
    let c = |j: u32| a.get(&ExponentVector::from(vec![3 - j, j]));
    let (c0, c1, c2, c3) = (c(0), c(1), c(2), c(3));
    Ok([
        [[c0, c1.clone()], [c1.clone(), c2.clone()]],
        [[c1, c2.clone()], [c2, c3]],
    ])
}

/// Coefficients `[a, b, c]` of `det(A0 - m A1) = a m^2 + b m + c`.
pub fn pencil_quadratic<S: Scalar>(a0: &[[S; 2]; 2], a1: &[[S; 2]; 2]) -> [S; 3] {
    let det = |m: &[[S; 2]; 2]| m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let mixed = a0[0][0].clone() * a1[1][1].clone() + a1[0][0].clone() * a0[1][1].clone()
        - a0[0][1].clone() * a1[1][0].clone()
        - a1[0][1].clone() * a0[1][0].clone();
    [det(a1), -mixed, det(a0)]
}

/// Classifies a real pencil quadratic by the sign of its discriminant,
/// relative to the square of the largest coefficient.
pub fn classify_quadratic<T: Real>(q: [T; 3]) -> PencilReality {
    let [a, b, c] = q;
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == T::zero() {
        return PencilReality::Degenerate;
    }
    let disc = b * b - T::of(4.0) * a * c;
    if disc.abs() <= T::of(DEGENERACY_TOL) * scale * scale {
        PencilReality::Degenerate
    } else if disc > T::zero() {
        PencilReality::Real2
    } else {
        PencilReality::Complex3
    }
}

/// Decomposes a symmetric 2x2x2 tensor from its pencil eigenstructure.
///
/// Over `C` a non-degenerate pencil always gives two terms. Over `R` two
/// real roots give two real terms; complex roots give `RealRank3` with a
/// verified three-term real decomposition.
pub fn decompose_sym222_pencil<T: Real>(
    a: &SymmetricTensor<Complex<T>>,
    field: Field,
) -> Result<PencilOutcome<T>> {
    let [a0, a1] = sym222_slices(a)?;
    if field == Field::Real {
        let scale = 1.0 + a.coeffs().values().map(Scalar::modulus).fold(0.0, f64::max);
        if a.coeffs().values().any(|z| z.parts().1.abs() > super::REAL_TOL * scale) {
            return Err(Error::Invalid("real-field pencil decomposition needs a real tensor".into()));
        }
    }
    let [qa, qb, qc] = pencil_quadratic(&a0, &a1);
    let scale = qa.norm().max(qb.norm()).max(qc.norm());
    if scale == T::zero() {
        return Err(Error::DegeneratePencil(
            "all pencil coefficients vanish (zero tensor or a single cube)".into(),
        ));
    }
    let disc = qb * qb - qa * qc * T::of(4.0);
    if disc.norm() <= T::of(DEGENERACY_TOL) * scale * scale {
        return Err(Error::DegeneratePencil(
            "discriminant vanishes: the pencil has a repeated root".into(),
        ));
    }
    if field == Field::Real && disc.re < T::zero() {
        let decomposition = real_three_term(a)?;
        return Ok(PencilOutcome {
            class: PencilClass::RealRank3,
            decomposition,
        });
    }
    // roots [q : qa] and [qc : q] with q = -(b ± sqrt(disc)) / 2, sign avoiding cancellation
    let root = disc.sqrt();
    let (plus, minus) = (qb + root, qb - root);
    let q = if plus.norm() >= minus.norm() { plus } else { minus } * T::of(-0.5);
    let directions = [[q, qa], [qc, q]];
    let weights = fit_weights(a, &directions)?;
    let mut terms: Vec<Term<Complex<T>>> = directions
        .iter()
        .zip(weights)
        .map(|(v, w)| Term {
            weight: w,
            vector: v.to_vec(),
        })
        .collect();
    if field == Field::Real {
        for t in &mut terms {
            t.weight.im = T::zero();
            for x in &mut t.vector {
                x.im = T::zero();
            }
        }
    }
    let decomposition = SymmetricDecomposition::new(3, 2, field, terms)?.canonicalize();
    check(&decomposition, a)?;
    Ok(PencilOutcome {
        class: PencilClass::Rank2,
        decomposition,
    })
}

fn check<T: Real>(d: &SymmetricDecomposition<Complex<T>>, a: &SymmetricTensor<Complex<T>>) -> Result<()> {
    let report = verify(d, a, VERIFY_TOL)?;
    if !report.ok {
        return Err(Error::DegeneratePencil(format!(
            "pencil is too ill-conditioned: residual {:e}",
            report.residual
        )));
    }
    Ok(())
}

/// Least-squares weights for fixed directions, in the Frobenius geometry.
fn fit_weights<T: Real>(a: &SymmetricTensor<Complex<T>>, directions: &[[Complex<T>; 2]]) -> Result<Vec<Complex<T>>> {
    let classes = enumerate_exponents(3, 2);
    let scale: Vec<T> = classes
        .iter()
        .map(|p| multinomial(p).map(|m| T::of(m as f64).sqrt()))
        .collect::<Result<_>>()?;
    let mut m = CMatrix::zeros(classes.len(), directions.len());
    for (j, v) in directions.iter().enumerate() {
        let power = outer_power(v, 3)?;
        for (i, p) in classes.iter().enumerate() {
            m.set(i, j, power.get(p) * scale[i]);
        }
    }
    let rhs: Vec<Complex<T>> = classes.iter().zip(&scale).map(|(p, &s)| a.get(p) * s).collect();
    least_squares(&m, &rhs)
}

/// Node pairs tried, in order, for the three-term real construction.
const NODE_PAIRS: [(f64, f64); 6] = [(1.0, -1.0), (1.0, 2.0), (-1.0, -2.0), (2.0, -2.0), (0.5, -3.0), (3.0, -0.5)];

/// Real three-term decomposition `sum_i w_i (x + t_i y)^3`.
///
/// With class values `c_j = a_{(3-j, j)}`, the nodes must be the roots of a
/// cubic `P(t)` satisfying `c3 + p2 c2 + p1 c1 + p0 c0 = 0`. Two nodes are
/// fixed from `NODE_PAIRS`, the third follows linearly, and the weights
/// solve the 3x3 Vandermonde moment system.
fn real_three_term<T: Real>(a: &SymmetricTensor<Complex<T>>) -> Result<SymmetricDecomposition<Complex<T>>> {
    let c: Vec<T> = (0..4u32)
        .map(|j| a.get(&ExponentVector::from(vec![3 - j, j])).re)
        .collect();
    let mag = c.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    for &(r1, r2) in &NODE_PAIRS {
        let (r1, r2) = (T::of(r1), T::of(r2));
        let (s, p) = (r1 + r2, r1 * r2);
        let den = c[2] - s * c[1] + p * c[0];
        if den.abs() <= T::of(1e-8) * mag {
            continue;
        }
        let r3 = (c[3] - s * c[2] + p * c[1]) / den;
        let gap = T::of(1e-6) * (T::one() + r3.abs());
        if !r3.is_finite() || (r3 - r1).abs() <= gap || (r3 - r2).abs() <= gap {
            continue;
        }
        let nodes = [r1, r2, r3];
        let mut v = CMatrix::zeros(3, 3);
        for (i, &t) in nodes.iter().enumerate() {
            let mut pw = T::one();
            for row in 0..3 {
                v.set(row, i, Complex::new(pw, T::zero()));
                pw = pw * t;
            }
        }
        let rhs: Vec<Complex<T>> = c[..3].iter().map(|&x| Complex::new(x, T::zero())).collect();
        let Ok(w) = solve(&v, &rhs) else { continue };
        let terms = nodes
            .iter()
            .zip(w)
            .map(|(&t, w)| Term {
                weight: Complex::new(w.re, T::zero()),
                vector: vec![Complex::new(T::one(), T::zero()), Complex::new(t, T::zero())],
            })
            .collect();
        let d = SymmetricDecomposition::new(3, 2, Field::Real, terms)?.canonicalize();
        if check(&d, a).is_ok() && d.rank() == 3 {
            return Ok(d);
        }
    }
    Err(Error::DegeneratePencil(
        "no well-conditioned real three-term decomposition found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantic::{parse_quantic, quantic_to_tensor};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn from_text(s: &str) -> SymmetricTensor<C> {
        quantic_to_tensor(&parse_quantic(s, Some(2), Some(3)).unwrap())
    }

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    #[test]
    fn cubic_over_both_fields() {
        let a = from_text("3*x1*x2^2 - x1^3");
        let over_c = decompose_sym222_pencil(&a, Field::Complex).unwrap();
        assert_eq!(over_c.class, PencilClass::Rank2);
        let d = &over_c.decomposition;
        assert_eq!(d.rank(), 2);
        // (j/2)(-j,1)^3 - (j/2)(j,1)^3, normalized: -1/2 (1, j)^3 and -1/2 (1, -j)^3
        assert!((d.terms()[0].vector[1] - c(0., -1.)).norm() < 1e-12);
        assert!((d.terms()[1].vector[1] - c(0., 1.)).norm() < 1e-12);
        for t in d.terms() {
            assert!((t.weight - c(-0.5, 0.)).norm() < 1e-12);
        }

        let over_r = decompose_sym222_pencil(&a, Field::Real).unwrap();
        assert_eq!(over_r.class, PencilClass::RealRank3);
        let d = &over_r.decomposition;
        assert_eq!(d.field(), Field::Real);
        assert_eq!(d.rank(), 3);
        // nodes {-1, 0, 1} with weights {1/2, -2, 1/2}
        let got: Vec<(f64, f64)> = d.terms().iter().map(|t| (t.vector[1].re, t.weight.re)).collect();
        let expect = [(-1.0, 0.5), (0.0, -2.0), (1.0, 0.5)];
        for (g, e) in got.iter().zip(expect) {
            assert!((g.0 - e.0).abs() < 1e-12 && (g.1 - e.1).abs() < 1e-12, "{got:?}");
        }
    }

    #[test]
    fn sum_of_coordinate_cubes_is_real_rank_two() {
        let a = from_text("x1^3 + x2^3");
        let out = decompose_sym222_pencil(&a, Field::Real).unwrap();
        assert_eq!(out.class, PencilClass::Rank2);
        let d = out.decomposition;
        assert_eq!(d.rank(), 2);
        assert_eq!(d.terms()[0].vector, vec![c(1., 0.), c(0., 0.)]);
        assert_eq!(d.terms()[1].vector, vec![c(0., 0.), c(1., 0.)]);
        for t in d.terms() {
            assert!((t.weight - c(1., 0.)).norm() < 1e-14);
        }
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        for s in ["x1^3", "0", "3*x1^2*x2"] {
            let q = parse_quantic(s, Some(2), Some(3)).unwrap();
            let a = quantic_to_tensor(&q);
            assert!(matches!(
                decompose_sym222_pencil(&a, Field::Complex),
                Err(Error::DegeneratePencil(_))
            ), "{s}");
        }
        let wrong = quantic_to_tensor(&parse_quantic("x1^4", Some(2), None).unwrap());
        assert!(decompose_sym222_pencil(&wrong, Field::Complex).is_err());
        let complex_input = from_text("(1+1j)*x1^3 + x2^3");
        assert!(decompose_sym222_pencil(&complex_input, Field::Real).is_err());
    }

    #[test]
    fn random_real_cubics_decompose_over_reals() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut seen = [0usize; 2];
        for _ in 0..500 {
            let coeffs: Vec<(ExponentVector, C)> = enumerate_exponents(3, 2)
                .into_iter()
                .map(|p| (p, c(rng.gen_range(-2.0..2.0), 0.0)))
                .collect();
            let a = SymmetricTensor::from_coeffs(3, 2, coeffs).unwrap();
            let out = decompose_sym222_pencil(&a, Field::Real).unwrap();
            assert!(verify(&out.decomposition, &a, 1e-9).unwrap().ok);
            assert_eq!(out.decomposition.field(), Field::Real);
            match out.class {
                PencilClass::Rank2 => seen[0] += 1,
                PencilClass::RealRank3 => {
                    seen[1] += 1;
                    // the same tensor still has two complex terms
                    let cplx = decompose_sym222_pencil(&a, Field::Complex).unwrap();
                    assert_eq!(cplx.decomposition.rank(), 2);
                }
            }
        }
        assert!(seen[0] > 100 && seen[1] > 100, "{seen:?}");
    }

    #[test]
    fn classification_matches_examples() {
        let classify = |s: &str| {
            let a = quantic_to_tensor(&parse_quantic(s, Some(2), Some(3)).unwrap()).map(|z: &C| z.re);
            let [a0, a1] = sym222_slices(&a).unwrap();
            classify_quadratic(pencil_quadratic(&a0, &a1))
        };
        assert_eq!(classify("3*x1*x2^2 - x1^3"), PencilReality::Complex3);
        assert_eq!(classify("x1^3 + x2^3"), PencilReality::Real2);
        assert_eq!(classify("x1^3"), PencilReality::Degenerate);
    }

    #[test]
    fn general_pencil_quadratic_matches_determinant() {
        let a0: [[f64; 2]; 2] = [[1.0, 2.0], [-1.0, 0.5]];
        let a1 = [[0.0, 3.0], [1.0, -2.0]];
        let q = pencil_quadratic(&a0, &a1);
        for m in [-2.0, 0.0, 0.7, 3.0] {
            let det = (a0[0][0] - m * a1[0][0]) * (a0[1][1] - m * a1[1][1])
                - (a0[0][1] - m * a1[0][1]) * (a0[1][0] - m * a1[1][0]);
            assert!((q[0] * m * m + q[1] * m + q[2] - det).abs() < 1e-12);
        }
    }
}
