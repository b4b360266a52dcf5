//! Dense and compressed symmetric tensors and the operations between them.

mod dense;
mod symmetric;

pub use dense::{DenseTensor, DEFAULT_DENSE_CAP, DEFAULT_SYMMETRY_TOL};
pub use symmetric::{outer_power, SymmetricTensor};

use num_complex::Complex;

use crate::combinatorics::{enumerate_exponents, multinomial};
use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, CMatrix};
use crate::scalar::{Real, Scalar};

/// Default relative threshold for numerical rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Row-major `rows x cols` matrix used as a per-mode factor of a multilinear transform.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMapMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> LinearMapMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("linear map dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} map needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { S::one() } else { S::zero() })
            .collect();
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "map has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect())
    }
}

/// Contraction over the first index of both operands:
/// `c[i_2..i_k, j_2..j_l] = sum_a a[a, i_2..] b[a, j_2..]`.
pub fn contract_mode1<S: Scalar>(a: &DenseTensor<S>, b: &DenseTensor<S>) -> Result<DenseTensor<S>> {
    if a.order() == 0 || b.order() == 0 {
        return Err(Error::Invalid("contraction needs tensors of order at least 1".into()));
    }
    if a.dim() != b.dim() {
        return Err(Error::ShapeMismatch(format!(
            "first dimensions differ: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let n = a.dim();
    let a_tail = a.entries().len() / n;
    let b_tail = b.entries().len() / n;
    DenseTensor::from_fn(a.order() + b.order() - 2, n, |idx| {
        let (ia, ib) = idx.split_at(a.order() - 1);
        let oa = ia.iter().fold(0, |acc, &j| acc * n + j);
        let ob = ib.iter().fold(0, |acc, &j| acc * n + j);
        (0..n).fold(S::zero(), |acc, alpha| {
            acc + a.entries()[alpha * a_tail + oa].clone() * b.entries()[alpha * b_tail + ob].clone()
        })
    })
}

/// Multilinear transform `(L_1, .., L_k) . A`, contracting mode `m` of `A`
/// with the second index of `L_m`.
///
/// Every map must have `cols == A.dim()` and all maps share one row count,
/// so the result is again cubical.
pub fn multilinear_transform<S: Scalar>(
    a: &DenseTensor<S>,
    maps: &[LinearMapMatrix<S>],
) -> Result<DenseTensor<S>> {
    if maps.len() != a.order() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} maps, got {}",
            a.order(),
            maps.len()
        )));
    }
    let Some(rows) = maps.first().map(LinearMapMatrix::rows) else {
        return Ok(a.clone());
    };
    for (mode, m) in maps.iter().enumerate() {
        if m.cols() != a.dim() {
            return Err(Error::ShapeMismatch(format!(
                "mode {mode}: map has {} columns but tensor dimension is {}",
                m.cols(),
                a.dim()
            )));
        }
        if m.rows() != rows {
            return Err(Error::ShapeMismatch(format!(
                "mode {mode}: map has {} rows, expected {rows} like mode 0",
                m.rows()
            )));
        }
    }
    // Apply one mode at a time; intermediate shapes are mixed so keep raw buffers.
    let k = a.order();
    let mut shape = vec![a.dim(); k];
    let mut data: Vec<S> = a.entries().to_vec();
    for (mode, m) in maps.iter().enumerate() {
        let outer: usize = shape[..mode].iter().product();
        let inner: usize = shape[mode + 1..].iter().product();
        let mut next = vec![S::zero(); outer * m.rows() * inner];
        for o in 0..outer {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let w = m.get(r, c);
                    if w.is_zero() {
                        continue;
                    }
                    let src = (o * m.cols() + c) * inner;
                    let dst = (o * m.rows() + r) * inner;
                    for i in 0..inner {
                        next[dst + i] = next[dst + i].clone() + w.clone() * data[src + i].clone();
                    }
                }
            }
        }
        shape[mode] = m.rows();
        data = next;
    }
    DenseTensor::new(k, rows, data)
}

/// Multilinear transform with the same map on every mode, in compressed form.
pub fn congruence<S: Scalar>(a: &SymmetricTensor<S>, map: &LinearMapMatrix<S>) -> Result<SymmetricTensor<S>> {
    let dense = a.decompress()?;
    let maps = vec![map.clone(); a.order()];
    SymmetricTensor::compress(&multilinear_transform(&dense, &maps)?, f64::INFINITY)
}

/// Numerical rank of the matrix whose rows are the coefficient vectors of
/// `v_i^{⊗k}`, each class scaled by `sqrt(multinomial(p))` so that row inner
/// products equal dense Frobenius inner products.
pub fn power_span_rank<T: Real>(vectors: &[Vec<Complex<T>>], order: usize, tol: T) -> Result<usize> {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return Ok(0);
    };
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::ShapeMismatch("vectors have different lengths".into()));
    }
    let weights: Vec<T> = enumerate_exponents(order, dim)
        .iter()
        .map(|p| multinomial(p).map(|m| T::of(m as f64).sqrt()))
        .collect::<Result<_>>()?;
    let rows = vectors
        .iter()
        .map(|v| {
            let row = outer_power(v, order)?
                .to_vec()
                .into_iter()
                .zip(&weights)
                .map(|(c, &w)| c * w)
                .collect();
            Ok(row)
        })
        .collect::<Result<Vec<Vec<Complex<T>>>>>()?;
    Ok(numerical_rank(&CMatrix::from_rows(&rows)?, tol))
}

/// Numerical rank of the mode-1 unfolding (`n x n^{k-1}`).
pub fn mode1_flattening_rank<T: Real>(a: &DenseTensor<Complex<T>>, tol: T) -> Result<usize> {
    if a.order() == 0 {
        return Err(Error::Invalid("order-0 tensor has no mode-1 unfolding".into()));
    }
    let n = a.dim();
    let cols = a.entries().len() / n;
    let m = CMatrix {
        rows: n,
        cols,
        data: a.entries().to_vec(),
    };
    Ok(numerical_rank(&m, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<C> {
        (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    }

    #[test]
    fn contraction_of_vectors_is_a_dot_product() {
        let u = DenseTensor::new(1, 3, vec![1.0, 2.0, 3.0]).unwrap();
        let v = DenseTensor::new(1, 3, vec![-1.0, 0.5, 2.0]).unwrap();
        let s = contract_mode1(&u, &v).unwrap();
        assert_eq!(s.order(), 0);
        assert_eq!(s.entries(), &[6.0]);
    }

    #[test]
    fn contraction_with_identity_and_transpose() {
        let eye = DenseTensor::new(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let m = DenseTensor::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(contract_mode1(&eye, &m).unwrap(), m);
        // A^T B for k = l = 2
        let at_b = contract_mode1(&m, &m).unwrap();
        assert_eq!(at_b.entries(), &[10.0, 14.0, 14.0, 20.0]);
        let bad = DenseTensor::new(1, 3, vec![1.0; 3]).unwrap();
        assert!(contract_mode1(&m, &bad).is_err());
    }

    #[test]
    fn contracting_dual_vector_extracts_a_term() {
        // y1, y2 independent in C^3; phi dual to y1 (phi.y1 = 1, phi.y2 = 0)
        let y1 = [c(1., 0.), c(1., 0.), c(0., 0.)];
        let y2 = [c(0., 0.), c(1., 0.), c(1., 0.)];
        let phi = [c(1., 0.), c(0., 0.), c(0., 0.)];
        let sum = outer_power(&y1, 3).unwrap().add(&outer_power(&y2, 3).unwrap()).unwrap();
        let dense = sum.decompress().unwrap();
        let phi_t = DenseTensor::new(1, 3, phi.to_vec()).unwrap();
        let once = contract_mode1(&phi_t, &dense).unwrap();
        let twice = contract_mode1(&phi_t, &once).unwrap();
        assert_eq!(twice.entries(), &y1);
    }

    #[test]
    fn multilinear_identity_and_matrix_congruence() {
        let a = DenseTensor::from_fn(3, 2, |i| (i[0] + 2 * i[1] + 3 * i[2]) as f64).unwrap();
        let id = LinearMapMatrix::identity(2);
        assert_eq!(multilinear_transform(&a, &[id.clone(), id.clone(), id]).unwrap(), a);

        let m = DenseTensor::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let l = LinearMapMatrix::new(2, 2, vec![0.0, 1.0, 2.0, -1.0]).unwrap();
        let r = LinearMapMatrix::new(2, 2, vec![1.0, 1.0, 0.5, 3.0]).unwrap();
        let out = multilinear_transform(&m, &[l.clone(), r.clone()]).unwrap();
        // L A R^T computed directly
        let expect = DenseTensor::from_fn(2, 2, |i| {
            let mut s = 0.0;
            for p in 0..2 {
                for q in 0..2 {
                    s += l.get(i[0], p) * m.get(&[p, q]) * r.get(i[1], q);
                }
            }
            s
        })
        .unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn multilinear_shape_errors_name_the_mode() {
        let a = DenseTensor::<f64>::zeros(2, 2).unwrap();
        let good = LinearMapMatrix::identity(2);
        let bad = LinearMapMatrix::new(2, 3, vec![0.0; 6]).unwrap();
        let err = multilinear_transform(&a, &[good.clone(), bad]).unwrap_err();
        assert!(err.to_string().contains("mode 1"));
        assert!(multilinear_transform(&a, &[good]).is_err());
    }

    #[test]
    fn transform_commutes_with_outer_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let l = LinearMapMatrix::new(3, 3, random_vec(&mut rng, 9)).unwrap();
            let v = random_vec(&mut rng, 3);
            let lhs = multilinear_transform(
                &outer_power(&v, 3).unwrap().decompress().unwrap(),
                &vec![l.clone(); 3],
            )
            .unwrap();
            let rhs = outer_power(&l.apply(&v).unwrap(), 3).unwrap().decompress().unwrap();
            let diff = lhs
                .entries()
                .iter()
                .zip(rhs.entries())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10);
        }
    }

    #[test]
    fn non_square_maps_change_dimension() {
        let v = [c(1., 0.), c(2., 0.)];
        let l = LinearMapMatrix::new(3, 2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.), c(1., 0.), c(1., 0.)]).unwrap();
        let t = congruence(&outer_power(&v, 2).unwrap(), &l).unwrap();
        assert_eq!(t, outer_power(&l.apply(&v).unwrap(), 2).unwrap());
    }

    #[test]
    fn power_span_rank_examples() {
        let vs = vec![
            vec![c(1., 0.), c(0., 0.)],
            vec![c(0., 0.), c(1., 0.)],
            vec![c(1., 0.), c(1., 0.)],
        ];
        assert_eq!(power_span_rank(&vs, 2, 1e-10).unwrap(), 3);
        for k in 1..6 {
            assert_eq!(power_span_rank(&[vec![c(0.3, -1.), c(2., 0.5)]], k, 1e-10).unwrap(), 1);
        }
        assert_eq!(power_span_rank::<f64>(&[], 3, 1e-10).unwrap(), 0);
    }

    #[test]
    fn four_binary_cubes_are_independent() {
        // cross-check against the explicit 4x4 determinant of (1, t, t^2, t^3) rows
        let ts = [0.5, -1.0, 2.0, 3.0];
        let vs: Vec<Vec<C>> = ts.iter().map(|&t| vec![c(1., 0.), c(t, 0.)]).collect();
        assert_eq!(power_span_rank(&vs, 3, 1e-10).unwrap(), 4);
        let mut det = 1.0;
        for i in 0..4 {
            for j in i + 1..4 {
                det *= ts[j] - ts[i];
            }
        }
        assert!(det.abs() > 1.0);
        // a dependent fifth vector cannot raise the rank above the dimension 4
        let mut more = vs.clone();
        more.push(vec![c(1., 0.), c(-2., 0.)]);
        assert_eq!(power_span_rank(&more, 3, 1e-10).unwrap(), 4);
    }

    #[test]
    fn flattening_rank_counts_independent_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for s in 1..=n {
                let mut sum = SymmetricTensor::<C>::zero(3, n).unwrap();
                for _ in 0..s {
                    sum = sum.add(&outer_power(&random_vec(&mut rng, n), 3).unwrap()).unwrap();
                }
                let r = mode1_flattening_rank(&sum.decompress().unwrap(), 1e-10).unwrap();
                assert_eq!(r, s);
            }
        }
        let z = DenseTensor::<C>::zeros(3, 2).unwrap();
        assert_eq!(mode1_flattening_rank(&z, 1e-10).unwrap(), 0);
        assert!(C::zero().is_zero());
    }
}
