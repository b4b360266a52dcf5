use num_complex::Complex;
use proptest::prelude::*;

use symtensor::combinatorics::enumerate_exponents;
use symtensor::decompose::{decompose_sym222_pencil, pencil_quadratic, reconstruct, sym222_slices, verify, Field, SymmetricDecomposition, Term};
use symtensor::quantic::{apolar_form, quantic_to_tensor, veronese, LinearForm, Quantic};
use symtensor::tensor::{power_span_rank, SymmetricTensor};
use symtensor::C64;

fn entry() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex::new(a, b))
}

fn quantic(k: usize, n: usize) -> impl Strategy<Value = Quantic<C64>> {
    let classes = enumerate_exponents(k, n);
    proptest::collection::vec(entry(), classes.len())
        .prop_map(move |v| Quantic::from_scaled(k, n, classes.clone().into_iter().zip(v)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn duality_over_the_shape_grid(
        (f, beta) in (2usize..=4, 2usize..=4).prop_flat_map(|(k, n)| (quantic(k, n), proptest::collection::vec(entry(), n)))
    ) {
        let l = veronese(&LinearForm::new(beta.clone()), f.degree()).unwrap();
        let lhs = apolar_form(&f, &l).unwrap();
        let rhs = f.evaluate(&beta).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn veronese_evaluates_to_a_power(
        (k, beta, x) in (1usize..=5, 1usize..=4).prop_flat_map(|(k, n)| {
            (Just(k), proptest::collection::vec(entry(), n), proptest::collection::vec(entry(), n))
        })
    ) {
        let l = veronese(&LinearForm::new(beta.clone()), k).unwrap();
        let dot: C64 = beta.iter().zip(&x).map(|(b, y)| b * y).sum();
        let value = l.evaluate(&x).unwrap();
        prop_assert!((value - dot.powu(k as u32)).norm() <= 1e-12 * (1.0 + value.norm()));
    }

    #[test]
    fn few_random_vectors_have_full_power_span(
        (k, vs) in (2usize..=6, 2usize..=3).prop_flat_map(|(k, n)| {
            (Just(k), proptest::collection::vec(proptest::collection::vec(entry(), n), 1..=k + 1))
        })
    ) {
        // random directions are pairwise independent with probability one
        prop_assert_eq!(power_span_rank(&vs, k, 1e-10).unwrap(), vs.len());
    }

    #[test]
    fn decompositions_are_self_consistent(
        (k, n, terms) in (1usize..=4, 1usize..=4).prop_flat_map(|(k, n)| {
            (Just(k), Just(n), proptest::collection::vec((entry(), proptest::collection::vec(entry(), n)), 1..=5))
        })
    ) {
        let terms = terms.into_iter().map(|(weight, vector)| Term { weight, vector }).collect();
        let d = SymmetricDecomposition::new(k, n, Field::Complex, terms).unwrap();
        let a = reconstruct(&d).unwrap();
        prop_assert!(verify(&d, &a, 0.0).unwrap().residual <= 1e-12);
        prop_assert_eq!(SymmetricTensor::compress(&a.decompress().unwrap(), 1e-12).unwrap(), a);
    }

    #[test]
    fn pencil_results_verify_and_scale(
        coeffs in proptest::collection::vec(entry(), 4),
        scale in prop::sample::select(vec![1e-6, 0.3, 1.0, 250.0, 1e7]),
    ) {
        let classes = enumerate_exponents(3, 2);
        let a = SymmetricTensor::from_coeffs(3, 2, classes.into_iter().zip(coeffs)).unwrap();
        let scaled = a.scale(&Complex::new(scale, 0.0));
        let out = decompose_sym222_pencil(&scaled, Field::Complex).unwrap();
        prop_assert_eq!(out.decomposition.rank(), 2);
        prop_assert!(verify(&out.decomposition, &scaled, 1e-9).unwrap().ok);
        let [a0, a1] = sym222_slices(&a).unwrap();
        let q = pencil_quadratic(&a0, &a1);
        let [s0, s1] = sym222_slices(&scaled).unwrap();
        let qs = pencil_quadratic(&s0, &s1);
        for (x, y) in q.iter().zip(qs) {
            prop_assert!((x * scale * scale - y).norm() <= 1e-9 * (1.0 + y.norm()));
        }
    }
}

#[test]
fn quantic_text_tensor_round_trip_for_a_known_form() {
    let f = symtensor::quantic::parse_quantic("x1^2*x3 - 2*x2^3 + (0.5+1j)*x1*x2*x3", None, None).unwrap();
    let a = quantic_to_tensor(&f);
    assert_eq!(symtensor::quantic::tensor_to_quantic(&a), f);
}
