mod common;

use ncrat::ensembles::ginibre_tuple;
use ncrat::eval::{evaluate_with_diagnostics, scalar_tuple};
use ncrat::matrix::{relative_deviation, smallest_spectral_point_psd};
use ncrat::{evaluate, in_domain, parse, Complex64, ComplexMatrix, EvalError, MatrixTuple, DEFAULT_TOL};
use proptest::prelude::*;

fn tuple(m: usize, n: usize, trial: u64) -> MatrixTuple {
    ginibre_tuple(m, n, 31, trial)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c_star_identity(n in 1usize..12, trial in 0u64..1000) {
        let a = tuple(1, n, trial).get(1).unwrap().clone();
        let norm = a.operator_norm();
        let gram = a.adjoint().mul(&a).unwrap().operator_norm();
        prop_assert!((gram - norm * norm).abs() <= 1e-12 * norm * norm);
        prop_assert!((a.adjoint().operator_norm() - norm).abs() <= 1e-12 * norm);
    }

    #[test]
    fn norm_is_submultiplicative_and_subadditive(n in 1usize..10, trial in 0u64..1000) {
        let t = tuple(2, n, trial);
        let (a, b) = (t.get(1).unwrap(), t.get(2).unwrap());
        let (na, nb) = (a.operator_norm(), b.operator_norm());
        prop_assert!(a.mul(b).unwrap().operator_norm() <= na * nb * (1.0 + 1e-12));
        prop_assert!(a.add(b).unwrap().operator_norm() <= (na + nb) * (1.0 + 1e-12));
    }

    #[test]
    fn stable_finiteness(n in 1usize..10, trial in 0u64..1000) {
        // A B = 1 implies B A = 1.
        let t = tuple(1, n, trial);
        let a = t.get(1).unwrap();
        let b = a.invert(DEFAULT_TOL).unwrap().inverse;
        let id = ComplexMatrix::identity(n);
        let kappa = a.operator_norm() * b.operator_norm();
        prop_assert!(relative_deviation(&a.mul(&b).unwrap(), &id).unwrap() < 1e-13 * kappa * n as f64);
        prop_assert!(relative_deviation(&b.mul(a).unwrap(), &id).unwrap() < 1e-13 * kappa * n as f64);
    }

    #[test]
    fn smallest_spectral_point_matches_oracle(n in 1usize..9, trial in 0u64..1000) {
        let a = tuple(1, n, trial).get(1).unwrap().clone();
        let p = a.mul(&a.adjoint()).unwrap().hermitian_part();
        let oracle = common::hermitian_eigenvalues(&common::grid(&p))[0];
        let got = smallest_spectral_point_psd(&p).unwrap();
        prop_assert!((got - oracle).abs() <= 1e-12 * p.operator_norm(), "{} vs {}", got, oracle);
    }

    #[test]
    fn evaluation_is_a_homomorphism(n in 1usize..6, trial in 0u64..1000) {
        let t = tuple(2, n, trial);
        let (x, y) = (t.get(1).unwrap(), t.get(2).unwrap());
        let sum = evaluate(&parse("x1 + x2*x1 - 3").unwrap(), &t, DEFAULT_TOL).unwrap();
        let expected = x.add(&y.mul(x).unwrap()).unwrap().shift(Complex64::new(-3.0, 0.0));
        prop_assert!(relative_deviation(&sum, &expected).unwrap() < 1e-14);
        let adj = evaluate(&parse("x2'").unwrap(), &t, DEFAULT_TOL).unwrap();
        prop_assert_eq!(adj, y.adjoint());
    }

    #[test]
    fn hua_identity_vanishes(n in 1usize..8, trial in 0u64..1000) {
        let e = parse("y^-1 * (x^-1 + y^-1)^-1 * x^-1 - (x + y)^-1").unwrap();
        let t = tuple(2, n, trial);
        if let Ok(v) = evaluate(&e, &t, DEFAULT_TOL) {
            let scale = evaluate(&parse("(x + y)^-1").unwrap(), &t, DEFAULT_TOL).unwrap().operator_norm();
            prop_assert!(v.operator_norm() <= 1e-9 * scale.max(1.0));
        }
    }
}

#[test]
fn scalar_evaluation_is_complex_arithmetic() {
    let (a, b) = (Complex64::new(0.3, -1.2), Complex64::new(2.0, 0.5));
    let t = scalar_tuple(&[a, b]);
    let v = evaluate(&parse("(x1 * x2' + 2i)^-1 - x2").unwrap(), &t, DEFAULT_TOL).unwrap();
    let expected = 1.0 / (a * b.conj() + Complex64::new(0.0, 2.0)) - b;
    assert!((v.get(0, 0) - expected).norm() < 1e-15);
}

#[test]
fn empty_domain_fails_at_every_size() {
    let e = parse("(1 - x2 * (x1 * x2)^-1 * x1)^-1").unwrap();
    for n in [1, 2, 3, 5, 8] {
        for trial in 0..10 {
            let t = tuple(2, n, trial);
            let report = in_domain(&e, &t, DEFAULT_TOL);
            assert!(!report.in_domain, "n = {n}, trial {trial}");
            let failing = report.error.as_ref().and_then(EvalError::as_domain).unwrap();
            assert_eq!(failing.failing_subexpression.as_ref(), Some(&e));
        }
    }
}

#[test]
fn zero_matrix_inverse_reports_sigmas() {
    let t = MatrixTuple::new(vec![ComplexMatrix::zeros(3)]).unwrap();
    let err = evaluate(&parse("x1^-1").unwrap(), &t, DEFAULT_TOL).unwrap_err();
    let d = err.as_domain().unwrap();
    assert_eq!((d.sigma_min, d.sigma_max), (0.0, 0.0));
    assert_eq!(d.failing_subexpression.as_ref().map(|e| e.to_string()), Some("x1^-1".into()));
}

#[test]
fn missing_variables_are_not_domain_errors() {
    let t = tuple(1, 2, 0);
    let err = evaluate(&parse("x1 + x2").unwrap(), &t, DEFAULT_TOL).unwrap_err();
    assert!(matches!(err, EvalError::MissingVariable { index: 2, available: 1 }));
}

#[test]
fn diagnostics_list_every_inverse_in_order() {
    let e = parse("(x1^-1 + x2^-1)^-1").unwrap();
    let (report, value) = evaluate_with_diagnostics(&e, &tuple(2, 4, 3), DEFAULT_TOL);
    assert!(report.in_domain && value.is_some());
    let names: Vec<String> = report.diagnostics.iter().map(|d| d.subexpression.to_string()).collect();
    assert_eq!(names, ["x1^-1", "x2^-1", "(x1^-1 + x2^-1)^-1"]);
    assert!(report.diagnostics.iter().all(|d| d.passed && d.relative_margin > DEFAULT_TOL));
}

#[test]
fn large_dimension_norms_use_power_iteration() {
    // Power iteration is accurate when the top singular value is separated.
    let n = 600;
    let mut values: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / n as f64).collect();
    values[17] = 3.0;
    let d = ComplexMatrix::diag_real(&values);
    assert!((d.operator_norm() - 3.0).abs() < 1e-10);
    let inv = d.invert(DEFAULT_TOL).unwrap();
    assert!((inv.smallest_singular_value - 1.0).abs() < 1e-10);
    assert!((inv.largest_singular_value - 3.0).abs() < 1e-10);
}
