use ncrat::ensembles::ginibre_tuple;
use ncrat::lab::fixtures::realization_catalog;
use ncrat::realization::{evaluate_realization, realize, verify_realization, RealizationJson};
use ncrat::{evaluate, parse, Expression, DEFAULT_TOL};

fn d_expected(e: &Expression) -> usize {
    // Sizes the construction must produce, counted independently.
    match e {
        Expression::ScalarLiteral(_) | Expression::Variable(_) | Expression::AdjointVariable(_) => 1,
        Expression::Sum(a, b) | Expression::Difference(a, b) | Expression::Product(a, b) => d_expected(a) + d_expected(b),
        Expression::Negation(a) => d_expected(a),
        Expression::Inverse(a) => d_expected(a) + 1,
    }
}

#[test]
fn catalog_spans_levels_and_sizes_match_construction() {
    let catalog = realization_catalog();
    assert!(catalog.len() >= 8);
    for level in 0..=2 {
        assert!(catalog.iter().any(|f| f.level == level), "level {level} missing");
    }
    for f in &catalog {
        let e = f.expression();
        assert_eq!(e.level(), f.level, "{}", f.name);
        let r = realize(&e);
        assert_eq!(r.dim(), d_expected(&e), "{}", f.name);
        assert!(r.a.max_degree() <= 1 && r.v.max_degree() <= 1 && r.u.max_degree() == 0, "{}", f.name);
    }
}

#[test]
fn catalog_agrees_with_direct_evaluation() {
    for f in realization_catalog() {
        let e = f.expression();
        let r = realize(&e);
        for n in [1, 3] {
            let report = verify_realization(&e, &r, 30, n, 2024);
            assert!(report.domain_mismatches.is_empty(), "{} at n = {n}: {report:?}", f.name);
            assert!(report.max_relative_error <= 1e-8, "{} at n = {n}: {report:?}", f.name);
            assert!(report.common_domain_points > 0, "{}", f.name);
        }
    }
}

#[test]
fn small_cases_from_the_construction_rules() {
    assert_eq!(realize(&parse("x1^-1").unwrap()).dim(), 2);
    let r = realize(&parse("x1+x2").unwrap());
    assert_eq!(r.dim(), 2);
    assert!(verify_realization(&parse("x1+x2").unwrap(), &r, 10, 4, 1).max_relative_error <= 1e-12);
}

#[test]
fn empty_domain_expression_fails_on_both_sides() {
    let e = parse("(1 - x2 * (x1 * x2)^-1 * x1)^-1").unwrap();
    let r = realize(&e);
    let report = verify_realization(&e, &r, 20, 3, 9);
    assert_eq!(report.both_undefined, 20, "{report:?}");
}

#[test]
fn pencil_failure_has_no_subexpression() {
    let e = parse("x1^-1").unwrap();
    let t = ncrat::MatrixTuple::new(vec![ncrat::ComplexMatrix::zeros(2)]).unwrap();
    let err = evaluate_realization(&realize(&e), &t, DEFAULT_TOL).unwrap_err();
    assert_eq!(err.as_domain().unwrap().failing_subexpression, None);
    assert!(evaluate(&e, &t, DEFAULT_TOL).is_err());
}

#[test]
fn json_words_use_letter_names() {
    let r = realize(&parse("(x1 * x2')^-1").unwrap());
    let json = serde_json::to_value(RealizationJson::from(&r)).unwrap();
    assert_eq!(json["d"], 3);
    let words: Vec<String> = json["a"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|e| e["terms"].as_array().unwrap().iter())
        .flat_map(|t| t["word"].as_array().unwrap().iter().map(|w| w.as_str().unwrap().to_string()))
        .collect();
    assert!(words.contains(&"x1".to_string()) && words.contains(&"x2'".to_string()), "{words:?}");
    // Evaluation of the realization at an explicit tuple matches.
    let t = ginibre_tuple(2, 4, 8, 0);
    let direct = evaluate(&parse("(x1 * x2')^-1").unwrap(), &t, DEFAULT_TOL).unwrap();
    let via = evaluate_realization(&r, &t, DEFAULT_TOL).unwrap();
    assert!(ncrat::matrix::relative_deviation(&direct, &via).unwrap() < 1e-12);
}
