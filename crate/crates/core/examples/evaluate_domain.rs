//! Evaluate expressions at random matrices and look at the domain checks.

use ncrat::ensembles::ginibre_tuple;
use ncrat::eval::evaluate_with_diagnostics;
use ncrat::{evaluate, parse, ComplexMatrix, DEFAULT_TOL};

fn main() {
    let t = ginibre_tuple(2, 6, 11, 0);

    // Hua's identity: the expression is zero wherever it is defined.
    let hua = parse("y^-1 * (x^-1 + y^-1)^-1 * x^-1 - (x + y)^-1").unwrap();
    let value = evaluate(&hua, &t, DEFAULT_TOL).unwrap();
    println!("hua at a 6x6 pair: ||value|| = {:.3e}", value.operator_norm());

    // In a finite dimension AB = 1 forces BA = 1.
    let sf = parse("x2 * (x1 * x2)^-1 * x1").unwrap();
    let value = evaluate(&sf, &t, DEFAULT_TOL).unwrap();
    let dev = ncrat::matrix::relative_deviation(&value, &ComplexMatrix::identity(6)).unwrap();
    println!("x2 (x1 x2)^-1 x1 vs identity: deviation {dev:.3e}");

    // The inner term equals 1, so the outer inverse never exists.
    let empty = parse("(1 - x2 * (x1 * x2)^-1 * x1)^-1").unwrap();
    let (report, value) = evaluate_with_diagnostics(&empty, &t, DEFAULT_TOL);
    println!("empty domain: in_domain = {}, value present = {}", report.in_domain, value.is_some());
    for d in &report.diagnostics {
        println!(
            "  {:<32} sigma_min {:.3e}  reference {:.3e}  margin {:.3e}  {}",
            d.subexpression.to_string(),
            d.sigma_min,
            d.reference_scale,
            d.relative_margin,
            if d.passed { "ok" } else { "FAIL" }
        );
    }
    if let Some(err) = report.error {
        println!("  {err}");
    }
}
