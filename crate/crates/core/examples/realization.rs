//! Build `u A^-1 v` realizations and check them against direct evaluation.

use ncrat::realization::{realize, verify_realization, RealizationJson};
use ncrat::parse;

fn main() {
    for text in ["x1^-1", "x1 + x2", "(x1 * x2)^-1", "(x1^-1 + x2^-1 + x3^-1)^-1"] {
        let e = parse(text).unwrap();
        let r = realize(&e);
        let report = verify_realization(&e, &r, 25, 5, 3);
        println!(
            "{text:<28} d = {:<3} max entry degree = {}  agreement on {}/{} tuples, max deviation {:.2e}",
            r.dim(),
            r.a.max_degree(),
            report.common_domain_points,
            report.trials,
            report.max_relative_error
        );
    }

    let r = realize(&parse("x1^-1").unwrap());
    println!("\nrealization of x1^-1:");
    println!("{}", serde_json::to_string_pretty(&RealizationJson::from(&r)).unwrap());
}
