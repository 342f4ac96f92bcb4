//! How often a random tuple lies in the domain, per size.

use ncrat::ensembles::EnsembleKind;
use ncrat::lab::{eventual_domain_curve, ConvergenceConfig};
use ncrat::parse;

fn main() {
    for text in ["(3 - x1)^-1", "x1^-1", "x1 * x1 - 2", "(2.1 - x1)^-1"] {
        let cfg = ConvergenceConfig::new(parse(text).unwrap(), vec![EnsembleKind::Gue], vec![16, 64, 256], 20);
        println!("{text}");
        for p in eventual_domain_curve(&cfg).unwrap() {
            let margin = p.mean_min_margin.map_or("-".to_string(), |m| format!("{m:.3e}"));
            println!("  n = {:>4}: {}/{} in domain, mean margin {margin}", p.size, p.in_domain, p.trials);
        }
    }
}
