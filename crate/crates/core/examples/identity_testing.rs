//! Randomized identity testing.

use ncrat::idtest::{replay, test_identity, IdentityOptions, Verdict};
use ncrat::parse;

fn main() {
    let opts = IdentityOptions::default();
    let pairs = [
        ("(x1*x2)^-1", "x2^-1*x1^-1"),
        ("x2*(x1*x2)^-1*x1", "1"),
        ("y^-1 * (x^-1 + y^-1)^-1 * x^-1", "(x + y)^-1"),
        ("x1*x2", "x2*x1"),
        ("(x1 + x2)^-1", "x1^-1 + x2^-1"),
        ("(1 - x2*(x1*x2)^-1*x1)^-1", "0"),
    ];
    for (a, b) in pairs {
        let (e1, e2) = (parse(a).unwrap(), parse(b).unwrap());
        let v = test_identity(&e1, &e2, &opts);
        match &v.verdict {
            Verdict::ProbablyEqual { evidence } => {
                let points: u64 = evidence.iter().map(|s| s.common_domain_points).sum();
                println!("{a}  ==  {b}: probably equal ({points} common points)");
            }
            Verdict::Distinct { size, trial, deviation } => {
                println!("{a}  !=  {b}: witness size {size}, trial {trial}, deviation {deviation:.3e}");
                println!("    replayed: {:?}", replay(&e1, &e2, opts.seed, *size, *trial, opts.domain_tol));
            }
            Verdict::NoCommonDomainPoint { .. } => println!("{a}  ??  {b}: no common domain point"),
        }
    }
}
