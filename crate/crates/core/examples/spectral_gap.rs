//! The norm of an inverse from two operator norms:
//! `||r^-1||^2 = 1 / (R - ||R - r r*||)` with `R = ||r r*||`.

use ncrat::ensembles::ginibre_tuple;
use ncrat::eval::inverse_norm_via_gap;
use ncrat::{evaluate, parse, DEFAULT_TOL};

fn main() {
    let e = parse("x1 * x2 + 2 - x2' * x1").unwrap();
    for trial in 0..5 {
        let t = ginibre_tuple(2, 8, 99, trial);
        let r = evaluate(&e, &t, DEFAULT_TOL).unwrap();
        let direct = 1.0 / r.singular_values().last().copied().unwrap();
        let gap = inverse_norm_via_gap(&e, &t).unwrap();
        println!("trial {trial}: svd {direct:.12}  gap {gap:.12}  rel diff {:.1e}", (gap - direct).abs() / direct);
    }
}
