//! A single small eigenvalue leaves the distribution unchanged but moves the
//! trace of the inverse and blows up its norm.
//!
//! cargo run --release --example outlier -- 512 20

use ncrat::ensembles::EnsembleKind;
use ncrat::lab::{fixtures, run_outlier_experiment, ConvergenceConfig, OutlierRule};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let max = args.first().copied().unwrap_or(128);
    let trials = args.get(1).copied().unwrap_or(5) as u64;
    let sizes: Vec<usize> = [32, 64, 128, 256, 512].into_iter().filter(|&n| n <= max).collect();
    let cfg = ConvergenceConfig::new(fixtures::OUTLIER_BASE.expression(), vec![EnsembleKind::Gue], sizes, trials);

    for rule in [OutlierRule::Reciprocal, OutlierRule::Constant { value: 1.0 }] {
        let report = run_outlier_experiment(&cfg, rule).unwrap();
        println!("X = {}, rule {:?}, limit tr(X^-1) = {:.6}", report.expression, rule, report.base_trace_limit.unwrap());
        println!("{:>6} {:>12} {:>12} {:>12} {:>14}", "n", "tr X^-1", "tr Y^-1", "||X^-1||", "||Y^-1||");
        for s in &report.sizes {
            println!(
                "{:>6} {:>12.6} {:>12.6} {:>12.6} {:>14.6}",
                s.size,
                s.base_trace.unwrap().mean,
                s.outlier_trace.unwrap().mean,
                s.base_inverse_norm.unwrap().mean,
                s.outlier_inverse_norm.unwrap().mean
            );
        }
        println!();
    }
}
