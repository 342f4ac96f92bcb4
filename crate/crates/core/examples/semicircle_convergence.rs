//! Traces and norms of a resolvent in GUE matrices approaching their
//! semicircle limits.
//!
//! cargo run --release --example semicircle_convergence -- 512 20

use ncrat::ensembles::EnsembleKind;
use ncrat::lab::{fixtures, run_convergence, stieltjes_semicircle, ConvergenceConfig};
use ncrat::Complex64;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let max = args.first().copied().unwrap_or(128);
    let trials = args.get(1).copied().unwrap_or(10) as u64;
    let sizes: Vec<usize> = [16, 32, 64, 128, 256, 512, 1024].into_iter().filter(|&n| n <= max).collect();

    let g3 = stieltjes_semicircle(Complex64::new(3.0, 0.0)).unwrap();
    println!("G(3) = {:.6}\n", g3.re);

    let cfg = ConvergenceConfig::new(fixtures::RESOLVENT_AT_3.expression(), vec![EnsembleKind::Gue], sizes, trials);
    let report = run_convergence(&cfg).unwrap();
    let oracle = report.oracle.unwrap();
    println!("{}: oracle trace {:.6}, oracle norm {:.6}", report.expression, oracle.trace.re, oracle.norm);
    println!("{:>6} {:>9} {:>12} {:>10} {:>12} {:>10}", "n", "in-domain", "mean tr", "std tr", "mean norm", "std norm");
    for s in &report.sizes {
        let (tr, nm) = (s.re_trace.unwrap(), s.norm.unwrap());
        println!("{:>6} {:>9} {:>12.6} {:>10.2e} {:>12.6} {:>10.2e}", s.size, s.in_domain, tr.mean, tr.std, nm.mean, nm.std);
    }
}
