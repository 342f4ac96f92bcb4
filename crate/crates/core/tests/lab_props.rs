mod common;

use ncrat::ensembles::EnsembleKind;
use ncrat::lab::{
    eventual_domain_curve, fixtures, run_convergence, run_outlier_experiment, ConvergenceConfig, ConvergenceConfigFile,
    OutlierRule,
};
use ncrat::parse;

fn gue_config(text: &str, sizes: Vec<usize>, trials: u64) -> ConvergenceConfig {
    let e = parse(text).unwrap();
    let m = e.inventory().num_variables;
    ConvergenceConfig::new(e, vec![EnsembleKind::Gue; m], sizes, trials)
}

#[test]
fn hermitian_expressions_have_real_traces() {
    for text in ["(3 - x1)^-1", "x1 * x1 * x1", "x1 * x2 * x1 + x2", "(x1 * x1 + 1)^-1"] {
        let report = run_convergence(&gue_config(text, vec![8, 40], 4)).unwrap();
        for row in &report.rows {
            assert!(row.im_trace.unwrap().abs() <= 1e-10, "{text}: {row:?}");
        }
    }
}

#[test]
fn zero_times_a_variable_changes_nothing() {
    let a = run_convergence(&gue_config("x1", vec![16, 32], 3)).unwrap();
    let b = run_convergence(&gue_config("x1 + 0*x2", vec![16, 32], 3)).unwrap();
    assert_eq!(a.rows, b.rows);
}

#[test]
fn rows_do_not_depend_on_thread_count() {
    let cfg = gue_config("(3 - x1)^-1 * x2", vec![12, 24], 6);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| run_convergence(&cfg).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.to_csv(), four.to_csv());
    assert_eq!(one.to_json(), four.to_json());
}

#[test]
fn aggregates_follow_from_raw_rows() {
    let report = run_convergence(&gue_config("(0.5 - x1)^-1", vec![8, 16], 5)).unwrap();
    assert_eq!(report.recompute_summaries(), report.sizes);
    for s in &report.sizes {
        assert!(s.in_domain <= s.trials);
    }
    // The CSV round-trips the recorded doubles.
    let csv = report.to_csv();
    for (line, row) in csv.lines().skip(1).zip(&report.rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        if let Some(t) = row.re_trace {
            assert_eq!(fields[3].parse::<f64>().unwrap(), t);
        }
    }
}

#[test]
fn gue_norm_grows_toward_the_edge() {
    let report = run_convergence(&gue_config("x1", vec![64, 128, 256], 8)).unwrap();
    let means: Vec<f64> = report.sizes.iter().map(|s| s.norm.unwrap().mean).collect();
    assert!(means.windows(2).all(|w| w[0] < w[1]), "{means:?}");
    assert!(means.iter().all(|&m| m < 2.1), "{means:?}");
    assert_eq!(report.oracle.unwrap().norm, 2.0);
}

#[test]
fn resolvent_trace_self_averages() {
    let report = run_convergence(&gue_config(fixtures::RESOLVENT_AT_3.text, vec![64, 512], 20)).unwrap();
    let (s64, s512) = (report.summary(64).unwrap(), report.summary(512).unwrap());
    assert!(s512.re_trace.unwrap().std < s64.re_trace.unwrap().std, "{s64:?} {s512:?}");
    assert_eq!(s512.in_domain, 20);
    assert!((report.oracle.unwrap().trace.re - common::frozen::G3).abs() < 1e-15);
}

#[test]
fn eventual_domain_curves() {
    let curve = eventual_domain_curve(&gue_config("(3 - x1)^-1", vec![16, 64, 256], 20)).unwrap();
    let fractions: Vec<f64> = curve.iter().map(|p| p.fraction).collect();
    for (f, lower) in fractions.iter().zip([0.9, 0.95, 1.0]) {
        assert!(*f >= lower, "{fractions:?}");
    }
    // Regression snapshot for the default seed.
    assert_eq!(fractions, vec![1.0, 1.0, 1.0]);

    let poly = eventual_domain_curve(&gue_config("x1 * x1 - 2 * x1", vec![4, 16], 10)).unwrap();
    assert!(poly.iter().all(|p| p.fraction == 1.0 && p.mean_min_margin.is_none()));

    // 0 sits inside the spectrum: the margin keeps shrinking.
    let inv = eventual_domain_curve(&gue_config("x1^-1", vec![16, 64, 256], 10)).unwrap();
    let margins: Vec<f64> = inv.iter().map(|p| p.mean_min_margin.unwrap()).collect();
    assert!(margins.windows(2).all(|w| w[1] < w[0]), "{margins:?}");
}

#[test]
fn outlier_without_outlier_keeps_the_limit() {
    let cfg = gue_config(fixtures::OUTLIER_BASE.text, vec![32, 128], 6);
    let flat = run_outlier_experiment(&cfg, OutlierRule::Constant { value: 1.0 }).unwrap();
    let spiked = run_outlier_experiment(&cfg, OutlierRule::Reciprocal).unwrap();
    let limit = flat.base_trace_limit.unwrap();
    assert!((limit - common::frozen::G3).abs() < 1e-15);
    for (f, s) in flat.sizes.iter().zip(&spiked.sizes) {
        let n = f.size as f64;
        // tr_{n+1}(Y^-1) = (1/a + n tr_n(X^-1)) / (n + 1).
        let base = f.base_trace.unwrap().mean;
        assert!((f.outlier_trace.unwrap().mean - (1.0 + n * base) / (n + 1.0)).abs() < 1e-12);
        assert!((s.outlier_trace.unwrap().mean - ((n + 1.0) + n * base) / (n + 1.0)).abs() < 1e-12);
        assert!(f.outlier_inverse_norm.unwrap().mean <= 1.0 + 1e-12);
        assert!((s.outlier_inverse_norm.unwrap().mean - (n + 1.0)).abs() <= 1e-12 * (n + 1.0));
    }
}

#[test]
fn config_file_round_trip_and_defaults() {
    let json = r#"{"expression": "(3 - x)^-1", "ensembles": [{"kind": "gue"}], "sizes": [8, 16], "trials": 2}"#;
    let file: ConvergenceConfigFile = serde_json::from_str(json).unwrap();
    let cfg = file.into_config().unwrap();
    assert_eq!(cfg.seed, ncrat::lab::DEFAULT_SEED);
    assert_eq!(cfg.tol, ncrat::DEFAULT_TOL);
    let back = ConvergenceConfigFile::from_config(&cfg).into_config().unwrap();
    assert_eq!(back, cfg);

    let bad = r#"{"expression": "x1", "ensembles": [{"kind": "gue"}], "sizes": [], "trials": 2}"#;
    assert!(serde_json::from_str::<ConvergenceConfigFile>(bad).unwrap().into_config().is_err());
}
