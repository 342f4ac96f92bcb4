//! Randomized identity testing of rational expressions.
//!
//! Two expressions represent the same rational function exactly when they
//! agree on matrix tuples of every size wherever both are defined. The test
//! below samples Ginibre tuples for sizes `1..=max_size` and compares the two
//! evaluations on their common domain. Tuples are addressed by
//! `(seed, size, trial)`, so every witness can be replayed.

use serde::{Deserialize, Serialize};

use crate::ensembles::ginibre_tuple;
use crate::eval::evaluate;
use crate::expr::Expression;
use crate::lab::DEFAULT_SEED;
use crate::matrix::{relative_deviation, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityOptions {
    pub max_size: usize,
    pub trials_per_size: u64,
    /// Relative Frobenius deviation above which two values count as distinct.
    pub tol: f64,
    /// Invertibility threshold used while evaluating.
    pub domain_tol: f64,
    pub seed: u64,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions { max_size: 6, trials_per_size: 20, tol: 1e-7, domain_tol: DEFAULT_TOL, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeEvidence {
    pub size: usize,
    pub trials: u64,
    pub common_domain_points: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Distinct { size: usize, trial: u64, deviation: f64 },
    ProbablyEqual { evidence: Vec<SizeEvidence> },
    NoCommonDomainPoint { evidence: Vec<SizeEvidence> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub tolerance: f64,
    pub seed: u64,
    pub max_size: usize,
    pub trials_per_size: u64,
}

impl IdentityVerdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self.verdict, Verdict::Distinct { .. })
    }

    pub fn is_probably_equal(&self) -> bool {
        matches!(self.verdict, Verdict::ProbablyEqual { .. })
    }

    pub fn is_no_common_domain(&self) -> bool {
        matches!(self.verdict, Verdict::NoCommonDomainPoint { .. })
    }
}

/// Outcome at a single replay coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointOutcome {
    /// Both sides defined; relative deviation.
    Compared(f64),
    OutsideCommonDomain,
}

fn num_vars(e1: &Expression, e2: &Expression) -> usize {
    e1.inventory().num_variables.max(e2.inventory().num_variables).max(1)
}

/// Re-evaluates both expressions at the tuple addressed by
/// `(seed, size, trial)`.
pub fn replay(e1: &Expression, e2: &Expression, seed: u64, size: usize, trial: u64, domain_tol: f64) -> PointOutcome {
    let t = ginibre_tuple(num_vars(e1, e2), size, seed, trial);
    match (evaluate(e1, &t, domain_tol), evaluate(e2, &t, domain_tol)) {
        (Ok(a), Ok(b)) => PointOutcome::Compared(relative_deviation(&a, &b).unwrap_or(f64::INFINITY)),
        _ => PointOutcome::OutsideCommonDomain,
    }
}

/// Tests whether `e1` and `e2` represent the same rational function. The
/// first deviating `(size, trial)` in lexicographic order is the witness.
pub fn test_identity(e1: &Expression, e2: &Expression, opts: &IdentityOptions) -> IdentityVerdict {
    assert!(opts.max_size >= 1 && opts.trials_per_size >= 1, "empty test budget");
    let wrap = |verdict| IdentityVerdict {
        verdict,
        tolerance: opts.tol,
        seed: opts.seed,
        max_size: opts.max_size,
        trials_per_size: opts.trials_per_size,
    };
    let mut evidence = Vec::with_capacity(opts.max_size);
    for size in 1..=opts.max_size {
        let mut found = 0;
        for trial in 0..opts.trials_per_size {
            match replay(e1, e2, opts.seed, size, trial, opts.domain_tol) {
                PointOutcome::Compared(deviation) => {
                    if !(deviation <= opts.tol) {
                        return wrap(Verdict::Distinct { size, trial, deviation });
                    }
                    found += 1;
                }
                PointOutcome::OutsideCommonDomain => {}
            }
        }
        evidence.push(SizeEvidence { size, trials: opts.trials_per_size, common_domain_points: found });
    }
    if evidence.iter().all(|s| s.common_domain_points == 0) {
        wrap(Verdict::NoCommonDomainPoint { evidence })
    } else {
        wrap(Verdict::ProbablyEqual { evidence })
    }
}

/// Tests `e` against the zero expression.
pub fn zero_test(e: &Expression, opts: &IdentityOptions) -> IdentityVerdict {
    test_identity(e, &Expression::real(0.0), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn p(s: &str) -> Expression {
        parse(s).unwrap()
    }

    fn quick() -> IdentityOptions {
        IdentityOptions { max_size: 3, trials_per_size: 4, seed: 5, ..Default::default() }
    }

    #[test]
    fn commutator_is_distinct_only_beyond_size_one() {
        let v = test_identity(&p("x1*x2"), &p("x2*x1"), &quick());
        match v.verdict {
            Verdict::Distinct { size, trial, deviation } => {
                assert_eq!(size, 2);
                assert_eq!(trial, 0);
                assert!(deviation > 1e-7);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_test_examples() {
        assert!(zero_test(&p("x1 - x1"), &quick()).is_probably_equal());
        let v = zero_test(&p("x1^-1"), &quick());
        assert!(matches!(v.verdict, Verdict::Distinct { size: 1, .. }));
    }

    #[test]
    fn distinct_witness_replays() {
        let (a, b) = (p("x1*x2 + x2"), p("x2*x1 + x2"));
        let opts = quick();
        if let Verdict::Distinct { size, trial, deviation } = test_identity(&a, &b, &opts).verdict {
            assert_eq!(replay(&a, &b, opts.seed, size, trial, opts.domain_tol), PointOutcome::Compared(deviation));
        } else {
            panic!("expected a witness");
        }
    }

    #[test]
    fn verdict_json_carries_replay_coordinates() {
        let v = test_identity(&p("x1*x2"), &p("x2*x1"), &quick());
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["verdict"], "distinct");
        assert_eq!(json["size"], 2);
        assert_eq!(json["trial"], 0);
        assert_eq!(json["seed"], 5);
    }
}
