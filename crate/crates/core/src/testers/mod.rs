//! Executable tester models.
//!
//! Deterministic testers are comparison trees: every decision depends only
//! on the relative order of the values seen so far. Randomized testers are
//! seeded distributions over such trees, or sampling testers like
//! [`pair::pair_tester`]. Verdicts are judged against the hard distribution
//! either exactly (summing masses over its support) or by Monte Carlo.

pub mod exact;
pub mod monte_carlo;
pub mod pair;
pub mod tree;

pub use exact::{
    best_distinguisher_exhaustive, exact_error, optimal_for_query_set, ConstantDistinguisher,
    Distinguisher, PatternDistinguisher,
};
pub use monte_carlo::{monte_carlo_error, wilson_interval, MonteCarloEstimate, Tester};
pub use pair::{pair_tester, PairTester};
pub use tree::{
    derive_non_adaptive, random_tree, run_tree, ComparisonTree, NonAdaptiveDistinguisher,
    Transcript,
};

use crate::family::{HardFunction, LiftedFunction};
use crate::grid::{BitPoint, GridPoint};
use serde::{Deserialize, Serialize};

/// `Accept` declares "equals the base function" (monotone); `Reject` declares "differs" (far).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    /// Whether this verdict is wrong for `f`.
    pub fn errs_on(self, f: &HardFunction) -> bool {
        match self {
            Verdict::Accept => !f.is_base(),
            Verdict::Reject => f.is_base(),
        }
    }
}

/// Query access to a function, logging every query.
///
/// Repeated queries return the same value and are logged (and counted) again.
pub struct FunctionOracle<'a, P> {
    evaluator: Box<dyn Fn(&P) -> i64 + 'a>,
    log: Vec<(P, i64)>,
}

impl<'a, P: Clone> FunctionOracle<'a, P> {
    pub fn new(evaluator: impl Fn(&P) -> i64 + 'a) -> Self {
        FunctionOracle {
            evaluator: Box::new(evaluator),
            log: Vec::new(),
        }
    }

    pub fn query(&mut self, point: &P) -> i64 {
        let v = (self.evaluator)(point);
        self.log.push((point.clone(), v));
        v
    }

    pub fn query_count(&self) -> usize {
        self.log.len()
    }

    pub fn log(&self) -> &[(P, i64)] {
        &self.log
    }

    pub fn into_log(self) -> Vec<(P, i64)> {
        self.log
    }
}

impl<'a> FunctionOracle<'a, BitPoint> {
    pub fn for_hard(f: &'a HardFunction) -> Self {
        FunctionOracle::new(move |x: &BitPoint| f.evaluate(x))
    }
}

impl<'a> FunctionOracle<'a, GridPoint> {
    /// Panics on points outside the grid.
    pub fn for_lifted(f: &'a LiftedFunction) -> Self {
        FunctionOracle::new(move |y: &GridPoint| {
            f.evaluate(y).expect("grid point inside the domain")
        })
    }
}

/// Rank of `value` among `seen`: how many of them are smaller.
pub(crate) fn rank_among(seen: &[i64], value: i64) -> usize {
    seen.iter().filter(|&&v| v < value).count()
}

/// Position of each value in the sorted order of all values.
pub(crate) fn order_pattern(values: &[i64]) -> Vec<usize> {
    values.iter().map(|&v| rank_among(values, v)).collect()
}
