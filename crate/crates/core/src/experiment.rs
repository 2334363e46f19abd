//! Budget sweeps producing plot-ready rows.

use crate::capture::greedy_capture_adversary;
use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::grid::DomainParams;
use crate::rational::{format_rational, Rational};
use crate::testers::{
    exact_error, monte_carlo_error, optimal_for_query_set, ComparisonTree, PairTester, Verdict,
};
use serde::Serialize;
use std::io::Write;

/// Column order of [`write_sweep_csv`].
pub const SWEEP_COLUMNS: [&str; 6] = ["budget", "exactError", "mcError", "ciLow", "ciHigh", "seed"];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub budget: usize,
    #[serde(serialize_with = "opt_rational")]
    pub exact_error: Option<Rational>,
    pub mc_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

fn opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// For each budget `t`: the optimal non-adaptive distinguisher on the
/// greedy capture-maximizing query set of size `t`.
pub fn greedy_sweep(
    p: &FamilyParams,
    budgets: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    budgets
        .iter()
        .map(|&t| {
            let x = greedy_capture_adversary(p, t)?;
            let (dist, err) = optimal_for_query_set(&x, p)?;
            let mc = monte_carlo_error(&dist, p, trials, seed)?;
            Ok(row(t, Some(err), mc))
        })
        .collect()
}

/// For each budget `t`: `tree` cut at depth `t`, cut nodes accepting.
pub fn tree_sweep(
    tree: &ComparisonTree,
    p: &FamilyParams,
    budgets: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    tree.validate(p.m(), None)?;
    budgets
        .iter()
        .map(|&t| {
            let cut = tree.truncate(t, Verdict::Accept);
            let err = exact_error(&cut, p)?;
            let mc = monte_carlo_error(&cut, p, trials, seed)?;
            Ok(row(t, Some(err), mc))
        })
        .collect()
}

/// For each budget: the pair tester on lifted functions over `domain`.
pub fn pair_sweep(
    domain: &DomainParams,
    p: &FamilyParams,
    budgets: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    if domain.m() != p.m() {
        return Err(Error::Domain(format!(
            "hypergrid has m = {}, family has m = {}",
            domain.m(),
            p.m()
        )));
    }
    budgets
        .iter()
        .map(|&t| {
            let tester = PairTester::new(*domain, t)?;
            let mc = monte_carlo_error(&tester, p, trials, seed)?;
            Ok(row(t, None, mc))
        })
        .collect()
}

fn row(
    budget: usize,
    exact_error: Option<Rational>,
    mc: crate::testers::MonteCarloEstimate,
) -> SweepRow {
    SweepRow {
        budget,
        exact_error,
        mc_error: mc.rate,
        ci_low: mc.ci_low,
        ci_high: mc.ci_high,
        seed: mc.seed,
    }
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS).map_err(io)?;
    for r in rows {
        w.write_record([
            r.budget.to_string(),
            r.exact_error
                .as_ref()
                .map(format_rational)
                .unwrap_or_default(),
            format!("{:.6}", r.mc_error),
            format!("{:.6}", r.ci_low),
            format!("{:.6}", r.ci_high),
            r.seed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Parse(format!("csv write failed: {e}")))
}
