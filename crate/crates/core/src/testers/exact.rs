//! Exact error of deterministic distinguishers over the hard distribution.

use super::tree::{run_tree, ComparisonTree, NonAdaptiveDistinguisher};
use super::{order_pattern, FunctionOracle, Verdict};
use crate::capture::QuerySet;
use crate::error::{capacity, Result};
use crate::family::{support, FamilyParams, HardFunction};
use crate::grid::BitPoint;
use crate::rational::Rational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// A deterministic comparison-based procedure declaring base or not.
pub trait Distinguisher {
    fn decide(&self, f: &HardFunction) -> Result<Verdict>;
}

impl Distinguisher for ComparisonTree {
    fn decide(&self, f: &HardFunction) -> Result<Verdict> {
        run_tree(self, &mut FunctionOracle::for_hard(f)).map(|(v, _)| v)
    }
}

impl Distinguisher for NonAdaptiveDistinguisher {
    fn decide(&self, f: &HardFunction) -> Result<Verdict> {
        Ok(self.run(&mut FunctionOracle::for_hard(f)))
    }
}

/// Answers without querying.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstantDistinguisher(pub Verdict);

impl Distinguisher for ConstantDistinguisher {
    fn decide(&self, _: &HardFunction) -> Result<Verdict> {
        Ok(self.0)
    }
}

/// Total mass of the support on which `dist` answers wrongly.
pub fn exact_error<D: Distinguisher + ?Sized>(dist: &D, p: &FamilyParams) -> Result<Rational> {
    let mut err = Rational::zero();
    for (f, mass) in support(p).iter() {
        if dist.decide(f)?.errs_on(f) {
            err += mass;
        }
    }
    Ok(err)
}

/// A non-adaptive distinguisher with one verdict per observed order pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PatternDistinguisher {
    pub queries: Vec<BitPoint>,
    pub verdicts: BTreeMap<Vec<usize>, Verdict>,
    /// Used for patterns not listed in `verdicts`.
    pub default: Verdict,
}

impl Distinguisher for PatternDistinguisher {
    fn decide(&self, f: &HardFunction) -> Result<Verdict> {
        let mut oracle = FunctionOracle::for_hard(f);
        let values: Vec<i64> = self.queries.iter().map(|q| oracle.query(q)).collect();
        Ok(*self
            .verdicts
            .get(&order_pattern(&values))
            .unwrap_or(&self.default))
    }
}

/// The best distinguisher that queries exactly `x`, and its exact error.
///
/// Support functions are grouped by the order pattern they induce on `x`;
/// each group gets the verdict that loses less mass.
pub fn optimal_for_query_set(
    x: &QuerySet,
    p: &FamilyParams,
) -> Result<(PatternDistinguisher, Rational)> {
    p.check_explicit()?;
    let mut groups: BTreeMap<Vec<usize>, (Rational, Rational)> = BTreeMap::new();
    for (f, mass) in support(p).iter() {
        let values: Vec<i64> = x.points().iter().map(|q| f.evaluate(q)).collect();
        let entry = groups
            .entry(order_pattern(&values))
            .or_insert((Rational::zero(), Rational::zero()));
        if f.is_base() {
            entry.0 += mass;
        } else {
            entry.1 += mass;
        }
    }
    let mut error = Rational::zero();
    let mut verdicts = BTreeMap::new();
    for (pattern, (base_mass, perturbed_mass)) in groups {
        // accepting loses the perturbed mass, rejecting loses the base mass
        let verdict = if perturbed_mass <= base_mass {
            Verdict::Accept
        } else {
            Verdict::Reject
        };
        error += base_mass.min(perturbed_mass);
        verdicts.insert(pattern, verdict);
    }
    Ok((
        PatternDistinguisher {
            queries: x.points().to_vec(),
            verdicts,
            default: Verdict::Reject,
        },
        error,
    ))
}

/// Limits for [`best_distinguisher_exhaustive`].
pub const EXHAUSTIVE_MAX_BITS: u32 = 4;
pub const EXHAUSTIVE_MAX_BUDGET: usize = 3;

/// Minimum exact error over all non-adaptive distinguishers with `t` queries.
///
/// Every `t`-subset of the cube is tried with optimal pattern verdicts; the
/// first minimizer in lexicographic subset order is returned.
pub fn best_distinguisher_exhaustive(
    p: &FamilyParams,
    t: usize,
) -> Result<(PatternDistinguisher, Rational)> {
    capacity(
        "m for exhaustive search",
        u64::from(p.m()),
        u64::from(EXHAUSTIVE_MAX_BITS),
    )?;
    capacity(
        "budget for exhaustive search",
        t as u64,
        EXHAUSTIVE_MAX_BUDGET as u64,
    )?;
    let size = 1u64 << p.m();
    let t = t.min(size as usize);
    let mut best: Option<(PatternDistinguisher, Rational)> = None;
    let mut combo: Vec<u64> = (0..t as u64).collect();
    loop {
        let x = QuerySet::new(
            p.m(),
            combo.iter().map(|&w| BitPoint::new(w, p.m()).unwrap()),
        )?;
        let (dist, err) = optimal_for_query_set(&x, p)?;
        if best.as_ref().is_none_or(|(_, e)| err < *e) {
            best = Some((dist, err));
        }
        // next combination in lexicographic order
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(best.expect("at least one subset"));
            }
            i -= 1;
            if combo[i] < size - (t - i) as u64 {
                combo[i] += 1;
                for j in i + 1..t {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}
