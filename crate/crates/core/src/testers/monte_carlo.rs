//! Monte Carlo error estimates against the hard distribution.
//!
//! Trial `i` draws its function and any tester randomness from a ChaCha8
//! stream keyed by `(seed, i)`, so estimates are identical regardless of how
//! trials are scheduled across threads.

use super::exact::Distinguisher;
use super::Verdict;
use crate::error::{domain, Result};
use crate::family::{sample, FamilyParams, HardFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A possibly randomized tester run on one function.
pub trait Tester: Sync {
    fn test(&self, f: &HardFunction, rng: &mut ChaCha8Rng) -> Result<Verdict>;
}

impl<D: Distinguisher + Sync> Tester for D {
    fn test(&self, f: &HardFunction, _rng: &mut ChaCha8Rng) -> Result<Verdict> {
        self.decide(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub errors: u64,
    pub rate: f64,
    /// 95% Wilson score interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    pub fn contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95% for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_trial<T: Tester + ?Sized>(
    tester: &T,
    p: &FamilyParams,
    seed: u64,
    trial: u64,
) -> Result<bool> {
    let mut rng = trial_rng(seed, trial);
    let f = sample(p, &mut rng);
    Ok(tester.test(&f, &mut rng)?.errs_on(&f))
}

pub fn monte_carlo_error<T: Tester + ?Sized>(
    tester: &T,
    p: &FamilyParams,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return domain("need at least one trial");
    }
    #[cfg(feature = "parallel")]
    let outcomes: Vec<bool> = {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(tester, p, seed, i))
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<bool> = (0..trials)
        .map(|i| run_trial(tester, p, seed, i))
        .collect::<Result<_>>()?;

    let errors = outcomes.iter().filter(|&&e| e).count() as u64;
    let (ci_low, ci_high) = wilson_interval(errors, trials);
    Ok(MonteCarloEstimate {
        trials,
        errors,
        rate: errors as f64 / trials as f64,
        ci_low,
        ci_high,
        seed,
    })
}
