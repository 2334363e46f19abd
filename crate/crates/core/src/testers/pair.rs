//! A one-sided pair tester for `[n]^d`.
//!
//! Each round picks a dimension, a point and a power-of-two gap uniformly,
//! compares the point with its shift along that dimension, and rejects on
//! the first violated pair. A monotone function is never rejected.

use super::monte_carlo::Tester;
use super::{FunctionOracle, Verdict};
use crate::error::{self, Result};
use crate::family::{lift_to_hypergrid, Epsilon, HardFunction};
use crate::grid::{DomainParams, GridPoint};
use rand::Rng;

/// Runs up to `budget` rounds (each round is one sampled pair, at most two
/// queries; rounds whose shift leaves the grid query nothing).
pub fn pair_tester<R: Rng + ?Sized>(
    oracle: &mut FunctionOracle<'_, GridPoint>,
    p: &DomainParams,
    rng: &mut R,
    budget: usize,
) -> Verdict {
    let n = p.n();
    for _ in 0..budget {
        let dim = rng.random_range(0..p.d() as usize);
        let gap = 1u64 << rng.random_range(0..p.ell());
        let low: Vec<u64> = (0..p.d()).map(|_| rng.random_range(0..n)).collect();
        if low[dim] + gap >= n {
            continue;
        }
        let mut high = low.clone();
        high[dim] += gap;
        let (low, high) = (GridPoint::new(low), GridPoint::new(high));
        if oracle.query(&low) > oracle.query(&high) {
            return Verdict::Reject;
        }
    }
    Verdict::Accept
}

/// [`pair_tester`] run on lifted hard functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairTester {
    pub domain: DomainParams,
    pub budget: usize,
}

impl PairTester {
    pub fn new(domain: DomainParams, budget: usize) -> Result<Self> {
        if budget == 0 {
            return error::domain("pair tester budget must be at least 1");
        }
        Ok(PairTester { domain, budget })
    }

    /// `constant * (1/eps) * d * log2(n)` rounds.
    pub fn scaled_budget(domain: &DomainParams, epsilon: Epsilon, constant: u64) -> usize {
        (constant * epsilon.denominator() * u64::from(domain.m())) as usize
    }
}

impl Tester for PairTester {
    fn test(&self, f: &HardFunction, rng: &mut rand_chacha::ChaCha8Rng) -> Result<Verdict> {
        let lifted = lift_to_hypergrid(f, &self.domain)?;
        let mut oracle = FunctionOracle::for_lifted(&lifted);
        Ok(pair_tester(&mut oracle, &self.domain, rng, self.budget))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn never_rejects_base() {
        let grid = DomainParams::new(16, 2).unwrap();
        let p = FamilyParams::new(8, Epsilon::from_exponent(3).unwrap()).unwrap();
        let t = PairTester::new(grid, 200).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert_eq!(
                t.test(&HardFunction::base(p), &mut rng).unwrap(),
                Verdict::Accept
            );
        }
    }

    #[test]
    fn query_accounting() {
        let grid = DomainParams::new(8, 2).unwrap();
        let p = FamilyParams::new(6, Epsilon::from_exponent(2).unwrap()).unwrap();
        let lifted = lift_to_hypergrid(&HardFunction::base(p), &grid).unwrap();
        let mut oracle = FunctionOracle::for_lifted(&lifted);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        pair_tester(&mut oracle, &grid, &mut rng, 50);
        assert!(oracle.query_count() <= 100);
        assert_eq!(oracle.query_count() % 2, 0);
    }

    #[test]
    fn scaled_budget_value() {
        let grid = DomainParams::new(16, 2).unwrap();
        assert_eq!(
            PairTester::scaled_budget(&grid, Epsilon::from_exponent(3).unwrap(), 64),
            4096
        );
        assert!(PairTester::new(grid, 0).is_err());
    }

    #[test]
    fn mismatched_domain() {
        let grid = DomainParams::new(4, 2).unwrap();
        let p = FamilyParams::new(8, Epsilon::from_exponent(3).unwrap()).unwrap();
        let t = PairTester::new(grid, 1).unwrap();
        assert!(t
            .test(&HardFunction::base(p), &mut ChaCha8Rng::seed_from_u64(0))
            .is_err());
    }
}
