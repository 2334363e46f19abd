//! Cross-checks of the exact distance against independent computations.
//!
//! Violated pairs form a strict partial order (they are transitive), so a
//! minimum vertex cover of the violation graph has the size of a maximum
//! matching in its bipartite split. That gives a polynomial oracle. For
//! tiny cubes we also enumerate every monotone relabeling directly.

use monolab::distance::{distance_to_monotone, repair, violations, FunctionTable};
use monolab::family::{support, Epsilon, FamilyParams};
use monolab::grid::{grid_leq, DomainParams};
use monolab::rational::Rational;
use proptest::prelude::*;

/// All violated pairs, by comparing every pair of points.
fn violated_pairs(f: &FunctionTable) -> Vec<(usize, usize)> {
    let p = f.domain();
    let n = p.size();
    let pts: Vec<_> = (0..n).map(|i| p.point_at(i)).collect();
    let mut out = Vec::new();
    for u in 0..n as usize {
        for v in 0..n as usize {
            if u != v && grid_leq(&pts[u], &pts[v]).unwrap() && f.values()[u] > f.values()[v] {
                out.push((u, v));
            }
        }
    }
    out
}

/// Kuhn's augmenting-path matching between lower and upper endpoints.
fn bipartite_matching(n: usize, pairs: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u].push(v);
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    (0..n)
        .filter(|&u| augment(u, &adj, &mut vec![false; n], &mut owner))
        .count()
}

fn is_monotone(p: &DomainParams, values: &[i64]) -> bool {
    (0..p.size()).all(|u| {
        (0..p.size()).all(|v| !p.index_leq(u, v) || values[u as usize] <= values[v as usize])
    })
}

/// Fewest changed points over all monotone functions taking values among `f`'s.
fn brute_force_changes(f: &FunctionTable) -> u64 {
    let p = f.domain();
    let mut palette: Vec<i64> = f.values().to_vec();
    palette.sort();
    palette.dedup();
    let n = p.size() as usize;
    let mut digits = vec![0usize; n];
    let mut best = n as u64;
    loop {
        let g: Vec<i64> = digits.iter().map(|&i| palette[i]).collect();
        if is_monotone(p, &g) {
            best = best.min(g.iter().zip(f.values()).filter(|(a, b)| a != b).count() as u64);
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            digits[i] += 1;
            if digits[i] < palette.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn check_against_oracles(f: &FunctionTable) {
    let cert = distance_to_monotone(f).unwrap();
    let pairs = violated_pairs(f);
    let mut fast: Vec<(usize, usize)> = violations(f)
        .unwrap()
        .edges()
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .collect();
    fast.sort();
    let mut slow = pairs.clone();
    slow.sort();
    assert_eq!(fast, slow, "violation edges differ");

    let matched = bipartite_matching(f.size() as usize, &pairs) as u64;
    assert_eq!(
        cert.cover.len() as u64,
        matched,
        "cover size against bipartite matching"
    );
    assert_eq!(
        cert.distance,
        Rational::new(matched as i128, f.size() as i128)
    );
    assert!(cert.matching.len() <= cert.cover.len());
    cert.verify(f).unwrap();
    let fixed = repair(f, &cert.cover).unwrap();
    assert!(is_monotone(f.domain(), fixed.values()));
    assert_eq!(f.hamming(&fixed).unwrap(), matched);
}

#[test]
fn hard_family_against_bipartite_oracle() {
    for m in 1..=8 {
        for a in 1..=m.min(4) {
            let p = FamilyParams::new(m, Epsilon::from_exponent(a).unwrap()).unwrap();
            for (h, _) in support(&p).iter() {
                check_against_oracles(&FunctionTable::from_hard(h).unwrap());
            }
        }
    }
}

#[test]
fn negated_rank_is_maximally_far() {
    let domain = DomainParams::hypercube(4).unwrap();
    let f = FunctionTable::from_fn(domain, |x| -(x as i64)).unwrap();
    check_against_oracles(&f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tables_on_cubes(m in 1u32..=6, values in proptest::collection::vec(-8i64..8, 64)) {
        let domain = DomainParams::hypercube(m).unwrap();
        check_against_oracles(&FunctionTable::new(domain, values[..1usize << m].to_vec()).unwrap());
    }

    #[test]
    fn random_tables_on_grids(ell in 1u32..=3, d in 1u32..=2, values in proptest::collection::vec(-8i64..8, 64)) {
        let domain = DomainParams::new(1 << ell, d).unwrap();
        check_against_oracles(&FunctionTable::new(domain, values[..domain.size() as usize].to_vec()).unwrap());
    }

    #[test]
    fn exact_distance_matches_relabeling_search(m in 1u32..=3, values in proptest::collection::vec(-2i64..2, 8)) {
        let domain = DomainParams::hypercube(m).unwrap();
        let f = FunctionTable::new(domain, values[..1usize << m].to_vec()).unwrap();
        let cert = distance_to_monotone(&f).unwrap();
        prop_assert_eq!(cert.cover.len() as u64, brute_force_changes(&f));
    }
}
