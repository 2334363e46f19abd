//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use monolab::capture::{
    analyze, captured_set, greedy_capture_adversary, indistinguishable_exact, query_lower_bound,
    QuerySet,
};
use monolab::distance::{distance_to_monotone, violations, FunctionTable};
use monolab::family::{lift_to_hypergrid, support, Epsilon, FamilyParams, HardFunction};
use monolab::grid::{BitPoint, DomainParams};
use monolab::rational::{format_rational, rational, to_f64, Rational};
use monolab::testers::{
    best_distinguisher_exhaustive, derive_non_adaptive, exact_error, monte_carlo_error,
    optimal_for_query_set, random_tree, run_tree, wilson_interval, ComparisonTree, FunctionOracle,
    PairTester, Tester, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn family(m: u32, a: u32) -> FamilyParams {
    FamilyParams::new(m, Epsilon::from_exponent(a).unwrap()).unwrap()
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took < limit {
        Ok(format!("{detail}, {:.2?}", took))
    } else {
        Err(format!("{detail}, but took {took:.2?} (limit {limit:?})"))
    }
}

/// Random query set on `{0,1}^m` of size `size`; about half the points are
/// one-bit flips of earlier points so that captures actually occur.
fn random_points(m: u32, size: usize, rng: &mut ChaCha8Rng) -> Vec<BitPoint> {
    let mut pts: BTreeSet<BitPoint> = BTreeSet::new();
    while pts.len() < size {
        let x = match pts.iter().nth(rng.random_range(0..pts.len().max(1))) {
            Some(y) if rng.random_bool(0.5) => y.flip(rng.random_range(1..=m)),
            _ => BitPoint::new(rng.random_range(0..1u64 << m), m).unwrap(),
        };
        pts.insert(x);
    }
    pts.into_iter().collect()
}

fn farness_certificate() -> Outcome {
    let start = Instant::now();
    let p = family(8, 3);
    let mut count = 0;
    for (g, _) in support(&p).iter().filter(|(g, _)| !g.is_base()) {
        let table = FunctionTable::from_hard(g).unwrap();
        let graph = violations(&table).unwrap();
        let cert = distance_to_monotone(&table).unwrap();
        let endpoints: BTreeSet<u64> = graph.edges().iter().flat_map(|&(u, v)| [u, v]).collect();
        let perfect = graph.edge_count() == 32 && endpoints.len() == 64;
        if !perfect
            || cert.distance != rational(1, 8)
            || cert.cover.len() != 32
            || cert.matching.len() != 32
        {
            return Err(format!(
                "{g}: {} edges, distance {}, cover {}, matching {}",
                graph.edge_count(),
                format_rational(&cert.distance),
                cert.cover.len(),
                cert.matching.len()
            ));
        }
        cert.verify(&table).map_err(|e| format!("{g}: {e}"))?;
        count += 1;
    }
    if count != 24 {
        return Err(format!("expected 24 perturbed functions, found {count}"));
    }
    within(
        start,
        Duration::from_secs(10),
        "24/24 at distance 1/8 with 32-edge matchings".into(),
    )
}

fn monotone_base() -> Outcome {
    let start = Instant::now();
    let grid = DomainParams::new(4, 4).unwrap();
    let base = HardFunction::base(family(grid.m(), 1));
    let table = FunctionTable::from_lifted(&lift_to_hypergrid(&base, &grid).unwrap()).unwrap();
    let edges = violations(&table).unwrap().edge_count();
    // independent pass over every ordered pair
    let mut comparable = 0u64;
    for u in 0..grid.size() {
        for v in 0..grid.size() {
            if u != v && grid.index_leq(u, v) {
                comparable += 1;
                if table.value(u) > table.value(v) {
                    return Err(format!("pair ({u}, {v}) violated"));
                }
            }
        }
    }
    if edges != 0 {
        return Err(format!("{edges} violated pairs"));
    }
    within(
        start,
        Duration::from_secs(10),
        format!("0 violations over {comparable} comparable pairs on [4]^4"),
    )
}

fn capture_count() -> Outcome {
    let start = Instant::now();
    let cube: Vec<BitPoint> = BitPoint::all(4).unwrap().collect();
    let mut sets = 0u64;
    for mask in 0u32..1 << 16 {
        let size = mask.count_ones() as usize;
        if size > 4 {
            continue;
        }
        sets += 1;
        let y: Vec<BitPoint> = (0..16)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| cube[i])
            .collect();
        if size >= 1 && captured_set(&y).unwrap().len() > size - 1 {
            return Err(format!("{y:?} captures too many coordinates"));
        }
    }
    if sets != 2517 {
        return Err(format!("enumerated {sets} sets, expected 2517"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let size = rng.random_range(2..=8);
        let y = random_points(8, size, &mut rng);
        if captured_set(&y).unwrap().len() > size - 1 {
            return Err(format!("{y:?} captures too many coordinates"));
        }
    }
    within(
        start,
        Duration::from_secs(30),
        "2517 exhaustive sets at m=4 and 10^4 random sets at m=8, 0 exceptions".into(),
    )
}

fn capture_soundness() -> Outcome {
    let p = family(8, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut uncaptured_total = 0u64;
    for _ in 0..1000 {
        let size = rng.random_range(1..=20);
        let x = QuerySet::new(8, random_points(8, size, &mut rng)).unwrap();
        let report = analyze(&x, &p).unwrap();
        let exact: BTreeSet<(u32, u64)> = indistinguishable_exact(&x, &p)
            .unwrap()
            .into_iter()
            .collect();
        for j in 1..=p.m_prime() {
            for k in 1..=p.block_count() {
                let captured = report
                    .per_block
                    .iter()
                    .any(|b| b.k == k && b.captured_coords.contains(&j));
                if !captured {
                    uncaptured_total += 1;
                    if !exact.contains(&(j, k)) {
                        return Err(format!(
                            "g_{j}_{k} uncaptured but distinguishable on {}",
                            x.to_text().replace('\n', " ")
                        ));
                    }
                }
            }
        }
    }
    Ok(format!(
        "10^3 query sets, {uncaptured_total} uncaptured pairs all order-identical to the base"
    ))
}

fn error_floor() -> Outcome {
    let eighth = rational(1, 8);
    let p = family(8, 3);
    let threshold = Rational::from_integer(i128::from(p.m_prime()))
        / (rational(8, 1) * p.epsilon().as_rational());
    if threshold != rational(6, 1) {
        return Err(format!(
            "threshold is {}, expected 6",
            format_rational(&threshold)
        ));
    }
    let check = |x: &QuerySet, p: &FamilyParams, origin: &str| -> Result<(), String> {
        let bound = analyze(x, p).unwrap().error_lower_bound;
        let (_, err) = optimal_for_query_set(x, p).unwrap();
        if bound < eighth || err < eighth {
            return Err(format!(
                "{origin}: bound {} error {} on {}",
                format_rational(&bound),
                format_rational(&err),
                x.to_text().replace('\n', " ")
            ));
        }
        Ok(())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut min_err = rational(1, 2);
    for _ in 0..10_000 {
        let size = rng.random_range(0..=5);
        let x = QuerySet::new(8, random_points(8, size, &mut rng)).unwrap();
        check(&x, &p, "random")?;
        min_err = min_err.min(optimal_for_query_set(&x, &p).unwrap().1);
    }
    for t in 0..=5 {
        let x = greedy_capture_adversary(&p, t).unwrap();
        check(&x, &p, "greedy")?;
        min_err = min_err.min(optimal_for_query_set(&x, &p).unwrap().1);
    }
    let mut exhaustive = 0;
    for a in 1..=4 {
        let q = family(4, a);
        for t in 0..=3 {
            let (dist, err) = best_distinguisher_exhaustive(&q, t).unwrap();
            let x = QuerySet::new(4, dist.queries.iter().copied()).unwrap();
            check(&x, &q, "exhaustive")?;
            if err < eighth {
                return Err(format!(
                    "exhaustive m=4 a={a} t={t}: error {}",
                    format_rational(&err)
                ));
            }
            exhaustive += 1;
        }
    }
    Ok(format!(
        "10^4 random + 6 greedy sets at m=8 (min error {}), {exhaustive} exhaustive optima at m=4, all >= 1/8",
        format_rational(&min_err)
    ))
}

fn non_adaptive_dominance() -> Outcome {
    let start = Instant::now();
    let p = family(8, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut strict = 0;
    for i in 0..100 {
        let tree = random_tree(8, 6, 0.15, &mut rng).unwrap();
        let adaptive = exact_error(&tree, &p).unwrap();
        let derived = exact_error(&derive_non_adaptive(&tree, &p).unwrap(), &p).unwrap();
        if derived > adaptive {
            return Err(format!(
                "tree {i}: derived error {} exceeds tree error {}",
                format_rational(&derived),
                format_rational(&adaptive)
            ));
        }
        if derived < adaptive {
            strict += 1;
        }
    }
    within(
        start,
        Duration::from_secs(60),
        format!("100 trees, 0 exceptions ({strict} strictly improved)"),
    )
}

/// A random strictly increasing map on `[lo, hi]`, extended linearly outside.
fn random_increasing_map(lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> impl Fn(i64) -> i64 {
    let mut table = Vec::with_capacity((hi - lo + 1) as usize);
    let mut acc = rng.random_range(-1_000_000i64..1_000_000);
    for _ in lo..=hi {
        acc += rng.random_range(1..1000);
        table.push(acc);
    }
    move |v| {
        if v < lo {
            table[0] - (lo - v)
        } else if v > hi {
            table[table.len() - 1] + (v - hi)
        } else {
            table[(v - lo) as usize]
        }
    }
}

fn comparison_contract() -> Outcome {
    let p = family(8, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trees: Vec<ComparisonTree> = (0..10)
        .map(|_| random_tree(8, 6, 0.1, &mut rng).unwrap())
        .collect();
    let mut runs = 0;
    for _ in 0..20 {
        let map = random_increasing_map(-2, 1 << 10, &mut rng);
        for tree in &trees {
            for (f, _) in support(&p).iter() {
                let (v1, t1) = run_tree(tree, &mut FunctionOracle::for_hard(f)).unwrap();
                let (v2, t2) = run_tree(
                    tree,
                    &mut FunctionOracle::new(|x: &BitPoint| map(f.evaluate(x))),
                )
                .unwrap();
                let points1: Vec<BitPoint> = t1.entries.iter().map(|e| e.0).collect();
                let points2: Vec<BitPoint> = t2.entries.iter().map(|e| e.0).collect();
                if v1 != v2 || t1.branches != t2.branches || points1 != points2 {
                    return Err(format!("{f}: run changed under an increasing map"));
                }
                runs += 1;
            }
        }
    }
    Ok(format!(
        "20 maps x 10 trees x 25 functions = {runs} runs unchanged"
    ))
}

fn pair_tester_gap() -> Outcome {
    let grid = DomainParams::new(16, 2).unwrap();
    let p = family(8, 3);
    let budget = PairTester::scaled_budget(&grid, p.epsilon(), 64);
    if budget != 4096 {
        return Err(format!("budget {budget}, expected 4096"));
    }
    let tester = PairTester::new(grid, budget).unwrap();
    let functions: Vec<HardFunction> = support(&p).iter().map(|(f, _)| *f).collect();
    let trials = 1000u64;
    let rejections: Vec<u64> = std::thread::scope(|s| {
        let handles: Vec<_> = functions
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let tester = &tester;
                s.spawn(move || {
                    (0..trials)
                        .filter(|&t| {
                            let mut rng = ChaCha8Rng::seed_from_u64(8);
                            rng.set_stream(((i as u64) << 32) | t);
                            tester.test(f, &mut rng).unwrap() == Verdict::Reject
                        })
                        .count() as u64
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    if rejections[0] != 0 {
        return Err(format!(
            "base rejected in {} of {trials} trials",
            rejections[0]
        ));
    }
    let (worst_index, &worst) = rejections
        .iter()
        .enumerate()
        .skip(1)
        .min_by_key(|&(_, r)| *r)
        .unwrap();
    let (ci_low, ci_high) = wilson_interval(worst, trials);
    if (worst as f64) / (trials as f64) < 2.0 / 3.0 {
        return Err(format!(
            "{} rejected in only {worst}/{trials} trials (CI {ci_low:.3}..{ci_high:.3})",
            functions[worst_index]
        ));
    }
    let bound = query_lower_bound(1 << 10, 10, Epsilon::from_exponent(3).unwrap()).unwrap();
    if bound.display_bound != rational(97, 1) || bound.threshold != rational(98, 1) {
        return Err(format!(
            "bound reports {} / {}, expected 97 / 98",
            format_rational(&bound.display_bound),
            format_rational(&bound.threshold)
        ));
    }
    Ok(format!(
        "base accepted {trials}/{trials}; weakest rejection {worst}/{trials} for {} (CI {ci_low:.3}..{ci_high:.3}); bound 97 / 98",
        functions[worst_index]
    ))
}

fn monte_carlo_agreement() -> Outcome {
    let p = family(8, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut hits = 0;
    for i in 0..20u64 {
        let tree = random_tree(8, 6, 0.15, &mut rng).unwrap();
        let exact = exact_error(&tree, &p).unwrap();
        let est = monte_carlo_error(&tree, &p, 10_000, 1000 + i).unwrap();
        if est.contains(to_f64(&exact)) {
            hits += 1;
        }
    }
    if hits >= 18 {
        Ok(format!("{hits}/20 intervals contain the exact error"))
    } else {
        Err(format!("only {hits}/20 intervals contain the exact error"))
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 farness certificate (m=8, eps=1/8)", farness_certificate),
        ("2 lifted base is monotone on [4]^4", monotone_base),
        ("3 capture count |C(Y)| <= |Y|-1", capture_count),
        (
            "4 uncaptured pairs are indistinguishable",
            capture_soundness,
        ),
        ("5 error floor 1/8 below the threshold", error_floor),
        (
            "6 non-adaptive reduction never hurts",
            non_adaptive_dominance,
        ),
        (
            "7 transcripts invariant under increasing maps",
            comparison_contract,
        ),
        (
            "8 pair tester upper bound vs query lower bound",
            pair_tester_gap,
        ),
        (
            "9 Monte Carlo intervals cover exact error",
            monte_carlo_agreement,
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
