//! Capture analysis of query sets against the hard distribution.
//!
//! A pair of points captures the highest coordinate at which they differ.
//! If a non-adaptive comparison-based distinguisher querying `X` tells the
//! base function apart from `g_{j,k}`, some pair inside `X ∩ S_k` captures
//! `j`. Counting the `(j, k)` left uncaptured therefore bounds the error of
//! every distinguisher that queries `X`.

use crate::error::{capacity, domain, Error, Result};
use crate::family::{block_index, FamilyParams, HardFunction};
use crate::grid::BitPoint;
use crate::rational::{rational, Rational};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Most `(j, k)` pairs examined by [`indistinguishable_exact`].
pub const MAX_EXACT_PAIRS: u64 = 1 << 20;

/// Largest `m` for which [`greedy_capture_adversary`] scans all points.
pub const MAX_ADVERSARY_BITS: u32 = 16;

/// A deduplicated set of queried points, kept in increasing `val` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuerySet {
    m: u32,
    points: Vec<BitPoint>,
}

impl QuerySet {
    pub fn new(m: u32, points: impl IntoIterator<Item = BitPoint>) -> Result<Self> {
        let mut points: Vec<BitPoint> = points.into_iter().collect();
        if let Some(x) = points.iter().find(|x| x.len() != m) {
            return domain(format!("point {x} has {} bits, expected m = {m}", x.len()));
        }
        points.sort();
        points.dedup();
        Ok(QuerySet { m, points })
    }

    pub fn empty(m: u32) -> Self {
        QuerySet {
            m,
            points: Vec::new(),
        }
    }

    /// Newline-separated bitstrings; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, m: u32) -> Result<Self> {
        let points = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse::<BitPoint>)
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, points)
    }

    pub fn to_text(&self) -> String {
        self.points.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn points(&self) -> &[BitPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with(&self, x: BitPoint) -> Result<Self> {
        Self::new(self.m, self.points.iter().copied().chain([x]))
    }
}

/// The largest (1-based) coordinate at which `x` and `y` differ.
pub fn capture_coordinate(x: &BitPoint, y: &BitPoint) -> Result<u32> {
    if x.len() != y.len() {
        return domain(format!("length mismatch: {} vs {}", x.len(), y.len()));
    }
    let diff = x.word() ^ y.word();
    if diff == 0 {
        return domain(format!("point {x} captures nothing with itself"));
    }
    Ok(64 - diff.leading_zeros())
}

/// Coordinates captured by some pair of `points`.
pub fn captured_set(points: &[BitPoint]) -> Result<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if x != y {
                out.insert(capture_coordinate(x, y)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockCapture {
    pub k: u64,
    pub queries_in_block: usize,
    pub captured_coords: Vec<u32>,
}

/// Per-block capture summary; blocks with no queries are omitted from
/// `per_block` but counted in `indistinguishable_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaptureReport {
    pub m: u32,
    pub epsilon: crate::family::Epsilon,
    pub m_prime: u32,
    pub block_count: u64,
    pub query_count: usize,
    pub per_block: Vec<BlockCapture>,
    pub indistinguishable_count: u64,
    #[serde(with = "crate::rational::as_string")]
    pub error_lower_bound: Rational,
}

pub fn analyze(x: &QuerySet, p: &FamilyParams) -> Result<CaptureReport> {
    if x.m() != p.m() {
        return domain(format!(
            "query set has m = {}, family has m = {}",
            x.m(),
            p.m()
        ));
    }
    let mut blocks: BTreeMap<u64, Vec<BitPoint>> = BTreeMap::new();
    for pt in x.points() {
        blocks.entry(block_index(pt, p)).or_default().push(*pt);
    }
    let m_prime = p.m_prime();
    let mut per_block = Vec::with_capacity(blocks.len());
    let mut captured_total = 0u64;
    for (k, pts) in blocks {
        let captured: Vec<u32> = captured_set(&pts)?
            .into_iter()
            .filter(|&j| j <= m_prime)
            .collect();
        captured_total += captured.len() as u64;
        per_block.push(BlockCapture {
            k,
            queries_in_block: pts.len(),
            captured_coords: captured,
        });
    }
    let indistinguishable = u64::from(m_prime) * p.block_count() - captured_total;
    let bound = (p.perturbed_mass() * Rational::from_integer(indistinguishable as i128))
        .min(rational(1, 2));
    Ok(CaptureReport {
        m: p.m(),
        epsilon: p.epsilon(),
        m_prime,
        block_count: p.block_count(),
        query_count: x.len(),
        per_block,
        indistinguishable_count: indistinguishable,
        error_lower_bound: bound,
    })
}

/// The `(j, k)` for which `g_{j,k}` orders `X` exactly as the base function does.
pub fn indistinguishable_exact(x: &QuerySet, p: &FamilyParams) -> Result<Vec<(u32, u64)>> {
    if x.m() != p.m() {
        return domain(format!(
            "query set has m = {}, family has m = {}",
            x.m(),
            p.m()
        ));
    }
    capacity(
        "perturbed functions to check",
        u64::from(p.m_prime()) * p.block_count(),
        MAX_EXACT_PAIRS,
    )?;
    let mut out = Vec::new();
    for j in 1..=p.m_prime() {
        for k in 1..=p.block_count() {
            let g = HardFunction::perturbed(*p, j, k)?;
            // points are sorted by val, so order agreement means g is increasing along them
            let same = x
                .points()
                .windows(2)
                .all(|w| g.evaluate(&w[0]) < g.evaluate(&w[1]));
            if same {
                out.push((j, k));
            }
        }
    }
    Ok(out)
}

/// Builds a query set of size `t` greedily, each step adding the point that
/// captures the most new in-block coordinates (ties to the smallest `val`).
pub fn greedy_capture_adversary(p: &FamilyParams, t: usize) -> Result<QuerySet> {
    capacity(
        "m for adversary scan",
        u64::from(p.m()),
        u64::from(MAX_ADVERSARY_BITS),
    )?;
    let size = 1u64 << p.m();
    if t as u64 > size {
        return Err(Error::Domain(format!(
            "cannot pick {t} distinct points from {size}"
        )));
    }
    let mut set = QuerySet::empty(p.m());
    let mut captured = 0u64;
    for _ in 0..t {
        let mut best: Option<(u64, BitPoint)> = None;
        for x in BitPoint::all(p.m())? {
            if set.points().binary_search(&x).is_ok() {
                continue;
            }
            let count = total_captured(&set.with(x)?, p)?;
            if best.is_none_or(|(c, _)| count > c) {
                best = Some((count, x));
            }
        }
        let (count, x) = best.expect("domain has a free point");
        captured = count;
        set = set.with(x)?;
    }
    debug_assert_eq!(captured, total_captured(&set, p)?);
    Ok(set)
}

fn total_captured(x: &QuerySet, p: &FamilyParams) -> Result<u64> {
    let report = analyze(x, p)?;
    Ok(u64::from(p.m_prime()) * p.block_count() - report.indistinguishable_count)
}

/// Query-count lower bounds for `[n]^d` at proximity `eps`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QueryBound {
    pub n: u64,
    pub d: u32,
    pub epsilon: crate::family::Epsilon,
    pub m: u32,
    pub m_prime: u32,
    /// `(d log2 n - log2(1/eps)) / (8 eps)`.
    #[serde(with = "crate::rational::as_string")]
    pub display_bound: Rational,
    /// `m' / (8 eps)`, the query count below which the error is at least 1/8.
    #[serde(with = "crate::rational::as_string")]
    pub threshold: Rational,
    /// `threshold - display_bound`, always `1/(8 eps)`.
    #[serde(with = "crate::rational::as_string")]
    pub gap: Rational,
}

pub fn query_lower_bound(n: u64, d: u32, epsilon: crate::family::Epsilon) -> Result<QueryBound> {
    if n < 2 || !n.is_power_of_two() {
        return domain(format!(
            "side length n = {n} must be a power of two and at least 2"
        ));
    }
    if d == 0 {
        return domain("dimension d must be positive");
    }
    let m = u64::from(d) * u64::from(n.trailing_zeros());
    let m = u32::try_from(m).map_err(|_| Error::Domain(format!("d log2 n = {m} is too large")))?;
    let p = FamilyParams::new(m, epsilon)?;
    let inv_eight_eps = rational(1i128 << epsilon.exponent(), 8);
    let display =
        Rational::from_integer(i128::from(m) - i128::from(epsilon.exponent())) * inv_eight_eps;
    let threshold = Rational::from_integer(i128::from(p.m_prime())) * inv_eight_eps;
    Ok(QueryBound {
        n,
        d,
        epsilon,
        m,
        m_prime: p.m_prime(),
        display_bound: display,
        threshold,
        gap: threshold - display,
    })
}
