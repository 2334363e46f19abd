//! Comparison trees and the reduction to non-adaptive distinguishers.
//!
//! A node reached after `s` queries has `s + 1` children, indexed by the rank
//! of the newly returned value among the `s` values already seen on the path.

use super::{order_pattern, rank_among, FunctionOracle, Verdict};
use crate::error::{domain, Error, Result};
use crate::family::FamilyParams;
use crate::grid::BitPoint;
use rand::Rng;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComparisonTree {
    Query {
        query: BitPoint,
        children: Vec<ComparisonTree>,
    },
    Leaf {
        verdict: Verdict,
    },
}

impl ComparisonTree {
    pub fn leaf(verdict: Verdict) -> Self {
        ComparisonTree::Leaf { verdict }
    }

    /// Longest root-to-leaf query count.
    pub fn depth(&self) -> usize {
        match self {
            ComparisonTree::Leaf { .. } => 0,
            ComparisonTree::Query { children, .. } => {
                1 + children.iter().map(|c| c.depth()).max().unwrap_or(0)
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            ComparisonTree::Leaf { .. } => 1,
            ComparisonTree::Query { children, .. } => {
                1 + children.iter().map(|c| c.node_count()).sum::<usize>()
            }
        }
    }

    /// Checks the shape invariants: `s + 1` children at depth `s`, no point
    /// repeated on a path, every point with `m` bits, depth within `budget`.
    pub fn validate(&self, m: u32, budget: Option<usize>) -> Result<()> {
        fn walk(t: &ComparisonTree, m: u32, path: &mut Vec<BitPoint>) -> Result<()> {
            let ComparisonTree::Query { query, children } = t else {
                return Ok(());
            };
            if query.len() != m {
                return domain(format!(
                    "tree point {query} has {} bits, expected {m}",
                    query.len()
                ));
            }
            if path.contains(query) {
                return Err(Error::Contract(format!(
                    "point {query} repeats on a root-to-leaf path"
                )));
            }
            if children.len() != path.len() + 1 {
                return Err(Error::Contract(format!(
                    "node querying {query} at depth {} has {} children, expected {}",
                    path.len(),
                    children.len(),
                    path.len() + 1
                )));
            }
            path.push(*query);
            for c in children {
                walk(c, m, path)?;
            }
            path.pop();
            Ok(())
        }
        walk(self, m, &mut Vec::new())?;
        if let Some(b) = budget {
            if self.depth() > b {
                return Err(Error::Contract(format!(
                    "tree depth {} exceeds budget {b}",
                    self.depth()
                )));
            }
        }
        Ok(())
    }

    /// Replaces every node at depth `depth` by a leaf with `verdict`.
    pub fn truncate(&self, depth: usize, verdict: Verdict) -> ComparisonTree {
        match self {
            ComparisonTree::Leaf { .. } => self.clone(),
            ComparisonTree::Query { .. } if depth == 0 => ComparisonTree::leaf(verdict),
            ComparisonTree::Query { query, children } => ComparisonTree::Query {
                query: *query,
                children: children
                    .iter()
                    .map(|c| c.truncate(depth - 1, verdict))
                    .collect(),
            },
        }
    }
}

/// The queries made by one run, with the branch taken after each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transcript {
    pub entries: Vec<(BitPoint, i64)>,
    pub branches: Vec<usize>,
}

impl Serialize for Transcript {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

/// Walks `tree` against `oracle`.
///
/// Errors if two distinct points return the same value, or if the tree is
/// malformed along the path taken.
pub fn run_tree(
    tree: &ComparisonTree,
    oracle: &mut FunctionOracle<'_, BitPoint>,
) -> Result<(Verdict, Transcript)> {
    let mut transcript = Transcript::default();
    let mut seen: Vec<i64> = Vec::new();
    let mut node = tree;
    loop {
        match node {
            ComparisonTree::Leaf { verdict } => return Ok((*verdict, transcript)),
            ComparisonTree::Query { query, children } => {
                if transcript.entries.iter().any(|(p, _)| p == query) {
                    return Err(Error::Contract(format!(
                        "point {query} queried twice on one path"
                    )));
                }
                let value = oracle.query(query);
                if let Some((p, _)) = transcript.entries.iter().find(|(_, v)| *v == value) {
                    return Err(Error::Contract(format!(
                        "points {p} and {query} share the value {value}; values must be distinct"
                    )));
                }
                let rank = rank_among(&seen, value);
                let Some(child) = children.get(rank) else {
                    return Err(Error::Contract(format!(
                        "node querying {query} has no child for rank {rank}"
                    )));
                };
                seen.push(value);
                transcript.entries.push((*query, value));
                transcript.branches.push(rank);
                node = child;
            }
        }
    }
}

/// A distinguisher that queries a fixed list and accepts only when the
/// observed order equals the base order (then returning `leaf_verdict`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NonAdaptiveDistinguisher {
    pub queries: Vec<BitPoint>,
    /// Rank of each query under the base function.
    pub expected_pattern: Vec<usize>,
    pub leaf_verdict: Verdict,
}

impl NonAdaptiveDistinguisher {
    /// Verdict from values observed at `queries`, in order.
    pub fn decide_from_values(&self, values: &[i64]) -> Verdict {
        if order_pattern(values) == self.expected_pattern {
            self.leaf_verdict
        } else {
            Verdict::Reject
        }
    }

    pub fn run(&self, oracle: &mut FunctionOracle<'_, BitPoint>) -> Verdict {
        let values: Vec<i64> = self.queries.iter().map(|q| oracle.query(q)).collect();
        self.decide_from_values(&values)
    }
}

/// Follows the unique path on which every answer agrees with the base
/// order and keeps that path's queries and leaf.
pub fn derive_non_adaptive(
    tree: &ComparisonTree,
    p: &FamilyParams,
) -> Result<NonAdaptiveDistinguisher> {
    let mut queries: Vec<BitPoint> = Vec::new();
    let mut node = tree;
    loop {
        match node {
            ComparisonTree::Leaf { verdict } => {
                let vals: Vec<i64> = queries.iter().map(|q| q.word() as i64).collect();
                return Ok(NonAdaptiveDistinguisher {
                    expected_pattern: order_pattern(&vals),
                    queries,
                    leaf_verdict: *verdict,
                });
            }
            ComparisonTree::Query { query, children } => {
                p.check_point(query)?;
                if queries.contains(query) {
                    return Err(Error::Contract(format!(
                        "point {query} queried twice on one path"
                    )));
                }
                let rank = queries.iter().filter(|q| q.word() < query.word()).count();
                let Some(child) = children.get(rank) else {
                    return Err(Error::Contract(format!(
                        "node querying {query} has no child for rank {rank}"
                    )));
                };
                queries.push(*query);
                node = child;
            }
        }
    }
}

/// A random well-formed tree of depth at most `max_depth` over `{0,1}^m`.
///
/// Internal nodes below the root stop early with probability `leaf_prob`.
/// Half of the queried points are one-bit flips of a point already on the
/// path, so that the trees exercise captured pairs.
pub fn random_tree<R: Rng + ?Sized>(
    m: u32,
    max_depth: usize,
    leaf_prob: f64,
    rng: &mut R,
) -> Result<ComparisonTree> {
    let size = 1u64 << m;
    if max_depth as u64 > size {
        return domain(format!(
            "depth {max_depth} exceeds the {size} available points"
        ));
    }
    fn build<R: Rng + ?Sized>(
        m: u32,
        max_depth: usize,
        leaf_prob: f64,
        path: &mut Vec<BitPoint>,
        rng: &mut R,
    ) -> ComparisonTree {
        let depth = path.len();
        if depth == max_depth || (depth > 0 && rng.random_bool(leaf_prob)) {
            let verdict = if rng.random_bool(0.5) {
                Verdict::Accept
            } else {
                Verdict::Reject
            };
            return ComparisonTree::leaf(verdict);
        }
        let point = loop {
            let candidate = if !path.is_empty() && rng.random_bool(0.5) {
                let base = path[rng.random_range(0..path.len())];
                base.flip(rng.random_range(1..=m))
            } else {
                BitPoint::from_word_unchecked(rng.random_range(0..1u64 << m), m)
            };
            if !path.contains(&candidate) {
                break candidate;
            }
        };
        path.push(point);
        let children = (0..=depth)
            .map(|_| build(m, max_depth, leaf_prob, path, rng))
            .collect();
        path.pop();
        ComparisonTree::Query {
            query: point,
            children,
        }
    }
    Ok(build(m, max_depth, leaf_prob, &mut Vec::new(), rng))
}
