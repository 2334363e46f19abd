//! Exact distance to monotonicity on small hypercubes and hypergrids.
//!
//! The points where `f` must change form a vertex cover of the violation
//! graph (an untouched violated pair stays violated), and [`repair`] turns
//! any vertex cover into a monotone function agreeing with `f` elsewhere.
//! So the distance is the minimum vertex cover size over the domain size.
//! A matching of violated pairs certifies the lower bound.
//!
//! Points are addressed by their packed index `val(phi(y))`; increasing index
//! is a linear extension of the product order on both domains.

pub mod cover;
pub mod matching;

use crate::error::{capacity, domain, Error, Result};
use crate::family::{FunctionKind, HardFunction, LiftedFunction};
use crate::grid::{phi_inverse, BitPoint, DomainParams, GridPoint};
use crate::rational::{format_rational, parse_rational, rational, Rational};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// Largest domain for which violation graphs are built.
pub const MAX_VIOLATION_DOMAIN: u64 = 1 << 16;

/// Largest domain for which explicit tables are built.
pub const MAX_TABLE_DOMAIN: u64 = 1 << 24;

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

/// A function materialized on every point of a hypercube or hypergrid.
///
/// A domain with `n = 2` is the hypercube and is labelled with bitstrings;
/// otherwise points are labelled with comma-separated coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    domain: DomainParams,
    values: Vec<i64>,
}

impl FunctionTable {
    pub fn new(domain: DomainParams, values: Vec<i64>) -> Result<Self> {
        if values.len() as u64 != domain.size() {
            return Err(Error::Domain(format!(
                "table has {} values, domain has {} points",
                values.len(),
                domain.size()
            )));
        }
        Ok(FunctionTable { domain, values })
    }

    /// Tabulates `f` over packed indices `0..size`.
    pub fn from_fn(domain: DomainParams, f: impl Fn(u64) -> i64) -> Result<Self> {
        capacity("table domain size", domain.size(), MAX_TABLE_DOMAIN)?;
        Ok(FunctionTable {
            domain,
            values: (0..domain.size()).map(f).collect(),
        })
    }

    /// Table of a hard function on its hypercube.
    pub fn from_hard(h: &HardFunction) -> Result<Self> {
        h.params().check_explicit()?;
        let cube = DomainParams::hypercube(h.params().m())?;
        Self::from_fn(cube, |w| h.evaluate_word(w))
    }

    pub fn from_lifted(f: &LiftedFunction) -> Result<Self> {
        Self::from_fn(*f.domain(), |i| f.evaluate_index(i))
    }

    pub fn domain(&self) -> &DomainParams {
        &self.domain
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, index: u64) -> i64 {
        self.values[index as usize]
    }

    pub fn size(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn label(&self, index: u64) -> String {
        label(&self.domain, index)
    }

    pub fn parse_label(&self, s: &str) -> Result<u64> {
        parse_label(&self.domain, s)
    }

    /// Number of points where two tables over the same domain differ.
    pub fn hamming(&self, other: &FunctionTable) -> Result<u64> {
        if self.domain != other.domain {
            return domain("tables live on different domains");
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count() as u64)
    }

    pub fn is_monotone(&self) -> Result<bool> {
        Ok(violations(self)?.is_empty())
    }

    /// Writes `bitstring,value` (hypercube) or `gridpoint,value` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let head = if self.domain.is_hypercube() {
            "bitstring"
        } else {
            "gridpoint"
        };
        let io = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
        w.write_record([head, "value"]).map_err(io)?;
        for (i, v) in self.values.iter().enumerate() {
            w.write_record([self.label(i as u64), v.to_string()])
                .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Parse(format!("csv write failed: {e}")))?;
        Ok(())
    }

    /// Reads a table written by [`FunctionTable::write_csv`]; rows may come in any order
    /// but every domain point must appear exactly once.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let headers = r
            .headers()
            .map_err(|e| Error::Parse(format!("csv header: {e}")))?
            .clone();
        let cube = match headers.get(0) {
            Some("bitstring") => true,
            Some("gridpoint") => false,
            other => {
                return Err(Error::Parse(format!(
                    "first column must be `bitstring` or `gridpoint`, found {other:?}"
                )))
            }
        };
        let mut rows: Vec<(String, i64)> = Vec::new();
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse(format!("csv row {}: {e}", line + 2)))?;
            if rec.len() != 2 {
                return Err(Error::Parse(format!(
                    "csv row {} has {} fields",
                    line + 2,
                    rec.len()
                )));
            }
            let value: i64 = rec[1].parse().map_err(|_| {
                Error::Parse(format!("csv row {}: bad value {:?}", line + 2, &rec[1]))
            })?;
            rows.push((rec[0].to_string(), value));
        }
        if rows.is_empty() {
            return Err(Error::Parse("table has no rows".into()));
        }
        let domain = if cube {
            let m = rows[0].0.len() as u32;
            DomainParams::hypercube(m)?
        } else {
            let pts = rows
                .iter()
                .map(|(s, _)| s.parse::<GridPoint>())
                .collect::<Result<Vec<_>>>()?;
            let d = pts[0].dim() as u32;
            let max = pts
                .iter()
                .flat_map(|p| p.coords().iter().copied())
                .max()
                .unwrap_or(0);
            DomainParams::new((max + 1).next_power_of_two().max(2), d)?
        };
        if rows.len() as u64 != domain.size() {
            return Err(Error::Parse(format!(
                "table has {} rows, domain [{}]^{} has {} points",
                rows.len(),
                domain.n(),
                domain.d(),
                domain.size()
            )));
        }
        let mut values = vec![None; rows.len()];
        for (s, v) in rows {
            let idx = parse_label(&domain, &s)? as usize;
            if values[idx].replace(v).is_some() {
                return Err(Error::Parse(format!("point {s} appears twice")));
            }
        }
        Ok(FunctionTable {
            domain,
            values: values.into_iter().map(|v| v.unwrap()).collect(),
        })
    }
}

pub fn label(domain: &DomainParams, index: u64) -> String {
    if domain.is_hypercube() {
        BitPoint::from_word_unchecked(index, domain.m()).to_string()
    } else {
        domain.point_at(index).to_string()
    }
}

pub fn parse_label(domain: &DomainParams, s: &str) -> Result<u64> {
    if domain.is_hypercube() {
        let x: BitPoint = s.parse()?;
        if x.len() != domain.m() {
            return Err(Error::Parse(format!(
                "point {s} has {} bits, expected {}",
                x.len(),
                domain.m()
            )));
        }
        Ok(x.word())
    } else {
        s.parse::<GridPoint>()?.index(domain)
    }
}

/// Comparable pairs `u < v` (product order) with `f(u) > f(v)`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationGraph {
    domain: DomainParams,
    edges: Vec<(u64, u64)>,
}

impl ViolationGraph {
    pub fn domain(&self) -> &DomainParams {
        &self.domain
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoints of at least one violation, sorted.
    pub fn vertices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn labelled_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (label(&self.domain, a), label(&self.domain, b)))
            .collect()
    }

    fn usize_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&(a, b)| (a as usize, b as usize))
            .collect()
    }

    /// Exact minimum vertex cover, as sorted packed indices.
    pub fn min_vertex_cover(&self) -> Result<Vec<u64>> {
        let cover = cover::minimum_vertex_cover(self.domain.size() as usize, &self.usize_edges())?;
        Ok(cover.into_iter().map(|v| v as u64).collect())
    }

    /// Maximum matching of violated pairs.
    pub fn maximum_matching(&self) -> Result<Vec<(u64, u64)>> {
        let m = matching::maximum_matching(self.domain.size() as usize, &self.usize_edges())?;
        Ok(m.into_iter().map(|(a, b)| (a as u64, b as u64)).collect())
    }

    pub fn is_covered_by(&self, cover: &[u64]) -> bool {
        let mut mark = vec![false; self.domain.size() as usize];
        for &c in cover {
            if c < self.domain.size() {
                mark[c as usize] = true;
            }
        }
        self.edges
            .iter()
            .all(|&(a, b)| mark[a as usize] || mark[b as usize])
    }
}

/// Calls `visit` on every `v != u` with `u <= v` in the product order, in increasing index order.
pub fn for_each_strict_successor(domain: &DomainParams, u: u64, mut visit: impl FnMut(u64)) {
    let size = domain.size();
    if domain.is_hypercube() {
        let mut v = u;
        loop {
            v = (v + 1) | u;
            if v >= size {
                return;
            }
            visit(v);
        }
    }
    // odometer over coordinates, lowest coordinate fastest
    let d = domain.d() as usize;
    let ell = domain.ell();
    let lower: Vec<u64> = (0..d as u32).map(|i| domain.coord_of_index(u, i)).collect();
    let mut cur = lower.clone();
    loop {
        let mut i = 0;
        loop {
            if i == d {
                return;
            }
            if cur[i] + 1 < domain.n() {
                cur[i] += 1;
                break;
            }
            cur[i] = lower[i];
            i += 1;
        }
        let v = cur
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c << (i as u32 * ell)));
        visit(v);
    }
}

pub fn violations(f: &FunctionTable) -> Result<ViolationGraph> {
    capacity(
        "violation graph domain size",
        f.size(),
        MAX_VIOLATION_DOMAIN,
    )?;
    let mut edges = Vec::new();
    for u in 0..f.size() {
        let fu = f.value(u);
        for_each_strict_successor(&f.domain, u, |v| {
            if fu > f.value(v) {
                edges.push((u, v));
            }
        });
    }
    Ok(ViolationGraph {
        domain: f.domain,
        edges,
    })
}

/// Rewrites `f` on `cover` so that the result is monotone.
///
/// Cover points are visited in increasing index order and receive the
/// largest value among their immediate predecessors, or the minimum of `f`
/// when they have none. Points outside the cover keep their values.
pub fn repair(f: &FunctionTable, cover: &[u64]) -> Result<FunctionTable> {
    let graph = violations(f)?;
    if let Some(&c) = cover.iter().find(|&&c| c >= f.size()) {
        return domain(format!("cover point {c} is outside the domain"));
    }
    if !graph.is_covered_by(cover) {
        return Err(Error::Contract(
            "repair needs a vertex cover of the violation graph".into(),
        ));
    }
    let floor = f.values.iter().copied().min().unwrap_or(0);
    let mut in_cover = vec![false; f.values.len()];
    for &c in cover {
        in_cover[c as usize] = true;
    }
    let ell = f.domain.ell();
    let mut values = f.values.clone();
    for x in 0..f.size() {
        if !in_cover[x as usize] {
            continue;
        }
        values[x as usize] = (0..f.domain.d())
            .filter(|&i| f.domain.coord_of_index(x, i) > 0)
            .map(|i| values[(x - (1u64 << (i * ell))) as usize])
            .max()
            .unwrap_or(floor);
    }
    Ok(FunctionTable {
        domain: f.domain,
        values,
    })
}

/// Exact distance with a self-checking certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub domain: DomainParams,
    pub distance: Rational,
    /// Points whose change suffices (a minimum vertex cover).
    pub cover: Vec<u64>,
    /// Pairwise disjoint violated pairs; each needs one change.
    pub matching: Vec<(u64, u64)>,
}

impl DistanceCertificate {
    /// True when the matching certifies that the cover is minimum.
    pub fn is_tight(&self) -> bool {
        self.matching.len() == self.cover.len()
    }

    /// Re-derives every statement against `f`: the cover covers all violations
    /// and its repair is monotone, the matching consists of disjoint
    /// violations no larger than the cover, and the distance is the cover
    /// fraction.
    pub fn verify(&self, f: &FunctionTable) -> Result<()> {
        let fail = |msg: String| Err(Error::Contract(format!("certificate check failed: {msg}")));
        if self.domain != f.domain {
            return fail("domain differs from the table".into());
        }
        let graph = violations(f)?;
        let mut sorted = self.cover.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.cover.len() {
            return fail("cover lists a point twice".into());
        }
        if !graph.is_covered_by(&self.cover) {
            return fail("cover misses a violated pair".into());
        }
        if !repair(f, &self.cover)?.is_monotone()? {
            return fail("repair of the cover is not monotone".into());
        }
        let mut used = vec![false; f.values.len()];
        for &(a, b) in &self.matching {
            if a >= f.size() || b >= f.size() || graph.edges.binary_search(&(a, b)).is_err() {
                return fail(format!(
                    "pair ({}, {}) is not a violation",
                    f.label(a),
                    f.label(b)
                ));
            }
            if used[a as usize] || used[b as usize] {
                return fail("matching pairs overlap".into());
            }
            used[a as usize] = true;
            used[b as usize] = true;
        }
        if self.matching.len() > self.cover.len() {
            return fail("matching larger than cover".into());
        }
        if self.distance != rational(self.cover.len() as i128, f.size() as i128) {
            return fail("distance is not cover size over domain size".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            domain: self.domain,
            distance: format_rational(&self.distance),
            cover_size: self.cover.len(),
            matching_size: self.matching.len(),
            tight: self.is_tight(),
            cover: self.cover.iter().map(|&c| label(&self.domain, c)).collect(),
            matching: self
                .matching
                .iter()
                .map(|&(a, b)| [label(&self.domain, a), label(&self.domain, b)])
                .collect(),
        }
    }

    pub fn from_json(json: &CertificateJson) -> Result<Self> {
        let domain = json.domain;
        let cover = json
            .cover
            .iter()
            .map(|s| parse_label(&domain, s))
            .collect::<Result<Vec<_>>>()?;
        let matching = json
            .matching
            .iter()
            .map(|[a, b]| Ok((parse_label(&domain, a)?, parse_label(&domain, b)?)))
            .collect::<Result<Vec<_>>>()?;
        if json.cover_size != cover.len() || json.matching_size != matching.len() {
            return Err(Error::Contract(
                "certificate sizes disagree with its lists".into(),
            ));
        }
        Ok(DistanceCertificate {
            domain,
            distance: parse_rational(&json.distance)?,
            cover,
            matching,
        })
    }
}

/// Wire form of a [`DistanceCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateJson {
    pub schema_version: u32,
    pub domain: DomainParams,
    pub distance: String,
    pub cover_size: usize,
    pub matching_size: usize,
    pub tight: bool,
    pub cover: Vec<String>,
    pub matching: Vec<[String; 2]>,
}

pub fn distance_to_monotone(f: &FunctionTable) -> Result<DistanceCertificate> {
    let graph = violations(f)?;
    let cover = graph.min_vertex_cover()?;
    let matching = graph.maximum_matching()?;
    Ok(DistanceCertificate {
        domain: f.domain,
        distance: rational(cover.len() as i128, f.size() as i128),
        cover,
        matching,
    })
}

/// The violated pairs `(x, x xor e_j)` with `x` in block `S_k` and `x_j = 0`.
pub fn witness_matching(h: &HardFunction) -> Result<Vec<(BitPoint, BitPoint)>> {
    let FunctionKind::Perturbed { j, k } = h.kind() else {
        return domain("the base function has no violations to match");
    };
    let p = h.params();
    p.check_explicit()?;
    let m = p.m();
    let mp = p.m_prime();
    let block_start = (k - 1) << mp;
    let mask = 1u64 << (j - 1);
    Ok((0..p.block_size())
        .map(|low| block_start | low)
        .filter(|w| w & mask == 0)
        .map(|w| {
            (
                BitPoint::from_word_unchecked(w, m),
                BitPoint::from_word_unchecked(w | mask, m),
            )
        })
        .collect())
}

/// [`witness_matching`] pulled back to `[n]^d` through `phi`.
pub fn witness_matching_lifted(
    h: &HardFunction,
    p: &DomainParams,
) -> Result<Vec<(GridPoint, GridPoint)>> {
    crate::family::lift_to_hypergrid(h, p)?;
    witness_matching(h)?
        .iter()
        .map(|(a, b)| Ok((phi_inverse(a, p)?, phi_inverse(b, p)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{Epsilon, FamilyParams};
    use crate::grid::{cube_leq, grid_leq};

    fn params(m: u32, a: u32) -> FamilyParams {
        FamilyParams::new(m, Epsilon::from_exponent(a).unwrap()).unwrap()
    }

    fn bp(s: &str) -> BitPoint {
        s.parse().unwrap()
    }

    #[test]
    fn base_has_no_violations() {
        let t = FunctionTable::from_hard(&HardFunction::base(params(4, 2))).unwrap();
        assert!(violations(&t).unwrap().is_empty());
        let c = distance_to_monotone(&t).unwrap();
        assert_eq!(c.distance, rational(0, 1));
        assert_eq!(format_rational(&c.distance), "0/1");
    }

    #[test]
    fn g21_violations_are_the_flip_matching() {
        let p = params(4, 2);
        let g = HardFunction::perturbed(p, 2, 1).unwrap();
        let graph = violations(&FunctionTable::from_hard(&g).unwrap()).unwrap();
        assert_eq!(graph.edge_count(), 4);
        for &(u, v) in graph.edges() {
            assert_eq!(u ^ v, 0b10);
            assert!(v < 8);
        }
    }

    #[test]
    fn reversed_order_violates_everything() {
        let cube = DomainParams::hypercube(2).unwrap();
        let t = FunctionTable::from_fn(cube, |w| -2 * w as i64).unwrap();
        assert_eq!(violations(&t).unwrap().edge_count(), 5);
    }

    #[test]
    fn distances_of_small_family() {
        for (m, a) in [(4, 2), (8, 3)] {
            let p = params(m, a);
            for e in crate::family::support(&p).entries.iter().skip(1) {
                let t = FunctionTable::from_hard(&e.function).unwrap();
                let c = distance_to_monotone(&t).unwrap();
                assert_eq!(c.distance, p.epsilon().as_rational());
                assert!(c.is_tight());
                c.verify(&t).unwrap();
            }
        }
    }

    #[test]
    fn repair_of_perturbed_points() {
        let p = params(4, 2);
        let g = HardFunction::perturbed(p, 2, 1).unwrap();
        let t = FunctionTable::from_hard(&g).unwrap();
        let cover: Vec<u64> = witness_matching(&g)
            .unwrap()
            .iter()
            .map(|(_, b)| b.word())
            .collect();
        let fixed = repair(&t, &cover).unwrap();
        assert!(fixed.is_monotone().unwrap());
        assert_eq!(fixed.hamming(&t).unwrap(), 4);
        for x in 0..16u64 {
            if !cover.contains(&x) {
                assert_eq!(fixed.value(x), t.value(x));
            }
        }
    }

    #[test]
    fn repair_of_monotone_is_identity() {
        let t = FunctionTable::from_hard(&HardFunction::base(params(4, 2))).unwrap();
        assert_eq!(repair(&t, &[]).unwrap(), t);
    }

    #[test]
    fn repair_rejects_non_cover() {
        let g = HardFunction::perturbed(params(4, 2), 2, 1).unwrap();
        let t = FunctionTable::from_hard(&g).unwrap();
        assert!(matches!(repair(&t, &[]), Err(Error::Contract(_))));
        assert!(matches!(repair(&t, &[99]), Err(Error::Domain(_))));
    }

    #[test]
    fn witness_examples() {
        let p = params(4, 2);
        let g = HardFunction::perturbed(p, 2, 1).unwrap();
        let w = witness_matching(&g).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.contains(&(bp("0010"), bp("0110"))));
        assert!(witness_matching(&HardFunction::base(p)).is_err());
        for (a, b) in &w {
            assert!(cube_leq(a, b).unwrap());
            assert!(g.evaluate(a) > g.evaluate(b));
        }
        let grid = DomainParams::new(4, 2).unwrap();
        for (a, b) in witness_matching_lifted(&g, &grid).unwrap() {
            assert!(grid_leq(&a, &b).unwrap());
        }
    }

    #[test]
    fn successor_enumeration_matches_order() {
        for domain in [
            DomainParams::hypercube(4).unwrap(),
            DomainParams::new(4, 2).unwrap(),
            DomainParams::new(8, 2).unwrap(),
        ] {
            for u in 0..domain.size() {
                let mut got = Vec::new();
                for_each_strict_successor(&domain, u, |v| got.push(v));
                let want: Vec<u64> = (0..domain.size())
                    .filter(|&v| v != u && domain.index_leq(u, v))
                    .collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let g = HardFunction::perturbed(params(4, 2), 2, 1).unwrap();
        let t = FunctionTable::from_hard(&g).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("bitstring,value\n0000,0\n"));
        assert_eq!(FunctionTable::read_csv(&buf[..]).unwrap(), t);

        let grid = DomainParams::new(4, 2).unwrap();
        let lifted = crate::family::lift_to_hypergrid(&g, &grid).unwrap();
        let lt = FunctionTable::from_lifted(&lifted).unwrap();
        let mut buf = Vec::new();
        lt.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf.clone())
            .unwrap()
            .contains("\"3,1\",9"));
        assert_eq!(FunctionTable::read_csv(&buf[..]).unwrap(), lt);

        assert!(FunctionTable::read_csv("bitstring,value\n00,1\n01,2\n".as_bytes()).is_err());
        assert!(FunctionTable::read_csv("bitstring,value\n0,1\n0,2\n".as_bytes()).is_err());
        assert!(FunctionTable::read_csv("point,value\n0,1\n1,2\n".as_bytes()).is_err());
        assert!(FunctionTable::read_csv("bitstring,value\n0,x\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn certificate_json_and_tamper() {
        let g = HardFunction::perturbed(params(4, 2), 3, 2).unwrap();
        let t = FunctionTable::from_hard(&g).unwrap();
        let cert = distance_to_monotone(&t).unwrap();
        let json = serde_json::to_string(&cert.to_json()).unwrap();
        assert!(json.contains("\"distance\":\"1/4\""));
        let back: CertificateJson = serde_json::from_str(&json).unwrap();
        let parsed = DistanceCertificate::from_json(&back).unwrap();
        parsed.verify(&t).unwrap();

        let mut bad = parsed.clone();
        bad.cover.pop();
        bad.distance = rational(3, 16);
        assert!(bad.verify(&t).is_err());
        let mut bad = parsed.clone();
        bad.distance = rational(1, 8);
        assert!(bad.verify(&t).is_err());
        let mut bad = parsed;
        bad.matching.push(bad.matching[0]);
        assert!(bad.verify(&t).is_err());
    }

    #[test]
    fn oversized_domain_rejected() {
        let cube = DomainParams::hypercube(17).unwrap();
        let t = FunctionTable::from_fn(cube, |w| w as i64).unwrap();
        assert!(matches!(violations(&t), Err(Error::Capacity { .. })));
    }
}
