//! Hypercube and hypergrid domains.
//!
//! Bit index 1 is the least significant bit everywhere in this crate. A
//! [`BitPoint`] is stored packed in a machine word together with its length;
//! its text form is the little-endian bitstring `x1x2...xm`, so `"0110"` has
//! `x_2 = x_3 = 1` and value 6.
//!
//! The canonical map [`phi`] concatenates the binary representations of the
//! grid coordinates, coordinate 1 in the lowest block. Because `val(phi(y))`
//! is the mixed-radix number with digits `y_1, ..., y_d`, it strictly refines
//! the product order of `[n]^d`.

use crate::error::{domain, Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Largest supported hypercube dimension for explicit points.
///
/// Keeps `2 * val(x)` and every hard-family value inside an `i64`.
pub const MAX_BITS: u32 = 62;

/// Side length and dimension of the hypergrid `[n]^d`, with `n` a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDomain", into = "RawDomain")]
pub struct DomainParams {
    n: u64,
    d: u32,
    ell: u32,
}

#[derive(Serialize, Deserialize)]
struct RawDomain {
    n: u64,
    d: u32,
}

impl TryFrom<RawDomain> for DomainParams {
    type Error = Error;
    fn try_from(raw: RawDomain) -> Result<Self> {
        DomainParams::new(raw.n, raw.d)
    }
}

impl From<DomainParams> for RawDomain {
    fn from(p: DomainParams) -> Self {
        RawDomain { n: p.n, d: p.d }
    }
}

impl DomainParams {
    pub fn new(n: u64, d: u32) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return domain(format!(
                "side length n = {n} must be a power of two and at least 2"
            ));
        }
        if d == 0 {
            return domain("dimension d must be positive");
        }
        let ell = n.trailing_zeros();
        let m = u64::from(d) * u64::from(ell);
        if m > u64::from(MAX_BITS) {
            return Err(Error::Capacity {
                what: "hypercube dimension d*log2(n)",
                size: m,
                limit: u64::from(MAX_BITS),
            });
        }
        Ok(DomainParams { n, d, ell })
    }

    /// The hypercube `{0,1}^m`, i.e. the grid `[2]^m`.
    pub fn hypercube(m: u32) -> Result<Self> {
        Self::new(2, m)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn m(&self) -> u32 {
        self.d * self.ell
    }

    pub fn is_hypercube(&self) -> bool {
        self.n == 2
    }

    /// Number of grid points, `n^d = 2^m`.
    pub fn size(&self) -> u64 {
        1u64 << self.m()
    }

    /// Coordinate `i` (0-based) of the grid point whose `phi` image has value `index`.
    #[inline]
    pub fn coord_of_index(&self, index: u64, i: u32) -> u64 {
        (index >> (i * self.ell)) & (self.n - 1)
    }

    /// Product order on packed indices (`val(phi(.))` of each point).
    #[inline]
    pub fn index_leq(&self, a: u64, b: u64) -> bool {
        if self.ell == 1 {
            return a & !b == 0;
        }
        (0..self.d).all(|i| self.coord_of_index(a, i) <= self.coord_of_index(b, i))
    }

    /// The grid point with packed index `index`.
    pub fn point_at(&self, index: u64) -> GridPoint {
        GridPoint {
            coords: (0..self.d).map(|i| self.coord_of_index(index, i)).collect(),
        }
    }
}

/// A point of `{0,1}^m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPoint {
    len: u32,
    word: u64,
}

impl BitPoint {
    /// Builds a point from its packed value; bits above `len` must be clear.
    pub fn new(word: u64, len: u32) -> Result<Self> {
        if len == 0 || len > MAX_BITS {
            return Err(Error::Capacity {
                what: "bit point length",
                size: u64::from(len),
                limit: u64::from(MAX_BITS),
            });
        }
        if word >> len != 0 {
            return domain(format!("value {word} does not fit in {len} bits"));
        }
        Ok(BitPoint { len, word })
    }

    pub fn zero(len: u32) -> Result<Self> {
        Self::new(0, len)
    }

    /// Builds a point from the vector view `x_1, ..., x_m`.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut word = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 if i < 64 => word |= 1 << i,
                1 => {}
                _ => return domain(format!("bit {} has value {b}, expected 0 or 1", i + 1)),
            }
        }
        Self::new(word, bits.len() as u32)
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len)
            .map(|i| ((self.word >> i) & 1) as u8)
            .collect()
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    /// Always false: points have at least one bit.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Packed form, equal to [`val`].
    pub fn word(&self) -> u64 {
        self.word
    }

    /// Bit `j`, 1-based.
    pub fn bit(&self, j: u32) -> u8 {
        debug_assert!(j >= 1 && j <= self.len);
        ((self.word >> (j - 1)) & 1) as u8
    }

    /// The point with bit `j` (1-based) flipped.
    pub fn flip(&self, j: u32) -> BitPoint {
        debug_assert!(j >= 1 && j <= self.len);
        BitPoint {
            len: self.len,
            word: self.word ^ (1 << (j - 1)),
        }
    }

    /// All `2^m` points in increasing `val` order.
    pub fn all(len: u32) -> Result<impl Iterator<Item = BitPoint>> {
        BitPoint::zero(len)?;
        Ok((0..1u64 << len).map(move |word| BitPoint { len, word }))
    }

    pub(crate) fn from_word_unchecked(word: u64, len: u32) -> BitPoint {
        BitPoint { len, word }
    }
}

impl fmt::Display for BitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if (self.word >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoint({self})")
    }
}

impl FromStr for BitPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty bitstring".into()));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!(
                    "invalid character {other:?} in bitstring {s:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitPoint::from_bits(&bits)
    }
}

impl Serialize for BitPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of `[n]^d` (coordinates in `0..n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    coords: Vec<u64>,
}

impl GridPoint {
    pub fn new(coords: Vec<u64>) -> Self {
        GridPoint { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    fn check(&self, p: &DomainParams) -> Result<()> {
        if self.coords.len() != p.d() as usize {
            return domain(format!(
                "grid point has {} coordinates, domain has d = {}",
                self.coords.len(),
                p.d()
            ));
        }
        if let Some(c) = self.coords.iter().find(|&&c| c >= p.n()) {
            return domain(format!("coordinate {c} out of range [0, {})", p.n()));
        }
        Ok(())
    }

    /// Packed index `val(phi(self))`.
    pub fn index(&self, p: &DomainParams) -> Result<u64> {
        self.check(p)?;
        Ok(self
            .coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c << (i as u32 * p.ell()))))
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for GridPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .trim()
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid grid coordinate {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GridPoint { coords })
    }
}

impl Serialize for GridPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `val(x) = sum_i 2^(i-1) x_i`.
pub fn val(x: &BitPoint) -> u64 {
    x.word()
}

/// The canonical map `[n]^d -> {0,1}^(d log n)`.
pub fn phi(y: &GridPoint, p: &DomainParams) -> Result<BitPoint> {
    let index = y.index(p)?;
    Ok(BitPoint::from_word_unchecked(index, p.m()))
}

pub fn phi_inverse(x: &BitPoint, p: &DomainParams) -> Result<GridPoint> {
    if x.len() != p.m() {
        return domain(format!(
            "bit point has {} bits, domain needs m = {}",
            x.len(),
            p.m()
        ));
    }
    Ok(p.point_at(x.word()))
}

/// Coordinate-wise product order on `[n]^d`.
pub fn grid_leq(u: &GridPoint, v: &GridPoint) -> Result<bool> {
    if u.dim() != v.dim() {
        return domain(format!("dimension mismatch: {} vs {}", u.dim(), v.dim()));
    }
    Ok(u.coords.iter().zip(&v.coords).all(|(a, b)| a <= b))
}

/// Product order on `{0,1}^m`.
pub fn cube_leq(x: &BitPoint, y: &BitPoint) -> Result<bool> {
    if x.len() != y.len() {
        return domain(format!("length mismatch: {} vs {}", x.len(), y.len()));
    }
    Ok(x.word() & !y.word() == 0)
}
