//! The hard distribution over functions on `{0,1}^m`.
//!
//! The support is the base function `2 val(x)` together with the perturbed
//! functions `g_{j,k}`, one per coordinate `j` in `1..=m'` and block `k` in
//! `1..=1/(2 eps)`. Block `S_k` is the aligned subcube of dimension
//! `m' = m + 1 - log2(1/eps)` whose bits above `m'` spell `k - 1`.
//!
//! Values are signed: `g_{j,1}` reaches `-1`. Only the order of values is
//! ever consumed; adding [`NATURAL_OFFSET`] to every value gives a function
//! into the naturals with the same order.

use crate::error::{domain, Error, Result};
use crate::grid::{phi, BitPoint, DomainParams, GridPoint};
use crate::rational::{rational, Rational};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Shift that makes every hard-family value non-negative without changing order.
pub const NATURAL_OFFSET: i64 = 2;

const MAX_EPS_EXPONENT: u32 = 62;

/// A proximity parameter `eps = 2^-a` with `a >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon {
    exponent: u32,
}

impl Epsilon {
    pub fn from_exponent(exponent: u32) -> Result<Self> {
        if exponent == 0 || exponent > MAX_EPS_EXPONENT {
            return domain(format!(
                "epsilon = 2^-{exponent} must satisfy 1 <= exponent <= {MAX_EPS_EXPONENT}"
            ));
        }
        Ok(Epsilon { exponent })
    }

    /// Largest power of 1/2 not exceeding `value`, capped at 1/2.
    pub fn round_down(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return domain(format!("epsilon must be positive, got {value}"));
        }
        let mut exponent = 1;
        while exponent <= MAX_EPS_EXPONENT && 0.5f64.powi(exponent as i32) > value {
            exponent += 1;
        }
        Self::from_exponent(exponent)
    }

    /// `log2(1/eps)`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn denominator(&self) -> u64 {
        1 << self.exponent
    }

    pub fn as_rational(&self) -> Rational {
        rational(1, 1i128 << self.exponent)
    }

    pub fn as_f64(&self) -> f64 {
        0.5f64.powi(self.exponent as i32)
    }

    /// The `1/2^a` spelling used in function descriptors.
    pub fn exponent_form(&self) -> String {
        format!("1/2^{}", self.exponent)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.denominator())
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `1/2^a`, `2^-a`, `1/N` with `N` a power of two, or a decimal
    /// that is exactly a power of 1/2. Anything else is rejected; use
    /// [`Epsilon::round_down`] to coerce.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace(' ', "");
        let bad = || Error::Parse(format!("epsilon {s:?} is not a power of 1/2"));
        if let Some(a) = t.strip_prefix("1/2^").or_else(|| t.strip_prefix("2^-")) {
            let a: u32 = a.parse().map_err(|_| bad())?;
            return Epsilon::from_exponent(a).map_err(|_| bad());
        }
        if let Some(den) = t.strip_prefix("1/") {
            let den: u64 = den.parse().map_err(|_| bad())?;
            if den < 2 || !den.is_power_of_two() {
                return Err(bad());
            }
            return Epsilon::from_exponent(den.trailing_zeros());
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        let eps = Epsilon::round_down(x).map_err(|_| bad())?;
        if eps.as_f64() == x {
            Ok(eps)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Epsilon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.exponent_form())
    }
}

impl<'de> Deserialize<'de> for Epsilon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters `(m, eps)` of the hard distribution.
///
/// Valid when `2^(1-m) <= eps <= 1/2`, i.e. `1 <= m' <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    m: u32,
    epsilon: Epsilon,
}

impl FamilyParams {
    pub fn new(m: u32, epsilon: Epsilon) -> Result<Self> {
        if m == 0 {
            return domain("m must be positive");
        }
        if epsilon.exponent() > m {
            return domain(format!(
                "epsilon = {epsilon} is below 2^(1-m) = 1/{} for m = {m}; need 2^(1-m) <= epsilon <= 1/2",
                1u128 << (m - 1).min(127)
            ));
        }
        Ok(FamilyParams { m, epsilon })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    /// Dimension of each block, `m + 1 - log2(1/eps)`.
    pub fn m_prime(&self) -> u32 {
        self.m + 1 - self.epsilon.exponent()
    }

    /// Number of blocks, `1/(2 eps)`.
    pub fn block_count(&self) -> u64 {
        1 << (self.epsilon.exponent() - 1)
    }

    pub fn block_size(&self) -> u64 {
        1 << self.m_prime()
    }

    /// Mass of each perturbed function, `eps / m'`.
    pub fn perturbed_mass(&self) -> Rational {
        self.epsilon.as_rational() / Rational::from_integer(self.m_prime() as i128)
    }

    pub fn check_point(&self, x: &BitPoint) -> Result<()> {
        if x.len() != self.m {
            return domain(format!(
                "point {x} has {} bits, expected m = {}",
                x.len(),
                self.m
            ));
        }
        Ok(())
    }

    pub(crate) fn check_explicit(&self) -> Result<()> {
        crate::error::capacity(
            "m for explicit points",
            u64::from(self.m),
            u64::from(crate::grid::MAX_BITS),
        )
    }
}

/// Block index `k` in `1..=block_count` of `x`.
pub fn block_index(x: &BitPoint, p: &FamilyParams) -> u64 {
    (x.word() >> p.m_prime()) + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionKind {
    Base,
    Perturbed { j: u32, k: u64 },
}

/// A member of the support of the hard distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HardFunction {
    params: FamilyParams,
    kind: FunctionKind,
}

impl HardFunction {
    pub fn base(params: FamilyParams) -> Self {
        HardFunction {
            params,
            kind: FunctionKind::Base,
        }
    }

    pub fn perturbed(params: FamilyParams, j: u32, k: u64) -> Result<Self> {
        if j == 0 || j > params.m_prime() {
            return domain(format!(
                "coordinate j = {j} outside 1..={}",
                params.m_prime()
            ));
        }
        if k == 0 || k > params.block_count() {
            return domain(format!(
                "block k = {k} outside 1..={}",
                params.block_count()
            ));
        }
        Ok(HardFunction {
            params,
            kind: FunctionKind::Perturbed { j, k },
        })
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn is_base(&self) -> bool {
        self.kind == FunctionKind::Base
    }

    /// Value at `x`; `x` must have `m` bits.
    pub fn evaluate(&self, x: &BitPoint) -> i64 {
        debug_assert_eq!(x.len(), self.params.m);
        self.evaluate_word(x.word())
    }

    pub fn try_evaluate(&self, x: &BitPoint) -> Result<i64> {
        self.params.check_point(x)?;
        Ok(self.evaluate_word(x.word()))
    }

    /// Value at the point whose packed form is `word`.
    #[inline]
    pub fn evaluate_word(&self, word: u64) -> i64 {
        let base = 2 * word as i64;
        match self.kind {
            FunctionKind::Base => base,
            FunctionKind::Perturbed { j, k } => {
                let in_block = (word >> self.params.m_prime()) + 1 == k;
                if in_block && (word >> (j - 1)) & 1 == 1 {
                    base - (1i64 << j) - 1
                } else {
                    base
                }
            }
        }
    }

    /// Value shifted by [`NATURAL_OFFSET`].
    pub fn evaluate_natural(&self, x: &BitPoint) -> i64 {
        self.evaluate(x) + NATURAL_OFFSET
    }

    pub fn label(&self) -> String {
        match self.kind {
            FunctionKind::Base => "base".to_string(),
            FunctionKind::Perturbed { j, k } => format!("g_{j}_{k}"),
        }
    }
}

impl fmt::Display for HardFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FunctionKind::Base => {
                write!(f, "2val (m={}, eps={})", self.params.m, self.params.epsilon)
            }
            FunctionKind::Perturbed { j, k } => write!(
                f,
                "g_{{{j},{k}}} (m={}, eps={})",
                self.params.m, self.params.epsilon
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Descriptor {
    m: u32,
    epsilon: Epsilon,
    kind: DescriptorKind,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DescriptorKind {
    Named(String),
    Perturbed { j: u32, k: u64 },
}

impl Serialize for HardFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = match self.kind {
            FunctionKind::Base => DescriptorKind::Named("base".into()),
            FunctionKind::Perturbed { j, k } => DescriptorKind::Perturbed { j, k },
        };
        Descriptor {
            m: self.params.m,
            epsilon: self.params.epsilon,
            kind,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HardFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let desc = Descriptor::deserialize(d)?;
        let params = FamilyParams::new(desc.m, desc.epsilon).map_err(D::Error::custom)?;
        match desc.kind {
            DescriptorKind::Named(name) if name == "base" => Ok(HardFunction::base(params)),
            DescriptorKind::Named(name) => {
                Err(D::Error::custom(format!("unknown function kind {name:?}")))
            }
            DescriptorKind::Perturbed { j, k } => {
                HardFunction::perturbed(params, j, k).map_err(D::Error::custom)
            }
        }
    }
}

/// Draws from the hard distribution: the base function with probability 1/2,
/// each `g_{j,k}` with probability `eps/m'`.
pub fn sample<R: Rng + ?Sized>(p: &FamilyParams, rng: &mut R) -> HardFunction {
    // eps/m' = 1/(2 * blocks * m'), so one uniform draw over that denominator is exact.
    let blocks = p.block_count();
    let half = blocks * u64::from(p.m_prime());
    let r = rng.random_range(0..2 * half);
    if r < half {
        HardFunction::base(*p)
    } else {
        let idx = r - half;
        HardFunction {
            params: *p,
            kind: FunctionKind::Perturbed {
                j: (idx / blocks) as u32 + 1,
                k: idx % blocks + 1,
            },
        }
    }
}

/// The support of the hard distribution with exact masses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedSupport {
    pub entries: Vec<SupportEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    pub function: HardFunction,
    #[serde(with = "crate::rational::as_string")]
    pub mass: Rational,
}

impl WeightedSupport {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.entries.iter().map(|e| e.mass).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HardFunction, &Rational)> {
        self.entries.iter().map(|e| (&e.function, &e.mass))
    }
}

/// Base first, then `g_{j,k}` in lexicographic `(j, k)` order.
pub fn support(p: &FamilyParams) -> WeightedSupport {
    let mut entries = vec![SupportEntry {
        function: HardFunction::base(*p),
        mass: rational(1, 2),
    }];
    let mass = p.perturbed_mass();
    for j in 1..=p.m_prime() {
        for k in 1..=p.block_count() {
            entries.push(SupportEntry {
                function: HardFunction {
                    params: *p,
                    kind: FunctionKind::Perturbed { j, k },
                },
                mass,
            });
        }
    }
    WeightedSupport { entries }
}

/// A hard function read through `phi` as a function on `[n]^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftedFunction {
    function: HardFunction,
    domain: DomainParams,
}

pub fn lift_to_hypergrid(h: &HardFunction, p: &DomainParams) -> Result<LiftedFunction> {
    if p.m() != h.params().m() {
        return domain(format!(
            "hypergrid [{}]^{} has m = {}, function has m = {}",
            p.n(),
            p.d(),
            p.m(),
            h.params().m()
        ));
    }
    Ok(LiftedFunction {
        function: *h,
        domain: *p,
    })
}

impl LiftedFunction {
    pub fn function(&self) -> &HardFunction {
        &self.function
    }

    pub fn domain(&self) -> &DomainParams {
        &self.domain
    }

    pub fn evaluate(&self, y: &GridPoint) -> Result<i64> {
        let x = phi(y, &self.domain)?;
        Ok(self.function.evaluate(&x))
    }

    /// Value at the grid point with packed index `index`.
    pub fn evaluate_index(&self, index: u64) -> i64 {
        self.function.evaluate_word(index)
    }
}
