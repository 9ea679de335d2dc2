//! Chain types, parameter vectors, rank-one chains and their subchains.
//!
//! A chain of type `(r_0,..,r_n; d_0,..,d_n)` has arrows `phi_i: E_i -> E_{i-1}`
//! for `i = 1..=n`. Parameter vectors are always in reduced form: the weight
//! of `E_0` is normalised to zero and `alpha = (alpha_1,..,alpha_n)`.
//!
//! Subchain and quotient types are represented with the same length as the
//! ambient type, unused slots carrying rank 0 and degree 0. That way the
//! slope formula applies to them unchanged.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalVector;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct ChainType {
    ranks: Vec<u64>,
    degrees: Vec<i64>,
}

#[derive(Deserialize)]
struct RawType {
    ranks: Vec<u64>,
    degrees: Vec<i64>,
}

impl TryFrom<RawType> for ChainType {
    type Error = Error;
    fn try_from(raw: RawType) -> Result<Self> {
        ChainType::new(raw.ranks, raw.degrees)
    }
}

impl ChainType {
    /// A type of an actual chain: at least two bundles, all of positive rank.
    pub fn new(ranks: Vec<u64>, degrees: Vec<i64>) -> Result<Self> {
        if ranks.len() != degrees.len() {
            return Err(Error::InvalidType(format!(
                "{} ranks but {} degrees",
                ranks.len(),
                degrees.len()
            )));
        }
        if ranks.len() < 2 {
            return Err(Error::InvalidType("a chain needs at least two bundles".into()));
        }
        if let Some(i) = ranks.iter().position(|&r| r == 0) {
            return Err(Error::InvalidType(format!("rank r_{i} must be positive")));
        }
        Ok(ChainType { ranks, degrees })
    }

    /// A possibly padded type, as used for subchains, quotients and prefixes.
    ///
    /// Slots of rank 0 must have degree 0. The zero type is allowed here; its
    /// slope is undefined.
    pub fn padded(ranks: Vec<u64>, degrees: Vec<i64>) -> Result<Self> {
        if ranks.len() != degrees.len() || ranks.is_empty() {
            return Err(Error::InvalidType(format!(
                "{} ranks and {} degrees",
                ranks.len(),
                degrees.len()
            )));
        }
        if let Some(i) = (0..ranks.len()).find(|&i| ranks[i] == 0 && degrees[i] != 0) {
            return Err(Error::InvalidType(format!(
                "slot {i} has rank 0 but degree {}",
                degrees[i]
            )));
        }
        Ok(ChainType { ranks, degrees })
    }

    /// The type `(1,..,1; d_0,..,d_n)`.
    pub fn rank_one(degrees: Vec<i64>) -> Result<Self> {
        ChainType::new(vec![1; degrees.len()], degrees)
    }

    /// The zero type of the given length.
    pub fn zero(len: usize) -> Self {
        ChainType {
            ranks: vec![0; len],
            degrees: vec![0; len],
        }
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Number of bundles.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Number of arrows, i.e. the length of a parameter vector.
    pub fn n(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.iter().sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn is_rank_one(&self) -> bool {
        self.ranks.iter().all(|&r| r == 1)
    }

    /// `d_{i-1} - d_i` for `i = 1..=n`.
    pub fn degree_drops(&self) -> Vec<i64> {
        self.degrees.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// The reduced parameter slope `(sum d_i + sum_{i>=1} alpha_i r_i) / sum r_i`.
    pub fn slope(&self, alpha: &AlphaVector) -> Result<Rational> {
        if alpha.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: alpha.len(),
            });
        }
        let total_rank = self.total_rank();
        if total_rank == 0 {
            return Err(Error::ZeroChain);
        }
        let weighted: Rational = alpha
            .iter()
            .zip(&self.ranks[1..])
            .map(|(a, &r)| a * Rational::from(r))
            .sum();
        Ok((Rational::from(self.total_degree()) + weighted) / Rational::from(total_rank))
    }

    /// Type of the `i`-th standard subchain `(E_0,..,E_i)`, as a type of length `i + 1`.
    pub fn prefix(&self, i: usize) -> Result<ChainType> {
        let max = self.n().saturating_sub(1);
        if self.n() == 0 || i > max {
            return Err(Error::Index { index: i, max });
        }
        Ok(ChainType {
            ranks: self.ranks[..=i].to_vec(),
            degrees: self.degrees[..=i].to_vec(),
        })
    }

    /// Type of the `i`-th standard subchain padded with zeros to full length.
    pub fn padded_prefix(&self, i: usize) -> Result<ChainType> {
        let p = self.prefix(i)?;
        Ok(p.pad_to(self.len()))
    }

    fn pad_to(mut self, len: usize) -> ChainType {
        self.ranks.resize(len, 0);
        self.degrees.resize(len, 0);
        self
    }

    /// Keeps slots in `lo..=hi`, zeroing the others.
    pub fn window(&self, lo: usize, hi: usize) -> ChainType {
        let keep = |i: usize| (lo..=hi).contains(&i);
        ChainType {
            ranks: (0..self.len()).map(|i| if keep(i) { self.ranks[i] } else { 0 }).collect(),
            degrees: (0..self.len()).map(|i| if keep(i) { self.degrees[i] } else { 0 }).collect(),
        }
    }

    /// Componentwise sum.
    pub fn add(&self, other: &ChainType) -> Result<ChainType> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: other.len(),
            });
        }
        ChainType::padded(
            self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect(),
            self.degrees.iter().zip(&other.degrees).map(|(a, b)| a + b).collect(),
        )
    }
}

impl fmt::Display for ChainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: Vec<String>| xs.join(",");
        write!(
            f,
            "{};{}",
            join(self.ranks.iter().map(ToString::to_string).collect()),
            join(self.degrees.iter().map(ToString::to_string).collect())
        )
    }
}

impl FromStr for ChainType {
    type Err = Error;

    /// Parses `"r_0,..,r_n;d_0,..,d_n"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "chain type",
            input: s.to_string(),
        };
        let (ranks, degrees) = s.split_once(';').ok_or_else(bad)?;
        let ranks = parse_list::<u64>(ranks).ok_or_else(bad)?;
        let degrees = parse_list::<i64>(degrees).ok_or_else(bad)?;
        ChainType::new(ranks, degrees)
    }
}

pub(crate) fn parse_list<T: FromStr>(s: &str) -> Option<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

/// Reduced stability parameter `(alpha_1,..,alpha_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaVector(RationalVector);

impl AlphaVector {
    pub fn new(entries: RationalVector) -> Self {
        AlphaVector(entries)
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        AlphaVector(RationalVector::from_ints(values))
    }

    /// Reduces a full vector `(alpha_0,..,alpha_n)` to `(alpha_1 - alpha_0,..)`.
    pub fn reduce(full: &[Rational]) -> Result<Self> {
        let (first, rest) = full.split_first().ok_or(Error::Dimension {
            expected: 1,
            found: 0,
        })?;
        Ok(AlphaVector(rest.iter().map(|a| a - first).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn as_vector(&self) -> &RationalVector {
        &self.0
    }

    pub fn into_vector(self) -> RationalVector {
        self.0
    }

    /// The first `i` entries; the parameter for a prefix type of length `i + 1`.
    pub fn prefix(&self, i: usize) -> AlphaVector {
        AlphaVector(self.0.iter().take(i).cloned().collect())
    }
}

impl std::ops::Index<usize> for AlphaVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<RationalVector> for AlphaVector {
    fn from(v: RationalVector) -> Self {
        AlphaVector(v)
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for AlphaVector {
    type Err = Error;

    /// Parses a comma separated list of rationals, e.g. `"1/2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(str::parse::<Rational>)
            .collect::<Result<Vec<_>>>()?;
        Ok(AlphaVector(RationalVector::new(entries)))
    }
}

/// The unreduced slope `(sum d_i + sum_{i>=0} alpha_i r_i) / sum r_i` for a
/// full vector `(alpha_0,..,alpha_n)`.
pub fn unreduced_slope(t: &ChainType, full_alpha: &[Rational]) -> Result<Rational> {
    if full_alpha.len() != t.len() {
        return Err(Error::Dimension {
            expected: t.len(),
            found: full_alpha.len(),
        });
    }
    if t.total_rank() == 0 {
        return Err(Error::ZeroChain);
    }
    let weighted: Rational = full_alpha
        .iter()
        .zip(t.ranks())
        .map(|(a, &r)| a * Rational::from(r))
        .sum();
    Ok((Rational::from(t.total_degree()) + weighted) / Rational::from(t.total_rank()))
}

pub fn slope(t: &ChainType, alpha: &AlphaVector) -> Result<Rational> {
    t.slope(alpha)
}

pub fn standard_subchain_type(t: &ChainType, i: usize) -> Result<ChainType> {
    t.prefix(i)
}

/// Rank-weighted mean of the slopes of a subchain and quotient type.
///
/// For a short exact sequence `0 -> C' -> C -> C'' -> 0` this equals the
/// slope of `C`. A zero type contributes nothing.
pub fn barycenter_check(
    t_sub: &ChainType,
    t_quot: &ChainType,
    alpha: &AlphaVector,
) -> Result<Rational> {
    let total = t_sub.add(t_quot)?;
    if total.is_zero() {
        return Err(Error::ZeroChain);
    }
    let mut acc = Rational::zero();
    for part in [t_sub, t_quot] {
        if !part.is_zero() {
            acc += &(part.slope(alpha)? * Rational::from(part.total_rank()));
        }
    }
    Ok(acc / Rational::from(total.total_rank()))
}

/// A chain of line bundles, recorded by degrees and which arrows vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRankOne", into = "RawRankOne")]
pub struct RankOneChain {
    degrees: Vec<i64>,
    phi_nonzero: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawRankOne {
    #[serde(default)]
    ranks: Option<Vec<u64>>,
    degrees: Vec<i64>,
    phi_nonzero: Vec<bool>,
}

impl TryFrom<RawRankOne> for RankOneChain {
    type Error = Error;
    fn try_from(raw: RawRankOne) -> Result<Self> {
        if let Some(ranks) = &raw.ranks {
            if ranks.len() != raw.degrees.len() || ranks.iter().any(|&r| r != 1) {
                return Err(Error::UnsupportedType(
                    "rank-one chains need ranks (1,..,1)".into(),
                ));
            }
        }
        RankOneChain::new(raw.degrees, raw.phi_nonzero)
    }
}

impl From<RankOneChain> for RawRankOne {
    fn from(c: RankOneChain) -> Self {
        RawRankOne {
            ranks: Some(vec![1; c.degrees.len()]),
            degrees: c.degrees,
            phi_nonzero: c.phi_nonzero,
        }
    }
}

impl RankOneChain {
    /// `phi_nonzero[i - 1]` records whether `phi_i` is nonzero. A nonzero map
    /// `L_i -> L_{i-1}` needs `d_{i-1} >= d_i`.
    pub fn new(degrees: Vec<i64>, phi_nonzero: Vec<bool>) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(Error::InvalidChain("a chain needs at least two bundles".into()));
        }
        if phi_nonzero.len() + 1 != degrees.len() {
            return Err(Error::Dimension {
                expected: degrees.len() - 1,
                found: phi_nonzero.len(),
            });
        }
        for (i, &nz) in phi_nonzero.iter().enumerate() {
            if nz && degrees[i] < degrees[i + 1] {
                return Err(Error::InvalidChain(format!(
                    "phi_{} cannot be nonzero: deg L_{} = {} < deg L_{} = {}",
                    i + 1,
                    i,
                    degrees[i],
                    i + 1,
                    degrees[i + 1]
                )));
            }
        }
        Ok(RankOneChain {
            degrees,
            phi_nonzero,
        })
    }

    /// All arrows nonzero.
    pub fn generic(degrees: Vec<i64>) -> Result<Self> {
        let n = degrees.len().saturating_sub(1);
        RankOneChain::new(degrees, vec![true; n])
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn phi_nonzero(&self) -> &[bool] {
        &self.phi_nonzero
    }

    /// Whether `phi_i` (1-based) is nonzero.
    pub fn phi(&self, i: usize) -> bool {
        self.phi_nonzero[i - 1]
    }

    pub fn n(&self) -> usize {
        self.phi_nonzero.len()
    }

    pub fn chain_type(&self) -> ChainType {
        ChainType {
            ranks: vec![1; self.degrees.len()],
            degrees: self.degrees.clone(),
        }
    }

    /// Same line bundles with the given arrows replaced by zero.
    pub fn with_zeroed(&self, arrows: &BTreeSet<usize>) -> RankOneChain {
        let phi_nonzero = self
            .phi_nonzero
            .iter()
            .enumerate()
            .map(|(k, &nz)| nz && !arrows.contains(&(k + 1)))
            .collect();
        RankOneChain {
            degrees: self.degrees.clone(),
            phi_nonzero,
        }
    }
}

/// The slots `{i : F_i = L_i}` of a subchain made of subbundles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubchainSelector(BTreeSet<usize>);

impl SubchainSelector {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SubchainSelector(indices.into_iter().collect())
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the selected slots are stable under the nonzero arrows.
    pub fn is_closed_for(&self, c: &RankOneChain) -> bool {
        self.0
            .iter()
            .all(|&i| i == 0 || !c.phi(i) || self.0.contains(&(i - 1)))
    }

    /// Padded type of the selected subchain.
    pub fn sub_type(&self, c: &RankOneChain) -> ChainType {
        let len = c.degrees.len();
        ChainType {
            ranks: (0..len).map(|i| u64::from(self.contains(i))).collect(),
            degrees: (0..len)
                .map(|i| if self.contains(i) { c.degrees[i] } else { 0 })
                .collect(),
        }
    }

    /// Padded type of the quotient by the selected subchain.
    pub fn quotient_type(&self, c: &RankOneChain) -> ChainType {
        SubchainSelector((0..c.degrees.len()).filter(|i| !self.contains(*i)).collect()).sub_type(c)
    }
}

/// Every proper nonzero subchain of `c` composed of subbundles.
///
/// When all arrows are nonzero these are exactly the standard subchains
/// `{0}, {0,1}, .., {0,..,n-1}`.
pub fn subchain_selectors(c: &RankOneChain) -> Vec<SubchainSelector> {
    let len = c.degrees.len();
    let full: u64 = (1 << len) - 1;
    let mut out: Vec<SubchainSelector> = (1..full)
        .map(|mask| SubchainSelector((0..len).filter(|i| mask >> i & 1 == 1).collect()))
        .filter(|s| s.is_closed_for(c))
        .collect();
    out.sort();
    out
}
