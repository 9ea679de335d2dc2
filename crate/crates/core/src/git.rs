//! Character side of the correspondence: each factor `E_i` is quotiented by
//! `C^*` acting by scalars, linearised by the character `lambda -> lambda^{k_i}`.
//!
//! Per factor the projective quotient is `P(E_i)` for `k_i > 0`, the base for
//! `k_i = 0` and empty for `k_i < 0`. The region of characters with zeros
//! exactly at `I` corresponds to the wall `I` of the stability cone.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::chain::{parse_list, AlphaVector, ChainType};
use crate::chamber::{build_cone, ChamberClass, WallSet};
use crate::error::{Error, Result};
use crate::moduli::{describe_in, CurveContext, ModuliDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CharacterTuple(Vec<i64>);

impl CharacterTuple {
    pub fn new(k: Vec<i64>) -> Self {
        CharacterTuple(k)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for CharacterTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_list(s)
            .filter(|k: &Vec<i64>| !k.is_empty())
            .map(CharacterTuple)
            .ok_or_else(|| Error::Parse {
                what: "character tuple",
                input: s.to_string(),
            })
    }
}

impl fmt::Display for CharacterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CharacterClass {
    /// Some exponent is negative.
    OutsideMPrime,
    /// Zeros exactly at the given nonempty set, positive elsewhere.
    D(WallSet),
    /// All exponents positive.
    InteriorM,
}

impl CharacterClass {
    /// `D_I` for an arbitrary `I`; `D_{}` is the positive orthant itself.
    pub fn d(zeros: WallSet) -> CharacterClass {
        if zeros.is_empty() {
            CharacterClass::InteriorM
        } else {
            CharacterClass::D(zeros)
        }
    }

    /// The zero set `I`, or `None` outside the closed orthant.
    pub fn zero_set(&self) -> Option<WallSet> {
        match self {
            CharacterClass::OutsideMPrime => None,
            CharacterClass::InteriorM => Some(WallSet::new()),
            CharacterClass::D(zeros) => Some(zeros.clone()),
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            CharacterClass::OutsideMPrime => "outside",
            CharacterClass::D(_) => "D_I",
            CharacterClass::InteriorM => "M",
        }
    }

    /// Whether this region and the chamber class name the same index set.
    pub fn corresponds_to(&self, chamber: &ChamberClass) -> bool {
        self.zero_set() == chamber.active_walls()
    }
}

pub fn classify_character(k: &CharacterTuple) -> CharacterClass {
    if k.0.iter().any(|&x| x < 0) {
        return CharacterClass::OutsideMPrime;
    }
    CharacterClass::d(
        k.0.iter()
            .enumerate()
            .filter(|(_, &x)| x == 0)
            .map(|(i, _)| i + 1)
            .collect(),
    )
}

/// Projective quotient of a single factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorQuotient {
    /// `P(E_i)`, of the given fiber dimension.
    Projective(i64),
    /// The invariants are `A[t]` and the quotient is the base itself.
    Base,
    Empty,
}

/// Quotient of a rank `fiber_dim + 1` bundle by scalars under the character `lambda^k`.
pub fn factor_quotient(k: i64, fiber_dim: i64) -> FactorQuotient {
    match k.signum() {
        1 if fiber_dim >= 0 => FactorQuotient::Projective(fiber_dim),
        1 => FactorQuotient::Empty,
        0 => FactorQuotient::Base,
        _ => FactorQuotient::Empty,
    }
}

fn require_large_degrees(t: &ChainType, ctx: CurveContext) -> Result<()> {
    if !t.is_rank_one() {
        return Err(Error::UnsupportedType(format!(
            "character quotients need ranks (1,..,1), got {t}"
        )));
    }
    if let Some((k, d)) = t
        .degree_drops()
        .into_iter()
        .enumerate()
        .find(|&(_, d)| d <= ctx.canonical_degree())
    {
        return Err(Error::UnsupportedRegime(format!(
            "d'_{} = {d} is not above 2g - 2 = {}; use the stratified moduli description",
            k + 1,
            ctx.canonical_degree()
        )));
    }
    Ok(())
}

/// Fiber product over `Z` of the per-factor quotients `E_i //_{k_i} C^*`.
pub fn quotient_descriptor(
    t: &ChainType,
    ctx: CurveContext,
    k: &CharacterTuple,
) -> Result<ModuliDescriptor> {
    require_large_degrees(t, ctx)?;
    if k.len() != t.n() {
        return Err(Error::Dimension {
            expected: t.n(),
            found: k.len(),
        });
    }
    let g = i64::from(ctx.genus);
    let quotients: Vec<FactorQuotient> = k
        .exponents()
        .iter()
        .zip(t.degree_drops())
        .map(|(&ki, d)| factor_quotient(ki, d - g))
        .collect();

    if quotients.contains(&FactorQuotient::Empty) {
        return Ok(ModuliDescriptor::empty(t, ctx));
    }
    if quotients.iter().all(|q| *q == FactorQuotient::Base) {
        return Ok(ModuliDescriptor::point(t, ctx));
    }
    let collapsed: WallSet = quotients
        .iter()
        .enumerate()
        .filter(|(_, q)| **q == FactorQuotient::Base)
        .map(|(i, _)| i + 1)
        .collect();
    ModuliDescriptor::fiber_product(t, ctx, &collapsed)
}

/// Whether `k` and `alpha` lie in corresponding regions and give the same moduli space.
pub fn correspondence_check(
    t: &ChainType,
    ctx: CurveContext,
    k: &CharacterTuple,
    alpha: &AlphaVector,
) -> Result<bool> {
    let from_chars = quotient_descriptor(t, ctx, k)?;
    let chamber = build_cone(t).classify(alpha)?;
    if !classify_character(k).corresponds_to(&chamber) {
        return Ok(false);
    }
    let from_alpha = describe_in(t, ctx, &chamber)?;
    Ok(from_chars.same_structure(&from_alpha))
}
