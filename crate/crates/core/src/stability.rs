//! Stability of rank-one chains and S-equivalence on walls.
//!
//! [`is_semistable`] decides (semi)stability by comparing the slope of the
//! chain against every proper subchain made of subbundles. It does not use
//! the cone at all, so it serves as the reference for [`is_stable_fast`],
//! which only asks whether every arrow is nonzero and `alpha` is in the open
//! cone.

use serde::Serialize;

use crate::chain::{subchain_selectors, AlphaVector, ChainType, RankOneChain, SubchainSelector};
use crate::chamber::{build_cone, ChamberClass, WallSet};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub semistable: bool,
    /// A subchain of strictly larger slope, present iff not semistable.
    #[serde(rename = "violating")]
    pub violating_selector: Option<SubchainSelector>,
    /// Subchains whose slope equals the slope of the chain.
    #[serde(rename = "tight")]
    pub tight_selectors: Vec<SubchainSelector>,
}

/// The graded object of a semistable chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraduationResult {
    /// Walls through `alpha`; empty when the chain is stable.
    pub wall_set: WallSet,
    /// The chain with the arrows on `wall_set` set to zero.
    pub representative: RankOneChain,
    /// Padded types of the Jordan-Hoelder factors, in filtration order.
    pub factors: Vec<ChainType>,
    pub factor_slopes: Vec<Rational>,
}

/// All arrows nonzero and `alpha` strictly inside the cone.
pub fn is_stable_fast(c: &RankOneChain, alpha: &AlphaVector) -> Result<bool> {
    let class = build_cone(&c.chain_type()).classify(alpha)?;
    Ok(class.is_interior() && c.phi_nonzero().iter().all(|&nz| nz))
}

/// Exhaustive check against every closed selector.
pub fn is_semistable(c: &RankOneChain, alpha: &AlphaVector) -> Result<StabilityVerdict> {
    let mu = c.chain_type().slope(alpha)?;
    let mut violating = None;
    let mut tight = Vec::new();
    for s in subchain_selectors(c) {
        let sub = s.sub_type(c).slope(alpha)?;
        match sub.cmp(&mu) {
            std::cmp::Ordering::Greater => {
                if violating.is_none() {
                    violating = Some(s);
                }
            }
            std::cmp::Ordering::Equal => tight.push(s),
            std::cmp::Ordering::Less => {}
        }
    }
    let semistable = violating.is_none();
    Ok(StabilityVerdict {
        stable: semistable && tight.is_empty(),
        semistable,
        violating_selector: violating,
        tight_selectors: tight,
    })
}

/// Jordan-Hoelder graduation of an `alpha`-semistable chain.
///
/// On the wall `I = {i_1 < .. < i_m}` the filtration is
/// `0 < C_{i_1 - 1} < .. < C_{i_m - 1} < C`, and the graded object is the
/// chain with `phi_j` replaced by zero for `j` in `I`.
pub fn graduation(c: &RankOneChain, alpha: &AlphaVector) -> Result<GraduationResult> {
    let t = c.chain_type();
    let class = build_cone(&t).classify(alpha)?;
    let walls = match class {
        ChamberClass::Outside => {
            return Err(Error::Domain(format!("{alpha} lies outside the closed cone")))
        }
        ChamberClass::Interior => WallSet::new(),
        ChamberClass::Wall(walls) => walls,
    };
    let verdict = is_semistable(c, alpha)?;
    if !verdict.semistable {
        return Err(Error::Precondition(format!(
            "chain is not {alpha}-semistable"
        )));
    }

    let mut starts: Vec<usize> = vec![0];
    starts.extend(walls.iter().copied());
    let factors: Vec<ChainType> = starts
        .iter()
        .enumerate()
        .map(|(k, &lo)| {
            let hi = starts.get(k + 1).map_or(t.n(), |&next| next - 1);
            t.window(lo, hi)
        })
        .collect();
    let factor_slopes = factors
        .iter()
        .map(|f| f.slope(alpha))
        .collect::<Result<Vec<_>>>()?;

    Ok(GraduationResult {
        representative: c.with_zeroed(&walls),
        wall_set: walls,
        factors,
        factor_slopes,
    })
}

/// Whether some chain of the rank-one type `t` is stable for parameters in the cone.
pub fn exists_stable(t: &ChainType) -> Result<bool> {
    if !t.is_rank_one() {
        return Err(Error::UnsupportedType(format!(
            "stability is only decided for ranks (1,..,1), got {t}"
        )));
    }
    Ok(t.degree_drops().iter().all(|&d| d >= 0))
}
