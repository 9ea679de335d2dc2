//! Symbolic descriptors of moduli spaces of rank-one chains.
//!
//! With `d'_i = d_{i-1} - d_i`, the stable moduli space over the open cone
//! is a fiber product over `Z = Pic^{d_0} x .. x Pic^{d_n}` of projective
//! bundles `P(E_i)` whose fibers are `P(H^0(M))` for `M` of degree `d'_i`.
//! When every `d'_i > 2g - 2` each fiber has dimension `d'_i - g`. Otherwise
//! the base breaks into strata `Z_{r_1..r_n}` on which `h^0 = r_i + 1`.
//!
//! On a wall `I` the factors with index in `I` collapse to the base.

use serde::Serialize;

use crate::chain::{AlphaVector, ChainType};
use crate::chamber::{build_cone, ChamberClass, WallSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveContext {
    pub genus: u32,
}

impl CurveContext {
    pub fn new(genus: u32) -> Self {
        CurveContext { genus }
    }

    fn g(&self) -> i64 {
        i64::from(self.genus)
    }

    /// Every degree above this is in the range where `h^0 = d - g + 1`.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.g() - 2
    }
}

/// `g - (r + 1)(g - d + r)`.
pub fn brill_noether_number(genus: u32, r: u64, d: i64) -> i64 {
    let g = i64::from(genus);
    let r = r as i64;
    g - (r + 1) * (g - d + r)
}

/// Possible values of `h^0(M) - 1` for a line bundle `M` of degree `d` that has
/// a nonzero section.
///
/// Above the canonical degree Riemann-Roch fixes it to `d - g`. In degree 0 only
/// the trivial bundle has sections. Otherwise it ranges from the Riemann-Roch
/// lower bound to the Clifford bound `d / 2`.
pub fn section_candidates(d: i64, ctx: CurveContext) -> Vec<u64> {
    let g = ctx.g();
    if d < 0 {
        Vec::new()
    } else if d > ctx.canonical_degree() {
        if d - g >= 0 {
            vec![(d - g) as u64]
        } else {
            Vec::new()
        }
    } else if d == 0 {
        vec![0]
    } else {
        ((d - g).max(0) as u64..=(d / 2) as u64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// `r_i` with `h^0(L_{i-1} L_i^{-1}) = r_i + 1`.
    pub section_indices: Vec<u64>,
    pub bn_numbers: Vec<i64>,
}

impl Stratum {
    /// Dimension of each fiber `P^{r_i}`.
    pub fn fiber_dims(&self) -> &[u64] {
        &self.section_indices
    }

    pub fn bn_ok(&self) -> Vec<bool> {
        self.bn_numbers.iter().map(|&rho| rho >= 0).collect()
    }

    /// `dim Z_r + sum r_i` on a general curve, where `dim U^r_d = rho`.
    /// `None` if some locus is expected to be empty.
    pub fn expected_dimension(&self, ctx: CurveContext) -> Option<i64> {
        if self.bn_numbers.iter().any(|&rho| rho < 0) {
            return None;
        }
        let fibers: i64 = self.section_indices.iter().map(|&r| r as i64).sum();
        Some(ctx.g() + self.bn_numbers.iter().sum::<i64>() + fibers)
    }
}

/// `(g-1)(sum r_i^2 - sum r_i r_{i-1}) + sum (r_i d_{i-1} - r_{i-1} d_i) + 1`.
pub fn dimension_formula(t: &ChainType, ctx: CurveContext) -> i64 {
    let r: Vec<i64> = t.ranks().iter().map(|&x| x as i64).collect();
    let d = t.degrees();
    let squares: i64 = r.iter().map(|x| x * x).sum();
    let adjacent: i64 = r.windows(2).map(|w| w[0] * w[1]).sum();
    let twisted: i64 = (1..r.len()).map(|i| r[i] * d[i - 1] - r[i - 1] * d[i]).sum();
    (ctx.g() - 1) * (squares - adjacent) + twisted + 1
}

fn require_rank_one(t: &ChainType) -> Result<()> {
    if t.is_rank_one() {
        Ok(())
    } else {
        Err(Error::UnsupportedType(format!(
            "moduli descriptors need ranks (1,..,1), got {t}"
        )))
    }
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect()
    })
}

/// Strata `Z_{r_1..r_n}` of the base, one per admissible tuple of section counts.
pub fn enumerate_strata(t: &ChainType, ctx: CurveContext) -> Result<Vec<Stratum>> {
    require_rank_one(t)?;
    let drops = t.degree_drops();
    let candidates: Vec<Vec<u64>> = drops.iter().map(|&d| section_candidates(d, ctx)).collect();
    Ok(cartesian(&candidates)
        .into_iter()
        .map(|rs| Stratum {
            bn_numbers: rs
                .iter()
                .zip(&drops)
                .map(|(&r, &d)| brill_noether_number(ctx.genus, r, d))
                .collect(),
            section_indices: rs,
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuliKind {
    Empty,
    Point,
    FiberProduct,
    DisjointUnion,
}

/// The product of Picard varieties `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseDescriptor {
    pub genus: u32,
    pub degrees: Vec<i64>,
    pub dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDescriptor {
    pub index: usize,
    pub skipped: bool,
    /// Fiber dimension of `P(E_i)`; absent when skipped or when it varies by stratum.
    pub fiber_dim: Option<i64>,
}

/// One piece of a stratified descriptor. Skipped indices carry no section data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumSummary {
    pub r: Vec<Option<u64>>,
    pub bn_ok: Vec<Option<bool>>,
    pub dimension: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliDescriptor {
    pub kind: ModuliKind,
    pub base: BaseDescriptor,
    pub factors: Vec<FactorDescriptor>,
    pub strata: Vec<StratumSummary>,
    pub dimension: Option<i64>,
    pub euler_characteristic: i64,
    pub notes: Vec<String>,
}

const GENUS_ZERO_NOTE: &str = "genus 0: Pic is a point, so the Euler characteristic is the \
product of (fiber_dim + 1) over the remaining factors rather than 0";
const GENERAL_CURVE_NOTE: &str = "stratum dimensions assume a general curve; strata with a \
negative Brill-Noether number are empty there";
const VERTEX_NOTE: &str = "some degree increases along an arrow; at the vertex every chain \
is S-equivalent to the one with all maps zero";

impl ModuliDescriptor {
    fn base(t: &ChainType, ctx: CurveContext) -> BaseDescriptor {
        BaseDescriptor {
            genus: ctx.genus,
            degrees: t.degrees().to_vec(),
            dimension: t.len() as i64 * ctx.g(),
        }
    }

    pub fn empty(t: &ChainType, ctx: CurveContext) -> Self {
        ModuliDescriptor {
            kind: ModuliKind::Empty,
            base: Self::base(t, ctx),
            factors: Vec::new(),
            strata: Vec::new(),
            dimension: None,
            euler_characteristic: 0,
            notes: Vec::new(),
        }
    }

    pub fn point(t: &ChainType, ctx: CurveContext) -> Self {
        let mut notes = Vec::new();
        if t.degree_drops().iter().any(|&d| d < 0) {
            notes.push(VERTEX_NOTE.to_string());
        }
        ModuliDescriptor {
            kind: ModuliKind::Point,
            base: Self::base(t, ctx),
            factors: (1..=t.n())
                .map(|index| FactorDescriptor {
                    index,
                    skipped: true,
                    fiber_dim: None,
                })
                .collect(),
            strata: Vec::new(),
            dimension: Some(0),
            euler_characteristic: 1,
            notes,
        }
    }

    /// Fiber product over `Z` of the `P(E_i)` for `i` not in `skipped`.
    ///
    /// Requires `d'_i > 2g - 2` for every kept index. A kept index whose
    /// bundle has rank 0 makes the whole product empty.
    pub fn fiber_product(t: &ChainType, ctx: CurveContext, skipped: &WallSet) -> Result<Self> {
        require_rank_one(t)?;
        let drops = t.degree_drops();
        let mut factors = Vec::with_capacity(drops.len());
        for (k, &d) in drops.iter().enumerate() {
            let index = k + 1;
            if skipped.contains(&index) {
                factors.push(FactorDescriptor {
                    index,
                    skipped: true,
                    fiber_dim: None,
                });
                continue;
            }
            if d <= ctx.canonical_degree() {
                return Err(Error::UnsupportedRegime(format!(
                    "d'_{index} = {d} is not above 2g - 2 = {}",
                    ctx.canonical_degree()
                )));
            }
            let fiber = d - ctx.g();
            if fiber < 0 {
                return Ok(Self::empty(t, ctx));
            }
            factors.push(FactorDescriptor {
                index,
                skipped: false,
                fiber_dim: Some(fiber),
            });
        }

        let base = Self::base(t, ctx);
        let fibers = factors.iter().filter_map(|f| f.fiber_dim);
        let dimension = base.dimension + fibers.clone().sum::<i64>();
        let mut notes = Vec::new();
        let euler = if ctx.genus == 0 {
            notes.push(GENUS_ZERO_NOTE.to_string());
            fibers.map(|f| f + 1).product()
        } else {
            0
        };
        Ok(ModuliDescriptor {
            kind: ModuliKind::FiberProduct,
            base,
            factors,
            strata: Vec::new(),
            dimension: Some(dimension),
            euler_characteristic: euler,
            notes,
        })
    }

    /// Disjoint union over strata `Z_r` of fiber products of the `P(E_{r_i})`,
    /// `i` not in `skipped`.
    ///
    /// A skipped arrow is zero, so its line bundle ratio is unconstrained and
    /// contributes a whole `Pic` of dimension `g` rather than a stratum.
    pub fn stratified(t: &ChainType, ctx: CurveContext, skipped: &WallSet) -> Result<Self> {
        require_rank_one(t)?;
        let drops = t.degree_drops();
        let candidates: Vec<Vec<Option<u64>>> = drops
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                if skipped.contains(&(k + 1)) {
                    vec![None]
                } else {
                    section_candidates(d, ctx).into_iter().map(Some).collect()
                }
            })
            .collect();
        let pieces = cartesian(&candidates);
        if pieces.is_empty() {
            return Ok(Self::empty(t, ctx));
        }

        let strata: Vec<StratumSummary> = pieces
            .into_iter()
            .map(|rs| {
                let rho: Vec<Option<i64>> = rs
                    .iter()
                    .zip(&drops)
                    .map(|(r, &d)| r.map(|r| brill_noether_number(ctx.genus, r, d)))
                    .collect();
                let dimension = if rho.iter().flatten().any(|&x| x < 0) {
                    None
                } else {
                    let per_index: i64 = rs
                        .iter()
                        .zip(&rho)
                        .map(|(r, rho)| match (r, rho) {
                            (Some(r), Some(rho)) => rho + *r as i64,
                            _ => ctx.g(),
                        })
                        .sum();
                    Some(ctx.g() + per_index)
                };
                StratumSummary {
                    bn_ok: rho.iter().map(|x| x.map(|x| x >= 0)).collect(),
                    r: rs,
                    dimension,
                }
            })
            .collect();

        let factors = (1..=drops.len())
            .map(|index| FactorDescriptor {
                index,
                skipped: skipped.contains(&index),
                fiber_dim: None,
            })
            .collect();
        let dimension = strata.iter().filter_map(|s| s.dimension).max();
        let mut notes = vec![GENERAL_CURVE_NOTE.to_string()];
        let euler = if ctx.genus == 0 {
            notes.push(GENUS_ZERO_NOTE.to_string());
            strata
                .iter()
                .map(|s| s.r.iter().flatten().map(|&r| r as i64 + 1).product::<i64>())
                .sum()
        } else {
            0
        };
        Ok(ModuliDescriptor {
            kind: ModuliKind::DisjointUnion,
            base: Self::base(t, ctx),
            factors,
            strata,
            dimension,
            euler_characteristic: euler,
            notes,
        })
    }

    /// Equality ignoring the explanatory notes.
    pub fn same_structure(&self, other: &ModuliDescriptor) -> bool {
        self.kind == other.kind
            && self.base == other.base
            && self.factors == other.factors
            && self.strata == other.strata
            && self.dimension == other.dimension
            && self.euler_characteristic == other.euler_characteristic
    }

    pub fn skipped(&self) -> WallSet {
        self.factors
            .iter()
            .filter(|f| f.skipped)
            .map(|f| f.index)
            .collect()
    }
}

/// Whether the semistable moduli space at `alpha` is nonempty.
///
/// Outside the closed cone nothing is semistable and at the vertex there is
/// always the chain with all maps zero. Elsewhere on the wall `I` (or in the
/// open cone, `I` empty) a semistable chain must have `phi_j` nonzero for
/// every `j` outside `I`, which needs `d_{j-1} >= d_j`.
pub fn moduli_nonempty(t: &ChainType, alpha: &AlphaVector) -> Result<bool> {
    require_rank_one(t)?;
    Ok(nonempty_in(t, &build_cone(t).classify(alpha)?))
}

fn nonempty_in(t: &ChainType, class: &ChamberClass) -> bool {
    match class {
        ChamberClass::Outside => false,
        ChamberClass::Wall(walls) if walls.len() == t.n() => true,
        other => {
            let walls = other.active_walls().unwrap_or_default();
            t.degree_drops()
                .iter()
                .enumerate()
                .all(|(k, &d)| d >= 0 || walls.contains(&(k + 1)))
        }
    }
}

pub fn describe_moduli(
    t: &ChainType,
    ctx: CurveContext,
    alpha: &AlphaVector,
) -> Result<ModuliDescriptor> {
    require_rank_one(t)?;
    describe_in(t, ctx, &build_cone(t).classify(alpha)?)
}

/// The descriptor for any parameter in the given chamber class.
pub fn describe_in(
    t: &ChainType,
    ctx: CurveContext,
    class: &ChamberClass,
) -> Result<ModuliDescriptor> {
    require_rank_one(t)?;
    let walls = match class {
        ChamberClass::Outside => return Ok(ModuliDescriptor::empty(t, ctx)),
        ChamberClass::Wall(walls) if walls.len() == t.n() => {
            return Ok(ModuliDescriptor::point(t, ctx))
        }
        other => other.active_walls().unwrap_or_default(),
    };
    if !nonempty_in(t, class) {
        return Ok(ModuliDescriptor::empty(t, ctx));
    }
    let large = t
        .degree_drops()
        .iter()
        .enumerate()
        .all(|(k, &d)| walls.contains(&(k + 1)) || d > ctx.canonical_degree());
    if large {
        ModuliDescriptor::fiber_product(t, ctx, &walls)
    } else {
        ModuliDescriptor::stratified(t, ctx, &walls)
    }
}

pub fn euler_characteristic(t: &ChainType, ctx: CurveContext, alpha: &AlphaVector) -> Result<i64> {
    Ok(describe_moduli(t, ctx, alpha)?.euler_characteristic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> ChainType {
        s.parse().unwrap()
    }

    fn alpha(s: &str) -> AlphaVector {
        s.parse().unwrap()
    }

    fn g(genus: u32) -> CurveContext {
        CurveContext::new(genus)
    }

    #[test]
    fn dimension_formula_examples() {
        assert_eq!(dimension_formula(&t("1,1,1;5,1,0"), g(2)), 7);
        for genus in 0..5 {
            for degs in [[3, 1, 0], [10, -2, -7], [0, 4, 4]] {
                let ty = ChainType::rank_one(degs.to_vec()).unwrap();
                assert_eq!(
                    dimension_formula(&ty, g(genus)),
                    i64::from(genus) + degs[0] - degs[2]
                );
            }
        }
        assert_eq!(dimension_formula(&t("2,1;1,0"), g(2)), 5);
    }

    #[test]
    fn strata_examples() {
        let s = enumerate_strata(&t("1,1,1;3,1,0"), g(0)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].fiber_dims(), &[2, 1]);

        let s = enumerate_strata(&t("1,1;1,0"), g(1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].fiber_dims(), &[0]);

        let s = enumerate_strata(&t("1,1;2,0"), g(2)).unwrap();
        let rs: Vec<u64> = s.iter().map(|x| x.section_indices[0]).collect();
        assert_eq!(rs, vec![0, 1]);
        assert_eq!(s[1].bn_numbers, vec![0]);
        assert_eq!(s[1].bn_ok(), vec![true]);
        assert_eq!(s[0].bn_numbers, vec![2]);

        assert!(enumerate_strata(&t("1,1;0,2"), g(1)).unwrap().is_empty());
        assert!(enumerate_strata(&t("2,1;0,2"), g(1)).is_err());
    }

    #[test]
    fn section_candidates_cover_regimes() {
        assert_eq!(section_candidates(0, g(3)), vec![0]);
        assert_eq!(section_candidates(4, g(3)), vec![1, 2]);
        assert_eq!(section_candidates(2, g(3)), vec![0, 1]);
        assert_eq!(section_candidates(5, g(3)), vec![2]);
        assert_eq!(section_candidates(-1, g(0)), Vec::<u64>::new());
        assert_eq!(section_candidates(0, g(0)), vec![0]);
        // Canonical degree: the canonical bundle has g sections.
        let top = section_candidates(4, g(3));
        assert_eq!(*top.last().unwrap(), 2);
        assert_eq!(brill_noether_number(3, 2, 4), 0);
    }

    #[test]
    fn describe_examples() {
        let ty = t("1,1,1;3,1,0");
        let d = describe_moduli(&ty, g(0), &alpha("3,4")).unwrap();
        assert_eq!(d.kind, ModuliKind::FiberProduct);
        assert_eq!(d.base.dimension, 0);
        let fibers: Vec<_> = d.factors.iter().map(|f| f.fiber_dim).collect();
        assert_eq!(fibers, vec![Some(2), Some(1)]);
        assert_eq!(d.dimension, Some(3));
        assert_eq!(d.euler_characteristic, 6);
        assert_eq!(d.notes.len(), 1);

        let d = describe_moduli(&ty, g(0), &alpha("1,4")).unwrap();
        assert_eq!(d.kind, ModuliKind::FiberProduct);
        assert_eq!(d.skipped(), WallSet::from([1]));
        assert_eq!(d.dimension, Some(1));
        assert_eq!(d.euler_characteristic, 2);

        for genus in 0..4 {
            let d = describe_moduli(&ty, g(genus), &alpha("2,3")).unwrap();
            assert_eq!(d.kind, ModuliKind::Point);
            assert_eq!(d.euler_characteristic, 1);
        }

        let d = describe_moduli(&t("1,1,1;0,5,1"), g(1), &alpha("10,10")).unwrap();
        assert_eq!(d.kind, ModuliKind::Empty);
        assert_eq!(d.euler_characteristic, 0);
        let d = describe_moduli(&t("1,1;3,1"), g(1), &alpha("0")).unwrap();
        assert_eq!(d.kind, ModuliKind::Empty);
    }

    #[test]
    fn euler_examples() {
        let ty = t("1,1;5,1");
        let cone = build_cone(&ty);
        let inside = cone.interior_sample(&crate::Rational::one()).unwrap();
        assert_eq!(euler_characteristic(&ty, g(2), &inside).unwrap(), 0);
        assert_eq!(euler_characteristic(&t("1,1,1;3,1,0"), g(0), &alpha("3,4")).unwrap(), 6);
        assert_eq!(euler_characteristic(&t("1,1,1;3,1,0"), g(3), &alpha("2,3")).unwrap(), 1);
    }

    #[test]
    fn nonempty_examples() {
        assert!(moduli_nonempty(&t("1,1,1;3,1,0"), &alpha("3,4")).unwrap());
        assert!(!moduli_nonempty(&t("1,1;0,5"), &alpha("0")).unwrap());
        assert!(!moduli_nonempty(&t("1,1;3,1"), &alpha("0")).unwrap());
        // The vertex of (1,1;0,5) is alpha = -5.
        assert!(moduli_nonempty(&t("1,1;0,5"), &alpha("-5")).unwrap());
    }

    #[test]
    fn nonempty_on_wall_skipping_increasing_arrow() {
        // d' = (-5, 5): wall {1} kills phi_1, the only arrow that had to vanish.
        let ty = t("1,1,1;0,5,0");
        let cone = build_cone(&ty);
        let a = cone
            .point_with_slack(&[crate::Rational::zero(), crate::Rational::one()])
            .unwrap();
        assert_eq!(cone.classify(&a).unwrap(), ChamberClass::Wall(WallSet::from([1])));
        assert!(moduli_nonempty(&ty, &a).unwrap());
        let d = describe_moduli(&ty, g(1), &a).unwrap();
        assert_eq!(d.kind, ModuliKind::FiberProduct);
        assert_eq!(d.dimension, Some(3 + 4));
    }

    #[test]
    fn stratified_regime() {
        // g = 3, d' = (2, 6): first arrow below the canonical degree.
        let ty = t("1,1,1;8,6,0");
        let d = describe_moduli(&ty, g(3), &alpha("100,100")).unwrap();
        assert_eq!(d.kind, ModuliKind::DisjointUnion);
        assert_eq!(d.strata.len(), 2);
        assert_eq!(d.strata[0].r, vec![Some(0), Some(3)]);
        assert_eq!(d.strata[1].r, vec![Some(1), Some(3)]);
        // rho(0, 2) = 2, rho(1, 2) = 3 - 2 * 2 < 0
        assert_eq!(d.strata[0].dimension, Some(3 + 2 + 3 + 3));
        assert_eq!(d.strata[1].bn_ok, vec![Some(false), Some(true)]);
        assert_eq!(d.strata[1].dimension, None);
        assert_eq!(d.dimension, Some(11));
        assert_eq!(d.euler_characteristic, 0);
        assert!(d.dimension.unwrap() <= 3 + 8);
    }

    #[test]
    fn descriptor_json_shape() {
        let d = describe_moduli(&t("1,1,1;3,1,0"), g(0), &alpha("1,4")).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["kind"], "fiber_product");
        assert_eq!(v["base"]["degrees"], serde_json::json!([3, 1, 0]));
        assert_eq!(v["factors"][0]["skipped"], true);
        assert_eq!(v["factors"][1]["fiber_dim"], 1);
        assert_eq!(v["euler_characteristic"], 2);
    }
}
