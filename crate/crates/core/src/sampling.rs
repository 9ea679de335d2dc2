//! Random generators for sweeps and self-checks.
//!
//! Parameters are sampled so that walls and the vertex are hit with positive
//! probability: a point is produced from prescribed slacks, some of which are
//! zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{AlphaVector, ChainType, RankOneChain};
use crate::chamber::{StabilityCone, WallSet};
use crate::git::CharacterTuple;
use crate::rational::Rational;

/// The generator used by sweeps and self-checks.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(lo * q..=hi * q);
    Rational::new(p, q).expect("positive denominator")
}

fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let q = rng.gen_range(1..=6);
    Rational::new(rng.gen_range(1..=40), q).expect("positive denominator")
}

/// A type with `1 <= n <= max_n`, ranks in `1..=max_rank`, degrees in `-deg..=deg`.
pub fn chain_type<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_rank: u64, deg: i64) -> ChainType {
    let n = rng.gen_range(1..=max_n);
    let ranks = (0..=n).map(|_| rng.gen_range(1..=max_rank)).collect();
    let degrees = (0..=n).map(|_| rng.gen_range(-deg..=deg)).collect();
    ChainType::new(ranks, degrees).expect("valid random type")
}

/// A rank-one chain with `n` arrows and degrees in `-deg..=deg`.
///
/// Half the time the degrees are sorted so that every arrow may be nonzero.
/// Each admissible arrow is nonzero with probability 3/4.
pub fn rank_one_chain<R: Rng + ?Sized>(rng: &mut R, n: usize, deg: i64) -> RankOneChain {
    let mut degrees: Vec<i64> = (0..=n).map(|_| rng.gen_range(-deg..=deg)).collect();
    if rng.gen_bool(0.5) {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
    }
    let phi = (0..n)
        .map(|i| degrees[i] >= degrees[i + 1] && rng.gen_bool(0.75))
        .collect();
    RankOneChain::new(degrees, phi).expect("flags respect degrees")
}

pub fn subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WallSet {
    (1..=n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A point with active set exactly `walls`.
pub fn wall_point<R: Rng + ?Sized>(rng: &mut R, cone: &StabilityCone, walls: &WallSet) -> AlphaVector {
    let slack: Vec<Rational> = (1..=cone.n())
        .map(|i| {
            if walls.contains(&i) {
                Rational::zero()
            } else {
                positive_rational(rng)
            }
        })
        .collect();
    cone.point_with_slack(&slack).expect("coefficient matrix is invertible")
}

/// A parameter that is inside, on a wall, or outside the cone, each with
/// substantial probability.
pub fn alpha<R: Rng + ?Sized>(rng: &mut R, cone: &StabilityCone) -> AlphaVector {
    match rng.gen_range(0..10) {
        0..=3 => {
            let walls = subset(rng, cone.n());
            wall_point(rng, cone, &walls)
        }
        4..=6 => {
            let slack: Vec<Rational> = (0..cone.n())
                .map(|_| match rng.gen_range(0..3) {
                    0 => -positive_rational(rng),
                    1 => Rational::zero(),
                    _ => positive_rational(rng),
                })
                .collect();
            cone.point_with_slack(&slack).expect("coefficient matrix is invertible")
        }
        _ => AlphaVector::new(
            cone.vertex()
                .iter()
                .map(|v| v + rational(rng, -20, 20, 4))
                .collect(),
        ),
    }
}

/// Exponents that vanish exactly on `zeros` and are positive elsewhere.
pub fn character<R: Rng + ?Sized>(rng: &mut R, n: usize, zeros: &WallSet) -> CharacterTuple {
    CharacterTuple::new(
        (1..=n)
            .map(|i| if zeros.contains(&i) { 0 } else { rng.gen_range(1..=20) })
            .collect(),
    )
}

/// A character tuple with at least one negative exponent.
pub fn outside_character<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CharacterTuple {
    let mut k: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=20)).collect();
    let i = rng.gen_range(0..n);
    k[i] = -rng.gen_range(1..=20);
    CharacterTuple::new(k)
}

/// A rank-one type with every `d_{i-1} - d_i > 2g - 2`, all drops nonnegative.
pub fn large_degree_type<R: Rng + ?Sized>(rng: &mut R, n: usize, genus: u32) -> ChainType {
    let floor = (2 * i64::from(genus) - 1).max(0);
    let mut degrees = vec![0; n + 1];
    degrees[n] = rng.gen_range(-5..=5);
    for i in (1..=n).rev() {
        degrees[i - 1] = degrees[i] + floor + rng.gen_range(0..=6);
    }
    ChainType::rank_one(degrees).expect("valid rank-one type")
}
