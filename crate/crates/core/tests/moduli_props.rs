use chainstab::chain::{ChainType, RankOneChain};
use chainstab::moduli::{
    describe_moduli, dimension_formula, enumerate_strata, euler_characteristic, moduli_nonempty,
    section_candidates,
};
use chainstab::stability::is_semistable;
use chainstab::{build_cone, sampling, CurveContext, ModuliDescriptor, ModuliKind, WallSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every arrow pattern allowed by the degrees, checked one by one.
fn some_semistable_chain(t: &ChainType, alpha: &chainstab::AlphaVector) -> bool {
    let drops = t.degree_drops();
    let n = drops.len();
    (0u32..1 << n).any(|mask| {
        let phi: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
        if phi.iter().zip(&drops).any(|(&p, &d)| p && d < 0) {
            return false;
        }
        let c = RankOneChain::new(t.degrees().to_vec(), phi).unwrap();
        is_semistable(&c, alpha).unwrap().semistable
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn interior_dimension_matches_formula(n in 1usize..=5, genus in 0u32..=4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let ctx = CurveContext::new(genus);
        let t = sampling::large_degree_type(&mut rng, n, genus);
        let cone = build_cone(&t);
        let alpha = sampling::wall_point(&mut rng, &cone, &WallSet::new());
        let d = describe_moduli(&t, ctx, &alpha).unwrap();
        prop_assert_eq!(d.kind, ModuliKind::FiberProduct);
        prop_assert_eq!(d.dimension, Some(dimension_formula(&t, ctx)));
        if genus > 0 {
            prop_assert_eq!(d.euler_characteristic, 0);
        } else {
            let expected: i64 = t.degree_drops().iter().map(|x| x + 1).product();
            prop_assert_eq!(d.euler_characteristic, expected);
            prop_assert!(!d.notes.is_empty());
        }
    }

    #[test]
    fn strata_respect_the_expected_dimension(n in 1usize..=4, genus in 0u32..=4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let ctx = CurveContext::new(genus);
        let c = sampling::rank_one_chain(&mut rng, n, 12);
        let t = c.chain_type();
        prop_assume!(t.degree_drops().iter().all(|&d| d >= 0));
        let bound = dimension_formula(&t, ctx);
        for s in enumerate_strata(&t, ctx).unwrap() {
            if let Some(dim) = s.expected_dimension(ctx) {
                prop_assert!(dim <= bound);
            }
        }
        let d = ModuliDescriptor::stratified(&t, ctx, &WallSet::new()).unwrap();
        if let Some(dim) = d.dimension {
            prop_assert!(dim <= bound);
        }
        for &drop in &t.degree_drops() {
            for r in section_candidates(drop, ctx) {
                prop_assert!(r as i64 <= drop.max(0));
            }
        }
    }

    #[test]
    fn regimes_agree_on_large_degrees(n in 1usize..=4, genus in 0u32..=4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let ctx = CurveContext::new(genus);
        let t = sampling::large_degree_type(&mut rng, n, genus);
        let skipped = sampling::subset(&mut rng, n);
        let fiber = ModuliDescriptor::fiber_product(&t, ctx, &skipped).unwrap();
        let strat = ModuliDescriptor::stratified(&t, ctx, &skipped).unwrap();
        prop_assert_eq!(strat.strata.len(), 1);
        let only = &strat.strata[0];
        for (k, (r, &d)) in only.r.iter().zip(&t.degree_drops()).enumerate() {
            if skipped.contains(&(k + 1)) {
                prop_assert_eq!(*r, None);
            } else {
                prop_assert_eq!(*r, Some((d - i64::from(genus)) as u64));
            }
        }
        prop_assert_eq!(strat.dimension, fiber.dimension);
        prop_assert_eq!(strat.euler_characteristic, fiber.euler_characteristic);
        prop_assert_eq!(strat.skipped(), fiber.skipped());
    }

    #[test]
    fn skipping_more_never_grows(n in 1usize..=4, genus in 0u32..=3, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let ctx = CurveContext::new(genus);
        let t = sampling::large_degree_type(&mut rng, n, genus);
        let small = sampling::subset(&mut rng, n);
        let large: WallSet = small.union(&sampling::subset(&mut rng, n)).copied().collect();
        let a = ModuliDescriptor::fiber_product(&t, ctx, &small).unwrap();
        let b = ModuliDescriptor::fiber_product(&t, ctx, &large).unwrap();
        prop_assert!(b.dimension.unwrap() <= a.dimension.unwrap());
    }

    #[test]
    fn nonempty_iff_some_chain_is_semistable(n in 1usize..=4, genus in 0u32..=3, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let ctx = CurveContext::new(genus);
        let t = sampling::rank_one_chain(&mut rng, n, 6).chain_type();
        let cone = build_cone(&t);
        for _ in 0..10 {
            let alpha = sampling::alpha(&mut rng, &cone);
            let expected = some_semistable_chain(&t, &alpha);
            prop_assert_eq!(moduli_nonempty(&t, &alpha).unwrap(), expected);
            let d = describe_moduli(&t, ctx, &alpha).unwrap();
            prop_assert_eq!(d.kind != ModuliKind::Empty, expected);
            if genus > 0 && d.kind != ModuliKind::Point {
                prop_assert_eq!(euler_characteristic(&t, ctx, &alpha).unwrap(), 0);
            }
        }
    }
}
