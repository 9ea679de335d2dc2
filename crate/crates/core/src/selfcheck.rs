//! Seeded property suites, runnable from the command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chamber::{build_cone, matrix_determinant_identity, ChamberClass, WallSet};
use crate::error::Result;
use crate::git::correspondence_check;
use crate::linalg;
use crate::moduli::CurveContext;
use crate::sampling;
use crate::stability::{is_semistable, is_stable_fast};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl SelfcheckReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

#[derive(Default)]
struct Tally {
    passed: u64,
    failed: u64,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn finish(self, name: &'static str) -> SuiteReport {
        SuiteReport {
            name,
            passed: self.passed,
            failed: self.failed,
        }
    }
}

/// Runs every suite with `samples` cases each (the oracle suite uses
/// `samples` chains with 20 parameters apiece).
pub fn run(seed: u64, samples: usize) -> Result<SelfcheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        determinant_suite(&mut rng, samples)?,
        vertex_suite(&mut rng, samples)?,
        oracle_suite(&mut rng, samples)?,
        correspondence_suite(&mut rng, samples)?,
    ];
    Ok(SelfcheckReport { seed, suites })
}

fn determinant_suite<R: Rng>(rng: &mut R, samples: usize) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    for _ in 0..samples {
        let t = sampling::chain_type(rng, 6, 5, 20);
        let (elimination, closed) = matrix_determinant_identity(&t)?;
        tally.record(elimination == closed);
    }
    Ok(tally.finish("determinant"))
}

fn vertex_suite<R: Rng>(rng: &mut R, samples: usize) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    for _ in 0..samples {
        let t = sampling::chain_type(rng, 6, 5, 20);
        let cone = build_cone(&t);
        let on_walls = cone
            .functionals()
            .iter()
            .zip(cone.constants())
            .all(|(f, c)| f.dot(cone.vertex()).as_ref() == Ok(c));
        let rhs = cone.constants().iter().cloned().collect();
        let solved = linalg::solve(cone.coeff_matrix(), &rhs)?;
        tally.record(on_walls && &solved == cone.vertex());
    }
    Ok(tally.finish("vertex"))
}

fn oracle_suite<R: Rng>(rng: &mut R, samples: usize) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    for _ in 0..samples {
        let n = rng.gen_range(1..=8);
        let c = sampling::rank_one_chain(rng, n, 10);
        let cone = build_cone(&c.chain_type());
        for _ in 0..20 {
            let alpha = sampling::alpha(rng, &cone);
            let verdict = is_semistable(&c, &alpha)?;
            let fast = is_stable_fast(&c, &alpha)?;
            let interior = cone.classify(&alpha)? == ChamberClass::Interior;
            let semistable_is_stable = !interior || !verdict.semistable || verdict.stable;
            tally.record(fast == verdict.stable && semistable_is_stable);
        }
    }
    Ok(tally.finish("oracle"))
}

fn correspondence_suite<R: Rng>(rng: &mut R, samples: usize) -> Result<SuiteReport> {
    let mut tally = Tally::default();
    for _ in 0..samples {
        let n = rng.gen_range(1..=4);
        let ctx = CurveContext::new(rng.gen_range(0..=3));
        let t = sampling::large_degree_type(rng, n, ctx.genus);
        let cone = build_cone(&t);
        let walls = sampling::subset(rng, n);
        let k = sampling::character(rng, n, &walls);
        let alpha = sampling::wall_point(rng, &cone, &walls);
        tally.record(correspondence_check(&t, ctx, &k, &alpha)?);

        let other: WallSet = sampling::subset(rng, n);
        if other != walls {
            let mismatched = sampling::wall_point(rng, &cone, &other);
            tally.record(!correspondence_check(&t, ctx, &k, &mismatched)?);
        }
    }
    Ok(tally.finish("correspondence"))
}
