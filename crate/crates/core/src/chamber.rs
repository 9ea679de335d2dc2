//! The stability cone of a chain type and the walls of its closure.
//!
//! For `i = 0..n-1` the `i`-th standard subchain `C_i` gives the linear
//! condition `mu(C_i) < mu(C)`, written `f_i(alpha) < c_i` with
//!
//! ```text
//! f_i(alpha) = R'_i * sum_{k<=i} alpha_k r_k - R_i * sum_{k>i} alpha_k r_k
//! c_i        = R_i * sum_{k>i} d_k - R'_i * sum_{k<=i} d_k
//! ```
//!
//! where `R_i = r_0 + .. + r_i` and `R'_i = r_{i+1} + .. + r_n`. The cone is the
//! intersection of these open half-spaces. Wall `i + 1` is the hyperplane
//! `f_i = c_i`; walls are numbered `1..=n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chain::{AlphaVector, ChainType};
use crate::error::{Error, Result};
use crate::linalg::{self, RationalMatrix, RationalVector};
use crate::rational::Rational;

/// A set of 1-based wall indices.
pub type WallSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityCone {
    #[serde(skip)]
    chain_type: ChainType,
    functionals: Vec<RationalVector>,
    constants: Vec<Rational>,
    vertex: RationalVector,
    #[serde(skip)]
    coeff_matrix: RationalMatrix,
}

/// Where a parameter sits relative to the closed cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChamberClass {
    /// Some defining inequality fails.
    Outside,
    /// Exactly the listed walls are active. The full set only occurs at the vertex.
    Wall(WallSet),
    /// Every inequality is strict.
    Interior,
}

impl ChamberClass {
    /// The active walls: empty for the interior, `None` outside the closed cone.
    pub fn active_walls(&self) -> Option<WallSet> {
        match self {
            ChamberClass::Outside => None,
            ChamberClass::Interior => Some(WallSet::new()),
            ChamberClass::Wall(set) => Some(set.clone()),
        }
    }

    pub fn from_active(active: WallSet) -> ChamberClass {
        if active.is_empty() {
            ChamberClass::Interior
        } else {
            ChamberClass::Wall(active)
        }
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, ChamberClass::Interior)
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, ChamberClass::Outside)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ChamberClass::Outside => "outside",
            ChamberClass::Wall(_) => "wall",
            ChamberClass::Interior => "interior",
        }
    }
}

pub fn build_cone(t: &ChainType) -> StabilityCone {
    let n = t.n();
    let ranks: Vec<Rational> = t.ranks().iter().map(|&r| Rational::from(r)).collect();
    let degrees: Vec<Rational> = t.degrees().iter().map(|&d| Rational::from(d)).collect();
    let sum = |xs: &[Rational]| -> Rational { xs.iter().sum() };

    let mut functionals = Vec::with_capacity(n);
    let mut constants = Vec::with_capacity(n);
    for i in 0..n {
        let head_rank = sum(&ranks[..=i]);
        let tail_rank = sum(&ranks[i + 1..]);
        // Column k - 1 holds the coefficient of alpha_k.
        let row: RationalVector = (1..=n)
            .map(|k| {
                if k <= i {
                    &tail_rank * &ranks[k]
                } else {
                    -(&head_rank * &ranks[k])
                }
            })
            .collect();
        let c = &head_rank * sum(&degrees[i + 1..]) - &tail_rank * sum(&degrees[..=i]);
        functionals.push(row);
        constants.push(c);
    }

    let base = &degrees[0] / &ranks[0];
    let vertex = (1..=n).map(|k| &base - &degrees[k] / &ranks[k]).collect();
    let coeff_matrix =
        RationalMatrix::new(functionals.clone()).expect("functionals have equal length");

    StabilityCone {
        chain_type: t.clone(),
        functionals,
        constants,
        vertex,
        coeff_matrix,
    }
}

/// `(-1)^n r_0 .. r_n (r_0 + .. + r_n)^(n-1)`.
pub fn closed_form_determinant(t: &ChainType) -> Rational {
    let n = t.n();
    let product: Rational = t.ranks().iter().map(|&r| Rational::from(r)).product();
    let total = Rational::from(t.total_rank());
    let power: Rational = std::iter::repeat(total).take(n - 1).product();
    let value = product * power;
    if n % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Determinant of the coefficient matrix by elimination, paired with the closed form.
pub fn matrix_determinant_identity(t: &ChainType) -> Result<(Rational, Rational)> {
    let cone = build_cone(t);
    Ok((linalg::det(&cone.coeff_matrix)?, closed_form_determinant(t)))
}

impl StabilityCone {
    pub fn chain_type(&self) -> &ChainType {
        &self.chain_type
    }

    pub fn n(&self) -> usize {
        self.constants.len()
    }

    pub fn functionals(&self) -> &[RationalVector] {
        &self.functionals
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn vertex(&self) -> &RationalVector {
        &self.vertex
    }

    pub fn vertex_alpha(&self) -> AlphaVector {
        AlphaVector::new(self.vertex.clone())
    }

    pub fn coeff_matrix(&self) -> &RationalMatrix {
        &self.coeff_matrix
    }

    fn check(&self, alpha: &AlphaVector) -> Result<()> {
        if alpha.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: alpha.len(),
            });
        }
        Ok(())
    }

    /// `c_i - f_i(alpha)` for each `i`; positive on the open side.
    pub fn slack(&self, alpha: &AlphaVector) -> Result<Vec<Rational>> {
        self.check(alpha)?;
        self.functionals
            .iter()
            .zip(&self.constants)
            .map(|(f, c)| Ok(c - f.dot(alpha.as_vector())?))
            .collect()
    }

    pub fn classify(&self, alpha: &AlphaVector) -> Result<ChamberClass> {
        let slack = self.slack(alpha)?;
        if slack.iter().any(Rational::is_negative) {
            return Ok(ChamberClass::Outside);
        }
        let active = slack
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_zero())
            .map(|(i, _)| i + 1)
            .collect();
        Ok(ChamberClass::from_active(active))
    }

    /// The point `v_0 + t * (0,..,0,1)`, which lies in the open cone for `t > 0`.
    pub fn interior_sample(&self, t: &Rational) -> Result<AlphaVector> {
        if !t.is_positive() {
            return Err(Error::Domain(format!("ray parameter must be positive, got {t}")));
        }
        let n = self.n();
        Ok(AlphaVector::new(
            self.vertex
                .iter()
                .enumerate()
                .map(|(k, v)| if k + 1 == n { v + t } else { v.clone() })
                .collect(),
        ))
    }

    /// The unique parameter with the prescribed slacks `c_i - f_i(alpha)`.
    ///
    /// Zero slack on exactly the rows of a wall set `I` and positive slack
    /// elsewhere produces a point of the wall `I`.
    pub fn point_with_slack(&self, slack: &[Rational]) -> Result<AlphaVector> {
        if slack.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: slack.len(),
            });
        }
        let rhs: RationalVector = self.constants.iter().zip(slack).map(|(c, s)| c - s).collect();
        Ok(AlphaVector::new(linalg::solve(&self.coeff_matrix, &rhs)?))
    }

    pub fn geometry_witness(&self, witness: &Witness<'_>) -> Result<bool> {
        let point = match witness {
            Witness::Ray { alpha, t } => {
                self.require_interior(alpha)?;
                if !t.is_positive() {
                    return Err(Error::Domain(format!("ray parameter must be positive, got {t}")));
                }
                // v0 + t (alpha - v0)
                self.vertex.lerp(alpha.as_vector(), t)?
            }
            Witness::Segment { alpha, beta, t } => {
                self.require_interior(alpha)?;
                self.require_interior(beta)?;
                if t.is_negative() || **t > 1 {
                    return Err(Error::Domain(format!(
                        "segment parameter must lie in [0, 1], got {t}"
                    )));
                }
                alpha.as_vector().lerp(beta.as_vector(), t)?
            }
        };
        Ok(self.classify(&AlphaVector::new(point))?.is_interior())
    }

    fn require_interior(&self, alpha: &AlphaVector) -> Result<()> {
        if self.classify(alpha)?.is_interior() {
            Ok(())
        } else {
            Err(Error::Domain(format!("{alpha} is not in the open cone")))
        }
    }
}

/// A point on a ray from the vertex or on a segment between interior points.
#[derive(Clone, Copy, Debug)]
pub enum Witness<'a> {
    Ray {
        alpha: &'a AlphaVector,
        t: &'a Rational,
    },
    Segment {
        alpha: &'a AlphaVector,
        beta: &'a AlphaVector,
        t: &'a Rational,
    },
}

pub fn classify(cone: &StabilityCone, alpha: &AlphaVector) -> Result<ChamberClass> {
    cone.classify(alpha)
}

pub fn interior_sample(cone: &StabilityCone, t: &Rational) -> Result<AlphaVector> {
    cone.interior_sample(t)
}

pub fn geometry_witness(cone: &StabilityCone, witness: &Witness<'_>) -> Result<bool> {
    cone.geometry_witness(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn cone(s: &str) -> StabilityCone {
        build_cone(&s.parse().unwrap())
    }

    fn alpha(s: &str) -> AlphaVector {
        s.parse().unwrap()
    }

    fn walls(xs: &[usize]) -> ChamberClass {
        ChamberClass::Wall(xs.iter().copied().collect())
    }

    #[test]
    fn cone_examples() {
        let c = cone("1,1,1;3,1,0");
        assert_eq!(
            c.functionals(),
            &[RationalVector::from_ints([-1, -1]), RationalVector::from_ints([1, -2])]
        );
        assert_eq!(c.constants(), &[Rational::from(-5), Rational::from(-4)]);
        assert_eq!(c.vertex(), &RationalVector::from_ints([2, 3]));

        let c = cone("2,1;1,0");
        assert_eq!(c.functionals(), &[RationalVector::from_ints([-2])]);
        assert_eq!(c.constants(), &[Rational::from(-1)]);
        assert_eq!(c.vertex(), &RationalVector::new(vec![ratio(1, 2)]));

        for (d0, d1) in [(3, 1), (0, 5), (-2, -2)] {
            let c = build_cone(&ChainType::rank_one(vec![d0, d1]).unwrap());
            assert_eq!(c.functionals(), &[RationalVector::from_ints([-1])]);
            assert_eq!(c.constants(), &[Rational::from(d1 - d0)]);
            assert_eq!(c.vertex(), &RationalVector::from_ints([d0 - d1]));
        }
    }

    #[test]
    fn determinant_examples() {
        let det = |s: &str| matrix_determinant_identity(&s.parse().unwrap()).unwrap();
        assert_eq!(det("1,1,1;0,0,0"), (Rational::from(3), Rational::from(3)));
        assert_eq!(det("1,1;0,0"), (Rational::from(-1), Rational::from(-1)));
        assert_eq!(det("2,3;0,0"), (Rational::from(-6), Rational::from(-6)));
    }

    #[test]
    fn classify_examples() {
        let c = cone("1,1,1;3,1,0");
        assert_eq!(c.classify(&alpha("3,4")).unwrap(), ChamberClass::Interior);
        assert_eq!(c.classify(&alpha("2,3")).unwrap(), walls(&[1, 2]));
        assert_eq!(c.classify(&alpha("1,4")).unwrap(), walls(&[1]));
        assert_eq!(c.classify(&alpha("1,1")).unwrap(), ChamberClass::Outside);
        // On wall 2 but violating wall 1's inequality.
        assert_eq!(c.classify(&alpha("0,2")).unwrap(), ChamberClass::Outside);
        assert!(c.classify(&alpha("1")).is_err());
    }

    #[test]
    fn interior_sample_examples() {
        let c = cone("1,1,1;3,1,0");
        let a = c.interior_sample(&Rational::one()).unwrap();
        assert_eq!(a, alpha("2,4"));
        assert!(c.classify(&a).unwrap().is_interior());

        let c = cone("1,1;3,1");
        let a = c.interior_sample(&ratio(1, 2)).unwrap();
        assert_eq!(a, alpha("5/2"));
        assert!(c.classify(&a).unwrap().is_interior());

        let c = cone("2,1;1,0");
        let a = c.interior_sample(&Rational::from(2)).unwrap();
        assert_eq!(a, alpha("5/2"));
        assert!(c.classify(&a).unwrap().is_interior());

        assert!(c.interior_sample(&Rational::zero()).is_err());
        assert!(c.interior_sample(&ratio(-1, 3)).is_err());
    }

    #[test]
    fn witness_examples() {
        let c = cone("1,1,1;3,1,0");
        let (a, b) = (alpha("3,4"), alpha("2,4"));
        let seven = Rational::from(7);
        let half = ratio(1, 2);
        assert!(c.geometry_witness(&Witness::Ray { alpha: &a, t: &seven }).unwrap());
        assert!(c
            .geometry_witness(&Witness::Segment { alpha: &a, beta: &b, t: &half })
            .unwrap());
        for t in [Rational::zero(), half.clone(), Rational::one()] {
            assert!(c
                .geometry_witness(&Witness::Segment { alpha: &a, beta: &a, t: &t })
                .unwrap());
        }
        let v0 = alpha("2,3");
        assert!(c.geometry_witness(&Witness::Ray { alpha: &v0, t: &half }).is_err());
        assert!(c
            .geometry_witness(&Witness::Ray { alpha: &a, t: &Rational::zero() })
            .is_err());
        assert!(c
            .geometry_witness(&Witness::Segment { alpha: &a, beta: &b, t: &Rational::from(2) })
            .is_err());
    }

    #[test]
    fn point_with_slack_hits_the_wall() {
        let c = cone("1,1,1;3,1,0");
        let a = c
            .point_with_slack(&[Rational::zero(), Rational::from(3)])
            .unwrap();
        assert_eq!(a, alpha("1,4"));
        assert_eq!(c.classify(&a).unwrap(), walls(&[1]));
    }

    fn chain_type() -> impl Strategy<Value = ChainType> {
        (1usize..=8).prop_flat_map(|n| {
            (
                proptest::collection::vec(1u64..=5, n + 1),
                proptest::collection::vec(-20i64..=20, n + 1),
            )
                .prop_map(|(r, d)| ChainType::new(r, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn vertex_lies_on_every_wall(t in chain_type()) {
            let c = build_cone(&t);
            for (f, k) in c.functionals().iter().zip(c.constants()) {
                prop_assert_eq!(&f.dot(c.vertex()).unwrap(), k);
            }
            let solved = linalg::solve(c.coeff_matrix(), &c.constants().iter().cloned().collect()).unwrap();
            prop_assert_eq!(&solved, c.vertex());
            prop_assert_eq!(c.classify(&c.vertex_alpha()).unwrap(), ChamberClass::Wall((1..=t.n()).collect()));
        }

        #[test]
        fn wall_points_report_their_active_set(
            t in chain_type(),
            mask in any::<u16>(),
            slacks in proptest::collection::vec((1i64..=50, 1i64..=7), 8),
        ) {
            let c = build_cone(&t);
            let n = t.n();
            let active: WallSet = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let slack: Vec<Rational> = (1..=n)
                .map(|i| if active.contains(&i) { Rational::zero() } else { ratio(slacks[i - 1].0, slacks[i - 1].1) })
                .collect();
            let a = c.point_with_slack(&slack).unwrap();
            prop_assert_eq!(c.classify(&a).unwrap(), ChamberClass::from_active(active));
        }

        #[test]
        fn ray_from_vertex_stays_inside(t in chain_type(), p in 1i64..=100, q in 1i64..=9) {
            let c = build_cone(&t);
            let a = c.interior_sample(&ratio(p, q)).unwrap();
            prop_assert!(c.classify(&a).unwrap().is_interior());
        }
    }
}
