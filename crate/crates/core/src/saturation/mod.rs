//! The one-step saturation `sat′(A)` of a constructible set `A ⊂ A^n_Q` and
//! its iterate, computed as a certified under-approximation.
//!
//! A point `x` is in `sat′(A)` when some punctured curve `f : V → A^n` with
//! `f(V ∖ {x₀}) ⊂ A` has `f(x₀) = x`. The search only ranges over polynomial
//! curves of bounded degree and coefficient height, so a failed search says
//! nothing about non-membership. Every reported member carries a witness
//! that [`verify_witness`] accepts.

pub mod constructible;
pub mod poly;
pub mod witness;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use constructible::{ConstructibleSet, Formula};
pub use poly::{MPoly, Poly};
pub use witness::{curve_behaviour, verify_witness, CurveBehaviour, CurveWitness, WireWitness};

use crate::arith::rational::int;
use crate::arith::Rational;
use crate::error::{domain, Error, Result};

/// Bounds of the curve search: polynomial degree, coefficient height
/// `max(|num|, den)`, and the number of curves tried per point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    pub degree: usize,
    pub height: u64,
    pub max_candidates: u64,
}

impl Universe {
    pub fn new(degree: usize, height: u64) -> Self {
        Universe {
            degree,
            height,
            max_candidates: 1_000_000,
        }
    }
}

impl Default for Universe {
    fn default() -> Self {
        Universe::new(2, 2)
    }
}

/// Rationals of height at most `h`, ordered by height, then absolute
/// value, positive first.
pub fn bounded_rationals(h: u64) -> Vec<Rational> {
    let h = h as i64;
    let mut out: Vec<Rational> = vec![int(0)];
    for den in 1..=h {
        for num in 1..=h {
            if num.gcd(&den) == 1 {
                let x = Rational::new(BigInt::from(num), BigInt::from(den));
                out.push(x.clone());
                out.push(-x);
            }
        }
    }
    out.sort_by_key(|x| {
        let ht = x.numer().abs().max(x.denom().clone());
        (ht, x.abs(), x.is_negative())
    });
    out
}

/// Searches for a curve through `point` whose punctured image lies in `a`.
///
/// Points of `a` get the constant curve. Otherwise curves
/// `t ↦ point + Σ_{k=1}^{d} c_k t^k` with puncture 0 are tried in order of
/// increasing degree `d`, and `V` is taken to be `A¹` minus the finitely
/// many parameters that leave `a`.
pub fn sat_prime_member(
    a: &ConstructibleSet,
    point: &[Rational],
    universe: &Universe,
) -> Result<Option<CurveWitness>> {
    if a.contains(point)? {
        return Ok(Some(CurveWitness::constant(point)));
    }
    let n = a.dim();
    let coeffs = bounded_rationals(universe.height);
    let mut tried = 0u64;
    for deg in 1..=universe.degree {
        let slots = n * deg;
        let mut idx = vec![0usize; slots];
        loop {
            // slots are (component, power) pairs, component-major
            let top_nonzero = (0..n).any(|i| idx[i * deg + deg - 1] != 0);
            if top_nonzero {
                if tried >= universe.max_candidates {
                    return Ok(None);
                }
                tried += 1;
                let components: Vec<Poly> = (0..n)
                    .map(|i| {
                        let mut c = vec![point[i].clone()];
                        c.extend((0..deg).map(|k| coeffs[idx[i * deg + k]].clone()));
                        Poly::new(c)
                    })
                    .collect();
                if let CurveBehaviour::GenericallyInside { exceptions } =
                    curve_behaviour(&components, a)?
                {
                    let excluded: BTreeSet<Rational> =
                        exceptions.into_iter().filter(|t| !t.is_zero()).collect();
                    let w = CurveWitness::new(components, int(0), excluded)?;
                    if verify_witness(&w, a) {
                        return Ok(Some(w));
                    }
                }
            }
            if !advance(&mut idx, coeffs.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// A certified member of the saturation, found in a given round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub point: Vec<Rational>,
    pub witness: CurveWitness,
    pub round: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    /// Members in the order of the input cloud.
    pub members: Vec<Membership>,
    /// Number of rounds that certified at least one new point.
    pub rounds: usize,
}

impl Fixpoint {
    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.members.iter().map(|m| m.point.clone()).collect()
    }

    /// `a` together with the members found before `round`: the set each
    /// witness of that round is checked against.
    pub fn augmented(&self, a: &ConstructibleSet, round: usize) -> Result<ConstructibleSet> {
        let earlier: Vec<Vec<Rational>> = self
            .members
            .iter()
            .filter(|m| m.round < round)
            .map(|m| m.point.clone())
            .collect();
        a.with_points(&earlier)
    }
}

/// Iterates [`sat_prime_member`] over `cloud`, each round searching against
/// `a` enlarged by the points certified so far, until a round adds nothing.
///
/// Points of `a` are members from round 0. Errors once more than
/// `max_rounds` rounds certify new points.
pub fn sat_fixpoint(
    a: &ConstructibleSet,
    universe: &Universe,
    cloud: &[Vec<Rational>],
    max_rounds: usize,
) -> Result<Fixpoint> {
    let mut found: Vec<Option<Membership>> = Vec::with_capacity(cloud.len());
    for p in cloud {
        found.push(if a.contains(p)? {
            Some(Membership {
                point: p.clone(),
                witness: CurveWitness::constant(p),
                round: 0,
            })
        } else {
            None
        });
    }
    let mut rounds = 0;
    loop {
        let known: Vec<Vec<Rational>> = found.iter().flatten().map(|m| m.point.clone()).collect();
        let augmented = a.with_points(&known)?;
        let mut fresh = Vec::new();
        for (i, p) in cloud.iter().enumerate() {
            if found[i].is_none() {
                if let Some(w) = sat_prime_member(&augmented, p, universe)? {
                    debug_assert!(verify_witness(&w, &augmented));
                    fresh.push((i, w));
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        rounds += 1;
        if rounds > max_rounds {
            return Err(Error::Resource {
                what: "saturation rounds".into(),
                needed: rounds as u128,
                limit: max_rounds as u128,
            });
        }
        for (i, w) in fresh {
            found[i] = Some(Membership {
                point: cloud[i].clone(),
                witness: w,
                round: rounds,
            });
        }
    }
    Ok(Fixpoint {
        members: found.into_iter().flatten().collect(),
        rounds,
    })
}

/// One sample `(a, b)` of the product rule `sat′(A × B) = sat′(A) × sat′(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRow {
    pub a_point: Vec<Rational>,
    pub b_point: Vec<Rational>,
    /// Both factors have witnesses in the universe.
    pub factor_witnesses: bool,
    /// The witness assembled from the factor witnesses verifies for `A × B`.
    pub combined_verified: bool,
    /// A witness for `(a, b)` was found directly in `A × B`.
    pub direct_found: bool,
    /// Its projections verify for `A` and `B`.
    pub projections_verified: bool,
}

impl ProductRow {
    pub fn holds(&self) -> bool {
        self.factor_witnesses == self.direct_found
            && (!self.factor_witnesses || self.combined_verified)
            && (!self.direct_found || self.projections_verified)
    }
}

/// Checks both inclusions of the product rule on each sample.
pub fn product_rule_check(
    a: &ConstructibleSet,
    b: &ConstructibleSet,
    samples: &[(Vec<Rational>, Vec<Rational>)],
    universe: &Universe,
) -> Result<Vec<ProductRow>> {
    let ab = a.product(b);
    let split = a.dim();
    samples
        .iter()
        .map(|(pa, pb)| {
            if pa.len() != a.dim() || pb.len() != b.dim() {
                return Err(domain("sample does not match the factor dimensions"));
            }
            let wa = sat_prime_member(a, pa, universe)?;
            let wb = sat_prime_member(b, pb, universe)?;
            let combined = match (&wa, &wb) {
                (Some(x), Some(y)) => Some(CurveWitness::product(x, y)),
                _ => None,
            };
            let combined_verified = combined.as_ref().is_some_and(|w| {
                verify_witness(w, &ab)
                    && w.limit_point() == pa.iter().chain(pb).cloned().collect::<Vec<_>>()
            });
            let joint: Vec<Rational> = pa.iter().chain(pb).cloned().collect();
            let direct = sat_prime_member(&ab, &joint, universe)?;
            let projections_verified = direct.as_ref().is_some_and(|w| {
                verify_witness(&w.project(0..split), a)
                    && verify_witness(&w.project(split..ab.dim()), b)
            });
            Ok(ProductRow {
                a_point: pa.clone(),
                b_point: pb.clone(),
                factor_witnesses: combined.is_some(),
                combined_verified,
                direct_found: direct.is_some(),
                projections_verified,
            })
        })
        .collect()
}

/// A named membership question with its expected outcome.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub set: ConstructibleSet,
    pub point: Vec<Rational>,
    /// `Some(d)`: a witness of degree `d` is expected; `None`: no witness.
    pub expected_degree: Option<usize>,
}

/// Small instances exercising the boundary cases on the line, the
/// complement of the coordinate axes, and a punctured parabola.
pub fn curated_instances() -> Vec<Instance> {
    let x = MPoly::var(1, 0);
    let axes = MPoly::var(2, 0).mul(&MPoly::var(2, 1));
    let (px, py) = (MPoly::var(2, 0), MPoly::var(2, 1));
    let parabola = ConstructibleSet::new(
        2,
        Formula::And(vec![
            Formula::Zero(py.sub(&px.mul(&px))),
            Formula::NonZero(px.sub(&MPoly::constant(2, int(1)))),
        ]),
    )
    .expect("two variables");
    vec![
        Instance {
            name: "punctured line",
            set: ConstructibleSet::cofinite_line(&[int(0)]),
            point: vec![int(0)],
            expected_degree: Some(1),
        },
        Instance {
            name: "line minus two points",
            set: ConstructibleSet::cofinite_line(&[int(0), int(1)]),
            point: vec![int(1)],
            expected_degree: Some(1),
        },
        Instance {
            name: "single point",
            set: ConstructibleSet::hypersurface(x.clone()),
            point: vec![int(1)],
            expected_degree: None,
        },
        Instance {
            name: "finite set",
            set: ConstructibleSet::points(1, &[vec![int(0)], vec![int(2)]]).expect("points"),
            point: vec![int(1)],
            expected_degree: None,
        },
        Instance {
            name: "axes complement at origin",
            set: ConstructibleSet::complement_of_hypersurface(axes.clone()),
            point: vec![int(0), int(0)],
            expected_degree: Some(1),
        },
        Instance {
            name: "axes complement on an axis",
            set: ConstructibleSet::complement_of_hypersurface(axes),
            point: vec![int(0), int(3)],
            expected_degree: Some(1),
        },
        Instance {
            name: "punctured parabola",
            set: parabola,
            point: vec![int(1), int(1)],
            expected_degree: Some(2),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn bounded_rationals_of_height_two() {
        let r = bounded_rationals(2);
        assert_eq!(
            r,
            vec![
                int(0),
                int(1),
                int(-1),
                rat(1, 2),
                rat(-1, 2),
                int(2),
                int(-2)
            ]
        );
    }

    #[test]
    fn curated_instances_behave_as_listed() {
        for inst in curated_instances() {
            let w = sat_prime_member(&inst.set, &inst.point, &Universe::default()).unwrap();
            assert_eq!(
                w.as_ref().map(|w| w.degree()),
                inst.expected_degree,
                "{}",
                inst.name
            );
            if let Some(w) = w {
                assert!(verify_witness(&w, &inst.set));
                assert_eq!(w.limit_point(), inst.point);
            }
        }
    }

    #[test]
    fn points_of_a_are_members_by_constant_curves() {
        let a = ConstructibleSet::cofinite_line(&[int(0)]);
        let w = sat_prime_member(&a, &[int(4)], &Universe::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.degree(), 0);
    }

    #[test]
    fn fixpoint_on_the_twice_punctured_line() {
        let a = ConstructibleSet::cofinite_line(&[int(0), int(1)]);
        let cloud = vec![vec![int(0)], vec![int(1)], vec![int(2)]];
        let fp = sat_fixpoint(&a, &Universe::default(), &cloud, 5).unwrap();
        assert_eq!(fp.points(), cloud);
        assert_eq!(fp.rounds, 1);
    }

    #[test]
    fn fixpoint_of_a_saturated_set_is_immediate() {
        let a = ConstructibleSet::points(1, &[vec![int(0)]]).unwrap();
        let cloud = vec![vec![int(0)], vec![int(1)]];
        let fp = sat_fixpoint(&a, &Universe::default(), &cloud, 5).unwrap();
        assert_eq!(fp.points(), vec![vec![int(0)]]);
        assert_eq!(fp.rounds, 0);
    }

    #[test]
    fn round_cap_is_enforced() {
        let a = ConstructibleSet::cofinite_line(&[int(0)]);
        assert!(matches!(
            sat_fixpoint(&a, &Universe::default(), &[vec![int(0)]], 0),
            Err(Error::Resource { .. })
        ));
    }
}
