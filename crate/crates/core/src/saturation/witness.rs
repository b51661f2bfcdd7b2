//! Punctured polynomial curves certifying membership in `sat′(A)`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{format_rational, parse_rational};
use crate::arith::Rational;
use crate::error::{domain, Result};

use super::constructible::ConstructibleSet;
use super::poly::Poly;

/// A curve `f = (f_1, …, f_n) : V → A^n` with `V = A¹ ∖ E` and a puncture
/// `x₀ ∈ V`. It certifies `f(x₀) ∈ sat′(A)` when `f(V ∖ {x₀}) ⊂ A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CurveWitness {
    components: Vec<Poly>,
    puncture: Rational,
    excluded: BTreeSet<Rational>,
}

impl CurveWitness {
    pub fn new(
        components: Vec<Poly>,
        puncture: Rational,
        excluded: BTreeSet<Rational>,
    ) -> Result<Self> {
        if excluded.contains(&puncture) {
            return Err(domain("the puncture must lie on the curve"));
        }
        Ok(CurveWitness {
            components,
            puncture,
            excluded,
        })
    }

    /// The constant curve at `point`; certifies `point ∈ sat′(A)` for `point ∈ A`.
    pub fn constant(point: &[Rational]) -> Self {
        CurveWitness {
            components: point.iter().map(|c| Poly::constant(c.clone())).collect(),
            puncture: Rational::zero(),
            excluded: BTreeSet::new(),
        }
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn puncture(&self) -> &Rational {
        &self.puncture
    }

    pub fn excluded(&self) -> &BTreeSet<Rational> {
        &self.excluded
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn at(&self, t: &Rational) -> Vec<Rational> {
        self.components.iter().map(|f| f.eval(t)).collect()
    }

    /// The certified point `f(x₀)`.
    pub fn limit_point(&self) -> Vec<Rational> {
        self.at(&self.puncture)
    }

    /// The same curve reparametrized by `t ↦ t + x₀`, so the puncture is 0.
    pub fn recentered(&self) -> Self {
        let x0 = &self.puncture;
        CurveWitness {
            components: self.components.iter().map(|f| f.shift(x0)).collect(),
            puncture: Rational::zero(),
            excluded: self.excluded.iter().map(|e| e - x0).collect(),
        }
    }

    /// Components `range` of the curve, on the same `V` and puncture.
    pub fn project(&self, range: std::ops::Range<usize>) -> Self {
        CurveWitness {
            components: self.components[range].to_vec(),
            puncture: self.puncture.clone(),
            excluded: self.excluded.clone(),
        }
    }

    /// `(f_a, f_b)` after moving both punctures to 0 and intersecting the
    /// domains.
    pub fn product(a: &CurveWitness, b: &CurveWitness) -> Self {
        let (a, b) = (a.recentered(), b.recentered());
        CurveWitness {
            components: a.components.iter().chain(&b.components).cloned().collect(),
            puncture: Rational::zero(),
            excluded: a.excluded.union(&b.excluded).cloned().collect(),
        }
    }

    pub fn to_wire(&self) -> WireWitness {
        WireWitness {
            components: self
                .components
                .iter()
                .map(|f| f.coeffs().iter().map(format_rational).collect())
                .collect(),
            puncture: format_rational(&self.puncture),
            excluded: self.excluded.iter().map(format_rational).collect(),
        }
    }

    pub fn from_wire(w: &WireWitness) -> Result<Self> {
        let components = w
            .components
            .iter()
            .map(|cs| {
                Ok(Poly::new(
                    cs.iter()
                        .map(|c| parse_rational(c))
                        .collect::<Result<_>>()?,
                ))
            })
            .collect::<Result<_>>()?;
        let excluded = w
            .excluded
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()?;
        Self::new(components, parse_rational(&w.puncture)?, excluded)
    }
}

impl fmt::Display for CurveWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        let ex: Vec<String> = self.excluded.iter().map(format_rational).collect();
        write!(
            f,
            "t ↦ ({}), t₀ = {}, E = {{{}}}",
            comps.join(", "),
            format_rational(&self.puncture),
            ex.join(", ")
        )
    }
}

/// Serialized witness: coefficient lists, puncture and excluded set as
/// exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireWitness {
    pub components: Vec<Vec<String>>,
    pub puncture: String,
    pub excluded: Vec<String>,
}

/// Behaviour of `A`'s formula along a curve: either it fails at all but
/// finitely many parameters, or it holds away from the listed exceptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveBehaviour {
    GenericallyOutside,
    GenericallyInside { exceptions: BTreeSet<Rational> },
}

/// Decides exactly where `t ↦ f(t)` lies in `A`.
///
/// Each atom `g` pulls back to `g∘f`; if that is the zero polynomial the
/// atom is identically zero on the curve, otherwise it vanishes exactly at
/// its rational roots. Away from the union of those roots every atom takes
/// its generic value, so the formula does too.
pub fn curve_behaviour(components: &[Poly], a: &ConstructibleSet) -> Result<CurveBehaviour> {
    if components.len() != a.dim() {
        return Err(domain(format!(
            "curve in A^{} but the set lies in A^{}",
            components.len(),
            a.dim()
        )));
    }
    let mut special = BTreeSet::new();
    let mut pulled = Vec::new();
    for g in a.formula().atoms() {
        let h = g.compose(components);
        if !h.is_zero() {
            special.extend(h.rational_roots());
        }
        pulled.push((g, h));
    }
    let generic = a.formula().eval_with(&mut |g| {
        pulled
            .iter()
            .find(|(x, _)| *x == g)
            .is_some_and(|(_, h)| h.is_zero())
    });
    if !generic {
        return Ok(CurveBehaviour::GenericallyOutside);
    }
    let mut exceptions = BTreeSet::new();
    for t in special {
        let point: Vec<Rational> = components.iter().map(|f| f.eval(&t)).collect();
        if !a.contains(&point)? {
            exceptions.insert(t);
        }
    }
    Ok(CurveBehaviour::GenericallyInside { exceptions })
}

/// Whether `w` certifies `f(x₀) ∈ sat′(A)`: every parameter of
/// `V ∖ {x₀}` maps into `A`. Decided exactly; malformed input is rejected.
pub fn verify_witness(w: &CurveWitness, a: &ConstructibleSet) -> bool {
    if w.excluded.contains(&w.puncture) {
        return false;
    }
    match curve_behaviour(&w.components, a) {
        Ok(CurveBehaviour::GenericallyInside { exceptions }) => exceptions
            .iter()
            .all(|t| *t == w.puncture || w.excluded.contains(t)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::saturation::poly::MPoly;

    fn line(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn identity_certifies_the_puncture_of_a_punctured_line() {
        let a = ConstructibleSet::cofinite_line(&[int(0)]);
        let w = CurveWitness::new(vec![Poly::t()], int(0), BTreeSet::new()).unwrap();
        assert!(verify_witness(&w, &a));
        assert_eq!(w.limit_point(), vec![int(0)]);
        let moved = CurveWitness::new(vec![Poly::t()], int(1), BTreeSet::new()).unwrap();
        assert!(!verify_witness(&moved, &a));
        let excluded = CurveWitness::new(vec![Poly::t()], int(1), [int(0)].into()).unwrap();
        assert!(verify_witness(&excluded, &a));
    }

    #[test]
    fn nothing_nonconstant_lands_in_a_point() {
        let a = ConstructibleSet::points(1, &[vec![int(0)]]).unwrap();
        for f in [line(&[0, 1]), line(&[0, 0, 1]), line(&[3, 2])] {
            let w = CurveWitness::new(vec![f], int(0), BTreeSet::new()).unwrap();
            assert!(!verify_witness(&w, &a));
        }
    }

    #[test]
    fn wire_round_trip_and_recentering() {
        let w = CurveWitness::new(
            vec![line(&[1, 2]), Poly::new(vec![int(0), int(0), int(1)])],
            int(3),
            [int(5)].into(),
        )
        .unwrap();
        assert_eq!(CurveWitness::from_wire(&w.to_wire()).unwrap(), w);
        let r = w.recentered();
        assert_eq!(r.limit_point(), w.limit_point());
        assert_eq!(r.excluded(), &BTreeSet::from([int(2)]));
        assert!(CurveWitness::new(vec![Poly::t()], int(0), [int(0)].into()).is_err());
    }

    #[test]
    fn axes_complement_through_origin() {
        let xy = MPoly::var(2, 0).mul(&MPoly::var(2, 1));
        let a = ConstructibleSet::complement_of_hypersurface(xy);
        let w =
            CurveWitness::new(vec![line(&[0, 1]), line(&[0, 2])], int(0), BTreeSet::new()).unwrap();
        assert!(verify_witness(&w, &a));
        let axis =
            CurveWitness::new(vec![line(&[0, 1]), Poly::zero()], int(0), BTreeSet::new()).unwrap();
        assert!(!verify_witness(&axis, &a));
    }
}
