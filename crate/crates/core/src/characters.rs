//! Unramified characters of Levi subgroups and the finite-level models of
//! the representations parabolically induced from them.

use std::fmt;

use num_traits::Zero;

use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::PrimeContext;
use crate::arith::rational::{format_rational, val, Rational};
use crate::arith::rootp::{padic_norm_halfpower, RootP};
use crate::error::{domain, Result};
use crate::group::{modulus_lambda_blocks, BlockParabolic};
use crate::hecke::{
    res_normalized_with, res_unnormalized_with, Ambient, HeckeMeasure, ParabolicTransversal,
};

/// `χ(m) = Π z_i^{v_p(det m_i)}` over the diagonal blocks `m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnramifiedCharacter {
    params: Vec<Rational>,
}

impl UnramifiedCharacter {
    pub fn new(params: Vec<Rational>) -> Result<Self> {
        if params.is_empty() || params.iter().any(|z| z.is_zero()) {
            return Err(domain("Satake parameters must be nonzero"));
        }
        Ok(UnramifiedCharacter { params })
    }

    pub fn trivial(blocks: usize) -> Self {
        UnramifiedCharacter {
            params: vec![Rational::from_integer(1.into()); blocks],
        }
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    /// Value at an element whose diagonal blocks (for `levi`) are invertible.
    pub fn eval(&self, levi: &BlockParabolic, x: &RationalMatrix, p: u64) -> Result<Rational> {
        if levi.blocks().len() != self.params.len() {
            return Err(domain(format!(
                "{} parameters for {} blocks",
                self.params.len(),
                levi.blocks().len()
            )));
        }
        let mut acc = Rational::from_integer(1.into());
        for (block, z) in levi.levi_blocks(x).iter().zip(&self.params) {
            let d = block.det();
            if d.is_zero() {
                return Err(domain(format!("singular Levi block in {x}")));
            }
            acc *= z.pow(val(&d, p) as i32);
        }
        Ok(acc)
    }
}

impl fmt::Display for UnramifiedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.params.iter().map(format_rational).collect();
        write!(f, "({})", z.join(","))
    }
}

/// `∫ χ dh = Σ c_x χ(x)` for a measure on a Levi.
pub fn character_pairing(chi: &UnramifiedCharacter, h: &HeckeMeasure) -> Result<RootP> {
    let levi = h
        .ambient()
        .levi_blocks()
        .ok_or_else(|| domain(format!("expected a measure on a Levi, got {}", h.ambient())))?;
    let p = h.ctx().p;
    let mut acc = RootP::zero(p);
    for (x, c) in h.iter() {
        acc = &acc + &c.scale(&chi.eval(&levi, x, p)?);
    }
    Ok(acc)
}

/// A character of P inflated from the Levi, optionally twisted by `|λ_P|^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducingCharacter {
    pub chi: UnramifiedCharacter,
    pub half_modulus: bool,
}

impl InducingCharacter {
    pub fn plain(chi: UnramifiedCharacter) -> Self {
        InducingCharacter {
            chi,
            half_modulus: false,
        }
    }

    pub fn normalized(chi: UnramifiedCharacter) -> Self {
        InducingCharacter {
            chi,
            half_modulus: true,
        }
    }

    pub fn eval(&self, parabolic: &BlockParabolic, q: &RationalMatrix, p: u64) -> Result<RootP> {
        let base = RootP::rational(self.chi.eval(parabolic, q, p)?, p);
        if self.half_modulus {
            Ok(&base * &padic_norm_halfpower(&modulus_lambda_blocks(parabolic, q), p, 1)?)
        } else {
            Ok(base)
        }
    }
}

/// The `K_m`-fixed vectors of the induced representation: functions on
/// `P \ G / K_m`, one basis vector `f_j` per double coset `P g_j K_m` with
/// `f_j(g_j) = 1`.
#[derive(Clone, Debug)]
pub struct InducedModel {
    transversal: ParabolicTransversal,
}

impl InducedModel {
    pub fn new(parabolic: &BlockParabolic, ctx: PrimeContext, guard: u64) -> Result<Self> {
        Ok(InducedModel {
            transversal: ParabolicTransversal::new(parabolic, ctx, guard)?,
        })
    }

    pub fn from_transversal(transversal: ParabolicTransversal) -> Self {
        InducedModel { transversal }
    }

    pub fn parabolic(&self) -> &BlockParabolic {
        self.transversal.parabolic()
    }

    pub fn ctx(&self) -> PrimeContext {
        self.transversal.ctx()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        self.transversal.reps()
    }

    pub fn dim(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &ParabolicTransversal {
        &self.transversal
    }
}

/// Matrix `a` of `π(h)` in the basis `f_j`: `π(h) f_j = Σ_i a[i][j] f_i`,
/// where `a[i][j] = Σ_x c_x f_j(g_i x)`.
pub fn hecke_action_matrix(
    h: &HeckeMeasure,
    tau: &InducingCharacter,
    model: &InducedModel,
) -> Result<Vec<Vec<RootP>>> {
    let n = model.parabolic().n();
    if *h.ambient() != Ambient::general(n) || h.ctx() != model.ctx() {
        return Err(domain("measure does not match the induced model"));
    }
    if !h.is_biinvariant() {
        return Err(domain(
            "Hecke action requires an Ad(GL_n(Z_p))-invariant measure",
        ));
    }
    let p = h.ctx().p;
    let dim = model.dim();
    let mut a = vec![vec![RootP::zero(p); dim]; dim];
    for (i, gi) in model.basis().iter().enumerate() {
        for (x, c) in h.iter() {
            let (j, q) = model.transversal().locate(&(gi * x))?;
            let v = c * &tau.eval(model.parabolic(), &q, p)?;
            a[i][j] = &a[i][j] + &v;
        }
    }
    Ok(a)
}

pub fn trace_induced(
    h: &HeckeMeasure,
    tau: &InducingCharacter,
    model: &InducedModel,
) -> Result<RootP> {
    let a = hecke_action_matrix(h, tau, model)?;
    Ok(a.iter()
        .enumerate()
        .fold(RootP::zero(h.ctx().p), |acc, (i, row)| &acc + &row[i]))
}

/// Both sides of the character identity for induction from P, unnormalized
/// and normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionCheck {
    pub trace: RootP,
    pub pairing: RootP,
    pub trace_normalized: RootP,
    pub pairing_normalized: RootP,
}

impl InductionCheck {
    pub fn holds(&self) -> bool {
        self.trace == self.pairing && self.trace_normalized == self.pairing_normalized
    }
}

pub fn induction_check(
    h: &HeckeMeasure,
    chi: &UnramifiedCharacter,
    model: &InducedModel,
) -> Result<InductionCheck> {
    let a = model.transversal();
    Ok(InductionCheck {
        trace: trace_induced(h, &InducingCharacter::plain(chi.clone()), model)?,
        pairing: character_pairing(chi, &res_unnormalized_with(h, a)?)?,
        trace_normalized: trace_induced(h, &InducingCharacter::normalized(chi.clone()), model)?,
        pairing_normalized: character_pairing(chi, &res_normalized_with(h, a)?)?,
    })
}

/// Whether `Tr(h | Ind_P χ) = ∫ χ d Res_P(h)`, and likewise for the
/// normalized induction against the normalized restriction.
pub fn verify_induction_identity(
    h: &HeckeMeasure,
    chi: &UnramifiedCharacter,
    parabolic: &BlockParabolic,
    ctx: PrimeContext,
    guard: u64,
) -> Result<bool> {
    let model = InducedModel::new(parabolic, ctx, guard)?;
    Ok(induction_check(h, chi, &model)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::error::DEFAULT_GUARD;
    use crate::group::Orientation;

    fn ctx() -> PrimeContext {
        PrimeContext::new(2, 1).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let t = HeckeMeasure::unit(Ambient::levi_of(&b), ctx(), DEFAULT_GUARD).unwrap();
        let chi = UnramifiedCharacter::new(vec![int(3), rat(1, 5)]).unwrap();
        assert_eq!(character_pairing(&chi, &t).unwrap(), RootP::one(2));
        let d = HeckeMeasure::delta(
            Ambient::levi_of(&b),
            ctx(),
            &RationalMatrix::diagonal(&[int(2), int(1)]),
        )
        .unwrap();
        assert_eq!(
            character_pairing(&chi, &d).unwrap(),
            RootP::rational(int(3), 2)
        );
        let triv = UnramifiedCharacter::trivial(2);
        assert_eq!(
            character_pairing(&triv, &d.scale(&RootP::sqrt_p(2))).unwrap(),
            d.scale(&RootP::sqrt_p(2)).total_mass()
        );
        let wrong = UnramifiedCharacter::new(vec![int(3)]).unwrap();
        assert!(character_pairing(&wrong, &d).is_err());
        assert!(UnramifiedCharacter::new(vec![int(0), int(1)]).is_err());
    }

    #[test]
    fn unit_acts_as_projection_onto_spherical_vectors() {
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let model = InducedModel::new(&b, ctx(), DEFAULT_GUARD).unwrap();
        assert_eq!(model.dim(), 3);
        let u = HeckeMeasure::unit(Ambient::general(2), ctx(), DEFAULT_GUARD).unwrap();
        let a = hecke_action_matrix(
            &u,
            &InducingCharacter::plain(UnramifiedCharacter::trivial(2)),
            &model,
        )
        .unwrap();
        let third = RootP::rational(rat(1, 3), 2);
        for row in &a {
            for v in row {
                assert_eq!(*v, third);
            }
        }
        let zero = HeckeMeasure::zero(Ambient::general(2), ctx());
        let z = hecke_action_matrix(
            &zero,
            &InducingCharacter::plain(UnramifiedCharacter::trivial(2)),
            &model,
        )
        .unwrap();
        assert!(z.iter().flatten().all(|v| v.is_zero()));
    }

    #[test]
    fn corrupted_measure_breaks_identity() {
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let model = InducedModel::new(&b, ctx(), DEFAULT_GUARD).unwrap();
        let u = HeckeMeasure::unit(Ambient::general(2), ctx(), DEFAULT_GUARD).unwrap();
        let chi = UnramifiedCharacter::new(vec![int(3), int(5)]).unwrap();
        let check = induction_check(&u, &chi, &model).unwrap();
        assert!(check.holds());
        let mut broken = check.clone();
        broken.trace = &broken.trace + &RootP::one(2);
        assert!(!broken.holds());
    }
}
