//! Restriction of measures on GL_n to a parabolic, pushforward to the Levi,
//! and the constant-term maps built from them.

use std::collections::HashMap;

use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::{
    enumerate_gln_mod, gln_zp_membership, lift, reduce_matrix, PrimeContext,
};
use crate::arith::rootp::{padic_norm_halfpower, RootP};
use crate::error::{domain, Result};
use crate::group::{iwasawa_decompose, modulus_lambda_blocks, BlockParabolic};

use super::measure::{Ambient, CosetLabel, HeckeMeasure};

/// A representative of `xK_m ∩ P` when the intersection is nonempty.
///
/// Writing `x = q·k` with `q ∈ P` and `k ∈ GL_n(Z_p)`, the coset meets P iff
/// `k` is block triangular mod p^m; the representative is `q·k'` where `k'`
/// is `k` with the entries outside P set to zero.
pub fn coset_meets_parabolic(
    label: &CosetLabel,
    p: &BlockParabolic,
) -> Result<Option<RationalMatrix>> {
    if !matches!(label.ambient, Ambient::General { .. }) {
        return Err(domain("coset intersection is computed for cosets in GL_n"));
    }
    meets(&label.rep, p, label.ctx)
}

fn meets(
    x: &RationalMatrix,
    p: &BlockParabolic,
    ctx: PrimeContext,
) -> Result<Option<RationalMatrix>> {
    let n = x.n();
    let (q, k) = iwasawa_decompose(x, p, ctx.p)?;
    let cells = reduce_matrix(&k, ctx.p, ctx.m);
    let mut trimmed = k.clone();
    for i in 0..n {
        for j in 0..n {
            if !p.in_parabolic_entry(i, j) {
                if cells[i * n + j] != 0 {
                    return Ok(None);
                }
                trimmed.set(i, j, num_traits::Zero::zero());
            }
        }
    }
    Ok(Some(&q * &trimmed))
}

/// `h ↦ h_P`: keeps the cosets meeting P, reweighted by the Haar measure of P
/// giving `K_m ∩ P` mass one.
pub fn restrict_to_parabolic(h: &HeckeMeasure, p: &BlockParabolic) -> Result<HeckeMeasure> {
    if *h.ambient() != Ambient::general(p.n()) {
        return Err(domain(format!(
            "cannot restrict a measure on {} to {p}",
            h.ambient()
        )));
    }
    let mut out = HeckeMeasure::zero(Ambient::parabolic(p), h.ctx());
    for (x, c) in h.iter() {
        if let Some(rep) = meets(x, p, h.ctx())? {
            out.add_term(&rep, c.clone())?;
        }
    }
    Ok(out)
}

/// Pushforward along `P → M = P/U`.
pub fn pushforward_to_levi(h: &HeckeMeasure, p: &BlockParabolic) -> Result<HeckeMeasure> {
    if *h.ambient() != Ambient::parabolic(p) {
        return Err(domain(format!(
            "cannot push a measure on {} through {p}",
            h.ambient()
        )));
    }
    let mut out = HeckeMeasure::zero(Ambient::levi_of(p), h.ctx());
    for (x, c) in h.iter() {
        out.add_term(&p.levi_part(x), c.clone())?;
    }
    Ok(out)
}

/// Representatives of `P \ GL_n(Q_p) / K_m`, chosen in `GL_n(Z_p)`, with a
/// lookup from `GL_n(Z/p^m)` to (orbit index, P-part).
#[derive(Clone, Debug)]
pub struct ParabolicTransversal {
    parabolic: BlockParabolic,
    ctx: PrimeContext,
    reps: Vec<RationalMatrix>,
    lookup: HashMap<Vec<u64>, (usize, Vec<u64>)>,
}

impl ParabolicTransversal {
    /// Orbits of `P(Z/p^m)` acting on `GL_n(Z/p^m)` by left multiplication.
    /// The representative of each orbit is its lexicographically least element.
    pub fn new(p: &BlockParabolic, ctx: PrimeContext, guard: u64) -> Result<Self> {
        let n = p.n();
        let group = enumerate_gln_mod(n, ctx, guard)?;
        let par = parabolic_points(p, &group);
        let mut seen: HashMap<Vec<u64>, ()> = HashMap::with_capacity(group.len());
        let mut reps = Vec::new();
        for g in &group {
            if seen.contains_key(g) {
                continue;
            }
            for q in &par {
                seen.insert(mul_mod(n, q, g, ctx.modulus()), ());
            }
            reps.push(g.clone());
        }
        Ok(Self::build(p, ctx, reps, &par))
    }

    /// A transversal with prescribed representatives in GL_n(Z_p); fails
    /// unless they meet every double coset exactly once.
    pub fn with_representatives(
        p: &BlockParabolic,
        ctx: PrimeContext,
        reps: &[RationalMatrix],
        guard: u64,
    ) -> Result<Self> {
        let n = p.n();
        let group = enumerate_gln_mod(n, ctx, guard)?;
        let par = parabolic_points(p, &group);
        let mut cells = Vec::with_capacity(reps.len());
        for r in reps {
            if r.n() != n || !gln_zp_membership(r, ctx.p) {
                return Err(domain(format!("{r} is not in GL_n(Z_p)")));
            }
            cells.push(reduce_matrix(r, ctx.p, ctx.m));
        }
        let t = Self::build(p, ctx, cells, &par);
        if t.lookup.len() != group.len() || t.lookup.len() != t.reps.len() * par.len() {
            return Err(domain("representatives do not form a transversal"));
        }
        Ok(ParabolicTransversal {
            reps: reps.to_vec(),
            ..t
        })
    }

    fn build(
        p: &BlockParabolic,
        ctx: PrimeContext,
        reps: Vec<Vec<u64>>,
        par: &[&Vec<u64>],
    ) -> Self {
        let n = p.n();
        let mut lookup: HashMap<Vec<u64>, (usize, Vec<u64>)> = HashMap::new();
        for (idx, g) in reps.iter().enumerate() {
            for q in par {
                lookup
                    .entry(mul_mod(n, q, g, ctx.modulus()))
                    .or_insert_with(|| (idx, (*q).clone()));
            }
        }
        let reps = reps.iter().map(|g| lift(n, g)).collect();
        ParabolicTransversal {
            parabolic: p.clone(),
            ctx,
            reps,
            lookup,
        }
    }

    /// The orbit of representative `j` in GL_n(Z/p^m), as integer matrices.
    pub fn orbit(&self, j: usize) -> Vec<RationalMatrix> {
        let n = self.parabolic.n();
        let mut out: Vec<RationalMatrix> = self
            .lookup
            .iter()
            .filter(|(_, (i, _))| *i == j)
            .map(|(cells, _)| lift(n, cells))
            .collect();
        out.sort();
        out
    }

    pub fn parabolic(&self) -> &BlockParabolic {
        &self.parabolic
    }

    pub fn ctx(&self) -> PrimeContext {
        self.ctx
    }

    pub fn reps(&self) -> &[RationalMatrix] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// For `k ∈ GL_n(Z_p)`, returns `(j, q₀)` with `q₀ ∈ P ∩ GL_n(Z_p)` and
    /// `k ∈ q₀·g_j·K_m`.
    pub fn locate_integral(&self, k: &RationalMatrix) -> Result<(usize, RationalMatrix)> {
        let cells = reduce_matrix(k, self.ctx.p, self.ctx.m);
        let (j, q) = self
            .lookup
            .get(&cells)
            .ok_or_else(|| domain(format!("{k} is not in GL_n(Z_p)")))?;
        Ok((*j, lift(k.n(), q)))
    }

    /// For any `y ∈ GL_n(Q)`, returns `(j, q)` with `q ∈ P` and `y ∈ q·g_j·K_m`.
    pub fn locate(&self, y: &RationalMatrix) -> Result<(usize, RationalMatrix)> {
        let (q1, k) = iwasawa_decompose(y, &self.parabolic, self.ctx.p)?;
        let (j, q0) = self.locate_integral(&k)?;
        Ok((j, &q1 * &q0))
    }
}

fn parabolic_points<'a>(p: &BlockParabolic, group: &'a [Vec<u64>]) -> Vec<&'a Vec<u64>> {
    let n = p.n();
    group
        .iter()
        .filter(|c| (0..n).all(|i| (0..n).all(|j| p.in_parabolic_entry(i, j) || c[i * n + j] == 0)))
        .collect()
}

fn mul_mod(n: usize, a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u64;
            for k in 0..n {
                s = (s + a[i * n + k] * b[k * n + j]) % m;
            }
            out[i * n + j] = s;
        }
    }
    out
}

/// `Res_{P;M}(h) = Σ_{g∈A} p_!((Ad g⁻¹)^* h)_P` for a given transversal `A`.
pub fn res_unnormalized_with(h: &HeckeMeasure, a: &ParabolicTransversal) -> Result<HeckeMeasure> {
    let p = a.parabolic();
    if h.ctx() != a.ctx() {
        return Err(domain("measure and transversal are at different levels"));
    }
    let mut out = HeckeMeasure::zero(Ambient::levi_of(p), h.ctx());
    for g in a.reps() {
        let term = pushforward_to_levi(&restrict_to_parabolic(&h.ad_pullback(g)?, p)?, p)?;
        out = out.try_add(&term)?;
    }
    Ok(out)
}

pub fn res_unnormalized(h: &HeckeMeasure, p: &BlockParabolic, guard: u64) -> Result<HeckeMeasure> {
    if !h.is_biinvariant() {
        return Err(domain(
            "constant term requires an Ad(GL_n(Z_p))-invariant measure",
        ));
    }
    let a = ParabolicTransversal::new(p, h.ctx(), guard)?;
    res_unnormalized_with(h, &a)
}

/// Multiplies the coefficient at `xK_{m,M}` by `|λ_P(x)|^{1/2}`.
pub fn twist_by_modulus(res: &HeckeMeasure, p: &BlockParabolic) -> Result<HeckeMeasure> {
    if *res.ambient() != Ambient::levi_of(p) {
        return Err(domain(format!("expected a measure on the Levi of {p}")));
    }
    let prime = res.ctx().p;
    res.map_coefficients(|x, c| {
        Ok(c * &padic_norm_halfpower(&modulus_lambda_blocks(p, x), prime, 1)?)
    })
}

/// `|λ_P|^{1/2} · Res_{P;M}(h)`.
pub fn res_normalized(h: &HeckeMeasure, p: &BlockParabolic, guard: u64) -> Result<HeckeMeasure> {
    twist_by_modulus(&res_unnormalized(h, p, guard)?, p)
}

pub fn res_normalized_with(h: &HeckeMeasure, a: &ParabolicTransversal) -> Result<HeckeMeasure> {
    twist_by_modulus(&res_unnormalized_with(h, a)?, a.parabolic())
}

/// Coefficient of `|λ_P|^{1/2}` at a Levi element, exposed for reports.
pub fn modulus_halfpower(p: &BlockParabolic, x: &RationalMatrix, prime: u64) -> Result<RootP> {
    padic_norm_halfpower(&modulus_lambda_blocks(p, x), prime, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::error::DEFAULT_GUARD;
    use crate::group::Orientation;

    fn ctx(p: u64, m: u32) -> PrimeContext {
        PrimeContext::new(p, m).unwrap()
    }

    fn unit(n: usize, c: PrimeContext) -> HeckeMeasure {
        HeckeMeasure::unit(Ambient::general(n), c, DEFAULT_GUARD).unwrap()
    }

    #[test]
    fn identity_and_torus_labels_meet_borel() {
        let c = ctx(2, 1);
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let id = CosetLabel::new(&RationalMatrix::identity(2), Ambient::general(2), c).unwrap();
        assert_eq!(
            coset_meets_parabolic(&id, &b).unwrap(),
            Some(RationalMatrix::identity(2))
        );
        let t = RationalMatrix::diagonal(&[int(2), int(1)]);
        let tl = CosetLabel::new(&t, Ambient::general(2), c).unwrap();
        assert_eq!(coset_meets_parabolic(&tl, &b).unwrap(), Some(t));
        let lower = RationalMatrix::from_ints(&[&[1, 0], &[1, 1]]);
        let ll = CosetLabel::new(&lower, Ambient::general(2), c).unwrap();
        assert_eq!(coset_meets_parabolic(&ll, &b).unwrap(), None);
        assert!(coset_meets_parabolic(&ll, &b.opposite()).unwrap().is_some());
    }

    #[test]
    fn transversal_sizes() {
        let b = BlockParabolic::borel(2, Orientation::Upper);
        assert_eq!(
            ParabolicTransversal::new(&b, ctx(2, 1), DEFAULT_GUARD)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            ParabolicTransversal::new(&b, ctx(3, 1), DEFAULT_GUARD)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            ParabolicTransversal::new(&b, ctx(2, 2), DEFAULT_GUARD)
                .unwrap()
                .len(),
            6
        );
        let p21 = BlockParabolic::new(vec![2, 1], Orientation::Lower).unwrap();
        assert_eq!(
            ParabolicTransversal::new(&p21, ctx(2, 1), DEFAULT_GUARD)
                .unwrap()
                .len(),
            7
        );
        assert!(ParabolicTransversal::new(&p21, ctx(2, 1), 10).is_err());
    }

    #[test]
    fn locate_recovers_factorization() {
        let c = ctx(3, 1);
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let a = ParabolicTransversal::new(&b, c, DEFAULT_GUARD).unwrap();
        let y = RationalMatrix::from_rows(vec![
            vec![int(5), num_rational::BigRational::new(1.into(), 3.into())],
            vec![int(7), int(2)],
        ]);
        let (j, q) = a.locate(&y).unwrap();
        assert!(b.contains(&q));
        let g = &q * &a.reps()[j];
        assert!(crate::arith::padic::congruence_equiv(&g, &y, c));
    }

    #[test]
    fn unit_restricts_and_pushes_to_unit() {
        for (n, blocks) in [(2, vec![1, 1]), (3, vec![2, 1]), (3, vec![1, 2])] {
            let c = ctx(2, 1);
            let p = BlockParabolic::new(blocks, Orientation::Upper).unwrap();
            let u = unit(n, c);
            let rp = restrict_to_parabolic(&u, &p).unwrap();
            let pu = HeckeMeasure::unit(Ambient::parabolic(&p), c, DEFAULT_GUARD).unwrap();
            assert_eq!(rp.len(), pu.len());
            let pushed = pushforward_to_levi(&pu, &p).unwrap();
            let mu = HeckeMeasure::unit(Ambient::levi_of(&p), c, DEFAULT_GUARD).unwrap();
            assert_eq!(pushed, mu);
        }
    }

    #[test]
    fn unipotent_coset_pushes_to_identity() {
        let c = ctx(3, 1);
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let u = RationalMatrix::from_ints(&[&[1, 7], &[0, 1]]);
        let h = HeckeMeasure::delta(Ambient::parabolic(&b), c, &u).unwrap();
        let pushed = pushforward_to_levi(&h, &b).unwrap();
        assert_eq!(
            pushed.coefficient(&RationalMatrix::identity(2)).unwrap(),
            RootP::one(3)
        );
    }

    #[test]
    fn constant_term_of_unit_is_unit() {
        let c = ctx(2, 1);
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let r = res_unnormalized(&unit(2, c), &b, DEFAULT_GUARD).unwrap();
        let mu = HeckeMeasure::unit(Ambient::levi_of(&b), c, DEFAULT_GUARD).unwrap();
        assert_eq!(r, mu);
        assert_eq!(res_normalized(&unit(2, c), &b, DEFAULT_GUARD).unwrap(), mu);
        let zero = HeckeMeasure::zero(Ambient::general(2), c);
        assert!(res_unnormalized(&zero, &b, DEFAULT_GUARD)
            .unwrap()
            .is_empty());
    }
}
