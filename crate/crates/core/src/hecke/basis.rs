//! Conjugation-invariant measures supported on small double cosets.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::{
    enumerate_transversal_k0_mod_km, hermite_upper, index_k0_km, k0_generators, level_canonical,
    PrimeContext,
};
use crate::arith::rational::{pow_p, Rational};
use crate::arith::rootp::RootP;
use crate::error::{domain, Result};

use super::measure::{Ambient, HeckeMeasure};

/// Canonical representatives of the `K_m`-cosets in `K₀·t·K₀`.
pub fn double_coset_cosets(
    t: &RationalMatrix,
    ctx: PrimeContext,
    guard: u64,
) -> Result<Vec<RationalMatrix>> {
    let n = t.n();
    let k0 = enumerate_transversal_k0_mod_km(n, ctx, guard)?;
    let mut left: BTreeSet<RationalMatrix> = BTreeSet::new();
    for k in &k0 {
        left.insert(hermite_upper(&(k * t), ctx.p)?);
    }
    let mut out = BTreeSet::new();
    for h in &left {
        for k in &k0 {
            out.insert(level_canonical(&(h * k), ctx)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// `1_{K₀tK₀}·μ^{K₀}` where `μ^{K₀}` gives `K₀` mass one.
pub fn double_coset_indicator(
    t: &RationalMatrix,
    ctx: PrimeContext,
    guard: u64,
) -> Result<HeckeMeasure> {
    let n = t.n();
    let c = RootP::rational(index_k0_km(n, ctx).recip(), ctx.p);
    let cosets = double_coset_cosets(t, ctx, guard)?;
    let h = HeckeMeasure::from_terms(
        Ambient::general(n),
        ctx,
        cosets.into_iter().map(|x| (x, c.clone())),
    )?;
    h.into_biinvariant()
}

/// Orbits of Ad(GL_n(Z_p)) on a set of canonical `K_m`-coset representatives.
/// Fails if the set is not stable.
pub fn ad_orbits(cosets: &[RationalMatrix], ctx: PrimeContext) -> Result<Vec<Vec<RationalMatrix>>> {
    let Some(first) = cosets.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    let gens: Vec<(RationalMatrix, RationalMatrix)> = k0_generators(n, ctx.p)
        .into_iter()
        .map(|g| {
            let gi = g.inverse().expect("unit");
            (g, gi)
        })
        .collect();
    let index: BTreeMap<&RationalMatrix, usize> =
        cosets.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut orbit_of = vec![usize::MAX; cosets.len()];
    let mut orbits = Vec::new();
    for start in 0..cosets.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for (g, gi) in &gens {
                let y = level_canonical(&(&(g * &cosets[i]) * gi), ctx)?;
                let j = *index
                    .get(&y)
                    .ok_or_else(|| domain(format!("coset set is not Ad-stable: {y}")))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members.into_iter().map(|i| cosets[i].clone()).collect());
    }
    Ok(orbits)
}

/// Orbit-sum measures spanning the Ad(GL_n(Z_p))-invariant measures at
/// level 1 supported in `K₀ ∪ K₀·diag(p,1,…,1)·K₀`.
pub fn level_one_basis(n: usize, p: u64, guard: u64) -> Result<Vec<HeckeMeasure>> {
    let ctx = PrimeContext::new(p, 1)?;
    let mut t = vec![Rational::from_integer(1.into()); n];
    t[0] = pow_p(p, 1);
    let t = RationalMatrix::diagonal(&t);
    let mut cosets: Vec<RationalMatrix> = enumerate_transversal_k0_mod_km(n, ctx, guard)?;
    cosets.extend(double_coset_cosets(&t, ctx, guard)?);
    cosets.sort();
    let one = RootP::one(p);
    ad_orbits(&cosets, ctx)?
        .into_iter()
        .map(|orbit| {
            HeckeMeasure::from_terms(
                Ambient::general(n),
                ctx,
                orbit.into_iter().map(|x| (x, one.clone())),
            )?
            .into_biinvariant()
        })
        .collect()
}
