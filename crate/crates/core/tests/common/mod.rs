//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through the canonical-form or Iwasawa code paths of the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use parind::arith::padic::{
    congruence_equiv, enumerate_gln_mod, gln_zp_membership, in_congruence_subgroup, PrimeContext,
};
use parind::arith::rational::{int, padic_abs, pow_p};
use parind::arith::rootp::padic_norm_halfpower;
use parind::arith::{Rational, RationalMatrix, RootP};

pub fn lift(n: usize, cells: &[u64]) -> RationalMatrix {
    RationalMatrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| int(cells[i * n + j] as i64)).collect())
            .collect(),
    )
}

/// Every element of GL_n(Z/p^k), lifted to integer matrices.
pub fn group_mod(n: usize, p: u64, k: u32) -> Vec<RationalMatrix> {
    let ctx = PrimeContext::new(p, k).unwrap();
    enumerate_gln_mod(n, ctx, 10_000_000)
        .unwrap()
        .iter()
        .map(|c| lift(n, c))
        .collect()
}

/// Partition of `cosets` (distinct K_m-cosets) into classes under
/// conjugation by every element of `conjugators`, decided with
/// `congruence_equiv` only.
pub fn conjugation_classes(
    cosets: &[RationalMatrix],
    conjugators: &[RationalMatrix],
    ctx: PrimeContext,
) -> Vec<Vec<usize>> {
    let find = |y: &RationalMatrix| -> usize {
        let hits: Vec<usize> = (0..cosets.len())
            .filter(|&i| congruence_equiv(&cosets[i], y, ctx))
            .collect();
        assert_eq!(hits.len(), 1, "coset set not stable or not distinct");
        hits[0]
    };
    let inv: Vec<RationalMatrix> = conjugators.iter().map(|g| g.inverse().unwrap()).collect();
    let mut class = vec![usize::MAX; cosets.len()];
    let mut out = Vec::new();
    for s in 0..cosets.len() {
        if class[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = HashSet::new();
        for (g, gi) in conjugators.iter().zip(&inv) {
            members.insert(find(&(&(g * &cosets[s]) * gi)));
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for &m in &members {
            class[m] = id;
        }
        out.push(members);
    }
    out
}

/// Distinct K_m-cosets among the given matrices.
pub fn distinct_cosets(
    xs: impl IntoIterator<Item = RationalMatrix>,
    ctx: PrimeContext,
) -> Vec<RationalMatrix> {
    let mut out: Vec<RationalMatrix> = Vec::new();
    for x in xs {
        if !out.iter().any(|y| congruence_equiv(y, &x, ctx)) {
            out.push(x);
        }
    }
    out
}

/// Left K₀-cosets `g·K₀` in `K₀·diag(p,1)·K₀ ⊂ GL₂(Q_p)`, found by brute
/// force over K₀/K₁, checked against the classical list
/// `[[p, a], [0, 1]]` (a mod p) and `[[1, 0], [0, p]]`.
pub fn hecke_left_cosets(p: u64) -> Vec<RationalMatrix> {
    let t = RationalMatrix::diagonal(&[int(p as i64), int(1)]);
    let mut found: Vec<RationalMatrix> = Vec::new();
    for k in group_mod(2, p, 1) {
        let x = &k * &t;
        if !found
            .iter()
            .any(|y| gln_zp_membership(&(&y.inverse().unwrap() * &x), p))
        {
            found.push(x);
        }
    }
    let mut classical: Vec<RationalMatrix> = (0..p as i64)
        .map(|a| RationalMatrix::from_ints(&[&[p as i64, a], &[0, 1]]))
        .collect();
    classical.push(RationalMatrix::from_ints(&[&[1, 0], &[0, p as i64]]));
    assert_eq!(found.len(), classical.len());
    for x in &found {
        assert_eq!(
            classical
                .iter()
                .filter(|y| gln_zp_membership(&(&y.inverse().unwrap() * x), p))
                .count(),
            1
        );
    }
    classical
}

/// `∫_U 1_{∪ g_i K₀}(t·u) du` with `U(Z_p)` of mass one, by summing over
/// `x ∈ p^{-2}Z_p / p^2 Z_p` (the integrand is constant on `p^2 Z_p`-cosets
/// and vanishes outside `p^{-2} Z_p` for the cosets used here).
pub fn unipotent_integral(cosets: &[RationalMatrix], t: &RationalMatrix, p: u64) -> Rational {
    let mut total = Rational::zero();
    let steps = p.pow(4);
    let weight = pow_p(p, -2);
    for j in 0..steps {
        let x = Rational::new((j as i64).into(), 1.into()) * pow_p(p, -2);
        let u = RationalMatrix::from_rows(vec![
            vec![Rational::one(), x],
            vec![Rational::zero(), Rational::one()],
        ]);
        let tu = t * &u;
        let hits = cosets
            .iter()
            .filter(|g| gln_zp_membership(&(&g.inverse().unwrap() * &tu), p))
            .count();
        total += &weight * Rational::from_integer(hits.into());
    }
    total
}

/// Normalized constant term of `1_{K₀ diag(p,1) K₀} μ^{K₀}` in GL₂(Q_p) as
/// coefficients on `T ∩ K_1`-cosets: `|λ_B(t)|^{1/2} · ∫_U h(tu) du / [T₀:T₁]`
/// for t running over `diag(p^i u₁, p^j u₂)` with units mod p.
pub fn constant_term_oracle(p: u64) -> BTreeMap<(i64, i64, u64, u64), RootP> {
    let cosets = hecke_left_cosets(p);
    let torus_index = Rational::from_integer(((p - 1) * (p - 1)).into());
    let mut out = BTreeMap::new();
    for (i, j) in [(1i64, 0i64), (0, 1), (0, 0), (1, 1), (2, -1), (-1, 2)] {
        for u1 in 1..p {
            for u2 in 1..p {
                let t = RationalMatrix::diagonal(&[
                    pow_p(p, i) * int(u1 as i64),
                    pow_p(p, j) * int(u2 as i64),
                ]);
                let integral = unipotent_integral(&cosets, &t, p);
                if integral.is_zero() {
                    continue;
                }
                let lambda = t.get(0, 0) / t.get(1, 1);
                let twist = padic_norm_halfpower(&lambda, p, 1).unwrap();
                out.insert((i, j, u1, u2), twist.scale(&(integral / &torus_index)));
            }
        }
    }
    out
}

pub fn abs_p(x: &Rational, p: u64) -> Rational {
    padic_abs(x, p)
}

pub fn is_level_trivial(x: &RationalMatrix, ctx: PrimeContext) -> bool {
    in_congruence_subgroup(x, ctx.p, ctx.m)
}
