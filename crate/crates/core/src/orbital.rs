//! Orbital integrals along split maximal tori of GL₂ and of Levi tori, the
//! descent identity to the Levi, and a finite separation probe.
//!
//! Normalizations: the Haar measure on the group gives `K_m` mass one, the
//! Haar measure on the torus gives `T ∩ K_m` mass one, and the orbital
//! integral is the density at γ of the pushforward of `h` to the torus along
//! `G/T × T → G`, which carries the Jacobian `|Δ_{T,G}(γ)|`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::{enumerate_transversal_k0_mod_km, index_k0_km};
use crate::arith::rational::{format_rational, padic_abs, pow_p, val, Rational};
use crate::arith::rootp::{padic_norm_halfpower, rank, RootP};
use crate::characters::{character_pairing, UnramifiedCharacter};
use crate::error::{check_guard, domain, Error, Result};
use crate::group::{discriminant_delta, BlockParabolic, SubgroupSpec};
use crate::hecke::{res_normalized, Ambient, HeckeMeasure};

/// A diagonal matrix with pairwise distinct nonzero rational eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularElement {
    eigenvalues: Vec<Rational>,
    matrix: RationalMatrix,
}

impl RegularElement {
    pub fn new(eigenvalues: Vec<Rational>) -> Result<Self> {
        if eigenvalues.iter().any(|x| x.is_zero()) {
            return Err(domain("eigenvalues must be nonzero"));
        }
        for i in 0..eigenvalues.len() {
            for j in i + 1..eigenvalues.len() {
                if eigenvalues[i] == eigenvalues[j] {
                    return Err(domain("eigenvalues must be distinct"));
                }
            }
        }
        let matrix = RationalMatrix::diagonal(&eigenvalues);
        Ok(RegularElement {
            eigenvalues,
            matrix,
        })
    }

    pub fn from_matrix(g: &RationalMatrix) -> Result<Self> {
        let n = g.n();
        if (0..n).any(|i| (0..n).any(|j| i != j && !g.get(i, j).is_zero())) {
            return Err(Error::Unsupported(
                "only diagonal (split) elements are supported".into(),
            ));
        }
        Self::new((0..n).map(|i| g.get(i, i).clone()).collect())
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigenvalues
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn valuations(&self, p: u64) -> Vec<i64> {
        self.eigenvalues.iter().map(|x| val(x, p)).collect()
    }

    pub fn swapped(&self) -> Self {
        let mut e = self.eigenvalues.clone();
        e.reverse();
        Self::new(e).expect("still regular")
    }
}

impl fmt::Display for RegularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.eigenvalues.iter().map(format_rational).collect();
        write!(f, "diag({})", e.join(","))
    }
}

/// The Haar normalizations an [`OrbitalValue`] was computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    /// Subgroup of the ambient group given mass one.
    pub group: &'static str,
    /// Subgroup of the torus given mass one.
    pub torus: &'static str,
}

pub const NORMALIZATION: Normalization = Normalization {
    group: "K_m",
    torus: "T∩K_m",
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalValue {
    pub value: RootP,
    pub normalization: Normalization,
    /// Number of rational conjugacy classes summed over (stable integrals).
    pub orbits: usize,
    /// Cosets evaluated by the enumeration.
    pub evaluations: u128,
}

/// The orbital integral of `h` at γ.
///
/// On a torus this is the coefficient of the coset of γ. On GL₂ it is
/// `|Δ(γ)| / |a−b| / [T₀:T_m] · Σ_{k ∈ K₀/K_m} ∫ f(k⁻¹ n_y k) dy` with
/// `n_y = [[a, y], [0, b]]`, where `y` runs over the lattice bounding the
/// entries of the support and the integrand is constant on cosets of
/// `p^{m+v(a)} Z_p`. Needs `h` invariant under `Ad(K_m)`.
pub fn orbital_integral(
    h: &HeckeMeasure,
    gamma: &RegularElement,
    guard: u64,
) -> Result<OrbitalValue> {
    let n = h.ambient().n();
    if gamma.eigenvalues().len() != n {
        return Err(domain("γ and the measure have different dimensions"));
    }
    match h.ambient() {
        Ambient::General { n: 1 } => torus_value(h, gamma),
        Ambient::Levi { blocks } if blocks.iter().all(|&b| b == 1) => torus_value(h, gamma),
        Ambient::General { n: 2 } => {
            if !h.is_biinvariant() {
                return Err(domain("orbital integral requires an Ad-invariant measure"));
            }
            gl2_orbital(h, gamma, guard)
        }
        Ambient::Levi { blocks } if blocks.len() == 1 && blocks[0] == 2 => {
            let as_group = HeckeMeasure::from_terms(
                Ambient::general(2),
                h.ctx(),
                h.iter().map(|(x, c)| (x.clone(), c.clone())),
            )?;
            let as_group = as_group.into_biinvariant()?;
            gl2_orbital(&as_group, gamma, guard)
        }
        other => Err(Error::Unsupported(format!("orbital integrals on {other}"))),
    }
}

fn torus_value(h: &HeckeMeasure, gamma: &RegularElement) -> Result<OrbitalValue> {
    Ok(OrbitalValue {
        value: h.coefficient(gamma.matrix())?,
        normalization: NORMALIZATION,
        orbits: 1,
        evaluations: 1,
    })
}

fn gl2_orbital(h: &HeckeMeasure, gamma: &RegularElement, guard: u64) -> Result<OrbitalValue> {
    let ctx = h.ctx();
    let p = ctx.p;
    let zero = OrbitalValue {
        value: RootP::zero(p),
        normalization: NORMALIZATION,
        orbits: 1,
        evaluations: 0,
    };
    if h.is_empty() {
        return Ok(zero);
    }
    let (a, b) = (&gamma.eigenvalues()[0], &gamma.eigenvalues()[1]);
    let det_val = val(&(a * b), p);
    // determinant valuation is constant on cosets and conjugation invariant
    if h.iter().all(|(x, _)| val(&x.det(), p) != det_val) {
        return Ok(zero);
    }
    let lo = h
        .iter()
        .flat_map(|(x, _)| {
            x.entries()
                .iter()
                .filter(|e| !e.is_zero())
                .map(|e| val(e, p))
                .collect::<Vec<_>>()
        })
        .min()
        .expect("nonempty support");
    let period = (ctx.m as i64 + val(a, p)).max(lo);
    let steps = (period - lo) as u32;
    let ks = enumerate_transversal_k0_mod_km(2, ctx, guard)?;
    let evaluations = (ks.len() as u128).saturating_mul((p as u128).saturating_pow(steps));
    check_guard(
        &format!("orbital enumeration (y ∈ p^{lo}Z_p mod p^{period})"),
        evaluations,
        guard,
    )?;

    let base = pow_p(p, lo);
    let mut sum = RootP::zero(p);
    for k in &ks {
        let ki = k.inverse()?;
        for j in 0..(p as u128).pow(steps) {
            let y = &base * Rational::from_integer(j.into());
            let n_y = RationalMatrix::from_rows(vec![
                vec![a.clone(), y],
                vec![Rational::zero(), b.clone()],
            ]);
            let c = h.coefficient(&(&(&ki * &n_y) * k))?;
            if !c.is_zero() {
                sum = &sum + &c;
            }
        }
    }
    let delta = padic_abs(
        &discriminant_delta(&SubgroupSpec::Torus(2), gamma.matrix())?,
        p,
    );
    let torus_index = index_k0_km(1, ctx) * index_k0_km(1, ctx);
    let factor = delta / padic_abs(&(a - b), p) / torus_index * pow_p(p, -period);
    Ok(OrbitalValue {
        value: sum.scale(&factor),
        normalization: NORMALIZATION,
        orbits: 1,
        evaluations,
    })
}

/// Sum over the rational forms of the torus; split tori of GL_n have one.
pub fn stable_orbital(
    h: &HeckeMeasure,
    gamma: &RegularElement,
    guard: u64,
) -> Result<OrbitalValue> {
    orbital_integral(h, gamma, guard)
}

/// Both sides of `O_γ^G(h) = |Δ_{M,G}(γ)|^{k/2} · O_γ^M(r_P(h))`; the
/// identity holds for `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentSides {
    pub group_side: RootP,
    pub levi_side: RootP,
}

pub fn descent_sides(
    h: &HeckeMeasure,
    gamma: &RegularElement,
    p: &BlockParabolic,
    half_powers: i64,
    guard: u64,
) -> Result<DescentSides> {
    let r = res_normalized(h, p, guard)?;
    descent_sides_with(h, &r, gamma, p, half_powers, guard)
}

/// As [`descent_sides`] with the normalized restriction supplied.
pub fn descent_sides_with(
    h: &HeckeMeasure,
    restricted: &HeckeMeasure,
    gamma: &RegularElement,
    p: &BlockParabolic,
    half_powers: i64,
    guard: u64,
) -> Result<DescentSides> {
    let prime = h.ctx().p;
    let group_side = orbital_integral(h, gamma, guard)?.value;
    let delta = discriminant_delta(&SubgroupSpec::Levi(p.clone()), gamma.matrix())?;
    let levi_value = orbital_integral(restricted, gamma, guard)?.value;
    let levi_side = if levi_value.is_zero() {
        levi_value
    } else if delta.is_zero() {
        return Err(domain(format!("{gamma} is not regular in G")));
    } else {
        &padic_norm_halfpower(&delta, prime, half_powers)? * &levi_value
    };
    Ok(DescentSides {
        group_side,
        levi_side,
    })
}

pub fn descent_check(
    h: &HeckeMeasure,
    gamma: &RegularElement,
    p: &BlockParabolic,
    guard: u64,
) -> Result<bool> {
    let s = descent_sides(h, gamma, p, 1, guard)?;
    Ok(s.group_side == s.levi_side)
}

/// The diagonal elements `diag(p^i, u·p^j)` for `i, j ∈ [lo, hi]`.
pub fn regular_grid(p: u64, lo: i64, hi: i64, unit: &Rational) -> Result<Vec<RegularElement>> {
    let mut out = Vec::new();
    for i in lo..=hi {
        for j in lo..=hi {
            out.push(RegularElement::new(vec![pow_p(p, i), unit * pow_p(p, j)])?);
        }
    }
    Ok(out)
}

/// Rank of `[O_{γ_j}(h_i)]` over Q(√p).
pub fn separation_rank(
    hs: &[HeckeMeasure],
    gammas: &[RegularElement],
    guard: u64,
) -> Result<usize> {
    Ok(rank(&orbital_matrix(hs, gammas, guard)?))
}

pub fn orbital_matrix(
    hs: &[HeckeMeasure],
    gammas: &[RegularElement],
    guard: u64,
) -> Result<Vec<Vec<RootP>>> {
    if let Some(first) = hs.first() {
        if hs.iter().any(|h| h.ctx() != first.ctx()) {
            return Err(domain("measures are at different levels"));
        }
    }
    hs.iter()
        .map(|h| {
            gammas
                .iter()
                .map(|g| Ok(orbital_integral(h, g, guard)?.value))
                .collect()
        })
        .collect()
}

/// `[∫ χ_j d r_P(h_i)]`, the character-side pairing matrix.
pub fn character_matrix(
    hs: &[HeckeMeasure],
    chars: &[UnramifiedCharacter],
    p: &BlockParabolic,
    guard: u64,
) -> Result<Vec<Vec<RootP>>> {
    hs.iter()
        .map(|h| {
            let r = res_normalized(h, p, guard)?;
            chars.iter().map(|chi| character_pairing(chi, &r)).collect()
        })
        .collect()
}

/// Rank of the two pairing families side by side: equals `hs.len()` iff no
/// nonzero combination of the `hs` is annihilated by both.
pub fn joint_rank(orbital: &[Vec<RootP>], characters: &[Vec<RootP>]) -> usize {
    let rows: Vec<Vec<RootP>> = orbital
        .iter()
        .zip(characters)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    rank(&rows)
}

/// Whether a measure's orbital integrals vanish identically on a set of γ.
pub fn vanishes_on(h: &HeckeMeasure, gammas: &[RegularElement], guard: u64) -> Result<bool> {
    for g in gammas {
        if !orbital_integral(h, g, guard)?.value.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
