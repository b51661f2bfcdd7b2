//! Lattice computations for GL_n(Q) ⊂ GL_n(Q_p): membership in K₀ = GL_n(Z_p),
//! principal congruence subgroups K_m, canonical coset representatives.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::{
    is_padic_integer, is_padic_unit, is_prime, pow_p, reduce_mod_pk, reduce_mod_pk_lattice, val,
    Rational,
};
use crate::error::{check_guard, domain, Result};

/// A prime together with a congruence level `m ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeContext {
    pub p: u64,
    pub m: u32,
}

impl PrimeContext {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(domain("level m must be at least 1"));
        }
        Ok(PrimeContext { p, m })
    }

    /// p^m.
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }
}

/// Whether `g` lies in GL_n(Z_p).
pub fn gln_zp_membership(g: &RationalMatrix, p: u64) -> bool {
    g.entries().iter().all(|x| is_padic_integer(x, p)) && is_padic_unit(&g.det(), p)
}

/// Whether every entry of `x − 1` has valuation at least `m`.
pub fn in_congruence_subgroup(x: &RationalMatrix, p: u64, m: u32) -> bool {
    let n = x.n();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let mut e = x.get(i, j).clone();
            if i == j {
                e -= Rational::one();
            }
            e.is_zero() || val(&e, p) >= m as i64
        })
    })
}

/// Whether `xK_m = yK_m`.
pub fn congruence_equiv(x: &RationalMatrix, y: &RationalMatrix, ctx: PrimeContext) -> bool {
    match x.inverse() {
        Ok(xi) => in_congruence_subgroup(&(&xi * y), ctx.p, ctx.m),
        Err(_) => false,
    }
}

/// Column-style Hermite form over Z_p: returns upper triangular `H = x·k`
/// with `k ∈ GL_n(Z_p)`, diagonal entries powers of p and each entry above
/// the diagonal reduced modulo the diagonal entry of its row.
///
/// Column operations only mix columns of the same block or add earlier
/// columns to later ones, so when `x` is block upper triangular (or block
/// diagonal) for some composition, so is `H`.
pub fn hermite_upper(x: &RationalMatrix, p: u64) -> Result<RationalMatrix> {
    let n = x.n();
    let mut h = x.clone();
    let col_axpy = |h: &mut RationalMatrix, dst: usize, src: usize, c: &Rational| {
        for r in 0..n {
            let t = h.get(r, src) * c;
            if !t.is_zero() {
                let v = h.get(r, dst) - t;
                h.set(r, dst, v);
            }
        }
    };
    for r in (0..n).rev() {
        let pivot = (0..=r)
            .filter(|&c| !h.get(r, c).is_zero())
            .min_by_key(|&c| (val(h.get(r, c), p), c))
            .ok_or_else(|| domain("singular matrix"))?;
        if pivot != r {
            for i in 0..n {
                let a = h.get(i, pivot).clone();
                let b = h.get(i, r).clone();
                h.set(i, pivot, b);
                h.set(i, r, a);
            }
        }
        let d = h.get(r, r).clone();
        let unit = &d / pow_p(p, val(&d, p));
        for i in 0..n {
            let v = h.get(i, r) / &unit;
            h.set(i, r, v);
        }
        let d = h.get(r, r).clone();
        for c in 0..r {
            if h.get(r, c).is_zero() {
                continue;
            }
            let f = h.get(r, c) / &d;
            col_axpy(&mut h, c, r, &f);
        }
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let e = h.get(i, j).clone();
            if e.is_zero() {
                continue;
            }
            let vi = val(h.get(i, i), p);
            let rep = reduce_mod_pk_lattice(&e, p, vi);
            if rep == e {
                continue;
            }
            let t = (&e - &rep) / h.get(i, i);
            col_axpy(&mut h, j, i, &t);
        }
    }
    Ok(h)
}

/// Entrywise reduction of an element of GL_n(Z_p) ∩ GL_n(Q) to integers in `[0, p^m)`.
pub fn reduce_matrix(k: &RationalMatrix, p: u64, m: u32) -> Vec<u64> {
    k.entries()
        .iter()
        .map(|x| reduce_mod_pk(x, p, m).to_u64().expect("small modulus"))
        .collect()
}

fn integer_matrix(n: usize, cells: &[u64]) -> RationalMatrix {
    RationalMatrix::from_rows(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(BigInt::from(cells[i * n + j])))
                    .collect()
            })
            .collect(),
    )
}

/// Canonical representative of `xK_m` (upper convention). Representatives of
/// cosets of elements of a block upper triangular or block diagonal subgroup
/// stay inside that subgroup.
pub fn level_canonical(x: &RationalMatrix, ctx: PrimeContext) -> Result<RationalMatrix> {
    let h = hermite_upper(x, ctx.p)?;
    let k = &h.inverse()? * x;
    let kbar = integer_matrix(x.n(), &reduce_matrix(&k, ctx.p, ctx.m));
    Ok(&h * &kbar)
}

/// Canonical representative in the lower convention: conjugate by the long
/// Weyl element, canonicalize, conjugate back. Keeps block lower triangular
/// elements block lower triangular.
pub fn level_canonical_lower(x: &RationalMatrix, ctx: PrimeContext) -> Result<RationalMatrix> {
    let w = RationalMatrix::long_element(x.n());
    let flipped = &(&w * x) * &w;
    let c = level_canonical(&flipped, ctx)?;
    Ok(&(&w * &c) * &w)
}

/// Size of GL_n(Z/p^m).
pub fn gln_mod_order(n: usize, p: u64, m: u32) -> u128 {
    let q = p as u128;
    let mut order: u128 = 1;
    for i in 0..n {
        order = order.saturating_mul(q.pow(n as u32).saturating_sub(q.pow(i as u32)));
    }
    // kernel of reduction GL_n(Z/p^m) -> GL_n(F_p) has order p^{(m-1)n^2}
    order.saturating_mul(q.saturating_pow((m - 1) * (n * n) as u32))
}

fn det_mod(n: usize, a: &[i64], modulus: i64) -> i64 {
    match n {
        0 => 1,
        1 => a[0].rem_euclid(modulus),
        _ => {
            let mut d = 0i64;
            for j in 0..n {
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for r in 1..n {
                    for c in 0..n {
                        if c != j {
                            minor.push(a[r * n + c]);
                        }
                    }
                }
                let term = a[j] * det_mod(n - 1, &minor, modulus) % modulus;
                if j % 2 == 0 {
                    d += term;
                } else {
                    d -= term;
                }
            }
            d.rem_euclid(modulus)
        }
    }
}

/// All elements of GL_n(Z/p^m) as integer cell vectors in `[0, p^m)`,
/// in lexicographic order.
pub fn enumerate_gln_mod(n: usize, ctx: PrimeContext, guard: u64) -> Result<Vec<Vec<u64>>> {
    check_guard("GL_n(Z/p^m)", gln_mod_order(n, ctx.p, ctx.m), guard)?;
    let q = ctx.modulus();
    let cells = n * n;
    check_guard(
        "matrix candidates",
        (q as u128).saturating_pow(cells as u32),
        guard.saturating_mul(64),
    )?;
    let mut out = Vec::new();
    let mut cur = vec![0u64; cells];
    loop {
        let signed: Vec<i64> = cur.iter().map(|&x| x as i64).collect();
        if det_mod(n, &signed, q as i64) % ctx.p as i64 != 0 {
            out.push(cur.clone());
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A transversal of K₀/K_m as integer matrices (lifts of GL_n(Z/p^m)).
pub fn enumerate_transversal_k0_mod_km(
    n: usize,
    ctx: PrimeContext,
    guard: u64,
) -> Result<Vec<RationalMatrix>> {
    Ok(enumerate_gln_mod(n, ctx, guard)?
        .iter()
        .map(|c| integer_matrix(n, c))
        .collect())
}

pub(crate) fn lift(n: usize, cells: &[u64]) -> RationalMatrix {
    integer_matrix(n, cells)
}

fn primitive_root_mod_p_squared(p: u64) -> u64 {
    let pp = p * p;
    let pow = |b: u64, e: u64, m: u64| (0..e).fold(1u64, |acc, _| acc * b % m);
    let factors: Vec<u64> = (2..p)
        .filter(|d| (p - 1).is_multiple_of(*d) && is_prime(*d))
        .collect();
    let g = (2..p.max(3))
        .find(|&g| factors.iter().all(|&f| pow(g, (p - 1) / f, p) != 1))
        .unwrap_or(1);
    if pow(g, p - 1, pp) == 1 {
        g + p
    } else {
        g
    }
}

/// Elements generating a dense subgroup of GL_n(Z_p): elementary matrices
/// `1 + E_ij` (i ≠ j) and `diag(u, 1, …, 1)` for units `u` generating Z_p^×
/// topologically.
pub fn k0_generators(n: usize, p: u64) -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(RationalMatrix::elementary(n, i, j, Rational::one()));
            }
        }
    }
    let mut units: Vec<i64> = vec![-1, 1 + p as i64];
    if p > 2 {
        units.push(primitive_root_mod_p_squared(p) as i64);
    }
    for u in units {
        let mut d = vec![Rational::one(); n];
        d[0] = Rational::from_integer(u.into());
        out.push(RationalMatrix::diagonal(&d));
    }
    out
}

/// Index [K₀ : K_m] as a rational, for normalizations.
pub fn index_k0_km(n: usize, ctx: PrimeContext) -> Rational {
    Rational::from_integer(BigInt::from(gln_mod_order(n, ctx.p, ctx.m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn ctx(p: u64, m: u32) -> PrimeContext {
        PrimeContext::new(p, m).unwrap()
    }

    #[test]
    fn generators_are_integral_units() {
        for p in [2, 3, 5, 7] {
            for g in k0_generators(3, p) {
                assert!(gln_zp_membership(&g, p));
            }
        }
        assert_eq!(primitive_root_mod_p_squared(3), 2);
        assert_eq!(primitive_root_mod_p_squared(5), 2);
    }

    #[test]
    fn membership_examples() {
        assert!(gln_zp_membership(&RationalMatrix::identity(2), 2));
        assert!(!gln_zp_membership(
            &RationalMatrix::diagonal(&[int(2), int(1)]),
            2
        ));
        let g = RationalMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]]);
        assert!(!gln_zp_membership(&g, 2));
        let g = RationalMatrix::from_rows(vec![vec![rat(1, 3), int(1)], vec![int(0), int(5)]]);
        assert!(gln_zp_membership(&g, 2));
    }

    #[test]
    fn congruence_examples() {
        let c = ctx(3, 2);
        let g = RationalMatrix::from_ints(&[&[2, 1], &[7, 5]]);
        assert!(congruence_equiv(&g, &g, c));
        let one = RationalMatrix::identity(2);
        assert!(congruence_equiv(
            &one,
            &RationalMatrix::elementary(2, 0, 1, int(9)),
            c
        ));
        assert!(!congruence_equiv(
            &one,
            &RationalMatrix::elementary(2, 0, 1, int(3)),
            c
        ));
        assert!(!congruence_equiv(
            &RationalMatrix::diagonal(&[int(3), int(1)]),
            &one,
            c
        ));
    }

    #[test]
    fn transversal_sizes() {
        assert_eq!(
            enumerate_transversal_k0_mod_km(2, ctx(2, 1), DEFAULT)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_transversal_k0_mod_km(2, ctx(3, 1), DEFAULT)
                .unwrap()
                .len(),
            48
        );
        assert_eq!(
            enumerate_transversal_k0_mod_km(1, ctx(2, 1), DEFAULT)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_transversal_k0_mod_km(2, ctx(2, 2), DEFAULT)
                .unwrap()
                .len(),
            96
        );
        assert_eq!(gln_mod_order(3, 2, 1), 168);
    }

    #[test]
    fn transversal_guard() {
        let err = enumerate_transversal_k0_mod_km(3, ctx(3, 1), 1000).unwrap_err();
        assert!(matches!(err, crate::error::Error::Resource { .. }));
    }

    const DEFAULT: u64 = crate::error::DEFAULT_GUARD;

    #[test]
    fn transversal_pairwise_inequivalent() {
        let c = ctx(2, 1);
        let t = enumerate_transversal_k0_mod_km(2, c, DEFAULT).unwrap();
        for (i, x) in t.iter().enumerate() {
            for y in &t[i + 1..] {
                assert!(!congruence_equiv(x, y, c));
            }
        }
    }

    #[test]
    fn hermite_form_is_upper_and_equivalent() {
        let x = RationalMatrix::from_rows(vec![vec![int(1), int(0)], vec![rat(1, 2), int(1)]]);
        let h = hermite_upper(&x, 2).unwrap();
        assert!(h.get(1, 0).is_zero());
        assert!(gln_zp_membership(&(&h.inverse().unwrap() * &x), 2));
    }

    #[test]
    fn canonical_is_idempotent_and_class_function() {
        let c = ctx(2, 1);
        let x = RationalMatrix::from_rows(vec![vec![int(3), rat(1, 2)], vec![int(6), int(4)]]);
        let cx = level_canonical(&x, c).unwrap();
        assert!(congruence_equiv(&x, &cx, c));
        assert_eq!(level_canonical(&cx, c).unwrap(), cx);
        let k = RationalMatrix::from_rows(vec![vec![int(3), int(2)], vec![int(4), int(5)]]);
        assert!(in_congruence_subgroup(&k, 2, 1));
        assert_eq!(level_canonical(&(&x * &k), c).unwrap(), cx);
        let cl = level_canonical_lower(&x, c).unwrap();
        assert!(congruence_equiv(&x, &cl, c));
    }
}
