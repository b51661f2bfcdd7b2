//! Rational numbers and their p-adic behaviour.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; numerator and denominator are coprime, denominator positive.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p^e` for any integer exponent.
pub fn pow_p(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation; `None` stands for +infinity (x = 0).
pub fn padic_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
    }
}

/// Valuation of a nonzero rational. Panics on zero.
pub(crate) fn val(x: &Rational, p: u64) -> i64 {
    padic_valuation(x, p).expect("valuation of zero")
}

/// |x|_p = p^{-v_p(x)} as an exact rational; |0| = 0.
pub fn padic_abs(x: &Rational, p: u64) -> Rational {
    match padic_valuation(x, p) {
        None => Rational::zero(),
        Some(v) => pow_p(p, -v),
    }
}

pub fn is_padic_integer(x: &Rational, p: u64) -> bool {
    padic_valuation(x, p).is_none_or(|v| v >= 0)
}

pub fn is_padic_unit(x: &Rational, p: u64) -> bool {
    padic_valuation(x, p) == Some(0)
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.mod_floor(modulus).extended_gcd(modulus);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(modulus)
}

/// Reduction of a p-integral rational modulo `p^k`, as an integer in `[0, p^k)`.
pub fn reduce_mod_pk(x: &Rational, p: u64, k: u32) -> BigInt {
    debug_assert!(is_padic_integer(x, p));
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    if modulus.is_one() {
        return BigInt::zero();
    }
    let inv = mod_inverse(x.denom(), &modulus);
    (x.numer() * inv).mod_floor(&modulus)
}

/// Canonical representative of the class of `x` in `Q_p / p^k Z_p`, chosen in
/// `Z[1/p]` as `N / p^s` with `0 <= N < p^(k+s)`.
pub fn reduce_mod_pk_lattice(x: &Rational, p: u64, k: i64) -> Rational {
    let v = match padic_valuation(x, p) {
        None => return Rational::zero(),
        Some(v) => v,
    };
    if v >= k {
        return Rational::zero();
    }
    let s = (-v).max(0);
    let scaled = x * pow_p(p, s);
    let n = reduce_mod_pk(&scaled, p, (k + s) as u32);
    BigRational::new(n, num_traits::pow(BigInt::from(p), s as usize))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"3"`, `"-7/4"` and similar into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Height max(|numerator|, denominator).
pub fn height(x: &Rational) -> BigInt {
    let n = x.numer().abs();
    if &n > x.denom() {
        n
    } else {
        x.denom().clone()
    }
}
