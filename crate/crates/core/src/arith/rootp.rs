//! Elements a + b·√p of the quadratic field Q(√p).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, padic_valuation, parse_rational, pow_p, Rational};
use crate::error::{Error, Result};

/// Exact element `a + b√p` with rational `a`, `b` and `p` prime.
///
/// Values with `b = 0` are plain rationals and combine freely with elements
/// over any prime; mixing two irrational parts over different primes panics.
#[derive(Clone, Debug)]
pub struct RootP {
    pub a: Rational,
    pub b: Rational,
    pub p: u64,
}

impl RootP {
    pub fn new(a: Rational, b: Rational, p: u64) -> Self {
        RootP { a, b, p }
    }

    pub fn rational(a: Rational, p: u64) -> Self {
        RootP {
            a,
            b: Rational::zero(),
            p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Self::rational(Rational::zero(), p)
    }

    pub fn one(p: u64) -> Self {
        Self::rational(Rational::one(), p)
    }

    /// √p itself.
    pub fn sqrt_p(p: u64) -> Self {
        RootP {
            a: Rational::zero(),
            b: Rational::one(),
            p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate a − b√p.
    pub fn conjugate(&self) -> Self {
        RootP {
            a: self.a.clone(),
            b: -self.b.clone(),
            p: self.p,
        }
    }

    /// Field norm a² − p·b².
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.p.into()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero in Q(sqrt p)".into()));
        }
        let c = self.conjugate();
        Ok(RootP {
            a: c.a / &n,
            b: c.b / &n,
            p: self.p,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RootP {
            a: &self.a * r,
            b: &self.b * r,
            p: self.p,
        }
    }

    /// p^(e/2) for an integer e.
    pub fn half_power(p: u64, e: i64) -> Self {
        let q = pow_p(p, e.div_euclid(2));
        if e.rem_euclid(2) == 0 {
            Self::rational(q, p)
        } else {
            RootP {
                a: Rational::zero(),
                b: q,
                p,
            }
        }
    }

    fn joint_prime(&self, other: &Self) -> u64 {
        if self.p == other.p || other.b.is_zero() {
            self.p
        } else if self.b.is_zero() {
            other.p
        } else {
            panic!("mixing Q(sqrt {}) with Q(sqrt {})", self.p, other.p)
        }
    }

    /// Parses the canonical `a+b√p` / `a-b√p` string.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not an a+b√p value: {s:?}"));
        let s = s.trim();
        let (head, p) = s.rsplit_once('√').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        // the separator is the last '+' or '-' that is not the leading sign
        let idx = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a = parse_rational(&head[..idx])?;
        let mut b = parse_rational(&head[idx + 1..])?;
        if b.is_negative() {
            return Err(bad());
        }
        if &head[idx..idx + 1] == "-" {
            b = -b;
        }
        Ok(RootP { a, b, p })
    }
}

impl PartialEq for RootP {
    fn eq(&self, other: &Self) -> bool {
        if self.b.is_zero() && other.b.is_zero() {
            return self.a == other.a;
        }
        self.p == other.p && self.a == other.a && self.b == other.b
    }
}

impl Eq for RootP {}

impl fmt::Display for RootP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}√{}",
            format_rational(&self.a),
            sign,
            format_rational(&self.b.abs()),
            self.p
        )
    }
}

impl<'a> Add<&'a RootP> for &'a RootP {
    type Output = RootP;
    fn add(self, o: &RootP) -> RootP {
        RootP {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            p: self.joint_prime(o),
        }
    }
}

impl<'a> Sub<&'a RootP> for &'a RootP {
    type Output = RootP;
    fn sub(self, o: &RootP) -> RootP {
        RootP {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            p: self.joint_prime(o),
        }
    }
}

impl<'a> Mul<&'a RootP> for &'a RootP {
    type Output = RootP;
    fn mul(self, o: &RootP) -> RootP {
        let p = self.joint_prime(o);
        let pr = Rational::from_integer(p.into());
        RootP {
            a: &self.a * &o.a + pr * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            p,
        }
    }
}

impl<'a> Div<&'a RootP> for &'a RootP {
    type Output = RootP;
    fn div(self, o: &RootP) -> RootP {
        self * &o.inverse().expect("division by zero in Q(sqrt p)")
    }
}

impl Add for RootP {
    type Output = RootP;
    fn add(self, o: RootP) -> RootP {
        &self + &o
    }
}

impl Sub for RootP {
    type Output = RootP;
    fn sub(self, o: RootP) -> RootP {
        &self - &o
    }
}

impl Mul for RootP {
    type Output = RootP;
    fn mul(self, o: RootP) -> RootP {
        &self * &o
    }
}

impl Neg for RootP {
    type Output = RootP;
    fn neg(self) -> RootP {
        RootP {
            a: -self.a,
            b: -self.b,
            p: self.p,
        }
    }
}

impl AddAssign<&RootP> for RootP {
    fn add_assign(&mut self, o: &RootP) {
        let p = self.joint_prime(o);
        self.a += &o.a;
        self.b += &o.b;
        self.p = p;
    }
}

/// |x|_p^(k/2) = p^(−k·v_p(x)/2), exactly, as an element of Q(√p).
/// Rank of a matrix over Q(√p) by Gaussian elimination.
pub fn rank(rows: &[Vec<RootP>]) -> usize {
    let mut a: Vec<Vec<RootP>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][c].inverse().expect("nonzero pivot");
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in c..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn padic_norm_halfpower(x: &Rational, p: u64, k: i64) -> Result<RootP> {
    let v = padic_valuation(x, p).ok_or_else(|| Error::Domain("|0|^(k/2) is undefined".into()))?;
    Ok(RootP::half_power(p, -k * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn rank_over_quadratic_field() {
        let r = |a: i64, b: i64| RootP::new(int(a), int(b), 2);
        // (1+√2)(1-√2) = -1, so the rows are proportional
        let m = vec![vec![r(1, 1), r(1, 0)], vec![r(-1, 0), r(1, -1)]];
        assert_eq!(rank(&m), 1);
        let m = vec![vec![r(1, 1), r(1, 0)], vec![r(1, 0), r(1, -1)]];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
    }

    fn arb_root(p: u64) -> impl Strategy<Value = RootP> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(move |(an, ad, bn, bd)| RootP::new(rat(an, ad), rat(bn, bd), p))
    }

    #[test]
    fn halfpower_examples() {
        assert_eq!(
            padic_norm_halfpower(&int(2), 2, 1).unwrap(),
            RootP::new(int(0), rat(1, 2), 2)
        );
        assert_eq!(padic_norm_halfpower(&int(1), 7, 3).unwrap(), RootP::one(7));
        assert_eq!(
            padic_norm_halfpower(&rat(3, 4), 2, 2).unwrap(),
            RootP::rational(int(4), 2)
        );
        assert!(padic_norm_halfpower(&int(0), 2, 1).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0+1/2√2", "-3/4-5√3", "7+0√5"] {
            let x = RootP::parse(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(RootP::parse("1+-2√2").is_err());
        assert!(RootP::parse("12").is_err());
    }

    #[test]
    fn sqrt_p_squares_to_p() {
        let s = RootP::sqrt_p(3);
        assert_eq!(&s * &s, RootP::rational(int(3), 3));
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_root(2), y in arb_root(2), z in arb_root(2)) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn norm_identity(x in arb_root(5)) {
            let prod = &x * &x.conjugate();
            prop_assert!(prod.is_rational());
            prop_assert_eq!(prod.a, x.norm());
        }

        #[test]
        fn inverse_is_inverse(x in arb_root(3)) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), RootP::one(3));
        }

        #[test]
        fn display_parse(x in arb_root(7)) {
            prop_assert_eq!(RootP::parse(&x.to_string()).unwrap(), x);
        }
    }
}
