//! Polynomials with rational coefficients: univariate (for curves) and
//! multivariate (for the equations cutting out constructible sets).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::format_rational;
use crate::arith::Rational;

/// Univariate polynomial, coefficients from the constant term up, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.0.iter().rev().fold(Poly::zero(), |acc, c| {
            acc.mul(inner).add(&Poly::constant(c.clone()))
        })
    }

    /// `self(t + a)`.
    pub fn shift(&self, a: &Rational) -> Poly {
        self.compose(&Poly::new(vec![a.clone(), Rational::one()]))
    }

    /// All rational roots, sorted, without multiplicity.
    ///
    /// Clears denominators, strips the power of `t`, and tests `±r/s` for
    /// `r` dividing the constant term and `s` dividing the leading one.
    /// Panics on the zero polynomial, whose root set is not finite.
    pub fn rational_roots(&self) -> BTreeSet<Rational> {
        assert!(!self.is_zero(), "the zero polynomial vanishes everywhere");
        let mut roots = BTreeSet::new();
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        if lead > 0 {
            roots.insert(Rational::zero());
            ints.drain(..lead);
        }
        if ints.len() == 1 {
            return roots;
        }
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let ints: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        let reduced = Poly::new(ints.iter().cloned().map(Rational::from_integer).collect());
        let nums = divisors(&ints[0]);
        let dens = divisors(ints.last().unwrap());
        for r in &nums {
            for s in &dens {
                for sign in [1i32, -1] {
                    let x = Rational::new(r * BigInt::from(sign), s.clone());
                    if reduced.eval(&x).is_zero() {
                        roots.insert(x);
                    }
                }
            }
        }
        roots
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("{}·t", format_rational(c)),
                _ => format!("{}·t^{k}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in `nvars` variables, as a map from exponent vectors to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    /// The coordinate `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, Rational::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut m = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has the wrong length");
            m.add_term(e, c);
        }
        m
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, x)| (e.clone(), x * c)),
        )
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point has the wrong dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| {
                    acc * num_traits::pow(x.clone(), k.to_usize().unwrap())
                })
            })
            .sum()
    }

    /// `self(f_1(t), …, f_n(t))`.
    pub fn compose(&self, curve: &[Poly]) -> Poly {
        assert_eq!(
            curve.len(),
            self.nvars,
            "curve has the wrong number of components"
        );
        let mut powers: Vec<Vec<Poly>> = curve
            .iter()
            .map(|f| vec![Poly::constant(Rational::one()), f.clone()])
            .collect();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&curve[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// The same polynomial in `total` variables, its own sitting at
    /// positions `offset..offset + nvars`.
    pub fn embed(&self, offset: usize, total: usize) -> MPoly {
        assert!(offset + self.nvars <= total);
        MPoly::from_terms(
            total,
            self.terms.iter().map(|(e, c)| {
                let mut big = vec![0; total];
                big[offset..offset + self.nvars].copy_from_slice(e);
                (big, c.clone())
            }),
        )
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut parts = vec![format_rational(c)];
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(format!("x{}", i + 1)),
                        _ => parts.push(format!("x{}^{k}", i + 1)),
                    }
                }
                parts.join("·")
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn roots_of_products() {
        // (2t − 1)(t + 3)t² = 2t⁴ + 5t³ − 3t²
        let p = poly(&[0, 0, -3, 5, 2]);
        assert_eq!(
            p.rational_roots(),
            BTreeSet::from([int(-3), int(0), rat(1, 2)])
        );
        assert!(poly(&[1, 0, 1]).rational_roots().is_empty());
        assert!(poly(&[7]).rational_roots().is_empty());
        let q = Poly::new(vec![rat(-1, 9), int(0), int(1)]);
        assert_eq!(q.rational_roots(), BTreeSet::from([rat(-1, 3), rat(1, 3)]));
    }

    #[test]
    fn composition_and_shift() {
        let p = poly(&[1, 0, 1]);
        assert_eq!(p.compose(&poly(&[1, 1])), poly(&[2, 2, 1]));
        assert_eq!(p.shift(&int(1)), poly(&[2, 2, 1]));
        assert_eq!(poly(&[0, 1]).pow(3), poly(&[0, 0, 0, 1]));
        assert_eq!(p.sub(&p), Poly::zero());
    }

    #[test]
    fn multivariate_composition_matches_evaluation() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let g = x.mul(&y).sub(&MPoly::constant(2, int(3)));
        let curve = [poly(&[1, 2]), poly(&[0, 1, 1])];
        let h = g.compose(&curve);
        for t in -3..4 {
            let t = int(t);
            let pt = [curve[0].eval(&t), curve[1].eval(&t)];
            assert_eq!(h.eval(&t), g.eval(&pt));
        }
        assert_eq!(g.embed(1, 3).eval(&[int(9), int(2), int(5)]), int(7));
        assert_eq!(g.to_string(), "-3 + 1·x1·x2");
    }
}
