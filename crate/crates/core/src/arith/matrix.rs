//! Dense square matrices over Q.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{domain, Result};

/// An `n × n` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = x.clone();
        }
        m
    }

    /// `1 + c·E_{ij}`.
    pub fn elementary(n: usize, i: usize, j: usize, c: Rational) -> Self {
        let mut m = Self::identity(n);
        m.entries[i * n + j] += c;
        m
    }

    /// The permutation matrix with a 1 at `(i, perm[i])`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zero(n);
        for (i, &j) in perm.iter().enumerate() {
            m.entries[i * n + j] = Rational::one();
        }
        m
    }

    /// Antidiagonal permutation (longest Weyl element).
    pub fn long_element(n: usize) -> Self {
        Self::permutation(&(0..n).rev().collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn sub(&self, o: &Self) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Determinant by Gaussian elimination over Q.
    /// Bareiss elimination on the rows scaled to integers.
    pub fn det(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<BigInt> = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.extend(
                row.iter()
                    .map(|x| (x * Rational::from_integer(l.clone())).to_integer()),
            );
            scale *= l;
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Rational::zero();
            };
            if piv != c {
                for j in 0..n {
                    a.swap(c * n + j, piv * n + j);
                }
                sign = -sign;
            }
            for r in c + 1..n {
                for j in c + 1..n {
                    let v = (&a[c * n + c] * &a[r * n + j] - &a[r * n + c] * &a[c * n + j]) / &prev;
                    a[r * n + j] = v;
                }
                a[r * n + c] = BigInt::zero();
            }
            prev = a[c * n + c].clone();
        }
        Rational::new(sign * &a[n * n - 1], scale)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for c in 0..n {
            let piv = (c..n)
                .find(|&r| !a[r * n + c].is_zero())
                .ok_or_else(|| domain("singular matrix"))?;
            if piv != c {
                for j in 0..n {
                    a.swap(c * n + j, piv * n + j);
                    inv.swap(c * n + j, piv * n + j);
                }
            }
            let pv = a[c * n + c].clone();
            for j in 0..n {
                a[c * n + j] /= &pv;
                inv[c * n + j] /= &pv;
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for j in 0..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv[c * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Ok(RationalMatrix { n, entries: inv })
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.n, self.n, self.entries.clone())
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        Ok(&(g * self) * &g.inverse()?)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(format_rational).collect()
    }

    pub fn from_strings(n: usize, cells: &[String]) -> Result<Self> {
        if cells.len() != n * n {
            return Err(crate::error::Error::Parse(format!(
                "expected {} entries, found {}",
                n * n,
                cells.len()
            )));
        }
        let entries = cells
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix { n, entries })
    }

    /// Principal submatrix on the index range `lo..hi`.
    pub fn block(&self, lo: usize, hi: usize) -> Self {
        let k = hi - lo;
        let mut b = Self::zero(k);
        for i in 0..k {
            for j in 0..k {
                b.entries[i * k + j] = self.get(lo + i, lo + j).clone();
            }
        }
        b
    }
}

/// Rank of a `rows × cols` rational matrix given row-major.
pub fn rank_of_rows(rows: usize, cols: usize, mut a: Vec<Rational>) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, piv * cols + j);
        }
        let pv = a[rank * cols + c].clone();
        for r in 0..rows {
            if r == rank || a[r * cols + c].is_zero() {
                continue;
            }
            let f = &a[r * cols + c] / &pv;
            for j in c..cols {
                let t = &f * &a[rank * cols + j];
                a[r * cols + j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

impl<'a> Mul<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, o: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        RationalMatrix { n, entries: out }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<_> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Row-major rational strings; the wire form used in JSON reports.
impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let cells = Vec::<String>::deserialize(d)?;
        let n = (cells.len() as f64).sqrt().round() as usize;
        RationalMatrix::from_strings(n, &cells).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn det_and_inverse() {
        let m = RationalMatrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(RationalMatrix::from_ints(&[&[1, 2], &[2, 4]])
            .inverse()
            .is_err());
    }

    #[test]
    fn det_needs_pivoting() {
        let m = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), int(-1));
        let m = RationalMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(3), rat(2, 3)]]);
        assert_eq!(m.det(), rat(1, 3));
    }

    #[test]
    fn rank_counts_independent_rows() {
        let m = RationalMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }
}
