//! Small matrices over a prime field F_q.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::is_prime;
use crate::error::{check_guard, domain, Result};

/// An `n × n` matrix over F_q (q prime), entries in `[0, q)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FFMatrix {
    pub n: usize,
    pub q: u32,
    pub entries: Vec<u32>,
}

impl FFMatrix {
    pub fn new(n: usize, q: u32, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), n * n);
        let entries = entries.into_iter().map(|x| x % q).collect();
        FFMatrix { n, q, entries }
    }

    pub fn zero(n: usize, q: u32) -> Self {
        FFMatrix {
            n,
            q,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, q: u32) -> Self {
        let mut m = Self::zero(n, q);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v % self.q;
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let q = self.q as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += self.entries[i * n + k] as u64 * o.entries[k * n + j] as u64;
                }
                out[i * n + j] = (s % q) as u32;
            }
        }
        FFMatrix {
            n,
            q: self.q,
            entries: out,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let q = self.q;
        FFMatrix {
            n: self.n,
            q,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| (a + q - b) % q)
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.n, self.q);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rank over F_q by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let q = self.q as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + c] != 0) else {
                continue;
            };
            for j in 0..n {
                a.swap(rank * n + j, piv * n + j);
            }
            let inv = inv_mod(a[rank * n + c], q);
            for r in 0..n {
                if r != rank && a[r * n + c] != 0 {
                    let f = a[r * n + c] * inv % q;
                    for j in 0..n {
                        a[r * n + j] = (a[r * n + j] + q * q - f * a[rank * n + j] % q) % q;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> u32 {
        let n = self.n;
        let q = self.q as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    a.swap(c * n + j, piv * n + j);
                }
                det = (q - det) % q;
            }
            det = det * a[c * n + c] % q;
            let inv = inv_mod(a[c * n + c], q);
            for r in c + 1..n {
                if a[r * n + c] != 0 {
                    let f = a[r * n + c] * inv % q;
                    for j in 0..n {
                        a[r * n + j] = (a[r * n + j] + q * q - f * a[c * n + j] % q) % q;
                    }
                }
            }
        }
        det as u32
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let q = self.q as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        let mut inv: Vec<u64> = Self::identity(n, self.q)
            .entries
            .iter()
            .map(|&x| x as u64)
            .collect();
        for c in 0..n {
            let piv = (c..n)
                .find(|&r| a[r * n + c] != 0)
                .ok_or_else(|| domain("singular matrix over F_q"))?;
            for j in 0..n {
                a.swap(c * n + j, piv * n + j);
                inv.swap(c * n + j, piv * n + j);
            }
            let s = inv_mod(a[c * n + c], q);
            for j in 0..n {
                a[c * n + j] = a[c * n + j] * s % q;
                inv[c * n + j] = inv[c * n + j] * s % q;
            }
            for r in 0..n {
                if r != c && a[r * n + c] != 0 {
                    let f = a[r * n + c];
                    for j in 0..n {
                        a[r * n + j] = (a[r * n + j] + q * q - f * a[c * n + j] % q) % q;
                        inv[r * n + j] = (inv[r * n + j] + q * q - f * inv[c * n + j] % q) % q;
                    }
                }
            }
        }
        Ok(FFMatrix {
            n,
            q: self.q,
            entries: inv.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// `g · self · g⁻¹` given `g` and its inverse.
    pub fn conjugate(&self, g: &Self, g_inv: &Self) -> Self {
        g.mul(self).mul(g_inv)
    }

    pub fn is_unipotent(&self) -> bool {
        let nil = self.sub(&Self::identity(self.n, self.q));
        nil.pow(self.n).entries.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.q)?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    // q prime: Fermat
    let mut result = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result
}

/// |GL_n(F_q)|.
pub fn gln_fq_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

/// All invertible `n × n` matrices over F_q, each exactly once.
pub fn enumerate_gln_fq(n: usize, q: u32, guard: u64) -> Result<Vec<FFMatrix>> {
    if !is_prime(q as u64) {
        return Err(domain(format!("{q} is not prime")));
    }
    check_guard("GL_n(F_q)", gln_fq_order(n, q), guard)?;
    let cells = n * n;
    check_guard(
        "F_q matrix candidates",
        (q as u128).saturating_pow(cells as u32),
        guard.saturating_mul(64),
    )?;
    let mut out = Vec::new();
    let mut cur = vec![0u32; cells];
    loop {
        let m = FFMatrix {
            n,
            q,
            entries: cur.clone(),
        };
        if m.det() != 0 {
            out.push(m);
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
