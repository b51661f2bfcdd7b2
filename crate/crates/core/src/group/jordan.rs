//! Jordan types of unipotent matrices over F_q.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::finite_field::FFMatrix;
use crate::error::{domain, Result};

/// A partition, parts sorted in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn trivial(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let max = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=max)
                .map(|k| self.0.iter().filter(|&&x| x >= k).count())
                .collect(),
        )
    }

    /// `self ⊵ other` in the dominance order (partial sums compared).
    pub fn dominates(&self, other: &Self) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..len {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn dominance_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                go(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Jordan block sizes of a unipotent `u`, from the ranks of `(u − 1)^k`:
/// the number of blocks of size ≥ k is `rank(u−1)^{k−1} − rank(u−1)^k`.
pub fn jordan_type(u: &FFMatrix) -> Result<Partition> {
    if !u.is_unipotent() {
        return Err(domain(format!("{u:?} is not unipotent")));
    }
    let n = u.n;
    let nil = u.sub(&FFMatrix::identity(n, u.q));
    let mut ranks = vec![n];
    let mut power = FFMatrix::identity(n, u.q);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(&nil);
        ranks.push(power.rank());
    }
    // conjugate partition, then transpose
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition(conj).transpose())
}
