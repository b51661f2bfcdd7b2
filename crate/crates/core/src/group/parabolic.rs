//! Block parabolic subgroups of GL_n and the subgroups they determine.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::{level_canonical, level_canonical_lower, PrimeContext};
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Upper,
    Lower,
}

impl Orientation {
    pub fn opposite(self) -> Self {
        match self {
            Orientation::Upper => Orientation::Lower,
            Orientation::Lower => Orientation::Upper,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Upper => "upper",
            Orientation::Lower => "lower",
        })
    }
}

/// The parabolic of GL_n attached to a composition `n = n₁ + … + n_k`.
///
/// Upper orientation is block upper triangular; lower is its opposite.
/// Both share the block diagonal Levi factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockParabolic {
    n: usize,
    blocks: Vec<usize>,
    orientation: Orientation,
}

impl BlockParabolic {
    pub fn new(blocks: Vec<usize>, orientation: Orientation) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(domain(format!("invalid block composition {blocks:?}")));
        }
        let n = blocks.iter().sum();
        Ok(BlockParabolic {
            n,
            blocks,
            orientation,
        })
    }

    /// Like [`BlockParabolic::new`] but also checks the blocks sum to `n`.
    pub fn for_dimension(n: usize, blocks: Vec<usize>, orientation: Orientation) -> Result<Self> {
        let p = Self::new(blocks, orientation)?;
        if p.n != n {
            return Err(domain(format!("blocks {:?} do not sum to {n}", p.blocks)));
        }
        Ok(p)
    }

    pub fn borel(n: usize, orientation: Orientation) -> Self {
        BlockParabolic {
            n,
            blocks: vec![1; n],
            orientation,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn opposite(&self) -> Self {
        BlockParabolic {
            n: self.n,
            blocks: self.blocks.clone(),
            orientation: self.orientation.opposite(),
        }
    }

    /// Index of the block containing coordinate `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (b, &size) in self.blocks.iter().enumerate() {
            acc += size;
            if i < acc {
                return b;
            }
        }
        panic!("coordinate {i} out of range for n = {}", self.n)
    }

    /// Half-open coordinate ranges of the blocks.
    pub fn block_ranges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut lo = 0;
        for &b in &self.blocks {
            out.push((lo, lo + b));
            lo += b;
        }
        out
    }

    pub fn in_levi_entry(&self, i: usize, j: usize) -> bool {
        self.block_of(i) == self.block_of(j)
    }

    pub fn in_parabolic_entry(&self, i: usize, j: usize) -> bool {
        let (bi, bj) = (self.block_of(i), self.block_of(j));
        match self.orientation {
            Orientation::Upper => bi <= bj,
            Orientation::Lower => bi >= bj,
        }
    }

    pub fn in_unipotent_entry(&self, i: usize, j: usize) -> bool {
        self.in_parabolic_entry(i, j) && !self.in_levi_entry(i, j)
    }

    /// dim U = Σ_{i<j} n_i n_j.
    pub fn unipotent_dim(&self) -> usize {
        let mut d = 0;
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                d += self.blocks[i] * self.blocks[j];
            }
        }
        d
    }

    fn pattern_holds(&self, g: &RationalMatrix, allowed: impl Fn(usize, usize) -> bool) -> bool {
        g.n() == self.n
            && (0..self.n).all(|i| (0..self.n).all(|j| allowed(i, j) || g.get(i, j).is_zero()))
    }

    pub fn contains(&self, g: &RationalMatrix) -> bool {
        self.pattern_holds(g, |i, j| self.in_parabolic_entry(i, j)) && !g.det().is_zero()
    }

    pub fn levi_contains(&self, g: &RationalMatrix) -> bool {
        self.pattern_holds(g, |i, j| self.in_levi_entry(i, j)) && !g.det().is_zero()
    }

    pub fn unipotent_contains(&self, g: &RationalMatrix) -> bool {
        self.pattern_holds(g, |i, j| i == j || self.in_unipotent_entry(i, j))
            && (0..self.n).all(|i| {
                let (lo, hi) = self.block_ranges()[self.block_of(i)];
                (lo..hi).all(|j| {
                    if i == j {
                        g.get(i, j) == &num_traits::One::one()
                    } else {
                        g.get(i, j).is_zero()
                    }
                })
            })
    }

    /// Block diagonal part of `g`: the image of `g ∈ P` under `P → M`.
    pub fn levi_part(&self, g: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.in_levi_entry(i, j) {
                    out.set(i, j, g.get(i, j).clone());
                }
            }
        }
        out
    }

    /// The diagonal blocks of `g`.
    pub fn levi_blocks(&self, g: &RationalMatrix) -> Vec<RationalMatrix> {
        self.block_ranges()
            .into_iter()
            .map(|(lo, hi)| g.block(lo, hi))
            .collect()
    }

    /// Canonical representative of `xK_m` adapted to this orientation, so
    /// that elements of P keep representatives in P.
    pub fn canonical(&self, x: &RationalMatrix, ctx: PrimeContext) -> Result<RationalMatrix> {
        match self.orientation {
            Orientation::Upper => level_canonical(x, ctx),
            Orientation::Lower => level_canonical_lower(x, ctx),
        }
    }

    /// All compositions of `n`, in lexicographic order.
    pub fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in Self::compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
}

impl fmt::Display for BlockParabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.blocks.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) {}", b.join(","), self.orientation)
    }
}

/// The closed subgroups H ⊂ GL_n whose Lie algebras are spanned by matrix
/// units, which is all the discriminant code needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupSpec {
    /// Diagonal torus of GL_n.
    Torus(usize),
    /// Block diagonal Levi factor of a parabolic.
    Levi(BlockParabolic),
    Parabolic(BlockParabolic),
}

impl SubgroupSpec {
    pub fn n(&self) -> usize {
        match self {
            SubgroupSpec::Torus(n) => *n,
            SubgroupSpec::Levi(p) | SubgroupSpec::Parabolic(p) => p.n(),
        }
    }

    /// Whether the matrix unit `E_ij` lies in Lie H.
    pub fn has_coordinate(&self, i: usize, j: usize) -> bool {
        match self {
            SubgroupSpec::Torus(_) => i == j,
            SubgroupSpec::Levi(p) => p.in_levi_entry(i, j),
            SubgroupSpec::Parabolic(p) => p.in_parabolic_entry(i, j),
        }
    }

    pub fn contains(&self, g: &RationalMatrix) -> bool {
        let n = self.n();
        g.n() == n
            && !g.det().is_zero()
            && (0..n).all(|i| (0..n).all(|j| self.has_coordinate(i, j) || g.get(i, j).is_zero()))
    }
}
