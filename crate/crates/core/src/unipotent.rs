//! Induced unipotent sets over a prime field, by exhaustive enumeration.
//!
//! For a unipotent class `C` of a block-diagonal Levi `M ⊂ GL_n(F_q)` and a
//! parabolic `P = M ⋉ U`, the induced set is `∪_g g (C·U) g⁻¹`. Unipotent
//! classes of `GL_n` are labelled by Jordan type, so the induced set is
//! recorded as a histogram of partitions. The heart is the class that is
//! dense in the closure of the set, which for `GL_n` is the unique
//! dominance-maximal partition present.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::finite_field::{enumerate_gln_fq, gln_fq_order, FFMatrix};
use crate::arith::rational::is_prime;
use crate::error::{check_guard, domain, Result};
use crate::group::{jordan_type, BlockParabolic, Orientation, Partition};

/// How the finite-field data stands in for closure relations.
pub const CLOSURE_BRIDGE: &str =
    "dense class in closure identified with the dominance-maximal Jordan type present";

fn check_field(q: u32) -> Result<()> {
    if is_prime(q as u64) {
        Ok(())
    } else {
        Err(domain(format!("q = {q} is not prime")))
    }
}

fn check_partitions(blocks: &[usize], partitions: &[Partition]) -> Result<()> {
    if blocks.len() != partitions.len() {
        return Err(domain(format!(
            "{} blocks but {} partitions",
            blocks.len(),
            partitions.len()
        )));
    }
    for (b, lambda) in blocks.iter().zip(partitions) {
        if lambda.size() != *b {
            return Err(domain(format!(
                "partition {lambda} does not fit a block of size {b}"
            )));
        }
    }
    Ok(())
}

/// Block-diagonal matrix with Jordan blocks of the given sizes (eigenvalue 1).
pub fn jordan_representative(lambda: &Partition, q: u32) -> FFMatrix {
    let n = lambda.size();
    let mut m = FFMatrix::identity(n, q);
    let mut start = 0;
    for &k in lambda.parts() {
        for i in start..start + k - 1 {
            m.set(i, i + 1, 1);
        }
        start += k;
    }
    m
}

fn conjugacy_class(x: &FFMatrix, group: &[(FFMatrix, FFMatrix)]) -> BTreeSet<FFMatrix> {
    group.iter().map(|(g, gi)| x.conjugate(g, gi)).collect()
}

fn with_inverses(group: Vec<FFMatrix>) -> Result<Vec<(FFMatrix, FFMatrix)>> {
    group
        .into_iter()
        .map(|g| {
            let gi = g.inverse()?;
            Ok((g, gi))
        })
        .collect()
}

fn embed_blocks(parts: &[&FFMatrix], n: usize, q: u32) -> FFMatrix {
    let mut m = FFMatrix::zero(n, q);
    let mut start = 0;
    for b in parts {
        for i in 0..b.n {
            for j in 0..b.n {
                m.set(start + i, start + j, b.get(i, j));
            }
        }
        start += b.n;
    }
    m
}

/// The `M(F_q)`-conjugacy class of the block-diagonal Jordan matrix with the
/// given per-block partitions, `M = GL_{n_1} × … × GL_{n_k}`.
pub fn build_class(
    blocks: &[usize],
    partitions: &[Partition],
    q: u32,
    guard: u64,
) -> Result<BTreeSet<FFMatrix>> {
    check_field(q)?;
    check_partitions(blocks, partitions)?;
    let n: usize = blocks.iter().sum();
    let levi_order: u128 = blocks.iter().map(|&b| gln_fq_order(b, q)).product();
    check_guard("Levi subgroup", levi_order, guard)?;
    let mut per_block: Vec<Vec<FFMatrix>> = Vec::new();
    for (&b, lambda) in blocks.iter().zip(partitions) {
        let group = with_inverses(enumerate_gln_fq(b, q, guard)?)?;
        per_block.push(
            conjugacy_class(&jordan_representative(lambda, q), &group)
                .into_iter()
                .collect(),
        );
    }
    let total: u128 = per_block.iter().map(|c| c.len() as u128).product();
    check_guard("Levi conjugacy class", total, guard)?;
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let parts: Vec<&FFMatrix> = idx.iter().zip(&per_block).map(|(&i, c)| &c[i]).collect();
        out.insert(embed_blocks(&parts, n, q));
        let mut k = blocks.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_block[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All elements of the unipotent radical of `parabolic` over F_q.
pub fn unipotent_radical(parabolic: &BlockParabolic, q: u32, guard: u64) -> Result<Vec<FFMatrix>> {
    let n = parabolic.n();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| parabolic.in_unipotent_entry(i, j))
        .collect();
    check_guard(
        "unipotent radical",
        (q as u128).saturating_pow(cells.len() as u32),
        guard,
    )?;
    let mut out = Vec::new();
    let mut vals = vec![0u32; cells.len()];
    loop {
        let mut u = FFMatrix::identity(n, q);
        for (&(i, j), &v) in cells.iter().zip(&vals) {
            u.set(i, j, v);
        }
        out.push(u);
        let mut k = cells.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            vals[k] += 1;
            if vals[k] < q {
                break;
            }
            vals[k] = 0;
        }
    }
}

/// The induced set `∪_{g ∈ GL_n(F_q)} g (C·U) g⁻¹`, tallied by Jordan type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedSet {
    pub n: usize,
    pub q: u32,
    pub blocks: Vec<usize>,
    pub partitions: Vec<Partition>,
    pub orientation: Orientation,
    /// Number of elements of each Jordan type in the set; every count is positive.
    pub classes: BTreeMap<Partition, u64>,
    pub total: u64,
}

impl InducedSet {
    /// Same classes with the same counts, ignoring which parabolic produced them.
    pub fn same_set(&self, other: &InducedSet) -> bool {
        self.n == other.n && self.q == other.q && self.classes == other.classes
    }

    pub fn dominant(&self) -> Option<&Partition> {
        self.classes
            .keys()
            .find(|lambda| self.classes.keys().all(|mu| lambda.dominates(mu)))
    }
}

impl fmt::Display for InducedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partitions.iter().map(|p| p.to_string()).collect();
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        write!(
            f,
            "GL_{}(F_{}) from {:?}[{}] {}: {{{}}} total {}",
            self.n,
            self.q,
            self.blocks,
            parts.join(" "),
            self.orientation,
            classes.join(", "),
            self.total
        )
    }
}

/// Exhaustive induction of the class `C` from the Levi of `parabolic`.
///
/// The union is assembled orbit by orbit: each element of `C·U` not yet
/// covered contributes its full `GL_n(F_q)`-conjugacy class.
pub fn induced_set(
    parabolic: &BlockParabolic,
    partitions: &[Partition],
    q: u32,
    guard: u64,
) -> Result<InducedSet> {
    check_field(q)?;
    let n = parabolic.n();
    let blocks = parabolic.blocks().to_vec();
    let class = build_class(&blocks, partitions, q, guard)?;
    let radical = unipotent_radical(parabolic, q, guard)?;
    check_guard(
        "C·U",
        (class.len() as u128) * (radical.len() as u128),
        guard,
    )?;
    let group = with_inverses(enumerate_gln_fq(n, q, guard)?)?;
    let mut union: HashSet<FFMatrix> = HashSet::new();
    let mut classes: BTreeMap<Partition, u64> = BTreeMap::new();
    for c in &class {
        for u in &radical {
            let x = c.mul(u);
            if union.contains(&x) {
                continue;
            }
            let orbit = conjugacy_class(&x, &group);
            *classes.entry(jordan_type(&x)?).or_insert(0) += orbit.len() as u64;
            union.extend(orbit);
        }
    }
    Ok(InducedSet {
        n,
        q,
        blocks,
        partitions: partitions.to_vec(),
        orientation: parabolic.orientation(),
        total: union.len() as u64,
        classes,
    })
}

/// The classes dominating every class present; empty when there is no
/// dominance-maximum.
pub fn heart(d: &InducedSet) -> BTreeSet<Partition> {
    d.dominant().into_iter().cloned().collect()
}

/// Induced sets from the upper and lower parabolics with the given Levi.
pub fn induce_both(
    blocks: &[usize],
    partitions: &[Partition],
    q: u32,
    guard: u64,
) -> Result<(InducedSet, InducedSet)> {
    let up = BlockParabolic::new(blocks.to_vec(), Orientation::Upper)?;
    let lo = BlockParabolic::new(blocks.to_vec(), Orientation::Lower)?;
    Ok((
        induced_set(&up, partitions, q, guard)?,
        induced_set(&lo, partitions, q, guard)?,
    ))
}

pub fn check_heart_independence(
    blocks: &[usize],
    partitions: &[Partition],
    q: u32,
    guard: u64,
) -> Result<bool> {
    let (up, lo) = induce_both(blocks, partitions, q, guard)?;
    Ok(heart(&up) == heart(&lo))
}

/// Every choice of one partition per block.
pub fn levi_classes(blocks: &[usize]) -> Vec<Vec<Partition>> {
    blocks.iter().fold(vec![Vec::new()], |acc, &b| {
        acc.iter()
            .flat_map(|prefix| {
                Partition::all(b).into_iter().map(move |lambda| {
                    let mut v = prefix.clone();
                    v.push(lambda);
                    v
                })
            })
            .collect()
    })
}

/// Number of unipotent elements of `GL_n(F_q)`, by testing every element.
pub fn count_unipotents(n: usize, q: u32, guard: u64) -> Result<u64> {
    Ok(enumerate_gln_fq(n, q, guard)?
        .iter()
        .filter(|g| g.is_unipotent())
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_GUARD;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn jordan_representative_has_its_type() {
        for lambda in Partition::all(4) {
            assert_eq!(
                jordan_type(&jordan_representative(&lambda, 3)).unwrap(),
                lambda
            );
        }
    }

    #[test]
    fn trivial_class_is_identity() {
        let c = build_class(&[2, 1], &[p(&[1, 1]), p(&[1])], 2, DEFAULT_GUARD).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.iter().next().unwrap(), &FFMatrix::identity(3, 2));
    }

    #[test]
    fn transvection_class_in_gl2_f2() {
        let c = build_class(&[2], &[p(&[2])], 2, DEFAULT_GUARD).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.contains(&FFMatrix::new(2, 2, vec![1, 1, 0, 1])));
    }

    #[test]
    fn classes_of_gl2_cover_unipotents() {
        for q in [2, 3, 5] {
            let total: usize = Partition::all(2)
                .iter()
                .map(|l| {
                    build_class(&[2], std::slice::from_ref(l), q, DEFAULT_GUARD)
                        .unwrap()
                        .len()
                })
                .sum();
            assert_eq!(total as u64, (q * q) as u64);
        }
    }

    #[test]
    fn borel_induction_of_trivial_in_gl2_f2() {
        let b = BlockParabolic::borel(2, Orientation::Upper);
        let d = induced_set(&b, &[p(&[1]), p(&[1])], 2, DEFAULT_GUARD).unwrap();
        assert_eq!(d.classes, BTreeMap::from([(p(&[1, 1]), 1), (p(&[2]), 3)]));
        assert_eq!(d.total, 4);
        assert_eq!(heart(&d), BTreeSet::from([p(&[2])]));
    }

    #[test]
    fn single_class_is_its_own_heart() {
        let g = BlockParabolic::new(vec![3], Orientation::Upper).unwrap();
        let d = induced_set(&g, &[p(&[2, 1])], 2, DEFAULT_GUARD).unwrap();
        assert_eq!(d.classes.len(), 1);
        assert_eq!(heart(&d), BTreeSet::from([p(&[2, 1])]));
    }

    #[test]
    fn heart_is_empty_without_maximum() {
        let d = InducedSet {
            n: 6,
            q: 2,
            blocks: vec![6],
            partitions: vec![p(&[1; 6])],
            orientation: Orientation::Upper,
            classes: BTreeMap::from([(p(&[3, 1, 1, 1]), 1), (p(&[2, 2, 2]), 1)]),
            total: 2,
        };
        assert!(heart(&d).is_empty());
    }

    #[test]
    fn guard_and_field_errors() {
        let b = BlockParabolic::borel(3, Orientation::Upper);
        assert!(induced_set(&b, &[p(&[1]), p(&[1]), p(&[1])], 2, 100).is_err());
        assert!(induced_set(&b, &[p(&[1]), p(&[1]), p(&[1])], 4, DEFAULT_GUARD).is_err());
        assert!(build_class(&[2], &[p(&[1])], 2, DEFAULT_GUARD).is_err());
    }

    #[test]
    fn levi_classes_enumerates_products() {
        assert_eq!(levi_classes(&[2, 1]).len(), 2);
        assert_eq!(levi_classes(&[3, 2]).len(), 6);
    }
}
