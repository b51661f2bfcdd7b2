//! Adjoint action, characteristic polynomials, discriminants and modulus
//! characters for GL_n, all computed on explicit n²×n² matrices.

use num_traits::{One, Zero};

use super::parabolic::{BlockParabolic, Orientation, SubgroupSpec};
use crate::arith::matrix::RationalMatrix;
use crate::arith::rational::Rational;
use crate::error::{domain, Result};

/// Coefficients `(e₁, …, e_n)` of the characteristic polynomial
/// `tⁿ − e₁tⁿ⁻¹ + e₂tⁿ⁻² − … + (−1)ⁿe_n`, i.e. the elementary symmetric
/// functions of the eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChevalleyPoint(pub Vec<Rational>);

impl ChevalleyPoint {
    pub fn trace(&self) -> &Rational {
        &self.0[0]
    }

    pub fn det(&self) -> &Rational {
        self.0.last().expect("n >= 1")
    }
}

/// Faddeev–LeVerrier.
pub fn chevalley_map(g: &RationalMatrix) -> Result<ChevalleyPoint> {
    let n = g.n();
    if g.det().is_zero() {
        return Err(domain("singular matrix has no Chevalley image"));
    }
    // c[k] is the coefficient of t^k in det(t - g)
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = RationalMatrix::zero(n);
    for k in 1..=n {
        let shifted = m.add(&RationalMatrix::identity(n).scale(&c[n - k + 1]));
        m = g * &shifted;
        c[n - k] = -(m.trace()) / Rational::from_integer(k.into());
    }
    let e = (1..=n)
        .map(|k| {
            if k % 2 == 0 {
                c[n - k].clone()
            } else {
                -c[n - k].clone()
            }
        })
        .collect();
    Ok(ChevalleyPoint(e))
}

/// Matrix of `X ↦ gXg⁻¹` on gl_n in the basis `E_kl`, ordered row-major by `(k, l)`.
pub fn ad_matrix(g: &RationalMatrix) -> Result<RationalMatrix> {
    let n = g.n();
    let gi = g.inverse()?;
    let mut out = RationalMatrix::zero(n * n);
    for k in 0..n {
        for l in 0..n {
            let col = k * n + l;
            for i in 0..n {
                if g.get(i, k).is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = g.get(i, k) * gi.get(l, j);
                    if !v.is_zero() {
                        out.set(i * n + j, col, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Rows and columns `idx` of the matrix of `Ad(g)`, given `g⁻¹`: the entry
/// at `(i·n + j, k·n + l)` is `g_ik (g⁻¹)_lj`.
fn ad_submatrix(g: &RationalMatrix, gi: &RationalMatrix, idx: &[usize]) -> RationalMatrix {
    let n = g.n();
    RationalMatrix::from_rows(
        idx.iter()
            .map(|&r| {
                let (i, j) = (r / n, r % n);
                idx.iter()
                    .map(|&c| {
                        let (k, l) = (c / n, c % n);
                        if g.get(i, k).is_zero() || gi.get(l, j).is_zero() {
                            Rational::zero()
                        } else {
                            g.get(i, k) * gi.get(l, j)
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

fn principal_submatrix(a: &RationalMatrix, idx: &[usize]) -> RationalMatrix {
    RationalMatrix::from_rows(
        idx.iter()
            .map(|&r| idx.iter().map(|&c| a.get(r, c).clone()).collect())
            .collect(),
    )
}

fn coordinates(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    (0..n * n).filter(|&c| keep(c / n, c % n)).collect()
}

/// Determinant as the product over the connected components of the
/// sparsity pattern; Levi elements make Ad block diagonal up to permutation.
fn det_of(a: &RationalMatrix) -> Rational {
    let n = a.n();
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !a.get(i, j).is_zero() {
                let (ri, rj) = (root(&mut comp, i), root(&mut comp, j));
                comp[ri] = rj;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for i in 0..n {
        let r = root(&mut comp, i);
        groups.entry(r).or_default().push(i);
    }
    groups
        .values()
        .map(|idx| principal_submatrix(a, idx).det())
        .product()
}

/// `det(Ad(g⁻¹) − 1)` on gl_n / Lie H, realized on the matrix units outside Lie H.
pub fn discriminant_delta(h: &SubgroupSpec, g: &RationalMatrix) -> Result<Rational> {
    relative_discriminant(h, None, g)
}

/// `det(Ad(g⁻¹) − 1)` on Lie H / Lie K for `K ⊂ H`, with `H = GL_n` when `outer` is `None`.
pub fn relative_discriminant(
    inner: &SubgroupSpec,
    outer: Option<&SubgroupSpec>,
    g: &RationalMatrix,
) -> Result<Rational> {
    if !inner.contains(g) {
        return Err(domain(format!("element {g} is not in the subgroup")));
    }
    let n = g.n();
    let idx = coordinates(n, |i, j| {
        !inner.has_coordinate(i, j) && outer.is_none_or(|o| o.has_coordinate(i, j))
    });
    let gi = g.inverse()?;
    let block = ad_submatrix(&gi, g, &idx).sub(&RationalMatrix::identity(idx.len()));
    Ok(det_of(&block))
}

/// `det Ad(g)` on Lie P.
pub fn modulus_lambda(p: &BlockParabolic, g: &RationalMatrix) -> Result<Rational> {
    if !p.contains(g) {
        return Err(domain(format!("element {g} is not in the parabolic {p}")));
    }
    let idx = coordinates(g.n(), |i, j| p.in_parabolic_entry(i, j));
    Ok(det_of(&ad_submatrix(g, &g.inverse()?, &idx)))
}

/// Closed form of `λ_P` on P: `Π_{i<j} det(m_i)^{n_j} det(m_j)^{−n_i}` over
/// the diagonal blocks (inverted for the lower orientation).
pub fn modulus_lambda_blocks(p: &BlockParabolic, g: &RationalMatrix) -> Rational {
    let dets: Vec<Rational> = p.levi_blocks(g).iter().map(|b| b.det()).collect();
    let sizes = p.blocks();
    let mut acc = Rational::one();
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            acc *= num_traits::pow(dets[i].clone(), sizes[j]);
            acc /= num_traits::pow(dets[j].clone(), sizes[i]);
        }
    }
    match p.orientation() {
        Orientation::Upper => acc,
        Orientation::Lower => acc.recip(),
    }
}

pub fn is_regular(h: &SubgroupSpec, g: &RationalMatrix) -> Result<bool> {
    Ok(!discriminant_delta(h, g)?.is_zero())
}

/// Both sides of `Δ_{P,G}(m)² = (−1)^{dim U} Δ_{M,G}(m) λ_P(m)`.
pub fn discriminant_square_sides(
    p: &BlockParabolic,
    m: &RationalMatrix,
) -> Result<(Rational, Rational)> {
    if !p.levi_contains(m) {
        return Err(domain(format!("element {m} is not in the Levi of {p}")));
    }
    let dp = discriminant_delta(&SubgroupSpec::Parabolic(p.clone()), m)?;
    let dm = discriminant_delta(&SubgroupSpec::Levi(p.clone()), m)?;
    let lam = modulus_lambda(p, m)?;
    let sign = if p.unipotent_dim().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok((&dp * &dp, sign * dm * lam))
}

pub fn discriminant_square_check(p: &BlockParabolic, m: &RationalMatrix) -> Result<bool> {
    let (lhs, rhs) = discriminant_square_sides(p, m)?;
    Ok(lhs == rhs)
}
