//! Constructible subsets of affine n-space over Q, as boolean formulas in
//! polynomial equations.

use std::fmt;

use crate::arith::Rational;
use crate::error::{domain, Result};

use super::poly::MPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    True,
    False,
    Zero(MPoly),
    NonZero(MPoly),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    /// Evaluates with `is_zero` deciding each atom `g = 0`.
    pub fn eval_with(&self, is_zero: &mut impl FnMut(&MPoly) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Zero(g) => is_zero(g),
            Formula::NonZero(g) => !is_zero(g),
            Formula::And(fs) => fs.iter().all(|f| f.eval_with(is_zero)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval_with(is_zero)),
            Formula::Not(f) => !f.eval_with(is_zero),
        }
    }

    /// The polynomials appearing in atoms, in order of appearance.
    pub fn atoms(&self) -> Vec<&MPoly> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a MPoly>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Zero(g) | Formula::NonZero(g) => out.push(g),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Not(f) => f.collect_atoms(out),
        }
    }

    fn embed(&self, offset: usize, total: usize) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Zero(g) => Formula::Zero(g.embed(offset, total)),
            Formula::NonZero(g) => Formula::NonZero(g.embed(offset, total)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.embed(offset, total)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.embed(offset, total)).collect()),
            Formula::Not(f) => Formula::Not(Box::new(f.embed(offset, total))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |fs: &[Formula], sep: &str| {
            fs.iter()
                .map(|x| format!("({x})"))
                .collect::<Vec<_>>()
                .join(sep)
        };
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Zero(g) => write!(f, "{g} = 0"),
            Formula::NonZero(g) => write!(f, "{g} ≠ 0"),
            Formula::And(fs) => write!(f, "{}", join(fs, " ∧ ")),
            Formula::Or(fs) => write!(f, "{}", join(fs, " ∨ ")),
            Formula::Not(x) => write!(f, "¬({x})"),
        }
    }
}

/// The rational points of affine `dim`-space satisfying a formula.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConstructibleSet {
    dim: usize,
    formula: Formula,
}

impl ConstructibleSet {
    pub fn new(dim: usize, formula: Formula) -> Result<Self> {
        if let Some(g) = formula.atoms().into_iter().find(|g| g.nvars() != dim) {
            return Err(domain(format!(
                "atom {g} has {} variables, ambient has {dim}",
                g.nvars()
            )));
        }
        Ok(ConstructibleSet { dim, formula })
    }

    pub fn whole(dim: usize) -> Self {
        ConstructibleSet {
            dim,
            formula: Formula::True,
        }
    }

    pub fn empty(dim: usize) -> Self {
        ConstructibleSet {
            dim,
            formula: Formula::False,
        }
    }

    /// `{g ≠ 0}`.
    pub fn complement_of_hypersurface(g: MPoly) -> Self {
        ConstructibleSet {
            dim: g.nvars(),
            formula: Formula::NonZero(g),
        }
    }

    /// `{g = 0}`.
    pub fn hypersurface(g: MPoly) -> Self {
        ConstructibleSet {
            dim: g.nvars(),
            formula: Formula::Zero(g),
        }
    }

    /// A finite set of points.
    pub fn points(dim: usize, pts: &[Vec<Rational>]) -> Result<Self> {
        Ok(ConstructibleSet {
            dim,
            formula: Formula::Or(
                pts.iter()
                    .map(|p| point_formula(dim, p))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    /// The affine line minus finitely many points.
    pub fn cofinite_line(excluded: &[Rational]) -> Self {
        let x = MPoly::var(1, 0);
        ConstructibleSet {
            dim: 1,
            formula: Formula::And(
                excluded
                    .iter()
                    .map(|e| Formula::NonZero(x.sub(&MPoly::constant(1, e.clone()))))
                    .collect(),
            ),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(domain(format!(
                "point of dimension {} in ambient of dimension {}",
                point.len(),
                self.dim
            )));
        }
        Ok(self
            .formula
            .eval_with(&mut |g| g.eval(point) == Rational::from_integer(0.into())))
    }

    pub fn union(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Ok(ConstructibleSet {
            dim: self.dim,
            formula: Formula::Or(vec![self.formula.clone(), o.formula.clone()]),
        })
    }

    pub fn intersection(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        Ok(ConstructibleSet {
            dim: self.dim,
            formula: Formula::And(vec![self.formula.clone(), o.formula.clone()]),
        })
    }

    pub fn complement(&self) -> Self {
        ConstructibleSet {
            dim: self.dim,
            formula: Formula::Not(Box::new(self.formula.clone())),
        }
    }

    /// `self × o` inside affine `(dim + o.dim)`-space.
    pub fn product(&self, o: &Self) -> Self {
        let total = self.dim + o.dim;
        ConstructibleSet {
            dim: total,
            formula: Formula::And(vec![
                self.formula.embed(0, total),
                o.formula.embed(self.dim, total),
            ]),
        }
    }

    /// `self` with finitely many extra points.
    pub fn with_points(&self, pts: &[Vec<Rational>]) -> Result<Self> {
        if pts.is_empty() {
            return Ok(self.clone());
        }
        self.union(&Self::points(self.dim, pts)?)
    }

    fn same_dim(&self, o: &Self) -> Result<()> {
        if self.dim == o.dim {
            Ok(())
        } else {
            Err(domain(format!(
                "ambient dimensions {} and {} differ",
                self.dim, o.dim
            )))
        }
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{x ∈ A^{} : {}}}", self.dim, self.formula)
    }
}

fn point_formula(dim: usize, p: &[Rational]) -> Result<Formula> {
    if p.len() != dim {
        return Err(domain(format!(
            "point of dimension {} in ambient of dimension {dim}",
            p.len()
        )));
    }
    Ok(Formula::And(
        p.iter()
            .enumerate()
            .map(|(i, c)| Formula::Zero(MPoly::var(dim, i).sub(&MPoly::constant(dim, c.clone()))))
            .collect(),
    ))
}
