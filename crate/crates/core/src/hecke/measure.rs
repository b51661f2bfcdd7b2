//! Smooth compactly supported measures at a fixed congruence level.
//!
//! A [`HeckeMeasure`] is a finite sum `Σ c_x · μ|_{x·L}` where `L` is the
//! level subgroup of the ambient group (`K_m`, `K_m ∩ P` or `K_m ∩ M`) and
//! the reference Haar measure `μ` gives `L` mass one.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::{
    enumerate_gln_mod, gln_zp_membership, k0_generators, level_canonical, lift, PrimeContext,
};
use crate::arith::rational::Rational;
use crate::arith::rootp::RootP;
use crate::error::{domain, Error, Result};
use crate::group::{BlockParabolic, Orientation};

/// The group a measure lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Ambient {
    General {
        n: usize,
    },
    Parabolic {
        parabolic: BlockParabolic,
    },
    /// Block diagonal Levi; shared by a parabolic and its opposite.
    Levi {
        blocks: Vec<usize>,
    },
}

impl Ambient {
    pub fn general(n: usize) -> Self {
        Ambient::General { n }
    }

    pub fn parabolic(p: &BlockParabolic) -> Self {
        Ambient::Parabolic {
            parabolic: p.clone(),
        }
    }

    pub fn levi_of(p: &BlockParabolic) -> Self {
        Ambient::Levi {
            blocks: p.blocks().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Ambient::General { n } => *n,
            Ambient::Parabolic { parabolic } => parabolic.n(),
            Ambient::Levi { blocks } => blocks.iter().sum(),
        }
    }

    /// The upper parabolic with this Levi, used for block bookkeeping.
    pub fn levi_blocks(&self) -> Option<BlockParabolic> {
        match self {
            Ambient::Levi { blocks } => {
                BlockParabolic::new(blocks.clone(), Orientation::Upper).ok()
            }
            _ => None,
        }
    }

    fn allows_entry(&self, i: usize, j: usize) -> bool {
        match self {
            Ambient::General { .. } => true,
            Ambient::Parabolic { parabolic } => parabolic.in_parabolic_entry(i, j),
            Ambient::Levi { .. } => self.levi_blocks().expect("levi").in_levi_entry(i, j),
        }
    }

    pub fn contains(&self, x: &RationalMatrix) -> bool {
        let n = self.n();
        x.n() == n
            && (0..n).all(|i| (0..n).all(|j| self.allows_entry(i, j) || x.get(i, j).is_zero()))
            && !x.det().is_zero()
    }

    /// Canonical representative of the level coset of `x`. The
    /// representative stays in the ambient group.
    pub fn canonical(&self, x: &RationalMatrix, ctx: PrimeContext) -> Result<RationalMatrix> {
        if !self.contains(x) {
            return Err(domain(format!("{x} is not in {self}")));
        }
        match self {
            Ambient::Parabolic { parabolic } => parabolic.canonical(x, ctx),
            _ => level_canonical(x, ctx),
        }
    }

    /// Reductions mod p^m of the integral points of the ambient group, i.e.
    /// a transversal of `(ambient ∩ K₀) / (ambient ∩ K_m)`.
    pub fn integral_transversal(
        &self,
        ctx: PrimeContext,
        guard: u64,
    ) -> Result<Vec<RationalMatrix>> {
        let n = self.n();
        let all = enumerate_gln_mod(n, ctx, guard)?;
        Ok(all
            .iter()
            .filter(|c| {
                (0..n).all(|i| (0..n).all(|j| self.allows_entry(i, j) || c[i * n + j] == 0))
            })
            .map(|c| lift(n, c))
            .collect())
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::General { n } => write!(f, "GL_{n}"),
            Ambient::Parabolic { parabolic } => write!(f, "P{parabolic}"),
            Ambient::Levi { blocks } => {
                let b: Vec<String> = blocks.iter().map(|x| x.to_string()).collect();
                write!(f, "M({})", b.join(","))
            }
        }
    }
}

/// A level coset `x·L` in an ambient group, identified by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    pub rep: RationalMatrix,
    pub ctx: PrimeContext,
    pub ambient: Ambient,
}

impl CosetLabel {
    pub fn new(x: &RationalMatrix, ambient: Ambient, ctx: PrimeContext) -> Result<Self> {
        let rep = ambient.canonical(x, ctx)?;
        Ok(CosetLabel { rep, ctx, ambient })
    }
}

#[derive(Clone, Debug)]
pub struct HeckeMeasure {
    ctx: PrimeContext,
    ambient: Ambient,
    support: BTreeMap<RationalMatrix, RootP>,
    biinvariant: bool,
}

// The invariance flag records what is known about a measure, not the measure.
impl PartialEq for HeckeMeasure {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.ambient == o.ambient && self.support == o.support
    }
}

impl Eq for HeckeMeasure {}

impl HeckeMeasure {
    /// The zero measure; flagged invariant only on GL_n.
    pub fn zero(ambient: Ambient, ctx: PrimeContext) -> Self {
        let biinvariant = matches!(ambient, Ambient::General { .. });
        HeckeMeasure {
            ctx,
            ambient,
            support: BTreeMap::new(),
            biinvariant,
        }
    }

    /// Builds `Σ c·μ|_{xL}` from arbitrary (not necessarily canonical) representatives.
    pub fn from_terms<I>(ambient: Ambient, ctx: PrimeContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (RationalMatrix, RootP)>,
    {
        let mut h = HeckeMeasure {
            ctx,
            ambient,
            support: BTreeMap::new(),
            biinvariant: false,
        };
        for (x, c) in terms {
            h.add_term(&x, c)?;
        }
        Ok(h)
    }

    /// The measure with mass one on the single coset `xL`.
    pub fn delta(ambient: Ambient, ctx: PrimeContext, x: &RationalMatrix) -> Result<Self> {
        Self::from_terms(ambient, ctx, [(x.clone(), RootP::one(ctx.p))])
    }

    /// `1_{A∩K₀}` times the Haar measure giving `A∩K₀` mass one, where `A` is the ambient group.
    pub fn unit(ambient: Ambient, ctx: PrimeContext, guard: u64) -> Result<Self> {
        let reps = ambient.integral_transversal(ctx, guard)?;
        let c = RootP::rational(Rational::new(1.into(), reps.len().into()), ctx.p);
        let mut h = Self::from_terms(ambient, ctx, reps.into_iter().map(|x| (x, c.clone())))?;
        h.biinvariant = true;
        Ok(h)
    }

    pub fn ctx(&self) -> PrimeContext {
        self.ctx
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_biinvariant(&self) -> bool {
        self.biinvariant
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Canonical representatives and coefficients, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&RationalMatrix, &RootP)> {
        self.support.iter()
    }

    pub fn labels(&self) -> Vec<CosetLabel> {
        self.support
            .keys()
            .map(|rep| CosetLabel {
                rep: rep.clone(),
                ctx: self.ctx,
                ambient: self.ambient.clone(),
            })
            .collect()
    }

    pub fn add_term(&mut self, x: &RationalMatrix, c: RootP) -> Result<()> {
        let rep = self.ambient.canonical(x, self.ctx)?;
        self.add_canonical(rep, c);
        Ok(())
    }

    pub(crate) fn add_canonical(&mut self, rep: RationalMatrix, c: RootP) {
        if c.is_zero() {
            return;
        }
        match self.support.entry(rep) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of the coset containing `x` (zero off the support).
    pub fn coefficient(&self, x: &RationalMatrix) -> Result<RootP> {
        if !self.ambient.contains(x) {
            return Ok(RootP::zero(self.ctx.p));
        }
        let rep = self.ambient.canonical(x, self.ctx)?;
        Ok(self
            .support
            .get(&rep)
            .cloned()
            .unwrap_or_else(|| RootP::zero(self.ctx.p)))
    }

    pub fn total_mass(&self) -> RootP {
        self.support
            .values()
            .fold(RootP::zero(self.ctx.p), |acc, c| &acc + c)
    }

    pub fn scale(&self, c: &RootP) -> Self {
        let mut out = HeckeMeasure {
            support: BTreeMap::new(),
            ..self.clone()
        };
        for (x, v) in &self.support {
            out.add_canonical(x.clone(), v * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient || self.ctx != other.ctx {
            return Err(domain(format!(
                "cannot add measures on {} and {}",
                self.ambient, other.ambient
            )));
        }
        let mut out = self.clone();
        for (x, v) in &other.support {
            out.add_canonical(x.clone(), v.clone());
        }
        out.biinvariant = self.biinvariant && other.biinvariant;
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-RootP::one(self.ctx.p)))
    }

    /// Applies `f` to each coefficient, keyed by representative.
    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(&RationalMatrix, &RootP) -> Result<RootP>,
    ) -> Result<Self> {
        let mut out = HeckeMeasure {
            support: BTreeMap::new(),
            ..self.clone()
        };
        for (x, v) in &self.support {
            out.add_canonical(x.clone(), f(x, v)?);
        }
        Ok(out)
    }

    /// `(Ad g⁻¹)^* h`: each support coset `xK_m` moves to `g x g⁻¹ K_m`.
    /// Only `g ∈ GL_n(Z_p)` normalizes `K_m`.
    pub fn ad_pullback(&self, g: &RationalMatrix) -> Result<Self> {
        let Ambient::General { n } = self.ambient else {
            return Err(domain("Ad-pullback is defined on measures on GL_n"));
        };
        if g.n() != n {
            return Err(domain("dimension mismatch"));
        }
        if !gln_zp_membership(g, self.ctx.p) {
            return Err(Error::Level(format!(
                "{g} does not normalize K_{}",
                self.ctx.m
            )));
        }
        let gi = g.inverse()?;
        let mut out = HeckeMeasure {
            support: BTreeMap::new(),
            ..self.clone()
        };
        for (x, c) in &self.support {
            out.add_term(&(&(g * x) * &gi), c.clone())?;
        }
        Ok(out)
    }

    /// Whether the measure is fixed by Ad(GL_n(Z_p)), tested on topological generators.
    pub fn check_ad_invariance(&self) -> Result<bool> {
        let n = self.ambient.n();
        for g in k0_generators(n, self.ctx.p) {
            if self.ad_pullback(&g)?.support != self.support {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sets the biinvariance flag after checking Ad(GL_n(Z_p))-invariance.
    pub fn into_biinvariant(mut self) -> Result<Self> {
        if !self.check_ad_invariance()? {
            return Err(domain("measure is not invariant under Ad(GL_n(Z_p))"));
        }
        self.biinvariant = true;
        Ok(self)
    }

    /// Exact-string JSON with support sorted by canonical representative.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: WireMeasure = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_wire(wire)
    }

    pub fn to_wire(&self) -> WireMeasure {
        WireMeasure {
            ambient: self.ambient.clone(),
            ctx: self.ctx,
            biinvariant: self.biinvariant,
            support: self
                .support
                .iter()
                .map(|(x, c)| WireTerm {
                    rep: x.to_strings(),
                    coefficient: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_wire(w: WireMeasure) -> Result<Self> {
        let ctx = PrimeContext::new(w.ctx.p, w.ctx.m)?;
        let n = w.ambient.n();
        let mut terms = Vec::with_capacity(w.support.len());
        for t in w.support {
            let c = RootP::parse(&t.coefficient)?;
            if !c.b.is_zero() && c.p != ctx.p {
                return Err(Error::Parse(format!(
                    "coefficient {} uses the wrong prime",
                    t.coefficient
                )));
            }
            terms.push((
                RationalMatrix::from_strings(n, &t.rep)?,
                RootP::new(c.a, c.b, ctx.p),
            ));
        }
        let mut h = Self::from_terms(w.ambient, ctx, terms)?;
        h.biinvariant = w.biinvariant;
        Ok(h)
    }
}

impl fmt::Display for HeckeMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support
            .iter()
            .map(|(x, c)| format!("{c}·{x}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireTerm {
    pub rep: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireMeasure {
    pub ambient: Ambient,
    pub ctx: PrimeContext,
    pub biinvariant: bool,
    pub support: Vec<WireTerm>,
}
