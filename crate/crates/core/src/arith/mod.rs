//! Exact scalar and matrix arithmetic: Q, Q(√p), lattices in Q_p^n, F_q.

pub mod finite_field;
pub mod matrix;
pub mod padic;
pub mod rational;
pub mod rootp;

pub use finite_field::{enumerate_gln_fq, FFMatrix};
pub use matrix::RationalMatrix;
pub use padic::{
    congruence_equiv, enumerate_transversal_k0_mod_km, gln_zp_membership, PrimeContext,
};
pub use rational::{padic_valuation, Rational};
pub use rootp::{padic_norm_halfpower, RootP};
