//! Exact computations around parabolic restriction of Hecke measures on
//! `GL_n(Q_p)`: constant terms, characters of parabolically induced
//! representations, orbital integrals and their descent to Levi subgroups,
//! induced unipotent sets over finite fields, and saturation of
//! constructible sets.
//!
//! All arithmetic is exact: rationals, and `Q(√p)` where half-integral
//! powers of `p` appear.

pub mod arith;
pub mod characters;
pub mod error;
pub mod group;
pub mod hecke;
pub mod orbital;
pub mod saturation;
pub mod unipotent;

pub use arith::{FFMatrix, PrimeContext, Rational, RationalMatrix, RootP};
pub use characters::{InducedModel, UnramifiedCharacter};
pub use error::{Error, Result, DEFAULT_GUARD};
pub use group::{BlockParabolic, Orientation, Partition};
pub use hecke::{Ambient, HeckeMeasure, ParabolicTransversal};
pub use orbital::{OrbitalValue, RegularElement};
pub use saturation::{ConstructibleSet, CurveWitness, Universe};
pub use unipotent::InducedSet;
