//! Level-m coset measures and parabolic restriction.

pub mod basis;
pub mod measure;
pub mod restriction;

pub use basis::{ad_orbits, double_coset_cosets, double_coset_indicator, level_one_basis};
pub use measure::{Ambient, CosetLabel, HeckeMeasure};
pub use restriction::{
    coset_meets_parabolic, pushforward_to_levi, res_normalized, res_normalized_with,
    res_unnormalized, res_unnormalized_with, restrict_to_parabolic, twist_by_modulus,
    ParabolicTransversal,
};
