//! Structure of GL_n and its block parabolics.

pub mod adjoint;
pub mod iwasawa;
pub mod jordan;
pub mod parabolic;

pub use adjoint::{
    ad_matrix, chevalley_map, discriminant_delta, discriminant_square_check, is_regular,
    modulus_lambda, modulus_lambda_blocks, relative_discriminant, ChevalleyPoint,
};
pub use iwasawa::iwasawa_decompose;
pub use jordan::{jordan_type, Partition};
pub use parabolic::{BlockParabolic, Orientation, SubgroupSpec};
