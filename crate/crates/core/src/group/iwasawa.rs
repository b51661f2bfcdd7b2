use crate::arith::matrix::RationalMatrix;
use crate::arith::padic::hermite_upper;
use crate::error::Result;

use super::parabolic::{BlockParabolic, Orientation};

/// Writes `g = q·k` with `q` triangular in the orientation of `parabolic`
/// (hence in P) and `k ∈ GL_n(Z_p)`.
pub fn iwasawa_decompose(
    g: &RationalMatrix,
    parabolic: &BlockParabolic,
    p: u64,
) -> Result<(RationalMatrix, RationalMatrix)> {
    match parabolic.orientation() {
        Orientation::Upper => {
            let q = hermite_upper(g, p)?;
            let k = &q.inverse()? * g;
            Ok((q, k))
        }
        Orientation::Lower => {
            let w = RationalMatrix::long_element(g.n());
            let flipped = &(&w * g) * &w;
            let q = hermite_upper(&flipped, p)?;
            let k = &q.inverse()? * &flipped;
            Ok((&(&w * &q) * &w, &(&w * &k) * &w))
        }
    }
}
