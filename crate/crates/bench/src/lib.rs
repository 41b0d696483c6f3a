//! Fixtures shared by the benchmarks.

use arithcx_core::iso::source_target_weights;
use arithcx_core::sheaf::TwoColumnShape;
use arithcx_core::{ChainComplex, Matrix, WeightVector};
use num_bigint::BigInt;

/// `C(x, 1^d)`.
pub fn source_weights(d: usize) -> WeightVector {
    source_target_weights(d).0
}

/// `C(-2d-1, 1^d) ⊗ Z`, the two-column complex with `m = d`.
pub fn square_two_column(d: usize) -> ChainComplex<BigInt> {
    TwoColumnShape::new(d, d).expect("m = d").complex()
}

/// The middle differential of [`square_two_column`].
pub fn middle_differential(d: usize) -> Matrix<BigInt> {
    let c = square_two_column(d);
    c.boundary_or_zero(d.div_ceil(2) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_shapes() {
        assert_eq!(source_weights(3).d(), 3);
        assert!(square_two_column(4).is_square_zero());
        let m = middle_differential(4);
        assert_eq!((m.rows(), m.cols()), (4, 6));
    }
}
