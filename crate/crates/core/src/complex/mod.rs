//! Arithmetic chain complexes on weighted path graphs.

mod arithmetic;
mod chain;
mod composition;
mod cone;
mod weights;

pub use arithmetic::{build_complex, build_complex_unchecked, build_integer_complex, complex_bases, ArithmeticComplex};
pub use chain::ChainComplex;
pub use composition::{enumerate_compositions, Composition};
pub use cone::{cone_decompose, ConeDecomposition, QUOT_BLOCK_SIGN, SUB_BLOCK_SIGN};
pub use weights::{parse_tail, Weight, WeightVector};
