//! Arithmetic chain complexes over the ring of integer-valued polynomials.
//!
//! The crate builds the complexes `C(w_0, ..., w_d)`, the explicit isomorphism
//! `α: C(x, 1^d) → C(-x-2d, 1^d)`, exact homology over `Z`, `Q` and `F_p`, and
//! the stable cohomology tables of ribbon and two-column Schur functors.
//!
//! ```
//! use arithcx_core::{build_integer_complex, homology_table_z, AbelianGroup, WeightVector};
//!
//! let c = build_integer_complex(&WeightVector::from_ints(&[4, 1]).unwrap()).unwrap();
//! let h = homology_table_z(c.chain()).unwrap();
//! assert_eq!(h.get(0), Some(&AbelianGroup::cyclic(5)));
//! ```

pub mod complex;
pub mod error;
pub mod homology;
pub mod identities;
pub mod iso;
pub mod ivpoly;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod sheaf;

pub use complex::{
    build_complex, build_integer_complex, cone_decompose, enumerate_compositions, ArithmeticComplex, ChainComplex,
    Composition, ConeDecomposition, Weight, WeightVector,
};
pub use error::{Error, Result};
pub use homology::{
    homology_table_mod_p, homology_table_q, homology_table_z, homology_z, is_exact_over_q, DegreeTable, DimensionTable,
    HomologyTable,
};
pub use iso::{alpha_entry, alpha_map, iso_certificate, verify_chain_map, IsoCertificate};
pub use ivpoly::{IVPoly, XSign};
pub use linalg::{smith_normal_form, AbelianGroup, Matrix, SmithDecomposition};
pub use report::{Report, Witness};
pub use ring::{Field, Fp, Ring};
pub use sheaf::{
    ribbon_columns, stable_cohomology_ribbon, stable_cohomology_two_column, validate_ribbon, CohomologyTable,
    SkewShape, TwoColumnShape,
};
