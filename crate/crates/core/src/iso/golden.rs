use num_bigint::BigInt;

use super::{alpha_map, source_target_weights};
use crate::complex::build_complex;
use crate::ivpoly::IVPoly;
use crate::linalg::Matrix;
use crate::report::Report;

/// Edge count of the reference data.
pub const GOLDEN_D: usize = 3;

const SOURCE: [&[&[&str]]; 3] = [
    &[&["2", "-2", "x+1"]],
    &[&["-3", "x+1", "0"], &["-3", "0", "C(x+2,2)"], &["0", "-2", "x+2"]],
    &[&["C(x+3,3)"], &["C(x+3,2)"], &["x+3"]],
];

const TARGET: [&[&[&str]]; 3] = [
    &[&["2", "-2", "-x-5"]],
    &[&["-3", "-x-5", "0"], &["-3", "0", "C(x+5,2)"], &["0", "-2", "-x-4"]],
    &[&["-C(x+5,3)"], &["C(x+4,2)"], &["-x-3"]],
];

const ALPHA: [&[&[i64]]; 4] = [
    &[&[-1]],
    &[&[-1, 0, -1], &[0, -1, -3], &[0, 0, 1]],
    &[&[-1, -2, -1], &[0, 1, 1], &[0, 0, -1]],
    &[&[1]],
];

fn parse_matrix(rows: &[&[&str]]) -> Matrix<IVPoly> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| s.parse().expect("golden entry parses")).collect())
        .collect();
    Matrix::from_rows(rows, &()).expect("golden matrix is rectangular")
}

/// Reference differentials `∂_1, ∂_2, ∂_3` of `C(x,1,1,1)` and `C(-x-6,1,1,1)`.
pub fn golden_differentials() -> [Vec<Matrix<IVPoly>>; 2] {
    [
        SOURCE.iter().map(|m| parse_matrix(m)).collect(),
        TARGET.iter().map(|m| parse_matrix(m)).collect(),
    ]
}

/// Reference `α_0, ..., α_3` for `d = 3`.
pub fn golden_alpha() -> Vec<Matrix<BigInt>> {
    ALPHA.iter().map(|m| Matrix::from_i64(m)).collect()
}

/// Compares the computed differentials and `α` with the reference data.
pub fn golden_check() -> Vec<Report> {
    let (ws, wt) = source_target_weights(GOLDEN_D);
    let mut out = Vec::new();
    for (weights, expected) in [ws, wt].iter().zip(golden_differentials()) {
        let c = build_complex(weights).expect("complex builds");
        for (k, m) in (1..).zip(&expected) {
            out.push(Report::compare(
                format!("golden ∂ of C{weights}"),
                Some(k),
                c.boundary(k).expect("degree in range"),
                m,
            ));
        }
    }
    for (k, m) in (0..).zip(&golden_alpha()) {
        out.push(Report::compare(
            "golden α",
            Some(k),
            &alpha_map(GOLDEN_D, k).expect("degree in range"),
            m,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_int;
    use crate::report::all_pass;

    #[test]
    fn reference_data_matches() {
        let reports = golden_check();
        assert_eq!(reports.len(), 10);
        assert!(all_pass(&reports));
    }

    #[test]
    fn reference_data_is_self_consistent() {
        for diffs in golden_differentials() {
            assert!(diffs[0].mul(&diffs[1]).unwrap().is_zero());
            assert!(diffs[1].mul(&diffs[2]).unwrap().is_zero());
        }
        assert_eq!(det_int(&golden_alpha()[2]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn a_perturbed_entry_is_caught() {
        let mut alpha = golden_alpha();
        alpha[1].set(1, 2, BigInt::from(3));
        let r = Report::compare("golden α", Some(1), &alpha_map(GOLDEN_D, 1).unwrap(), &alpha[1]);
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!((w.row, w.col, w.lhs.as_str(), w.rhs.as_str()), (1, 2, "-3", "3"));
    }
}
