use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::{Field, Fp, Ring};

/// Determinant by Bareiss fraction-free elimination.
pub fn det_int(a: &Matrix<BigInt>) -> Result<BigInt> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            let factor = m[i][k].clone();
            for j in k + 1..n {
                let mut v = &m[k][k] * &m[i][j];
                if !factor.is_zero() && !m[k][j].is_zero() {
                    v -= &factor * &m[k][j];
                }
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * prev)
}

/// Row rank by Gaussian elimination over a field.
pub fn rank_over_field<F: Field>(a: &Matrix<F>) -> usize {
    let (rows, cols) = a.shape();
    let mut m: Vec<Vec<F>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(p, rank);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<F> = m[rank].iter().map(|e| e.mul(&inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c].clone();
            if f.is_zero_elem() {
                continue;
            }
            for (j, e) in row.iter_mut().enumerate().skip(c) {
                if !pivot_row[j].is_zero_elem() {
                    *e = e.sub(&f.mul(&pivot_row[j]));
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank_over_q(a: &Matrix<BigInt>) -> usize {
    rank_over_field(&a.map(&(), |e| BigRational::from_integer(e.clone())))
}

pub fn rank_mod_p(a: &Matrix<BigInt>, p: u64) -> usize {
    rank_over_field(&a.map(&p, |e| Fp::from_int(e, &p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn determinants() {
        assert_eq!(det_int(&Matrix::identity(4, &())).unwrap(), BigInt::one());
        let alpha = Matrix::from_i64(&[&[-1, -2, -1], &[0, 1, 1], &[0, 0, -1]]);
        assert_eq!(det_int(&alpha).unwrap(), BigInt::one());
        let a = Matrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(det_int(&a).unwrap(), BigInt::from(2 * 8 - 4 * 6));
        assert_eq!(det_int(&Matrix::zeros(0, 0, &())).unwrap(), BigInt::one());
        assert!(matches!(
            det_int(&Matrix::zeros(2, 3, &())),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        let needs_swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_int(&needs_swap).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_over_q(&Matrix::identity(5, &())), 5);
        assert_eq!(rank_over_q(&Matrix::zeros(3, 4, &())), 0);
        for m in -4..4 {
            assert_eq!(rank_over_q(&Matrix::from_i64(&[&[2, -2, m + 1]])), 1);
        }
        let a = Matrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(rank_mod_p(&a, 2), 0);
        assert_eq!(rank_mod_p(&a, 3), 2);
        assert_eq!(rank_mod_p(&a, 5), 2);
        let b = Matrix::from_i64(&[&[1, 2], &[3, 1]]);
        assert_eq!(rank_mod_p(&b, 5), 1);
        assert_eq!(rank_mod_p(&b, 7), 2);
    }
}
