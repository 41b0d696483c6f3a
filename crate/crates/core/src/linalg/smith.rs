use std::mem;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Matrix;

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithDecomposition {
    pub u: Matrix<BigInt>,
    pub s: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    /// Inverse of `v`; its trailing rows express vectors in a kernel basis.
    pub v_inv: Matrix<BigInt>,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| *d > BigInt::one()).collect()
    }
}

type Rows = Vec<Vec<BigInt>>;

struct Reducer {
    s: Rows,
    u: Rows,
    v: Rows,
    v_inv: Rows,
    m: usize,
    n: usize,
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn axpy_row(rows: &mut Rows, src: usize, dst: usize, k: &BigInt) {
    let (s, d) = if src < dst {
        let (a, b) = rows.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(src);
        (&b[0], &mut a[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        if !y.is_zero() {
            *x += k * y;
        }
    }
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap(i, j);
        self.u.swap(i, j);
    }

    /// row_dst += k * row_src
    fn add_row(&mut self, src: usize, dst: usize, k: &BigInt) {
        axpy_row(&mut self.s, src, dst, k);
        axpy_row(&mut self.u, src, dst, k);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.s[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -mem::take(x);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.s.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// col_dst += k * col_src; V^-1 picks up row_src -= k * row_dst.
    fn add_col(&mut self, src: usize, dst: usize, k: &BigInt) {
        for row in self.s.iter_mut().chain(self.v.iter_mut()) {
            if !row[src].is_zero() {
                let delta = k * &row[src];
                row[dst] += delta;
            }
        }
        axpy_row(&mut self.v_inv, dst, src, &-k);
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let e = &self.s[i][j];
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn place_pivot(&mut self, t: usize) -> bool {
        let Some((i, j)) = self.pivot(t) else {
            return false;
        };
        if i != t {
            self.swap_rows(i, t);
        }
        if j != t {
            self.swap_cols(j, t);
        }
        true
    }

    /// Clears row and column `t` by division; `true` if no remainder survived.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        let p = self.s[t][t].clone();
        for i in t + 1..self.m {
            if self.s[i][t].is_zero() {
                continue;
            }
            let q = &self.s[i][t] / &p;
            if !q.is_zero() {
                self.add_row(t, i, &-q);
            }
            clean &= self.s[i][t].is_zero();
        }
        for j in t + 1..self.n {
            if self.s[t][j].is_zero() {
                continue;
            }
            let q = &self.s[t][j] / &p;
            if !q.is_zero() {
                self.add_col(t, j, &-q);
            }
            clean &= self.s[t][j].is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.s[t][t];
        (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !(&self.s[i][j] % p).is_zero()))
    }

    fn run(&mut self) {
        for t in 0..self.m.min(self.n) {
            if !self.place_pivot(t) {
                break;
            }
            loop {
                if !self.eliminate(t) {
                    self.place_pivot(t);
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => {
                        let one = BigInt::one();
                        self.add_row(i, t, &one);
                    }
                    None => break,
                }
            }
            if self.s[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn to_matrix(rows: Rows, n_cols: usize) -> Matrix<BigInt> {
    if rows.is_empty() {
        return Matrix::zeros(0, n_cols, &());
    }
    Matrix::from_rows(rows, &()).expect("rectangular")
}

/// Smith normal form with transforms. Pivots on a nonzero entry of least
/// absolute value (row-major tie-break) at every step.
pub fn smith_normal_form(a: &Matrix<BigInt>) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut r = Reducer {
        s: (0..m).map(|i| a.row(i).to_vec()).collect(),
        u: identity_rows(m),
        v: identity_rows(n),
        v_inv: identity_rows(n),
        m,
        n,
    };
    r.run();
    SmithDecomposition {
        u: to_matrix(r.u, m),
        s: to_matrix(r.s, n),
        v: to_matrix(r.v, n),
        v_inv: to_matrix(r.v_inv, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_int;
    use proptest::prelude::*;

    fn check(a: &Matrix<BigInt>) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        let uav = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(uav, snf.s, "U A V != S for {a:?}");
        let n = a.cols();
        assert_eq!(snf.v.mul(&snf.v_inv).unwrap(), Matrix::identity(n, &()));
        assert_eq!(det_int(&snf.u).unwrap().abs(), BigInt::one());
        assert_eq!(det_int(&snf.v).unwrap().abs(), BigInt::one());
        let diag = snf.diagonal();
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must trail: {diag:?}");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility: {diag:?}");
            }
        }
        snf
    }

    #[test]
    fn identity_and_zero() {
        let id = Matrix::identity(3, &());
        assert_eq!(check(&id).s, id);
        let z = Matrix::zeros(2, 3, &());
        assert_eq!(check(&z).s, z);
    }

    #[test]
    fn two_by_two_example() {
        let a = Matrix::from_i64(&[&[2, 4], &[6, 8]]);
        let snf = check(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn degenerate_shapes() {
        check(&Matrix::zeros(0, 3, &()));
        check(&Matrix::zeros(3, 0, &()));
        let snf = check(&Matrix::from_i64(&[&[0, -6, 4]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(2)]);
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) must become diag(1, 6)
        let snf = check(&Matrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..10, r * c)
                .prop_map(move |v| Matrix::from_fn(r, c, &(), |i, j| BigInt::from(v[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn decomposition_invariants(a in arb_matrix()) {
            check(&a);
        }

        #[test]
        fn determinant_is_product_of_diagonal(a in arb_matrix()) {
            if a.is_square() {
                let snf = check(&a);
                let prod: BigInt = snf.diagonal().iter().product();
                prop_assert_eq!(det_int(&a).unwrap().abs(), prod);
            }
        }

        #[test]
        fn rank_over_q_matches_smith_rank(a in arb_matrix()) {
            prop_assert_eq!(crate::linalg::rank_over_q(&a), check(&a).rank());
        }
    }
}
