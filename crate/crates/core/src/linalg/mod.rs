//! Dense exact matrices over any [`Ring`].

mod abelian;
mod elim;
mod smith;

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::Ring;

pub use abelian::AbelianGroup;
pub use elim::{det_int, rank_mod_p, rank_over_field, rank_over_q};
pub use smith::{smith_normal_form, SmithDecomposition};

/// Row-major dense matrix. Rows index the codomain, columns the domain.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Ctx,
    entries: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, ctx: &R::Ctx) -> Self {
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            entries: vec![R::zero_in(ctx); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: &R::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.set(i, i, R::one_in(ctx));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: &R::Ctx, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<R>>, ctx: &R::Ctx) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (n_rows, n_cols),
                right: (1, bad.len()),
            });
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            ctx: ctx.clone(),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero_elem)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.ctx, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(&self.ctx, R::neg)
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(&self.ctx, |e| e.mul(k))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = R::from_int(&BigInt::from(k), &self.ctx);
        self.scale(&k)
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), &self.ctx, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::RingMismatch(R::ring_tag(&self.ctx), R::ring_tag(&other.ctx)))
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols, &self.ctx);
        // Differentials are sparse, so skip zero factors instead of forming products.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        self.check_ring(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "mat_add", R::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "mat_sub", R::sub)
    }

    /// First position where two same-shape matrices disagree.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// `{"rows", "cols", "ring", "entries"}` with `entries` nested by row.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(R::to_json).collect()))
            .collect();
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "ring": R::ring_tag(&self.ctx),
            "entries": entries,
        })
    }
}

impl Matrix<BigInt> {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(rows, &()).expect("rectangular literal")
    }

    /// Lifts an integer matrix into another ring through its integer embedding.
    pub fn lift<S: Ring>(&self, ctx: &S::Ctx) -> Matrix<S> {
        self.map(ctx, |e| S::from_int(e, ctx))
    }
}

impl<R: Ring> Index<(usize, usize)> for Matrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        self.get(i, j)
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{:?} ", R::ring_tag(&self.ctx), self.shape())?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

/// Plain-text rendering with right-aligned columns.
impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| cells[i * self.cols + j].len())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for i in 0..self.rows {
            f.write_str("[ ")?;
            for j in 0..self.cols {
                write!(f, "{:>w$} ", cells[i * self.cols + j], w = widths[j])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
