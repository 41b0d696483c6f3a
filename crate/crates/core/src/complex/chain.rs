use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Report, Witness};
use crate::ring::Ring;

/// A bounded chain complex of finitely generated free modules.
///
/// Terms live in degrees `lowest..lowest + ranks.len()`; `boundaries[i]` is the
/// differential out of degree `lowest + i + 1`, a `rank(k-1) x rank(k)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<R: Ring> {
    ctx: R::Ctx,
    lowest: i64,
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<R>>,
}

impl<R: Ring> ChainComplex<R> {
    pub fn new(ctx: &R::Ctx, lowest: i64, ranks: Vec<usize>, boundaries: Vec<Matrix<R>>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidParameter(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let expected = (ranks[i], ranks[i + 1]);
            if b.shape() != expected {
                return Err(Error::DimensionMismatch {
                    op: "chain_complex",
                    left: expected,
                    right: b.shape(),
                });
            }
            if b.ctx() != ctx {
                return Err(Error::RingMismatch(R::ring_tag(ctx), R::ring_tag(b.ctx())));
            }
        }
        Ok(ChainComplex {
            ctx: ctx.clone(),
            lowest,
            ranks,
            boundaries,
        })
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    /// Lowest degree with a (possibly zero-rank) term.
    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Highest degree with a term; `lowest - 1` for the empty complex.
    pub fn highest(&self) -> i64 {
        self.lowest + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lowest..=self.highest()
    }

    pub fn rank(&self, k: i64) -> usize {
        self.index(k).map_or(0, |i| self.ranks[i])
    }

    fn index(&self, k: i64) -> Option<usize> {
        let i = k - self.lowest;
        (0..self.ranks.len() as i64).contains(&i).then_some(i as usize)
    }

    /// Differential `∂_k: C_k → C_{k-1}` when both terms are inside the support.
    pub fn boundary(&self, k: i64) -> Option<&Matrix<R>> {
        let i = k - self.lowest - 1;
        (0..self.boundaries.len() as i64)
            .contains(&i)
            .then(|| &self.boundaries[i as usize])
    }

    /// `∂_k`, or the zero map of the right shape outside the support.
    pub fn boundary_or_zero(&self, k: i64) -> Matrix<R> {
        self.boundary(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.rank(k - 1), self.rank(k), &self.ctx))
    }

    pub fn boundaries(&self) -> &[Matrix<R>] {
        &self.boundaries
    }

    /// `Σ (-1)^k rank C_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(k) as i64)
            .sum()
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0` in every degree, one report per composable pair.
    pub fn square_zero_reports(&self) -> Vec<Report> {
        self.boundaries
            .windows(2)
            .enumerate()
            .map(|(i, pair)| {
                let k = self.lowest + i as i64 + 2;
                let claim = "differential squares to zero";
                match pair[0].mul(&pair[1]) {
                    Ok(prod) => match prod.entries().iter().position(|e| !e.is_zero_elem()) {
                        None => Report::pass(claim, Some(k)),
                        Some(pos) => Report::fail(
                            claim,
                            Some(k),
                            Some(Witness {
                                row: pos / prod.cols(),
                                col: pos % prod.cols(),
                                lhs: prod.entries()[pos].to_string(),
                                rhs: "0".into(),
                            }),
                        ),
                    },
                    Err(e) => Report::fail(
                        claim,
                        Some(k),
                        Some(Witness {
                            row: 0,
                            col: 0,
                            lhs: e.to_string(),
                            rhs: "0".into(),
                        }),
                    ),
                }
            })
            .collect()
    }

    pub fn is_square_zero(&self) -> bool {
        self.square_zero_reports().iter().all(|r| r.pass)
    }

    /// `Ok(())` when `∂∘∂ = 0`, otherwise a malformed-complex error at the first bad degree.
    pub fn check_square_zero(&self) -> Result<()> {
        match self.square_zero_reports().into_iter().find(|r| !r.pass) {
            None => Ok(()),
            Some(r) => Err(Error::MalformedComplex {
                degree: r.degree.unwrap_or_default(),
            }),
        }
    }

    /// Dual complex: `(Č)_k = Hom(C_{-k})`, differential `∂̌_k = (∂_{1-k})^T`.
    pub fn dual(&self) -> Self {
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let boundaries = self.boundaries.iter().rev().map(Matrix::transpose).collect();
        ChainComplex {
            ctx: self.ctx.clone(),
            lowest: -self.highest(),
            ranks,
            boundaries,
        }
    }

    /// Shift: `(C[s])_k = C_{k+s}` with every differential multiplied by `(-1)^s`.
    pub fn shift(&self, s: i64) -> Self {
        let boundaries = if s.rem_euclid(2) == 0 {
            self.boundaries.clone()
        } else {
            self.boundaries.iter().map(Matrix::neg).collect()
        };
        ChainComplex {
            ctx: self.ctx.clone(),
            lowest: self.lowest - s,
            ranks: self.ranks.clone(),
            boundaries,
        }
    }

    /// Applies a ring homomorphism entrywise.
    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> ChainComplex<S> {
        ChainComplex {
            ctx: ctx.clone(),
            lowest: self.lowest,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|b| b.map(ctx, &f)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lowest": self.lowest,
            "ranks": self.ranks,
            "ring": R::ring_tag(&self.ctx),
            "differentials": self
                .boundaries
                .iter()
                .enumerate()
                .map(|(i, b)| json!({"degree": self.lowest + i as i64 + 1, "matrix": b.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl ChainComplex<BigInt> {
    /// Lifts an integer complex into another ring through its integer embedding.
    pub fn lift<S: Ring>(&self, ctx: &S::Ctx) -> ChainComplex<S> {
        self.map(ctx, |e| S::from_int(e, ctx))
    }
}
