use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ivpoly::{affine_binom, affine_string, int_binom, IVPoly, XSign};

/// A vertex or interval weight: `sign·x + shift`, or a plain integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Affine { sign: XSign, shift: i64 },
    Int(i64),
}

impl Weight {
    pub fn x() -> Self {
        Weight::Affine {
            sign: XSign::Plus,
            shift: 0,
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, Weight::Affine { .. })
    }

    pub fn plus(self, n: i64) -> Self {
        match self {
            Weight::Affine { sign, shift } => Weight::Affine { sign, shift: shift + n },
            Weight::Int(v) => Weight::Int(v + n),
        }
    }

    /// Value at `x = m`.
    pub fn eval(self, m: i64) -> i64 {
        match self {
            Weight::Affine { sign, shift } => sign.as_i64() * m + shift,
            Weight::Int(v) => v,
        }
    }

    pub fn to_ivpoly(self) -> IVPoly {
        match self {
            Weight::Affine { sign, shift } => affine_binom(sign, shift, 1),
            Weight::Int(v) => IVPoly::constant(v),
        }
    }

    /// `binom(self, n)` as an element of the polynomial ring.
    pub fn binom(self, n: i64) -> IVPoly {
        match self {
            Weight::Affine { sign, shift } => affine_binom(sign, shift, n),
            Weight::Int(v) => IVPoly::constant(int_binom(&BigInt::from(v), n)),
        }
    }

    /// `binom(self, n)` as an integer; `None` when the weight involves `x`.
    pub fn binom_int(self, n: i64) -> Option<BigInt> {
        match self {
            Weight::Int(v) => Some(int_binom(&BigInt::from(v), n)),
            Weight::Affine { .. } => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Weight::Affine { sign, shift } => f.write_str(&affine_string(sign.as_i64(), shift)),
            Weight::Int(v) => write!(f, "{v}"),
        }
    }
}

/// Accepts `x`, `-x`, `x+3`, `-x-6`, or a plain integer.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(input, "empty weight"));
        }
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Weight::Int(v));
        }
        let (sign, rest) = if let Some(r) = s.strip_prefix("-x") {
            (XSign::Minus, r)
        } else if let Some(r) = s.strip_prefix("+x").or_else(|| s.strip_prefix('x')) {
            (XSign::Plus, r)
        } else {
            return Err(Error::parse(input, "expected `x`, `-x`, `x±c`, `-x±c` or an integer"));
        };
        let shift = if rest.is_empty() {
            0
        } else {
            let (neg, digits) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => return Err(Error::parse(input, "expected `+` or `-` after `x`")),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(input, "shift must be an unsigned integer"));
            }
            let v: i64 = digits.parse().map_err(|_| Error::parse(input, "shift out of range"))?;
            if neg {
                -v
            } else {
                v
            }
        };
        Ok(Weight::Affine { sign, shift })
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Vertex weights `(w_0; w_1, ..., w_d)` of the weighted path graph on `d + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector {
    w0: Weight,
    tail: Vec<u32>,
}

impl WeightVector {
    pub fn new(w0: Weight, tail: Vec<u32>) -> Self {
        WeightVector { w0, tail }
    }

    /// `(sign·x + shift, 1^d)`.
    pub fn affine_ones(sign: XSign, shift: i64, d: usize) -> Self {
        WeightVector::new(Weight::Affine { sign, shift }, vec![1; d])
    }

    /// `(w0, 1^d)` with an integer `w0`.
    pub fn int_ones(w0: i64, d: usize) -> Self {
        WeightVector::new(Weight::Int(w0), vec![1; d])
    }

    /// Integer weights `(w_0, ..., w_d)`; `w_1..` must be nonnegative.
    pub fn from_ints(weights: &[i64]) -> Result<Self> {
        let (&w0, tail) = weights
            .split_first()
            .ok_or_else(|| Error::InvalidWeights("at least one weight is required".into()))?;
        let tail = tail
            .iter()
            .map(|&w| {
                u32::try_from(w)
                    .map_err(|_| Error::InvalidWeights(format!("tail weight {w} is not a nonnegative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightVector::new(Weight::Int(w0), tail))
    }

    pub fn w0(&self) -> Weight {
        self.w0
    }

    pub fn tail(&self) -> &[u32] {
        &self.tail
    }

    /// Number of edges `d`.
    pub fn d(&self) -> usize {
        self.tail.len()
    }

    pub fn is_symbolic(&self) -> bool {
        self.w0.is_affine()
    }

    /// `true` when every tail weight is 1.
    pub fn has_unit_tail(&self) -> bool {
        self.tail.iter().all(|&w| w == 1)
    }

    /// `w_0 + ... + w_d`.
    pub fn total(&self) -> Weight {
        self.w0.plus(self.tail.iter().map(|&w| w as i64).sum())
    }

    pub fn with_w0(&self, w0: Weight) -> Self {
        WeightVector::new(w0, self.tail.clone())
    }

    /// Integer weights obtained by evaluating `w0` at `x = m`.
    pub fn specialize(&self, m: i64) -> Self {
        self.with_w0(Weight::Int(self.w0.eval(m)))
    }

    /// Sum of the weights on vertices `start..=start + length`.
    pub fn interval_weight(&self, start: usize, length: usize) -> Result<Weight> {
        let end = start + length;
        if end > self.d() {
            return Err(Error::OutOfRange(format!(
                "interval {start}..={end} outside vertices 0..={}",
                self.d()
            )));
        }
        let tail_sum = |lo: usize| -> i64 { self.tail[lo - 1..end].iter().map(|&w| w as i64).sum() };
        Ok(if start == 0 {
            if end == 0 {
                self.w0
            } else {
                self.w0.plus(tail_sum(1))
            }
        } else {
            Weight::Int(tail_sum(start))
        })
    }

    /// Weights written as a comma-separated list, e.g. `(x,1,1,1)`.
    pub fn describe(&self) -> String {
        let mut parts = vec![self.w0.to_string()];
        parts.extend(self.tail.iter().map(u32::to_string));
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Parses a comma-separated list of nonnegative integers, e.g. `1,1,1`; the empty string is `d = 0`.
pub fn parse_tail(input: &str) -> Result<Vec<u32>> {
    let s = input.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(input, format!("`{}` is not a nonnegative integer", part.trim())))
        })
        .collect()
}
