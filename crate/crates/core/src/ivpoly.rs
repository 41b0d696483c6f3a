//! The ring `R = Z<C(x,n)>` of integer-valued polynomials.
//!
//! Elements are stored in the binomial basis `C(x,0), C(x,1), ...`, so the
//! coefficients are integers exactly when the polynomial maps `Z` into `Z`.
//! Products are computed by evaluating both factors at `0..=deg` and
//! recovering coefficients as forward differences at zero.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{bigint_json, Ring};

/// Generalized binomial coefficient `a(a-1)...(a-k+1)/k!`, zero for `k < 0`.
pub fn int_binom(a: &BigInt, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if !a.is_negative() {
        if let Some(n) = a.to_i64() {
            if k > n {
                return BigInt::zero();
            }
            let k = k.min(n - k);
            return falling_ratio(a, k);
        }
    }
    falling_ratio(a, k)
}

fn falling_ratio(a: &BigInt, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn int_binom_i64(a: i64, k: i64) -> BigInt {
    int_binom(&BigInt::from(a), k)
}

/// Sign of the variable in an affine argument `±x + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XSign {
    Plus,
    Minus,
}

impl XSign {
    pub fn as_i64(self) -> i64 {
        match self {
            XSign::Plus => 1,
            XSign::Minus => -1,
        }
    }

    pub fn from_i64(s: i64) -> Option<Self> {
        match s {
            1 => Some(XSign::Plus),
            -1 => Some(XSign::Minus),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IVPoly {
    coeffs: Vec<BigInt>,
}

impl IVPoly {
    pub fn zero() -> Self {
        IVPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `C(x, n)`.
    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IVPoly { coeffs }
    }

    /// `x = C(x,1)`.
    pub fn x() -> Self {
        Self::basis(1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IVPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Binomial-basis coefficients `(c_0, ..., c_N)` with `c_N != 0`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, m: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one();
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &binom;
            }
            binom *= m - n;
            binom /= n + 1;
        }
        acc
    }

    pub fn eval_i64(&self, m: i64) -> BigInt {
        self.eval(&BigInt::from(m))
    }

    /// Values at `x = 0, 1, ..., count-1`, propagated through the
    /// forward-difference table (additions only).
    pub fn values(&self, count: usize) -> Vec<BigInt> {
        let mut diffs = self.coeffs.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(diffs.first().cloned().unwrap_or_default());
            for n in 0..diffs.len().saturating_sub(1) {
                let (lo, hi) = diffs.split_at_mut(n + 1);
                lo[n] += &hi[0];
            }
        }
        out
    }

    /// Inverse of [`IVPoly::values`]: the unique polynomial of degree
    /// `< values.len()` through `(m, values[m])`.
    pub fn interpolate(values: &[BigInt]) -> Self {
        let mut row = values.to_vec();
        let mut coeffs = Vec::with_capacity(row.len());
        while !row.is_empty() {
            coeffs.push(row[0].clone());
            for i in 0..row.len() - 1 {
                row[i] = &row[i + 1] - &row[i];
            }
            row.pop();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IVPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn add_poly(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    fn mul_poly(&self, rhs: &Self) -> Self {
        match (self.as_constant(), rhs.as_constant()) {
            (Some(a), _) => return rhs.scale(&a),
            (_, Some(b)) => return self.scale(&b),
            _ => {}
        }
        let points = self.coeffs.len() + rhs.coeffs.len() - 1;
        let lhs_vals = self.values(points);
        let rhs_vals = rhs.values(points);
        let prod: Vec<BigInt> = lhs_vals.iter().zip(&rhs_vals).map(|(a, b)| a * b).collect();
        Self::interpolate(&prod)
    }

    /// If `self = a * C(x + c, n)` for integers `a != 0`, `c`, returns `(a, c, n)`.
    pub fn as_scaled_affine_binom(&self) -> Option<(BigInt, i64, usize)> {
        let n = self.degree()?;
        let lead = self.coeffs[n].clone();
        if n == 0 {
            return Some((lead, 0, 0));
        }
        let next = &self.coeffs[n - 1];
        if !(next % &lead).is_zero() {
            return None;
        }
        let shift = (next / &lead).to_i64()?;
        let candidate = affine_binom(XSign::Plus, shift, n as i64).scale(&lead);
        (candidate == *self).then_some((lead, shift, n))
    }

    /// `3 + 3*C(x,1) + C(x,2)`.
    pub fn to_basis_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if n == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&format!("C(x,{n})"));
            } else {
                out.push_str(&format!("{mag}*C(x,{n})"));
            }
        }
        out
    }

    /// `C(x+3,2)`, `-x-3`, `2*C(x,4)`; falls back to the basis form.
    pub fn to_human_string(&self) -> String {
        let Some((a, c, n)) = self.as_scaled_affine_binom() else {
            return self.to_basis_string();
        };
        if n == 0 {
            return a.to_string();
        }
        let inner = affine_string(1, c);
        let body = if n == 1 { inner } else { format!("C({inner},{n})") };
        if a.is_one() {
            body
        } else if a == -BigInt::one() {
            if n == 1 {
                affine_string(-1, -c)
            } else {
                format!("-{body}")
            }
        } else if n == 1 {
            format!("{a}*({body})")
        } else {
            format!("{a}*{body}")
        }
    }
}

/// Renders `sign*x + shift` as `x`, `x+3`, `-x-6`.
pub(crate) fn affine_string(sign: i64, shift: i64) -> String {
    let head = if sign < 0 { "-x" } else { "x" };
    match shift.signum() {
        0 => head.to_string(),
        1 => format!("{head}+{shift}"),
        _ => format!("{head}{shift}"),
    }
}

/// `C(sign*x + shift, n)` as an element of `R`; `1` for `n = 0`, `0` for `n < 0`.
pub fn affine_binom(sign: XSign, shift: i64, n: i64) -> IVPoly {
    if n < 0 {
        return IVPoly::zero();
    }
    if n == 0 {
        return IVPoly::one();
    }
    let s = sign.as_i64();
    let values: Vec<BigInt> = (0..=n).map(|m| int_binom_i64(s * m + shift, n)).collect();
    IVPoly::interpolate(&values)
}

impl fmt::Debug for IVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IVPoly({})", self.to_basis_string())
    }
}

impl fmt::Display for IVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human_string())
    }
}

impl Ring for IVPoly {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        IVPoly::zero()
    }
    fn one_in(_: &()) -> Self {
        IVPoly::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        IVPoly::constant(n.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_poly(rhs)
    }
    fn neg(&self) -> Self {
        IVPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_poly(rhs)
    }
    fn ring_tag(_: &()) -> String {
        "IVPoly".into()
    }
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(bigint_json).collect())
    }
}

// Grammar (whitespace ignored):
//   expr   := [+|-] term { (+|-) term }
//   term   := INT [ '*' factor ] | factor
//   factor := 'x' | 'C' '(' expr ',' INT ')' | '(' expr ')'
// The first argument of `C(...)` must be an integer or `±x + c`.
struct Parser<'a> {
    src: &'a str,
    bytes: Vec<u8>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let bytes = src.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        Parser { src, bytes, pos: 0 }
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::parse(self.src, reason)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}` at offset {}", b as char, self.pos)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected a number at offset {start}")));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<IVPoly> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = IVPoly::zero();
        loop {
            let term = self.term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<IVPoly> {
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let k = self.integer()?;
            if self.eat(b'*') {
                Ok(self.factor()?.scale(&k))
            } else {
                Ok(IVPoly::constant(k))
            }
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<IVPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(IVPoly::x())
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'(')?;
                let top = self.expr()?;
                self.expect(b',')?;
                let neg = self.eat(b'-');
                let n = self.integer()?;
                self.expect(b')')?;
                let n = n.to_i64().ok_or_else(|| self.err("binomial index out of range"))?;
                let n = if neg { -n } else { n };
                binom_of_linear(&top, n)
                    .ok_or_else(|| self.err("C(...) needs an integer or ±x+c as its first argument"))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b) => Err(self.err(format!("unexpected `{}` at offset {}", b as char, self.pos))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// `C(p, n)` for `p` constant or of the form `±x + c`.
fn binom_of_linear(p: &IVPoly, n: i64) -> Option<IVPoly> {
    if let Some(c) = p.as_constant() {
        return Some(IVPoly::constant(int_binom(&c, n)));
    }
    let (sign, shift) = linear_parts(p)?;
    Some(affine_binom(sign, shift, n))
}

/// Splits `±x + c` into its parts.
pub(crate) fn linear_parts(p: &IVPoly) -> Option<(XSign, i64)> {
    if p.degree() != Some(1) {
        return None;
    }
    let sign = XSign::from_i64(p.coeffs()[1].to_i64()?)?;
    let shift = p.coeffs()[0].to_i64()?;
    Some((sign, shift))
}

impl FromStr for IVPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser::new(s);
        if parser.bytes.is_empty() {
            return Err(parser.err("empty input"));
        }
        let p = parser.expr()?;
        if parser.pos != parser.bytes.len() {
            return Err(parser.err(format!("trailing input at offset {}", parser.pos)));
        }
        Ok(p)
    }
}
