//! Coefficient rings shared by matrices and complexes.
//!
//! Every coefficient type carries a context (`Ctx`) that pins down which ring
//! it belongs to. For `Z`, `Q` and integer-valued polynomials the context is
//! `()`; for `F_p` it is the modulus. Matrices store the context so that zero
//! matrices can be built and mixed-ring products rejected.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_int(n: &BigInt, ctx: &Self::Ctx) -> Self;

    fn is_zero_elem(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Tag used in the JSON matrix format: `Z`, `Q`, `Fp:<p>` or `IVPoly`.
    fn ring_tag(ctx: &Self::Ctx) -> String;

    fn to_json(&self) -> Value;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

/// JSON for an arbitrary-precision integer: a number when it fits in `i64`,
/// a decimal string otherwise.
pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

impl Ring for BigInt {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        Zero::zero()
    }
    fn one_in(_: &()) -> Self {
        One::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        n.clone()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_tag(_: &()) -> String {
        "Z".into()
    }
    fn to_json(&self) -> Value {
        bigint_json(self)
    }
}

impl Ring for BigRational {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        Zero::zero()
    }
    fn one_in(_: &()) -> Self {
        One::one()
    }
    fn from_int(n: &BigInt, _: &()) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_tag(_: &()) -> String {
        "Q".into()
    }
    fn to_json(&self) -> Value {
        if self.is_integer() {
            bigint_json(self.numer())
        } else {
            Value::String(self.to_string())
        }
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Fp { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let p = self.modulus as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u64,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    type Ctx = u64;

    fn zero_in(p: &u64) -> Self {
        Fp { value: 0, modulus: *p }
    }
    fn one_in(p: &u64) -> Self {
        Fp {
            value: 1 % *p,
            modulus: *p,
        }
    }
    fn from_int(n: &BigInt, p: &u64) -> Self {
        let r = n.mod_floor(&BigInt::from(*p));
        Fp {
            value: r.to_u64().expect("residue fits in u64"),
            modulus: *p,
        }
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp {
            value: s as u64,
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 { 0 } else { self.modulus - self.value },
            modulus: self.modulus,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp {
            value: s as u64,
            modulus: self.modulus,
        }
    }
    fn ring_tag(p: &u64) -> String {
        format!("Fp:{p}")
    }
    fn to_json(&self) -> Value {
        Value::from(self.value)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            // Fermat; the modulus is checked prime wherever an Fp context is built.
            Some(self.pow(self.modulus - 2))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `true` when `p` divides `n` (used for universal-coefficient bookkeeping).
pub fn divides(p: u64, n: &BigInt) -> bool {
    (n.abs() % BigInt::from(p)).is_zero()
}
