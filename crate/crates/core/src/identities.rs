//! Binomial identities behind the chain-map property of `α`, evaluated exactly.
//!
//! A [`LemmaContext`] fixes `λ = (λ_t, ..., λ_1)`, a weak composition of
//! `d - t + 1`, and `μ = (μ_{t+1}, ..., μ_1)`, a weak composition of `d - t`.
//! Writing `S(s) = Σ_{m=1}^{s} (μ_m + λ_m)`:
//!
//! ```text
//! A_k    = Π_{s=0}^{k-2} C(S(s) + μ_{s+1} + 2s,  S(s) + λ_{s+1} + 2s)
//! B_k    = Π_{s=k+1}^{t-1} C(S(s-1) + μ_s + μ_{s+1} + 2s - 1,  S(s) + 2s - 1)
//! g_k(z) = C(S(k-1) + μ_k + 2(k-1),  S(k-1) + λ_k - z + 2(k-1))
//! h_k(z) = C(S(k) + μ_{k+1} - z + 2(k-1) + 2,  S(k) + 2(k-1) + 1)
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{enumerate_compositions, Composition};
use crate::error::{Error, Result};
use crate::ivpoly::{affine_binom, int_binom_i64, IVPoly, XSign};
use crate::report::Report;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaContext {
    d: usize,
    t: usize,
    lam: Composition,
    mu: Composition,
}

impl LemmaContext {
    pub fn new(d: usize, t: usize, lam: Composition, mu: Composition) -> Result<Self> {
        if t == 0 || t > d {
            return Err(Error::InvalidParameter(format!("need 1 ≤ t ≤ d, got t={t}, d={d}")));
        }
        if lam.len() != t || lam.total() != (d - t + 1) as u64 {
            return Err(Error::InvalidComposition(format!(
                "λ = {lam} must have {t} parts summing to {}",
                d - t + 1
            )));
        }
        if mu.len() != t + 1 || mu.total() != (d - t) as u64 {
            return Err(Error::InvalidComposition(format!(
                "μ = {mu} must have {} parts summing to {}",
                t + 1,
                d - t
            )));
        }
        Ok(LemmaContext { d, t, lam, mu })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lam(&self) -> &Composition {
        &self.lam
    }

    pub fn mu(&self) -> &Composition {
        &self.mu
    }

    fn l(&self, j: usize) -> i64 {
        self.lam.part(j) as i64
    }

    fn m(&self, j: usize) -> i64 {
        self.mu.part(j) as i64
    }

    fn partial(&self, s: usize) -> i64 {
        (1..=s).map(|j| self.l(j) + self.m(j)).sum()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if (1..=self.t).contains(&k) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("index k={k} outside 1..={}", self.t)))
        }
    }

    pub fn a(&self, k: usize) -> Result<BigInt> {
        self.check_k(k)?;
        let mut acc = BigInt::from(1);
        for s in 0..k.saturating_sub(1) {
            let base = self.partial(s) + 2 * s as i64;
            acc *= int_binom_i64(base + self.m(s + 1), base + self.l(s + 1));
        }
        Ok(acc)
    }

    pub fn b(&self, k: usize) -> Result<BigInt> {
        self.check_k(k)?;
        let mut acc = BigInt::from(1);
        for s in k + 1..self.t {
            let si = s as i64;
            acc *= int_binom_i64(
                self.partial(s - 1) + self.m(s) + self.m(s + 1) + 2 * si - 1,
                self.partial(s) + 2 * si - 1,
            );
        }
        Ok(acc)
    }

    pub fn g(&self, k: usize, z: i64) -> Result<BigInt> {
        self.check_k(k)?;
        let base = self.partial(k - 1) + 2 * (k as i64 - 1);
        Ok(int_binom_i64(base + self.m(k), base + self.l(k) - z))
    }

    pub fn h(&self, k: usize, z: i64) -> Result<BigInt> {
        self.check_k(k)?;
        let base = self.partial(k) + 2 * (k as i64 - 1);
        Ok(int_binom_i64(base + self.m(k + 1) - z + 2, base + 1))
    }

    pub fn to_json(&self) -> Value {
        json!({"d": self.d, "t": self.t, "lambda": self.lam, "mu": self.mu})
    }
}

fn eq_report(claim: &str, k: usize, lhs: BigInt, rhs: BigInt) -> Report {
    if lhs == rhs {
        Report::pass(claim, Some(k as i64))
    } else {
        Report::fail(
            claim,
            Some(k as i64),
            Some(crate::report::Witness {
                row: 0,
                col: 0,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
        )
    }
}

/// The four product recursions relating `A`, `B`, `g`, `h`:
/// `g_1(λ_1+1) = 0`; `A_k·g_k(0) = A_{k+1}` and `h_k(0) = g_{k+1}(λ_{k+1}+1)` for `k < t`;
/// `B_k = B_{k+1}·h_{k+1}(λ_{k+1}+1)` for `k < t-1`; `A_t·g_t(0) = 0`.
pub fn product_recursion_check(ctx: &LemmaContext) -> Vec<Report> {
    let t = ctx.t;
    let v = |r: Result<BigInt>| r.expect("index in range");
    let mut out = vec![eq_report(
        "g_1(λ_1+1) = 0",
        1,
        v(ctx.g(1, ctx.l(1) + 1)),
        BigInt::zero(),
    )];
    for k in 1..t {
        out.push(eq_report(
            "A_k·g_k(0) = A_(k+1)",
            k,
            v(ctx.a(k)) * v(ctx.g(k, 0)),
            v(ctx.a(k + 1)),
        ));
        out.push(eq_report(
            "h_k(0) = g_(k+1)(λ_(k+1)+1)",
            k,
            v(ctx.h(k, 0)),
            v(ctx.g(k + 1, ctx.l(k + 1) + 1)),
        ));
    }
    for k in 1..t.saturating_sub(1) {
        out.push(eq_report(
            "B_k = B_(k+1)·h_(k+1)(λ_(k+1)+1)",
            k,
            v(ctx.b(k)),
            v(ctx.b(k + 1)) * v(ctx.h(k + 1, ctx.l(k + 1) + 1)),
        ));
    }
    out.push(eq_report(
        "A_t·g_t(0) = 0",
        t,
        v(ctx.a(t)) * v(ctx.g(t, 0)),
        BigInt::zero(),
    ));
    out
}

/// `Σ_{k=1}^{t-1} (-1)^{t-k} A_k B_k [h_k(λ_k+1) g_k(λ_k+1) + g_k(0) h_k(0)] = -A_t·g_t(λ_t+1)`.
pub fn alternating_sum_check(ctx: &LemmaContext) -> Report {
    let t = ctx.t;
    let v = |r: Result<BigInt>| r.expect("index in range");
    let mut lhs = BigInt::zero();
    for k in 1..t {
        let z = ctx.l(k) + 1;
        let bracket = v(ctx.h(k, z)) * v(ctx.g(k, z)) + v(ctx.g(k, 0)) * v(ctx.h(k, 0));
        let term = v(ctx.a(k)) * v(ctx.b(k)) * bracket;
        if (t - k).is_multiple_of(2) {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let rhs = -(v(ctx.a(t)) * v(ctx.g(t, ctx.l(t) + 1)));
    eq_report("alternating sum of A_k·B_k terms", t, lhs, rhs)
}

/// `C(m+n, r) = Σ_k C(m, k)·C(n, r-k)`.
pub fn vandermonde_check(m: u64, n: u64, r: u64) -> bool {
    let (m, n, r) = (m as i64, n as i64, r as i64);
    let rhs: BigInt = (0..=r).map(|k| int_binom_i64(m, k) * int_binom_i64(n, r - k)).sum();
    int_binom_i64(m + n, r) == rhs
}

/// Both sides of the Székely identity as polynomials in `y`:
/// `Σ_j C(b,j)·C(y+a, a-b+1+j)·C(y+a+b+c-j, c-j)` and `C(y+a+c, a-b+c+1)·C(a+c+1, c)`.
pub fn szekely_sides(a: u64, b: u64, c: u64) -> (IVPoly, IVPoly) {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let mut lhs = IVPoly::zero();
    for j in 0..=b.min(c) {
        let term = affine_binom(XSign::Plus, a, a - b + 1 + j).mul(&affine_binom(XSign::Plus, a + b + c - j, c - j));
        lhs = lhs.add(&term.scale(&int_binom_i64(b, j)));
    }
    let rhs = affine_binom(XSign::Plus, a + c, a - b + c + 1).scale(&int_binom_i64(a + c + 1, c));
    (lhs, rhs)
}

pub fn szekely_check(a: u64, b: u64, c: u64) -> bool {
    let (lhs, rhs) = szekely_sides(a, b, c);
    lhs == rhs
}

/// Every context with `1 ≤ t ≤ d` for the given `d`.
pub fn exhaustive_contexts(d: usize) -> Vec<LemmaContext> {
    let mut out = Vec::new();
    for t in 1..=d {
        let lams = enumerate_compositions(t, (d - t + 1) as u32);
        let mus = enumerate_compositions(t + 1, (d - t) as u32);
        for lam in &lams {
            for mu in &mus {
                out.push(LemmaContext::new(d, t, lam.clone(), mu.clone()).expect("valid by construction"));
            }
        }
    }
    out
}

/// A context with `d` uniform in `1..=max_d`, `t` uniform in `1..=d`, and `λ`, `μ` uniform.
pub fn random_context(rng: &mut impl Rng, max_d: usize) -> LemmaContext {
    let d = rng.gen_range(1..=max_d);
    let t = rng.gen_range(1..=d);
    let lam = enumerate_compositions(t, (d - t + 1) as u32)
        .choose(rng)
        .cloned()
        .expect("nonempty");
    let mu = enumerate_compositions(t + 1, (d - t) as u32)
        .choose(rng)
        .cloned()
        .expect("nonempty");
    LemmaContext::new(d, t, lam, mu).expect("valid by construction")
}

/// `count` seeded contexts with `d ≤ max_d`.
pub fn seeded_contexts(seed: u64, count: usize, max_d: usize) -> Vec<LemmaContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_context(&mut rng, max_d)).collect()
}

/// `count` seeded triples with entries in `0..=max`.
pub fn seeded_triples(seed: u64, count: usize, max: u64) -> Vec<(u64, u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(0..=max), rng.gen_range(0..=max), rng.gen_range(0..=max)))
        .collect()
}

/// One line of a fuzz run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzRecord {
    pub identity: &'static str,
    pub context: Value,
    pub pass: bool,
}

/// Seeded identity run: `count` contexts through both context checks,
/// `count / 2` Vandermonde triples (entries ≤ 30) and `count / 5` Székely
/// triples (entries ≤ 8). Records are in generation order.
pub fn fuzz(seed: u64, count: usize) -> Vec<FuzzRecord> {
    let mut out = Vec::new();
    for ctx in seeded_contexts(seed, count, 10) {
        out.push(FuzzRecord {
            identity: "product-recursion",
            context: ctx.to_json(),
            pass: product_recursion_check(&ctx).iter().all(|r| r.pass),
        });
        out.push(FuzzRecord {
            identity: "alternating-sum",
            context: ctx.to_json(),
            pass: alternating_sum_check(&ctx).pass,
        });
    }
    for (m, n, r) in seeded_triples(seed.wrapping_add(1), count / 2, 30) {
        out.push(FuzzRecord {
            identity: "vandermonde",
            context: json!({"m": m, "n": n, "r": r}),
            pass: vandermonde_check(m, n, r),
        });
    }
    for (a, b, c) in seeded_triples(seed.wrapping_add(2), count / 5, 8) {
        out.push(FuzzRecord {
            identity: "szekely",
            context: json!({"a": a, "b": b, "c": c}),
            pass: szekely_check(a, b, c),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn context_validation() {
        assert!(LemmaContext::new(3, 2, comp(&[1, 1]), comp(&[0, 1, 0])).is_ok());
        assert!(LemmaContext::new(3, 2, comp(&[1, 0]), comp(&[0, 1, 0])).is_err());
        assert!(LemmaContext::new(3, 2, comp(&[1, 1]), comp(&[1, 0])).is_err());
        assert!(LemmaContext::new(3, 4, comp(&[0, 0, 0, 0]), comp(&[0; 5])).is_err());
        let ctx = LemmaContext::new(3, 2, comp(&[1, 1]), comp(&[0, 1, 0])).unwrap();
        assert!(ctx.a(3).is_err() && ctx.g(0, 0).is_err());
    }

    #[test]
    fn empty_products_and_boundary_values() {
        for ctx in exhaustive_contexts(4) {
            assert_eq!(ctx.a(1).unwrap(), BigInt::from(1));
            assert_eq!(ctx.b(ctx.t()).unwrap(), BigInt::from(1));
            if ctx.t() >= 2 {
                assert_eq!(ctx.b(ctx.t() - 1).unwrap(), BigInt::from(1));
            }
            assert!(ctx.g(1, ctx.l(1) + 1).unwrap().is_zero());
        }
    }

    #[test]
    fn exhaustive_small_d() {
        for d in 1..=5 {
            for ctx in exhaustive_contexts(d) {
                assert!(all_pass(&product_recursion_check(&ctx)), "{:?}", ctx);
                assert!(alternating_sum_check(&ctx).pass, "{:?}", ctx);
            }
        }
    }

    #[test]
    fn dominated_contexts_force_vanishing() {
        let mut seen = 0;
        for ctx in exhaustive_contexts(5) {
            if !ctx.a(ctx.t()).unwrap().is_zero() {
                seen += 1;
                assert!(ctx.g(ctx.t(), 0).unwrap().is_zero());
                let r = alternating_sum_check(&ctx);
                assert!(r.pass);
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn exhaustive_count_matches_enumeration() {
        let n: usize = (1..=3)
            .map(|t| {
                crate::ivpoly::int_binom_i64(3, t as i64 - 1)
                    .to_string()
                    .parse::<usize>()
                    .unwrap()
                    * crate::ivpoly::int_binom_i64(3, t as i64)
                        .to_string()
                        .parse::<usize>()
                        .unwrap()
            })
            .sum();
        assert_eq!(exhaustive_contexts(3).len(), n);
    }

    #[test]
    fn vandermonde_examples() {
        assert!(vandermonde_check(0, 5, 3));
        assert!(vandermonde_check(2, 2, 2));
        assert_eq!(int_binom_i64(4, 2), BigInt::from(1 + 2 * 2 + 1));
        assert!(seeded_triples(7, 100, 30)
            .into_iter()
            .all(|(m, n, r)| vandermonde_check(m, n, r)));
    }

    #[test]
    fn szekely_special_cases() {
        for a in 0..5u64 {
            for c in 0..5u64 {
                let (lhs, rhs) = szekely_sides(a, 0, c);
                let expected = affine_binom(XSign::Plus, a as i64, a as i64 + 1).mul(&affine_binom(
                    XSign::Plus,
                    (a + c) as i64,
                    c as i64,
                ));
                assert_eq!(lhs, expected);
                assert_eq!(lhs, rhs);
            }
            for b in 0..5u64 {
                let (lhs, rhs) = szekely_sides(a, b, 0);
                assert_eq!(lhs, affine_binom(XSign::Plus, a as i64, a as i64 - b as i64 + 1));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn szekely_is_not_vacuous() {
        let (lhs, rhs) = szekely_sides(3, 2, 4);
        assert!(!lhs.is_zero());
        assert_eq!(lhs, rhs);
        let (l2, _) = szekely_sides(3, 2, 3);
        assert_ne!(l2, rhs);
    }

    #[test]
    fn fuzz_is_deterministic_and_green() {
        let a = fuzz(42, 60);
        assert_eq!(a, fuzz(42, 60));
        assert_ne!(a, fuzz(43, 60));
        assert_eq!(a.len(), 60 * 2 + 30 + 12);
        assert!(a.iter().all(|r| r.pass));
    }
}
