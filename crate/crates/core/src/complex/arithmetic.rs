use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::chain::ChainComplex;
use super::composition::{enumerate_compositions, Composition};
use super::weights::{Weight, WeightVector};
use crate::error::{Error, Result};
use crate::ivpoly::IVPoly;
use crate::linalg::Matrix;
use crate::ring::{check_prime, Fp, Ring};

/// The complex `C_•(w_0, ..., w_d)`: in degree `k` the free module on the weak
/// compositions of `k` into `d - k + 1` parts, each read as a partition of the
/// path graph on vertices `0..=d` into intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct ArithmeticComplex<R: Ring> {
    weights: WeightVector,
    bases: Vec<Vec<Composition>>,
    chain: ChainComplex<R>,
}

impl<R: Ring> ArithmeticComplex<R> {
    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn d(&self) -> usize {
        self.weights.d()
    }

    /// Ordered basis of `C_k`; empty outside `0..=d`.
    pub fn basis(&self, k: i64) -> &[Composition] {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.bases.get(k))
            .map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, k: i64) -> usize {
        self.chain.rank(k)
    }

    pub fn boundary(&self, k: i64) -> Option<&Matrix<R>> {
        self.chain.boundary(k)
    }

    pub fn chain(&self) -> &ChainComplex<R> {
        &self.chain
    }

    pub fn into_chain(self) -> ChainComplex<R> {
        self.chain
    }

    fn map_entries<S: Ring>(&self, weights: WeightVector, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> ArithmeticComplex<S> {
        ArithmeticComplex {
            weights,
            bases: self.bases.clone(),
            chain: self.chain.map(ctx, f),
        }
    }

    /// Weights, ordered bases and differentials as one JSON document.
    pub fn to_json(&self) -> Value {
        json!({
            "weights": {
                "w0": self.weights.w0().to_string(),
                "tail": self.weights.tail(),
            },
            "d": self.d(),
            "ring": R::ring_tag(self.chain.ctx()),
            "bases": self
                .bases
                .iter()
                .enumerate()
                .map(|(k, b)| json!({"degree": k, "basis": b}))
                .collect::<Vec<_>>(),
            "differentials": (1..=self.d() as i64)
                .map(|k| json!({"degree": k, "matrix": self.chain.boundary_or_zero(k).to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl ArithmeticComplex<IVPoly> {
    /// Evaluates every entry at `x = m`.
    pub fn specialize(&self, m: i64) -> ArithmeticComplex<BigInt> {
        let point = BigInt::from(m);
        self.map_entries(self.weights.specialize(m), &(), |p| p.eval(&point))
    }
}

impl ArithmeticComplex<BigInt> {
    /// Reduces every entry modulo the prime `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<ArithmeticComplex<Fp>> {
        let p = check_prime(p)?;
        Ok(self.map_entries(self.weights.clone(), &p, |e| Fp::from_int(e, &p)))
    }
}

/// Ordered bases of `C_0, ..., C_d`.
pub fn complex_bases(d: usize) -> Vec<Vec<Composition>> {
    (0..=d).map(|k| enumerate_compositions(d - k + 1, k as u32)).collect()
}

/// One nonzero entry of `∂_k`: removing the `i`-th edge of an interval.
struct EdgeRemoval {
    target: Composition,
    sign: i64,
    whole: Weight,
    right: i64,
}

fn edge_removals(weights: &WeightVector, lam: &Composition) -> Vec<EdgeRemoval> {
    let parts = lam.parts();
    let mut out = Vec::new();
    let mut start = 0usize;
    for (idx, &len) in parts.iter().enumerate() {
        let len = len as usize;
        let whole = weights
            .interval_weight(start, len)
            .expect("intervals tile the path graph");
        let sign = if idx % 2 == 0 { 1 } else { -1 };
        for i in 1..=len {
            let right = match weights.interval_weight(start + i, len - i) {
                Ok(Weight::Int(v)) => v,
                _ => unreachable!("right subintervals avoid vertex 0"),
            };
            let mut split = Vec::with_capacity(parts.len() + 1);
            split.extend_from_slice(&parts[..idx]);
            split.push((i - 1) as u32);
            split.push((len - i) as u32);
            split.extend_from_slice(&parts[idx + 1..]);
            out.push(EdgeRemoval {
                target: Composition::new(split),
                sign,
                whole,
                right,
            });
        }
        start += len + 1;
    }
    out
}

fn assemble<R: Ring>(weights: &WeightVector, ctx: &R::Ctx, binom: impl Fn(Weight, i64) -> R) -> ArithmeticComplex<R> {
    let d = weights.d();
    let bases = complex_bases(d);
    let positions: Vec<HashMap<&Composition, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let boundaries = (1..=d)
        .map(|k| {
            let mut m = Matrix::zeros(bases[k - 1].len(), bases[k].len(), ctx);
            for (col, lam) in bases[k].iter().enumerate() {
                for e in edge_removals(weights, lam) {
                    let row = positions[k - 1][&e.target];
                    let c = binom(e.whole, e.right);
                    let c = if e.sign < 0 { c.neg() } else { c };
                    m.set(row, col, c);
                }
            }
            m
        })
        .collect();
    let ranks = bases.iter().map(Vec::len).collect();
    let chain = ChainComplex::new(ctx, 0, ranks, boundaries).expect("shapes follow the bases");
    ArithmeticComplex {
        weights: weights.clone(),
        bases,
        chain,
    }
}

/// Builds `C_•(w)` over the ring of integer-valued polynomials and checks `∂∘∂ = 0`.
pub fn build_complex(weights: &WeightVector) -> Result<ArithmeticComplex<IVPoly>> {
    let c = build_complex_unchecked(weights);
    c.chain.check_square_zero()?;
    Ok(c)
}

/// [`build_complex`] without the `∂∘∂ = 0` check.
pub fn build_complex_unchecked(weights: &WeightVector) -> ArithmeticComplex<IVPoly> {
    assemble(weights, &(), Weight::binom)
}

/// Builds `C_•(w) ⊗ Z` directly from integer weights.
pub fn build_integer_complex(weights: &WeightVector) -> Result<ArithmeticComplex<BigInt>> {
    if weights.is_symbolic() {
        return Err(Error::InvalidWeights(format!(
            "w0 = {} is not an integer; specialize the symbolic complex instead",
            weights.w0()
        )));
    }
    let c = assemble(weights, &(), |w, n| w.binom_int(n).expect("integer weight"));
    c.chain.check_square_zero()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivpoly::{affine_binom, XSign};
    use crate::linalg::Matrix;
    use proptest::prelude::*;

    fn p(s: &str) -> IVPoly {
        s.parse().unwrap()
    }

    fn poly_matrix(rows: &[&[&str]]) -> Matrix<IVPoly> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect(), &()).unwrap()
    }

    #[test]
    fn top_row_of_the_worked_example() {
        let c = build_complex(&WeightVector::affine_ones(XSign::Plus, 0, 3)).unwrap();
        assert_eq!(c.boundary(1).unwrap(), &poly_matrix(&[&["2", "-2", "x+1"]]));
        assert_eq!(
            c.boundary(2).unwrap(),
            &poly_matrix(&[&["-3", "x+1", "0"], &["-3", "0", "C(x+2,2)"], &["0", "-2", "x+2"]])
        );
        assert_eq!(
            c.boundary(3).unwrap(),
            &poly_matrix(&[&["C(x+3,3)"], &["C(x+3,2)"], &["x+3"]])
        );
    }

    #[test]
    fn bottom_row_of_the_worked_example() {
        let c = build_complex(&WeightVector::affine_ones(XSign::Minus, -6, 3)).unwrap();
        assert_eq!(c.boundary(1).unwrap(), &poly_matrix(&[&["2", "-2", "-x-5"]]));
        assert_eq!(
            c.boundary(2).unwrap(),
            &poly_matrix(&[&["-3", "-x-5", "0"], &["-3", "0", "C(x+5,2)"], &["0", "-2", "-x-4"]])
        );
        assert_eq!(
            c.boundary(3).unwrap(),
            &poly_matrix(&[&["-C(x+5,3)"], &["C(x+4,2)"], &["-x-3"]])
        );
        assert_eq!(c.boundary(3).unwrap()[(0, 0)], affine_binom(XSign::Minus, -3, 3));
    }

    #[test]
    fn rank_one_case() {
        for m in -5..6 {
            let c = build_integer_complex(&WeightVector::int_ones(m, 1)).unwrap();
            assert_eq!(c.boundary(1).unwrap(), &Matrix::from_i64(&[&[m + 1]]));
        }
        let c = build_integer_complex(&WeightVector::from_ints(&[5, 0]).unwrap()).unwrap();
        assert_eq!(c.boundary(1).unwrap(), &Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn degenerate_d0() {
        let c = build_complex(&WeightVector::new(Weight::x(), vec![])).unwrap();
        assert_eq!(c.chain().degrees(), 0..=0);
        assert_eq!(c.rank(0), 1);
        assert_eq!(c.basis(0), &[Composition::new(vec![0])]);
        assert!(c.chain().boundaries().is_empty());
    }

    #[test]
    fn specialization_and_reduction() {
        let top = build_complex(&WeightVector::affine_ones(XSign::Plus, 0, 3)).unwrap();
        let s = top.specialize(2);
        assert_eq!(s.boundary(1).unwrap(), &Matrix::from_i64(&[&[2, -2, 3]]));
        assert_eq!(s.weights().w0(), Weight::Int(2));
        let r = s.reduce_mod(2).unwrap();
        assert_eq!(
            r.boundary(1)
                .unwrap()
                .entries()
                .iter()
                .map(|e| e.value())
                .collect::<Vec<_>>(),
            vec![0, 0, 1]
        );
        assert!(matches!(s.reduce_mod(4), Err(Error::NotPrime(4))));
        let bottom = build_complex(&WeightVector::affine_ones(XSign::Minus, -6, 3)).unwrap();
        assert_eq!(
            bottom.specialize(0).boundary(1).unwrap(),
            &Matrix::from_i64(&[&[2, -2, -5]])
        );
        let c = build_integer_complex(&WeightVector::int_ones(5, 1)).unwrap();
        assert!(c.reduce_mod(3).unwrap().boundary(1).unwrap().is_zero());
    }

    #[test]
    fn symbolic_weights_are_rejected_for_integer_builds() {
        assert!(build_integer_complex(&WeightVector::affine_ones(XSign::Plus, 0, 2)).is_err());
    }

    #[test]
    fn json_shape() {
        let c = build_complex(&WeightVector::affine_ones(XSign::Minus, -2, 1)).unwrap();
        let j = c.to_json();
        assert_eq!(j["weights"]["w0"], "-x-2");
        assert_eq!(j["bases"][1]["basis"], json!([[1]]));
        assert_eq!(j["differentials"][0]["matrix"]["ring"], "IVPoly");
    }

    fn weight_strategy() -> impl Strategy<Value = WeightVector> {
        (0usize..6).prop_flat_map(|d| {
            let w0 = prop_oneof![
                Just(Weight::x()),
                Just(Weight::Affine {
                    sign: XSign::Minus,
                    shift: -2 * d as i64
                }),
                (-10i64..=10).prop_map(Weight::Int),
            ];
            (w0, proptest::collection::vec(0u32..=5, d)).prop_map(|(w0, tail)| WeightVector::new(w0, tail))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ranks_are_binomial_and_square_zero(w in weight_strategy()) {
            let c = build_complex(&w).unwrap();
            let d = w.d() as i64;
            for k in 0..=d {
                prop_assert_eq!(BigInt::from(c.rank(k)), crate::ivpoly::int_binom_i64(d, k));
            }
        }

        #[test]
        fn specialize_commutes_with_build(w in weight_strategy(), m in -6i64..6) {
            let sym = build_complex(&w).unwrap().specialize(m);
            let direct = build_integer_complex(&w.specialize(m)).unwrap();
            prop_assert_eq!(sym, direct);
        }
    }
}
