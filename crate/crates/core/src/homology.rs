//! Homology of bounded complexes of free modules over `Z`, `Q` and `F_p`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank_over_field, rank_over_q, smith_normal_form, AbelianGroup, SmithDecomposition};
use crate::ring::{check_prime, Field, Fp};

/// A value stored per degree in a [`DegreeTable`].
pub trait TableValue: Clone + PartialEq + std::fmt::Debug {
    fn is_trivial(&self) -> bool;
    fn to_json(&self) -> Value;
    /// Cells for the `free_rank,torsion` (groups) or `dimension` (fields) CSV columns.
    fn csv_cells(&self) -> Vec<String>;
    fn csv_header() -> &'static str;
    fn render(&self) -> String;
    fn latex(&self) -> String;
}

impl TableValue for AbelianGroup {
    fn is_trivial(&self) -> bool {
        AbelianGroup::is_trivial(self)
    }
    fn to_json(&self) -> Value {
        AbelianGroup::to_json(self)
    }
    fn csv_cells(&self) -> Vec<String> {
        let torsion: Vec<String> = self.invariant_factors().iter().map(BigInt::to_string).collect();
        vec![self.free_rank().to_string(), torsion.join(";")]
    }
    fn csv_header() -> &'static str {
        "free_rank,torsion"
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn latex(&self) -> String {
        if AbelianGroup::is_trivial(self) {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("\\mathbb{Z}".to_string()),
            r => parts.push(format!("\\mathbb{{Z}}^{{{r}}}")),
        }
        parts.extend(self.invariant_factors().iter().map(|d| format!("\\mathbb{{Z}}/{d}")));
        parts.join(" \\oplus ")
    }
}

impl TableValue for usize {
    fn is_trivial(&self) -> bool {
        *self == 0
    }
    fn to_json(&self) -> Value {
        json!(self)
    }
    fn csv_cells(&self) -> Vec<String> {
        vec![self.to_string()]
    }
    fn csv_header() -> &'static str {
        "dimension"
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn latex(&self) -> String {
        self.to_string()
    }
}

/// Values indexed by degree; degrees that are absent are trivial.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeTable<V> {
    entries: BTreeMap<i64, V>,
}

impl<V: TableValue> DegreeTable<V> {
    pub fn new(entries: BTreeMap<i64, V>) -> Self {
        DegreeTable { entries }
    }

    pub fn get(&self, k: i64) -> Option<&V> {
        self.entries.get(&k)
    }

    pub fn entries(&self) -> &BTreeMap<i64, V> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &V)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Degrees holding a nontrivial value.
    pub fn support(&self) -> Vec<i64> {
        self.iter().filter(|(_, v)| !v.is_trivial()).map(|(k, _)| k).collect()
    }

    /// Reindexes by `k ↦ f(k)`.
    pub fn reindex(&self, f: impl Fn(i64) -> i64) -> Self {
        DegreeTable {
            entries: self.entries.iter().map(|(&k, v)| (f(k), v.clone())).collect(),
        }
    }

    /// Equal after discarding trivial entries.
    pub fn same_nontrivial(&self, other: &Self) -> bool {
        let strip = |t: &Self| -> Vec<(i64, V)> {
            t.iter()
                .filter(|(_, v)| !v.is_trivial())
                .map(|(k, v)| (k, v.clone()))
                .collect()
        };
        strip(self) == strip(other)
    }

    /// `[{"degree": k, "group"|"dimension": ...}, ...]` under the given key.
    pub fn to_json_with(&self, degree_key: &str, value_key: &str) -> Value {
        Value::Array(
            self.iter()
                .map(|(k, v)| {
                    let mut o = serde_json::Map::new();
                    o.insert(degree_key.into(), json!(k));
                    o.insert(value_key.into(), v.to_json());
                    Value::Object(o)
                })
                .collect(),
        )
    }

    /// Header line plus one line per degree.
    pub fn to_csv(&self, degree_key: &str) -> String {
        let mut out = format!("{degree_key},{}\n", V::csv_header());
        for (k, v) in self.iter() {
            let _ = writeln!(out, "{k},{}", v.csv_cells().join(","));
        }
        out
    }

    /// Two aligned columns.
    pub fn to_text(&self, degree_label: &str) -> String {
        let cells: Vec<(String, String)> = self.iter().map(|(k, v)| (k.to_string(), v.render())).collect();
        let w = cells
            .iter()
            .map(|(k, _)| k.len())
            .chain([degree_label.len()])
            .max()
            .unwrap_or(1);
        let mut out = format!("{degree_label:>w$} | value\n");
        for (k, v) in cells {
            let _ = writeln!(out, "{k:>w$} | {v}");
        }
        out
    }

    /// A two-column `tabular` environment.
    pub fn to_latex(&self, degree_label: &str) -> String {
        let mut out = String::from("\\begin{tabular}{r|l}\n");
        let _ = writeln!(out, "${degree_label}$ & value \\\\ \\hline");
        for (k, v) in self.iter() {
            let _ = writeln!(out, "{k} & ${}$ \\\\", v.latex());
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

pub type HomologyTable = DegreeTable<AbelianGroup>;
pub type DimensionTable = DegreeTable<usize>;

/// Integral homology of one degree from the Smith forms of `∂_k` and the
/// restriction of `∂_{k+1}` to the kernel basis `V`-coordinates of `∂_k`.
fn homology_from_smith(c: &ChainComplex<BigInt>, k: i64, out_snf: &SmithDecomposition) -> Result<AbelianGroup> {
    let n = c.rank(k);
    let r = out_snf.rank();
    let incoming = c.boundary_or_zero(k + 1);
    let w = out_snf.v_inv.mul(&incoming)?;
    let image_rows: Vec<usize> = (0..r).collect();
    if !w.select(&image_rows, &(0..w.cols()).collect::<Vec<_>>()).is_zero() {
        return Err(Error::MalformedComplex { degree: k + 1 });
    }
    let kernel_rows: Vec<usize> = (r..n).collect();
    let restricted = w.select(&kernel_rows, &(0..w.cols()).collect::<Vec<_>>());
    let snf = smith_normal_form(&restricted);
    let free = (n - r) - snf.rank();
    Ok(AbelianGroup::from_smith_diagonal(free, &snf.diagonal()))
}

/// `H_k(C) = ker ∂_k / im ∂_{k+1}` in invariant-factor form.
pub fn homology_z(c: &ChainComplex<BigInt>, k: i64) -> Result<AbelianGroup> {
    homology_from_smith(c, k, &smith_normal_form(&c.boundary_or_zero(k)))
}

/// Integral homology in every degree of the support, one Smith form per differential.
pub fn homology_table_z(c: &ChainComplex<BigInt>) -> Result<HomologyTable> {
    let mut entries = BTreeMap::new();
    for k in c.degrees() {
        let snf = smith_normal_form(&c.boundary_or_zero(k));
        entries.insert(k, homology_from_smith(c, k, &snf)?);
    }
    Ok(DegreeTable::new(entries))
}

/// `dim H_k = dim C_k - rank ∂_k - rank ∂_{k+1}` over a field.
pub fn homology_field<F: Field>(c: &ChainComplex<F>, k: i64) -> usize {
    let out = rank_over_field(&c.boundary_or_zero(k));
    let inc = rank_over_field(&c.boundary_or_zero(k + 1));
    c.rank(k) - out - inc
}

/// Field homology dimensions in every degree of the support.
pub fn homology_table_field<F: Field>(c: &ChainComplex<F>) -> DimensionTable {
    let ranks: BTreeMap<i64, usize> = (c.lowest()..=c.highest() + 1)
        .map(|k| (k, rank_over_field(&c.boundary_or_zero(k))))
        .collect();
    let rank = |k: i64| ranks.get(&k).copied().unwrap_or(0);
    DegreeTable::new(c.degrees().map(|k| (k, c.rank(k) - rank(k) - rank(k + 1))).collect())
}

/// Homology dimensions of `C ⊗ F_p`.
pub fn homology_table_mod_p(c: &ChainComplex<BigInt>, p: u64) -> Result<DimensionTable> {
    let p = check_prime(p)?;
    Ok(homology_table_field(&c.lift::<Fp>(&p)))
}

/// Homology dimensions of `C ⊗ Q`.
pub fn homology_table_q(c: &ChainComplex<BigInt>) -> DimensionTable {
    homology_table_field(&c.lift::<BigRational>(&()))
}

/// `true` when `C ⊗ Q` is exact.
pub fn is_exact_over_q(c: &ChainComplex<BigInt>) -> bool {
    c.degrees()
        .all(|k| c.rank(k) == rank_over_q(&c.boundary_or_zero(k)) + rank_over_q(&c.boundary_or_zero(k + 1)))
}

/// Universal-coefficient prediction of `dim H_k(C ⊗ F_p)` from integral homology.
pub fn uct_prediction(table: &HomologyTable, k: i64, p: u64) -> usize {
    let here = table.get(k);
    let below = table.get(k - 1);
    here.map_or(0, |g| g.free_rank() + g.p_divisible_factors(p)) + below.map_or(0, |g| g.p_divisible_factors(p))
}

/// Degrees where the universal-coefficient prediction disagrees with the
/// directly computed `F_p` homology.
pub fn uct_mismatches(c: &ChainComplex<BigInt>, p: u64) -> Result<Vec<i64>> {
    let z = homology_table_z(c)?;
    let f = homology_table_mod_p(c, p)?;
    Ok(c.degrees()
        .filter(|&k| f.get(k).copied().unwrap_or(0) != uct_prediction(&z, k, p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, build_integer_complex, WeightVector};
    use crate::ivpoly::XSign;
    use crate::linalg::Matrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c_m1(m: i64) -> ChainComplex<BigInt> {
        build_integer_complex(&WeightVector::int_ones(m, 1))
            .unwrap()
            .into_chain()
    }

    /// Torsion read directly from the Smith form of `∂_{k+1}` (valid because
    /// the image of a map between free modules has the same invariant factors
    /// whether or not it is first restricted to `ker ∂_k`).
    fn oracle(c: &ChainComplex<BigInt>, k: i64) -> AbelianGroup {
        let out = smith_normal_form(&c.boundary_or_zero(k)).rank();
        let inc = smith_normal_form(&c.boundary_or_zero(k + 1));
        AbelianGroup::from_smith_diagonal(c.rank(k) - out - inc.rank(), &inc.diagonal())
    }

    #[test]
    fn rank_one_complex() {
        for m in [0i64, 1, 4, 9, -3] {
            let c = c_m1(m);
            assert_eq!(homology_z(&c, 0).unwrap(), AbelianGroup::cyclic(m + 1));
            assert!(homology_z(&c, 1).unwrap().is_trivial());
        }
        let zero = c_m1(-1);
        assert_eq!(homology_z(&zero, 0).unwrap(), AbelianGroup::free(1));
        assert_eq!(homology_z(&zero, 1).unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn zero_differentials_give_free_homology() {
        let c = ChainComplex::new(&(), 0, vec![2, 3], vec![Matrix::zeros(2, 3, &())]).unwrap();
        let t = homology_table_z(&c).unwrap();
        assert_eq!(t.get(0), Some(&AbelianGroup::free(2)));
        assert_eq!(t.get(1), Some(&AbelianGroup::free(3)));
        assert!(!is_exact_over_q(&c));
        assert_eq!(homology_field(&c.lift::<Fp>(&3), 1), 3);
    }

    #[test]
    fn malformed_complexes_are_detected() {
        let c = ChainComplex::new(
            &(),
            0,
            vec![1, 1, 1],
            vec![Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]])],
        )
        .unwrap();
        assert_eq!(homology_z(&c, 1), Err(Error::MalformedComplex { degree: 2 }));
    }

    #[test]
    fn exactness_over_q() {
        assert!(is_exact_over_q(&c_m1(4)));
        let c = build_complex(&WeightVector::affine_ones(XSign::Minus, -4, 2))
            .unwrap()
            .specialize(3);
        assert_eq!(c.weights().w0().eval(0), -7);
        assert!(is_exact_over_q(c.chain()));
        assert!(homology_table_q(c.chain()).support().is_empty());
    }

    #[test]
    fn example_complexes_against_oracle_and_uct() {
        for d in 1..=5usize {
            for w0 in -12i64..=6 {
                let c = build_integer_complex(&WeightVector::int_ones(w0, d))
                    .unwrap()
                    .into_chain();
                let table = homology_table_z(&c).unwrap();
                for k in c.degrees() {
                    assert_eq!(table.get(k), Some(&oracle(&c, k)), "d={d} w0={w0} k={k}");
                }
                let euler: i64 = table
                    .iter()
                    .map(|(k, g)| if k % 2 == 0 { 1 } else { -1 } * g.free_rank() as i64)
                    .sum();
                assert_eq!(euler, c.euler_characteristic());
                for p in [2, 3, 5, 7] {
                    assert!(uct_mismatches(&c, p).unwrap().is_empty(), "d={d} w0={w0} p={p}");
                }
            }
        }
    }

    #[test]
    fn mod_p_h0_matches_smith_factors() {
        let c = build_complex(&WeightVector::affine_ones(XSign::Plus, 0, 3))
            .unwrap()
            .specialize(4);
        let h0 = homology_z(c.chain(), 0).unwrap();
        for p in [2u64, 3, 5, 7, 11] {
            let dim = homology_field(&c.chain().lift::<Fp>(&p), 0);
            assert_eq!(dim, h0.free_rank() + h0.p_divisible_factors(p));
        }
    }

    #[test]
    fn table_rendering() {
        let t = homology_table_z(&c_m1(5)).unwrap();
        assert_eq!(t.to_csv("degree"), "degree,free_rank,torsion\n0,0,6\n1,0,\n");
        assert_eq!(
            t.to_json_with("degree", "group"),
            json!([{"degree": 0, "group": {"free_rank": 0, "torsion": [6]}}, {"degree": 1, "group": {"free_rank": 0, "torsion": []}}])
        );
        assert!(t.to_text("k").contains("0 | Z/6"));
        assert!(t.to_latex("i").contains("\\mathbb{Z}/6"));
        assert_eq!(t.support(), vec![0]);
        assert_eq!(t.reindex(|k| 10 - k).support(), vec![10]);
    }

    /// Random unimodular matrix as a product of elementary operations.
    fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix<BigInt> {
        let mut m = Matrix::identity(n, &());
        if n < 2 {
            return if rng.gen_bool(0.5) { m } else { m.neg() };
        }
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let f = BigInt::from(rng.gen_range(-3i64..=3));
            for col in 0..n {
                let v = m.get(i, col) + &f * m.get(j, col);
                m.set(i, col, v);
            }
        }
        m
    }

    /// Inverse of a unimodular matrix as `V·S·U`, where `U·m·V = S = ±I`.
    fn inverse(m: &Matrix<BigInt>) -> Matrix<BigInt> {
        let s = smith_normal_form(m);
        s.v.mul(&s.s).unwrap().mul(&s.u).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn invariant_under_unimodular_change_of_basis(d in 1usize..5, w0 in -10i64..6, seed in any::<u64>()) {
            let c = build_integer_complex(&WeightVector::int_ones(w0, d)).unwrap().into_chain();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let changes: Vec<Matrix<BigInt>> = (0..=d).map(|k| unimodular(c.rank(k as i64), &mut rng)).collect();
            let boundaries: Vec<Matrix<BigInt>> = (1..=d)
                .map(|k| {
                    inverse(&changes[k - 1])
                        .mul(c.boundary(k as i64).unwrap()).unwrap()
                        .mul(&changes[k]).unwrap()
                })
                .collect();
            let ranks = (0..=d).map(|k| c.rank(k as i64)).collect();
            let conj = ChainComplex::new(&(), 0, ranks, boundaries).unwrap();
            prop_assert!(conj.is_square_zero());
            prop_assert_eq!(homology_table_z(&conj).unwrap(), homology_table_z(&c).unwrap());
        }
    }
}
