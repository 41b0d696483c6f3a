//! Stable cohomology tables of ribbon and two-column Schur functors, computed
//! as homology of arithmetic complexes.
//!
//! Diagrams are drawn in English notation: row `i` (from the top) of `λ/μ`
//! occupies columns `μ_i + 1 ..= λ_i`. The composition of a ribbon lists its
//! column heights from the leftmost occupied column to the rightmost.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::complex::{build_integer_complex, ChainComplex, WeightVector};
use crate::error::{Error, Result};
use crate::homology::{homology_table_mod_p, homology_table_z, DegreeTable, DimensionTable, HomologyTable};
use crate::iso::{alpha_mod_p, verify_chain_map_mod_p};
use crate::linalg::{rank_over_field, AbelianGroup, Matrix};
use crate::report::{Report, Witness};
use crate::ring::{check_prime, Fp};

/// Cohomology indexed by cohomological degree `i`.
pub type CohomologyTable = HomologyTable;
/// Cohomology dimensions over a prime field, indexed by `i`.
pub type CohomologyDimensions = DimensionTable;

/// A skew diagram `λ/μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    lambda: Vec<u32>,
    mu: Vec<u32>,
}

impl SkewShape {
    /// Validates that both are partitions and `μ ⊆ λ`; trailing zeros are dropped.
    pub fn new(lambda: Vec<u32>, mu: Vec<u32>) -> Result<Self> {
        let trim = |mut v: Vec<u32>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let (lambda, mu) = (trim(lambda), trim(mu));
        for (name, p) in [("λ", &lambda), ("μ", &mu)] {
            if p.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidShape(format!("{name} = {p:?} is not weakly decreasing")));
            }
        }
        if mu.len() > lambda.len() || mu.iter().zip(&lambda).any(|(m, l)| m > l) {
            return Err(Error::InvalidShape(format!(
                "μ = {mu:?} is not contained in λ = {lambda:?}"
            )));
        }
        Ok(SkewShape { lambda, mu })
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    fn lam_at(&self, i: usize) -> u32 {
        self.lambda.get(i).copied().unwrap_or(0)
    }

    fn mu_at(&self, i: usize) -> u32 {
        self.mu.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes `|λ| - |μ|`.
    pub fn size(&self) -> u64 {
        self.lambda.iter().map(|&x| x as u64).sum::<u64>() - self.mu.iter().map(|&x| x as u64).sum::<u64>()
    }

    /// Boxes as `(row, column)`, both 0-based.
    pub fn cells(&self) -> BTreeSet<(usize, usize)> {
        (0..self.lambda.len())
            .flat_map(|i| (self.mu_at(i) as usize..self.lam_at(i) as usize).map(move |j| (i, j)))
            .collect()
    }
}

/// Nonempty, free of 2×2 squares, and `μ_i < λ_{i+1}` whenever `λ_{i+1} > 0`.
pub fn validate_ribbon(shape: &SkewShape) -> bool {
    let cells = shape.cells();
    if cells.is_empty() {
        return false;
    }
    let square = cells
        .iter()
        .any(|&(i, j)| cells.contains(&(i + 1, j)) && cells.contains(&(i, j + 1)) && cells.contains(&(i + 1, j + 1)));
    let connected = (0..shape.lambda.len()).all(|i| shape.lam_at(i + 1) == 0 || shape.mu_at(i) < shape.lam_at(i + 1));
    !square && connected
}

/// Column heights of a ribbon, leftmost column first.
pub fn ribbon_columns(shape: &SkewShape) -> Result<Vec<u32>> {
    if !validate_ribbon(shape) {
        return Err(Error::InvalidShape(format!(
            "{:?}/{:?} is not a ribbon",
            shape.lambda, shape.mu
        )));
    }
    let mut heights: BTreeMap<usize, u32> = BTreeMap::new();
    for (_, j) in shape.cells() {
        *heights.entry(j).or_default() += 1;
    }
    Ok(heights.into_values().collect())
}

/// Integer weights `(w_0, ..., w_d)` of a ribbon composition.
pub fn ribbon_weights(w: &[u32]) -> Result<WeightVector> {
    match w.split_first() {
        Some((&w0, tail)) if w0 >= 1 && tail.iter().all(|&x| x >= 1) => {
            Ok(WeightVector::new(crate::complex::Weight::Int(w0 as i64), tail.to_vec()))
        }
        _ => Err(Error::InvalidWeights(format!(
            "column heights must be a nonempty list of positive integers, got {w:?}"
        ))),
    }
}

fn ribbon_complex(w: &[u32]) -> Result<(ChainComplex<BigInt>, i64)> {
    let weights = ribbon_weights(w)?;
    let size: i64 = w.iter().map(|&x| x as i64).sum();
    Ok((build_integer_complex(&weights)?.into_chain(), size))
}

/// `H^i = H_{|w|-i}(C(w) ⊗ Z)` for a ribbon with column heights `w`.
pub fn stable_cohomology_ribbon(w: &[u32]) -> Result<CohomologyTable> {
    let (c, size) = ribbon_complex(w)?;
    Ok(homology_table_z(&c)?.reindex(|k| size - k))
}

/// `dim H^i = dim H_{|w|-i}(C(w) ⊗ F_p)`.
pub fn stable_cohomology_ribbon_mod_p(w: &[u32], p: u64) -> Result<CohomologyDimensions> {
    let (c, size) = ribbon_complex(w)?;
    Ok(homology_table_mod_p(&c, p)?.reindex(|k| size - k))
}

/// A partition whose conjugate is `(m, d)`: columns of lengths `m ≥ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoColumnShape {
    m: usize,
    d: usize,
}

impl TwoColumnShape {
    pub fn new(m: usize, d: usize) -> Result<Self> {
        if m < d {
            return Err(Error::InvalidShape(format!(
                "column lengths need m ≥ d, got m={m}, d={d}"
            )));
        }
        Ok(TwoColumnShape { m, d })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `(2^d, 1^{m-d})`.
    pub fn partition(&self) -> Vec<u32> {
        let mut p = vec![2; self.d];
        p.extend(std::iter::repeat_n(1, self.m - self.d));
        p
    }

    /// Column heights `(m - d + 1, 1^d)` of the hook `(d + 1, 1^{m-d})`.
    pub fn hook_composition(&self) -> Vec<u32> {
        let mut w = vec![(self.m - self.d + 1) as u32];
        w.extend(std::iter::repeat_n(1, self.d));
        w
    }

    /// `C(-m-d-1, 1^d) ⊗ Z`.
    pub fn complex(&self) -> ChainComplex<BigInt> {
        let w0 = -(self.m as i64) - self.d as i64 - 1;
        build_integer_complex(&WeightVector::int_ones(w0, self.d))
            .expect("integer weights")
            .into_chain()
    }

    /// The dual of [`Self::complex`] shifted by `-d`.
    pub fn dual_complex(&self) -> ChainComplex<BigInt> {
        self.complex().dual().shift(-(self.d as i64))
    }
}

/// A cohomology table with the consistency check between its two computations.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckedTable<V> {
    pub table: DegreeTable<V>,
    pub cross_check: Report,
}

fn table_report<V: crate::homology::TableValue>(claim: &str, lhs: &DegreeTable<V>, rhs: &DegreeTable<V>) -> Report {
    let degrees: BTreeSet<i64> = lhs.entries().keys().chain(rhs.entries().keys()).copied().collect();
    for i in degrees {
        let (l, r) = (lhs.get(i), rhs.get(i));
        let trivial = |v: Option<&V>| v.is_none_or(|v| v.is_trivial());
        let same = match (l, r) {
            (Some(a), Some(b)) => a == b,
            _ => trivial(l) && trivial(r),
        };
        if !same {
            let show = |v: Option<&V>| v.map_or("0".to_string(), |v| v.render());
            return Report::fail(
                claim,
                Some(i),
                Some(Witness {
                    row: 0,
                    col: 0,
                    lhs: show(l),
                    rhs: show(r),
                }),
            );
        }
    }
    Report::pass(claim, None)
}

/// `H^i = H_{d+m-i}(Č[-d] ⊗ Z)` for `Č` the dual of `C(-m-d-1, 1^d)`,
/// checked against `H_{i-m-1}(C(-m-d-1, 1^d) ⊗ Z)`.
pub fn stable_cohomology_two_column(shape: &TwoColumnShape) -> Result<CheckedTable<AbelianGroup>> {
    if shape.d == 0 {
        return Err(Error::InvalidShape(
            "the integral two-column formula needs d ≥ 1".into(),
        ));
    }
    let (m, d) = (shape.m as i64, shape.d as i64);
    let table = homology_table_z(&shape.dual_complex())?.reindex(|k| d + m - k);
    let direct = homology_table_z(&shape.complex())?.reindex(|k| k + m + 1);
    let cross_check = table_report("two-column: dual form agrees with direct form", &table, &direct);
    Ok(CheckedTable { table, cross_check })
}

/// `dim H^i = dim H_{d+m-i}(Č[-d] ⊗ F_p)`, checked against `dim H_{i-m}(C(-m-d-1, 1^d) ⊗ F_p)`.
pub fn stable_cohomology_two_column_mod_p(shape: &TwoColumnShape, p: u64) -> Result<CheckedTable<usize>> {
    let (m, d) = (shape.m as i64, shape.d as i64);
    let table = homology_table_mod_p(&shape.dual_complex(), p)?.reindex(|k| d + m - k);
    let direct = homology_table_mod_p(&shape.complex(), p)?.reindex(|k| k + m);
    let cross_check = table_report("two-column mod p: dual form agrees with direct form", &table, &direct);
    Ok(CheckedTable { table, cross_check })
}

/// Two-column cohomology at `i` against hook cohomology at `2m + 2 - i`, over `Z`.
pub fn verify_identification_z(shape: &TwoColumnShape) -> Result<Vec<Report>> {
    let two = stable_cohomology_two_column(shape)?;
    let m = shape.m as i64;
    let hook = stable_cohomology_ribbon(&shape.hook_composition())?.reindex(|j| 2 * m + 2 - j);
    Ok(vec![
        two.cross_check,
        table_report(
            "two-column cohomology equals hook cohomology at 2m+2-i",
            &two.table,
            &hook,
        ),
    ])
}

/// Two-column dimensions at `i` against hook dimensions at `2m + 1 - i` over `F_p`,
/// plus the same equality transported through `α` specialized at `x = m - d + 1`.
pub fn verify_identification_field(shape: &TwoColumnShape, p: u64) -> Result<Vec<Report>> {
    let p = check_prime(p)?;
    let (m, d) = (shape.m as i64, shape.d);
    let two = stable_cohomology_two_column_mod_p(shape, p)?;
    let hook = stable_cohomology_ribbon_mod_p(&shape.hook_composition(), p)?.reindex(|j| 2 * m + 1 - j);
    let mut out = vec![
        two.cross_check,
        table_report(
            "two-column dimensions equal hook dimensions at 2m+1-i",
            &two.table,
            &hook,
        ),
    ];

    let x = m - d as i64 + 1;
    let chain_map = verify_chain_map_mod_p(d, x, p)?;
    out.push(Report::check(
        format!("α at x = {x} is a chain map mod {p}"),
        None,
        chain_map.iter().all(|r| r.pass),
    ));
    let (alpha, invertible) = alpha_mod_p(d, p)?;
    out.push(Report::check(
        format!("α has unit determinants mod {p}"),
        None,
        invertible,
    ));

    let src = build_integer_complex(&WeightVector::int_ones(x, d))?.reduce_mod(p)?;
    let dst = shape.complex().lift::<Fp>(&p);
    let mut transported = Report::pass("ranks of ∂ are transported by α", None);
    for k in 1..=d as i64 {
        let ku = k as usize;
        let a = src.boundary(k).expect("degree in range");
        let b = dst.boundary(k).expect("degree in range");
        let moved: Matrix<Fp> = alpha[ku - 1].mul(a)?;
        let ranks = (rank_over_field(a), rank_over_field(&moved), rank_over_field(b));
        if ranks.0 != ranks.1 || ranks.1 != ranks.2 {
            transported = Report::fail(
                "ranks of ∂ are transported by α",
                Some(k),
                Some(Witness {
                    row: 0,
                    col: 0,
                    lhs: format!("rank {} / {}", ranks.0, ranks.1),
                    rhs: format!("rank {}", ranks.2),
                }),
            );
            break;
        }
    }
    out.push(transported);
    Ok(out)
}

/// `[{"i": i, "group": ...}, ...]`.
pub fn cohomology_json(table: &CohomologyTable) -> Value {
    table.to_json_with("i", "group")
}

/// `[{"i": i, "dimension": ...}, ...]`.
pub fn dimensions_json(table: &CohomologyDimensions) -> Value {
    table.to_json_with("i", "dimension")
}

/// JSON for a checked integral table.
pub fn checked_json(t: &CheckedTable<AbelianGroup>) -> Value {
    json!({"table": cohomology_json(&t.table), "cross_check": t.cross_check.to_json()})
}
