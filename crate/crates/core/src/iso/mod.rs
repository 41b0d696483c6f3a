//! The isomorphism `α: C(x, 1^d) → C(-x-2d, 1^d)` and checks of its structure.
//!
//! Matrices use the same layout as differentials: rows index the codomain
//! basis, columns the domain basis, both in the standard composition order.

mod golden;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::complex::{build_complex, build_integer_complex, complex_bases, cone_decompose, Composition, WeightVector};
use crate::error::{Error, Result};
use crate::ivpoly::{int_binom_i64, IVPoly, XSign};
use crate::linalg::{det_int, Matrix};
use crate::report::Report;
use crate::ring::{check_prime, Fp, Ring};

pub use golden::{golden_alpha, golden_check, golden_differentials, GOLDEN_D};

/// Signs `(a, b, c)` in `a·(-1)^d·φ_x - φ_{-x-2d}·α^{d-1} = b·∂γ + c·γ∂`.
pub const HOMOTOPY_SIGNS: (i64, i64, i64) = (1, -1, -1);

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Coefficient of `f_μ` in `α(f_λ)` for compositions of `d - t + 1` into `t` parts.
pub fn alpha_entry(d: usize, lam: &Composition, mu: &Composition) -> Result<BigInt> {
    let t = lam.len();
    if t == 0 || mu.len() != t || t > d + 1 {
        return Err(Error::InvalidComposition(format!(
            "α needs two compositions with the same number 1..={} of parts, got {lam} and {mu}",
            d + 1
        )));
    }
    let total = (d + 1 - t) as u64;
    if lam.total() != total || mu.total() != total {
        return Err(Error::InvalidComposition(format!(
            "{lam} and {mu} must both sum to {total}"
        )));
    }
    let mut acc = BigInt::from(sign_pow(d as i64 - mu.leading() as i64));
    let mut running = 0i64;
    for s in 0..t - 1 {
        if s > 0 {
            running += (lam.part(s) + mu.part(s)) as i64;
        }
        let base = running + 2 * s as i64;
        let f = int_binom_i64(base + mu.part(s + 1) as i64, base + lam.part(s + 1) as i64);
        if f.is_zero() {
            return Ok(f);
        }
        acc *= f;
    }
    Ok(acc)
}

/// `α_k` for `C(x, 1^d)`: a square integer matrix of size `binom(d, k)`.
pub fn alpha_map(d: usize, k: i64) -> Result<Matrix<BigInt>> {
    if k < 0 || k > d as i64 {
        return Err(Error::OutOfRange(format!("degree {k} outside 0..={d}")));
    }
    let basis = &complex_bases(d)[k as usize];
    let n = basis.len();
    let mut m = Matrix::zeros(n, n, &());
    for (col, lam) in basis.iter().enumerate() {
        for (row, mu) in basis.iter().enumerate() {
            m.set(row, col, alpha_entry(d, lam, mu)?);
        }
    }
    Ok(m)
}

/// All of `α_0, ..., α_d`.
pub fn alpha_maps(d: usize) -> Vec<Matrix<BigInt>> {
    (0..=d as i64)
        .map(|k| alpha_map(d, k).expect("degree in range"))
        .collect()
}

fn lift_poly(m: &Matrix<BigInt>) -> Matrix<IVPoly> {
    m.lift::<IVPoly>(&())
}

/// Weights `(x, 1^d)` and `(-x-2d, 1^d)`.
pub fn source_target_weights(d: usize) -> (WeightVector, WeightVector) {
    (
        WeightVector::affine_ones(XSign::Plus, 0, d),
        WeightVector::affine_ones(XSign::Minus, -2 * d as i64, d),
    )
}

/// `α_{k-1} ∂^x_k = ∂^{-x-2d}_k α_k` over the polynomial ring, one report per degree.
pub fn verify_chain_map(d: usize) -> Vec<Report> {
    let (ws, wt) = source_target_weights(d);
    let src = build_complex(&ws).expect("source complex");
    let dst = build_complex(&wt).expect("target complex");
    let alpha: Vec<Matrix<IVPoly>> = alpha_maps(d).iter().map(lift_poly).collect();
    (1..=d as i64)
        .map(|k| {
            let ku = k as usize;
            let lhs = alpha[ku - 1].mul(src.boundary(k).unwrap()).expect("shapes agree");
            let rhs = dst.boundary(k).unwrap().mul(&alpha[ku]).expect("shapes agree");
            Report::compare("α is a chain map over R", Some(k), &lhs, &rhs)
        })
        .collect()
}

/// The chain-map identity after evaluating at `x = m`, checked over `Z`.
pub fn verify_chain_map_at(d: usize, m: i64) -> Vec<Report> {
    let (ws, wt) = source_target_weights(d);
    let src = build_integer_complex(&ws.specialize(m)).expect("source complex");
    let dst = build_integer_complex(&wt.specialize(m)).expect("target complex");
    let alpha = alpha_maps(d);
    (1..=d as i64)
        .map(|k| {
            let ku = k as usize;
            let lhs = alpha[ku - 1].mul(src.boundary(k).unwrap()).expect("shapes agree");
            let rhs = dst.boundary(k).unwrap().mul(&alpha[ku]).expect("shapes agree");
            Report::compare(format!("α is a chain map at x = {m}"), Some(k), &lhs, &rhs)
        })
        .collect()
}

/// The chain-map identity at `x = m` reduced modulo the prime `p`.
pub fn verify_chain_map_mod_p(d: usize, m: i64, p: u64) -> Result<Vec<Report>> {
    let p = check_prime(p)?;
    let (ws, wt) = source_target_weights(d);
    let src = build_integer_complex(&ws.specialize(m))?.reduce_mod(p)?;
    let dst = build_integer_complex(&wt.specialize(m))?.reduce_mod(p)?;
    let alpha: Vec<Matrix<Fp>> = alpha_maps(d).iter().map(|a| a.lift(&p)).collect();
    Ok((1..=d as i64)
        .map(|k| {
            let ku = k as usize;
            let lhs = alpha[ku - 1].mul(src.boundary(k).unwrap()).expect("shapes agree");
            let rhs = dst.boundary(k).unwrap().mul(&alpha[ku]).expect("shapes agree");
            Report::compare(format!("α is a chain map at x = {m} mod {p}"), Some(k), &lhs, &rhs)
        })
        .collect())
}

/// Upper triangularity, the diagonal `(-1)^{d-λ_t}`, and the support rule
/// `α_{λμ} ≠ 0 ⇒ μ_j ≥ λ_j (j < t)` (hence `μ ≽ λ`).
pub fn verify_triangular(d: usize) -> Vec<Report> {
    let bases = complex_bases(d);
    let mut out = Vec::new();
    for (k, basis) in bases.iter().enumerate() {
        let a = alpha_map(d, k as i64).expect("degree in range");
        let t = d + 1 - k;
        let mut tri = Report::pass("α is upper triangular", Some(k as i64));
        let mut diag = Report::pass("α has diagonal (-1)^(d-λ_t)", Some(k as i64));
        let mut support = Report::pass("α support forces μ_j ≥ λ_j for j < t", Some(k as i64));
        for (col, lam) in basis.iter().enumerate() {
            for (row, mu) in basis.iter().enumerate() {
                let e = a.get(row, col);
                if row == col {
                    let expected = BigInt::from(sign_pow(d as i64 - lam.leading() as i64));
                    if diag.pass && *e != expected {
                        diag = fail_at("α has diagonal (-1)^(d-λ_t)", k, row, col, e, &expected);
                    }
                } else if row > col && tri.pass && !e.is_zero() {
                    tri = fail_at("α is upper triangular", k, row, col, e, &BigInt::zero());
                }
                let dominated = (1..t).all(|j| mu.part(j) >= lam.part(j));
                if !e.is_zero() && support.pass && (!dominated || !mu.succeq(lam)) {
                    support = fail_at("α support forces μ_j ≥ λ_j for j < t", k, row, col, e, &BigInt::zero());
                }
            }
        }
        out.extend([tri, diag, support]);
    }
    out
}

fn fail_at(claim: &str, k: usize, row: usize, col: usize, lhs: &BigInt, rhs: &BigInt) -> Report {
    Report::fail(
        claim,
        Some(k as i64),
        Some(crate::report::Witness {
            row,
            col,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }),
    )
}

/// Positions of basis elements with leading part zero (`A`) and positive (`B`).
fn leading_split(basis: &[Composition]) -> (Vec<usize>, Vec<usize>) {
    (0..basis.len()).partition(|&i| basis[i].leading() == 0)
}

/// Block checks of `α^d` against `α^{d-1}` together with the off-diagonal blocks `γ_k`.
#[derive(Clone, Debug)]
pub struct BlockStructure {
    pub reports: Vec<Report>,
    /// `γ_k` for `k = 0..=d`, mapping the positive-leading part of `C_k` to the zero-leading part.
    pub gamma: Vec<Matrix<BigInt>>,
}

/// Checks `α^d_k = [[(-1)^d·I, γ_k], [0, α^{d-1}_{k-1}]]` in every degree (`d ≥ 1`).
pub fn verify_block_structure(d: usize) -> Result<BlockStructure> {
    if d == 0 {
        return Err(Error::InvalidParameter("block structure needs d ≥ 1".into()));
    }
    let bases = complex_bases(d);
    let mut reports = Vec::new();
    let mut gamma = Vec::new();
    let eps = sign_pow(d as i64);
    for (k, basis) in bases.iter().enumerate() {
        let k = k as i64;
        let a = alpha_map(d, k)?;
        let (sa, sb) = leading_split(basis);
        reports.push(Report::compare(
            "α block: top-left is (-1)^d·identity",
            Some(k),
            &a.select(&sa, &sa),
            &Matrix::identity(sa.len(), &()).scale_int(eps),
        ));
        reports.push(Report::compare(
            "α block: bottom-left vanishes",
            Some(k),
            &a.select(&sb, &sa),
            &Matrix::zeros(sb.len(), sa.len(), &()),
        ));
        let smaller = if k >= 1 {
            alpha_map(d - 1, k - 1)?
        } else {
            Matrix::zeros(0, 0, &())
        };
        reports.push(Report::compare(
            "α block: bottom-right is α^(d-1)",
            Some(k),
            &a.select(&sb, &sb),
            &smaller,
        ));
        gamma.push(a.select(&sa, &sb));
    }
    Ok(BlockStructure { reports, gamma })
}

/// Outcome of the homotopy check for one sign pattern.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyCheck {
    pub d: usize,
    pub signs: (i64, i64, i64),
    pub reports: Vec<Report>,
}

impl HomotopyCheck {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Checks `a·(-1)^d·φ_x - φ_{-x-2d}·α^{d-1} = b·∂γ + c·γ∂` in every degree,
/// optionally with `γ` replaced by zero.
pub fn homotopy_with(d: usize, signs: (i64, i64, i64), zero_gamma: bool) -> Result<HomotopyCheck> {
    if d == 0 {
        return Err(Error::InvalidParameter("homotopy needs d ≥ 1".into()));
    }
    let (ws, wt) = source_target_weights(d);
    let cone_x = cone_decompose(&build_complex(&ws)?)?;
    let cone_y = cone_decompose(&build_complex(&wt)?)?;
    let mut gamma: Vec<Matrix<IVPoly>> = verify_block_structure(d)?.gamma.iter().map(lift_poly).collect();
    if zero_gamma {
        gamma = gamma.iter().map(|g| Matrix::zeros(g.rows(), g.cols(), &())).collect();
    }
    let (a, b, c) = signs;
    let eps = sign_pow(d as i64);
    let sub = cone_x.sub().chain();
    let quot = cone_x.quot().chain();
    let mut reports = Vec::new();
    for j in 0..d as i64 {
        let ju = j as usize;
        let alpha_small = lift_poly(&alpha_map(d - 1, j)?);
        let lhs = cone_x
            .phi(j)
            .scale_int(a * eps)
            .sub(&cone_y.phi(j).mul(&alpha_small)?)?;
        let d_gamma = sub.boundary_or_zero(j + 1).mul(&gamma[ju + 1])?;
        let gamma_d = if j == 0 {
            Matrix::zeros(lhs.rows(), lhs.cols(), &())
        } else {
            gamma[ju].mul(&quot.boundary_or_zero(j))?
        };
        let rhs = d_gamma.scale_int(b).add(&gamma_d.scale_int(c))?;
        reports.push(Report::compare(
            "γ is a homotopy between the cone maps",
            Some(j),
            &lhs,
            &rhs,
        ));
    }
    Ok(HomotopyCheck { d, signs, reports })
}

/// Homotopy check with the frozen sign pattern [`HOMOTOPY_SIGNS`].
pub fn verify_homotopy(d: usize) -> Result<HomotopyCheck> {
    homotopy_with(d, HOMOTOPY_SIGNS, false)
}

/// All sign patterns `(a, b, c) ∈ {±1}^3` under which the homotopy identity holds at `d`.
pub fn homotopy_sign_search(d: usize) -> Result<Vec<(i64, i64, i64)>> {
    let mut found = Vec::new();
    for a in [1, -1] {
        for b in [1, -1] {
            for c in [1, -1] {
                if homotopy_with(d, (a, b, c), false)?.pass() {
                    found.push((a, b, c));
                }
            }
        }
    }
    Ok(found)
}

/// Determinants of every `α_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoCertificate {
    pub d: usize,
    pub determinants: Vec<BigInt>,
    pub pass: bool,
}

pub fn iso_certificate(d: usize) -> IsoCertificate {
    let determinants: Vec<BigInt> = alpha_maps(d).iter().map(|a| det_int(a).expect("α is square")).collect();
    let pass = determinants.iter().all(|x| x.abs().is_one());
    IsoCertificate { d, determinants, pass }
}

/// Matrices of `α` reduced mod `p`, with a check that each is invertible there.
pub fn alpha_mod_p(d: usize, p: u64) -> Result<(Vec<Matrix<Fp>>, bool)> {
    let p = check_prime(p)?;
    let cert = iso_certificate(d);
    let invertible = cert.determinants.iter().all(|x| !Fp::from_int(x, &p).is_zero_elem());
    Ok((alpha_maps(d).iter().map(|a| a.lift(&p)).collect(), invertible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;
    use proptest::prelude::*;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn small_t_closed_forms() {
        for d in 0..6usize {
            assert_eq!(
                alpha_entry(d, &comp(&[d as u32]), &comp(&[d as u32])).unwrap(),
                BigInt::one()
            );
        }
        let d = 5usize;
        let basis = &complex_bases(d)[d - 1];
        for lam in basis {
            for mu in basis {
                let expected =
                    sign_pow(d as i64 - mu.part(2) as i64) * int_binom_i64(mu.part(1) as i64, lam.part(1) as i64);
                assert_eq!(alpha_entry(d, lam, mu).unwrap(), expected);
            }
        }
    }

    #[test]
    fn entry_validation() {
        assert!(alpha_entry(3, &comp(&[1, 1]), &comp(&[0, 0, 2])).is_err());
        assert!(alpha_entry(3, &comp(&[1, 0]), &comp(&[1, 0])).is_err());
        assert!(alpha_map(3, 4).is_err());
    }

    #[test]
    fn worked_example_alpha() {
        assert_eq!(
            alpha_map(3, 2).unwrap(),
            Matrix::from_i64(&[&[-1, -2, -1], &[0, 1, 1], &[0, 0, -1]])
        );
        assert_eq!(
            alpha_map(3, 1).unwrap(),
            Matrix::from_i64(&[&[-1, 0, -1], &[0, -1, -3], &[0, 0, 1]])
        );
        assert_eq!(alpha_map(3, 3).unwrap(), Matrix::from_i64(&[&[1]]));
        assert_eq!(alpha_map(3, 0).unwrap(), Matrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn chain_map_small_d() {
        for d in 1..=4 {
            assert!(all_pass(&verify_chain_map(d)), "d={d}");
        }
        for m in [-7, 0, 3] {
            assert!(all_pass(&verify_chain_map_at(3, m)));
            assert!(all_pass(&verify_chain_map_mod_p(3, m, 5).unwrap()));
        }
    }

    #[test]
    fn triangular_and_certificate() {
        for d in 0..=6 {
            assert!(all_pass(&verify_triangular(d)), "d={d}");
            assert!(iso_certificate(d).pass);
        }
        assert_eq!(iso_certificate(0).determinants, vec![BigInt::one()]);
        assert_eq!(alpha_map(0, 0).unwrap(), Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn block_structure() {
        for d in 1..=5 {
            assert!(all_pass(&verify_block_structure(d).unwrap().reports), "d={d}");
        }
        let bs = verify_block_structure(3).unwrap();
        assert_eq!(bs.gamma.len(), 4);
        assert_eq!(bs.gamma[2], Matrix::from_i64(&[&[-2, -1]]));
    }

    #[test]
    fn homotopy_sign_resolution() {
        assert_eq!(homotopy_sign_search(2).unwrap(), vec![HOMOTOPY_SIGNS]);
        for d in 2..=4 {
            assert!(verify_homotopy(d).unwrap().pass(), "d={d}");
        }
    }

    #[test]
    fn homotopy_negative_control() {
        for d in [3, 5] {
            assert!(!homotopy_with(d, HOMOTOPY_SIGNS, true).unwrap().pass());
        }
    }

    #[test]
    fn mod_p_invertibility() {
        let (mats, ok) = alpha_mod_p(3, 2).unwrap();
        assert!(ok);
        assert_eq!(mats.len(), 4);
        assert!(alpha_mod_p(3, 6).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn specialized_chain_map(d in 1usize..5, m in -20i64..20) {
            prop_assert!(all_pass(&verify_chain_map_at(d, m)));
        }
    }
}
