use super::arithmetic::{build_complex, ArithmeticComplex};
use super::weights::{Weight, WeightVector};
use crate::error::{Error, Result};
use crate::ivpoly::IVPoly;
use crate::linalg::Matrix;
use crate::report::Report;

/// Sign relating the `(λ_t = 0, λ_t = 0)` block of `∂` to the differential of `C(1^d)`.
pub const SUB_BLOCK_SIGN: i64 = -1;
/// Sign relating the `(λ_t ≥ 1, λ_t ≥ 1)` block of `∂` to the differential of `C(w_0 + 1, 1^{d-1})`.
pub const QUOT_BLOCK_SIGN: i64 = 1;

/// `C(w_0, 1^d)` split as a mapping cone of `φ: C(w_0 + 1, 1^{d-1}) → C(1^d)`.
///
/// In degree `k` the basis splits into `A_k` (leading part zero, identified with
/// `C_k(1^d)` by dropping it) and `B_k` (leading part positive, identified with
/// `C_{k-1}(w_0 + 1, 1^{d-1})` by decrementing it). Both identifications preserve
/// basis order, and in block form
///
/// ```text
/// ∂_k = [ SUB_BLOCK_SIGN·∂^sub_k   φ_{k-1}                    ]
///       [ 0                        QUOT_BLOCK_SIGN·∂^quot_{k-1} ]
/// ```
#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    whole: ArithmeticComplex<IVPoly>,
    sub: ArithmeticComplex<IVPoly>,
    quot: ArithmeticComplex<IVPoly>,
    phi: Vec<Matrix<IVPoly>>,
    split: Vec<(Vec<usize>, Vec<usize>)>,
}

impl ConeDecomposition {
    pub fn whole(&self) -> &ArithmeticComplex<IVPoly> {
        &self.whole
    }

    /// `C(1^d)`.
    pub fn sub(&self) -> &ArithmeticComplex<IVPoly> {
        &self.sub
    }

    /// `C(w_0 + 1, 1^{d-1})`.
    pub fn quot(&self) -> &ArithmeticComplex<IVPoly> {
        &self.quot
    }

    /// `φ_j: quot_j → sub_j` for `j = 0..d`; empty outside that range.
    pub fn phi(&self, j: i64) -> Matrix<IVPoly> {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.phi.get(j).cloned())
            .unwrap_or_else(|| Matrix::zeros(self.sub.rank(j), self.quot.rank(j), &()))
    }

    /// Positions of `A_k` and `B_k` inside the basis of `C_k`.
    pub fn split(&self, k: i64) -> (&[usize], &[usize]) {
        match usize::try_from(k).ok().and_then(|k| self.split.get(k)) {
            Some((a, b)) => (a, b),
            None => (&[], &[]),
        }
    }

    /// Diagonal blocks match the smaller complexes, the lower-left block vanishes.
    pub fn block_reports(&self) -> Vec<Report> {
        let mut out = Vec::new();
        for k in 1..=self.whole.d() as i64 {
            let full = self.whole.chain().boundary_or_zero(k);
            let (a_src, b_src) = self.split(k);
            let (a_dst, b_dst) = self.split(k - 1);
            out.push(Report::compare(
                "cone: sub block equals signed differential of C(1^d)",
                Some(k),
                &full.select(a_dst, a_src),
                &self.sub.chain().boundary_or_zero(k).scale_int(SUB_BLOCK_SIGN),
            ));
            out.push(Report::compare(
                "cone: quotient block equals signed differential of C(w0+1,1^(d-1))",
                Some(k),
                &full.select(b_dst, b_src),
                &self.quot.chain().boundary_or_zero(k - 1).scale_int(QUOT_BLOCK_SIGN),
            ));
            out.push(Report::compare(
                "cone: lower-left block vanishes",
                Some(k),
                &full.select(b_dst, a_src),
                &Matrix::zeros(b_dst.len(), a_src.len(), &()),
            ));
        }
        out
    }

    /// `∂^sub_j ∘ φ_j = φ_{j-1} ∘ ∂^quot_j` for every `j`.
    pub fn chain_map_reports(&self) -> Vec<Report> {
        (1..self.whole.d() as i64)
            .map(|j| {
                let lhs = self.sub.chain().boundary_or_zero(j).mul(&self.phi(j));
                let rhs = self.phi(j - 1).mul(&self.quot.chain().boundary_or_zero(j));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => Report::compare("cone: φ is a chain map", Some(j), &l, &r),
                    _ => Report::check("cone: φ is a chain map", Some(j), false),
                }
            })
            .collect()
    }

    /// Rebuilds every differential of the original complex from the blocks.
    pub fn reassemble(&self) -> Vec<Matrix<IVPoly>> {
        (1..=self.whole.d() as i64)
            .map(|k| {
                let (a_src, b_src) = self.split(k);
                let (a_dst, b_dst) = self.split(k - 1);
                let mut m = Matrix::zeros(self.whole.rank(k - 1), self.whole.rank(k), &());
                let sub = self.sub.chain().boundary_or_zero(k).scale_int(SUB_BLOCK_SIGN);
                let quot = self.quot.chain().boundary_or_zero(k - 1).scale_int(QUOT_BLOCK_SIGN);
                let phi = self.phi(k - 1);
                let blocks = [(&sub, a_dst, a_src), (&phi, a_dst, b_src), (&quot, b_dst, b_src)];
                for (block, rows, cols) in blocks {
                    for (i, &r) in rows.iter().enumerate() {
                        for (j, &c) in cols.iter().enumerate() {
                            m.set(r, c, block.get(i, j).clone());
                        }
                    }
                }
                m
            })
            .collect()
    }
}

/// Splits `C(w_0, 1^d)` (`d ≥ 1`) into its mapping-cone pieces.
pub fn cone_decompose(c: &ArithmeticComplex<IVPoly>) -> Result<ConeDecomposition> {
    let w = c.weights();
    let d = w.d();
    if d == 0 || !w.has_unit_tail() {
        return Err(Error::InvalidWeights(format!(
            "cone decomposition needs weights (w0, 1^d) with d ≥ 1, got {w}"
        )));
    }
    let sub = build_complex(&WeightVector::new(Weight::Int(1), vec![1; d - 1]))?;
    let quot = build_complex(&WeightVector::new(w.w0().plus(1), vec![1; d - 1]))?;
    let split: Vec<(Vec<usize>, Vec<usize>)> = (0..=d as i64)
        .map(|k| {
            let (a, b): (Vec<_>, Vec<_>) = (0..c.rank(k)).partition(|&i| c.basis(k)[i].leading() == 0);
            (a, b)
        })
        .collect();
    for k in 0..=d as i64 {
        let (a, b) = &split[k as usize];
        let dropped = a.iter().map(|&i| c.basis(k)[i].drop_leading());
        let lowered = b.iter().map(|&i| {
            let lam = &c.basis(k)[i];
            lam.with_leading(lam.leading() - 1)
        });
        if !dropped.eq(sub.basis(k).iter().cloned()) || !lowered.eq(quot.basis(k - 1).iter().cloned()) {
            return Err(Error::InvalidComposition(format!(
                "basis split in degree {k} does not match the smaller complexes"
            )));
        }
    }
    let phi = (0..d)
        .map(|j| {
            let full = c.chain().boundary_or_zero(j as i64 + 1);
            full.select(&split[j].0, &split[j + 1].1)
        })
        .collect();
    Ok(ConeDecomposition {
        whole: c.clone(),
        sub,
        quot,
        phi,
        split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivpoly::XSign;
    use crate::report::all_pass;

    fn cone(sign: XSign, shift: i64, d: usize) -> ConeDecomposition {
        cone_decompose(&build_complex(&WeightVector::affine_ones(sign, shift, d)).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_split() {
        let c = cone(XSign::Plus, 0, 1);
        assert_eq!(
            c.phi(0),
            Matrix::from_rows(vec![vec!["x+1".parse().unwrap()]], &()).unwrap()
        );
        assert_eq!(c.sub().d(), 0);
        assert_eq!(c.quot().weights().w0().to_string(), "x+1");
    }

    #[test]
    fn blocks_chain_map_and_reassembly() {
        for d in 1..=5 {
            for (sign, shift) in [(XSign::Plus, 0), (XSign::Minus, -2 * d as i64), (XSign::Plus, 3)] {
                let c = cone(sign, shift, d);
                assert!(all_pass(&c.block_reports()), "d={d}");
                assert!(all_pass(&c.chain_map_reports()), "d={d}");
                assert_eq!(c.reassemble(), c.whole().chain().boundaries());
            }
        }
    }

    #[test]
    fn phi_is_diagonal_with_binomial_entries() {
        let d = 4;
        let c = cone(XSign::Plus, 0, d);
        let w0 = Weight::x();
        for j in 0..d as i64 {
            let phi = c.phi(j);
            let basis = c.quot().basis(j);
            for (i, q) in basis.iter().enumerate() {
                for col in 0..phi.cols() {
                    let expected = if i == col {
                        w0.plus(1 + q.leading() as i64).binom(q.leading() as i64 + 1)
                    } else {
                        IVPoly::zero()
                    };
                    assert_eq!(phi.get(i, col), &expected);
                }
            }
        }
    }

    #[test]
    fn only_the_frozen_block_signs_fit_at_d2() {
        let c = cone(XSign::Plus, 0, 2);
        let mut fits = Vec::new();
        for s in [1i64, -1] {
            for q in [1i64, -1] {
                let ok = (1..=2).all(|k| {
                    let full = c.whole().chain().boundary_or_zero(k);
                    let (a_src, b_src) = c.split(k);
                    let (a_dst, b_dst) = c.split(k - 1);
                    full.select(a_dst, a_src) == c.sub().chain().boundary_or_zero(k).scale_int(s)
                        && full.select(b_dst, b_src) == c.quot().chain().boundary_or_zero(k - 1).scale_int(q)
                });
                if ok {
                    fits.push((s, q));
                }
            }
        }
        assert_eq!(fits, vec![(SUB_BLOCK_SIGN, QUOT_BLOCK_SIGN)]);
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        let c = build_complex(&WeightVector::new(Weight::x(), vec![1, 2])).unwrap();
        assert!(cone_decompose(&c).is_err());
        let c = build_complex(&WeightVector::new(Weight::x(), vec![])).unwrap();
        assert!(cone_decompose(&c).is_err());
    }
}
