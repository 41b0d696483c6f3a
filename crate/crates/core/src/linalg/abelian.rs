use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{bigint_json, divides};

/// Finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s`
/// in invariant-factor form (`1 < d_1 | d_2 | ... | d_s`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = invariant_factors.iter().find(|d| **d <= BigInt::one()) {
            return Err(Error::InvalidParameter(format!("invariant factor {d} is not > 1")));
        }
        if let Some(w) = invariant_factors.windows(2).find(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::InvalidParameter(format!(
                "invariant factors {} and {} break the divisibility chain",
                w[0], w[1]
            )));
        }
        Ok(AbelianGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        let order = order.into().abs();
        if order.is_zero() {
            return Self::free(1);
        }
        let invariant_factors = if order.is_one() { vec![] } else { vec![order] };
        AbelianGroup {
            free_rank: 0,
            invariant_factors,
        }
    }

    /// Builds the group from a Smith diagonal already in divisibility order:
    /// units are dropped and zeros are ignored.
    pub(crate) fn from_smith_diagonal(free_rank: usize, diagonal: &[BigInt]) -> Self {
        let invariant_factors = diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        AbelianGroup {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of invariant factors divisible by `p`.
    pub fn p_divisible_factors(&self, p: u64) -> usize {
        self.invariant_factors.iter().filter(|d| divides(p, d)).count()
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "torsion": self.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(AbelianGroup::new(0, vec![2.into(), 4.into()]).is_ok());
        assert!(AbelianGroup::new(0, vec![2.into(), 3.into()]).is_err());
        assert!(AbelianGroup::new(1, vec![1.into()]).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        let g = AbelianGroup::new(2, vec![2.into(), 6.into()]).unwrap();
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/2 ⊕ Z/6");
        assert_eq!(g.to_json(), json!({"free_rank": 2, "torsion": [2, 6]}));
        assert_eq!(AbelianGroup::cyclic(-4).to_string(), "Z/4");
        assert!(AbelianGroup::cyclic(1).is_trivial());
    }

    #[test]
    fn p_torsion_counts() {
        let g = AbelianGroup::new(0, vec![2.into(), 6.into(), 30.into()]).unwrap();
        assert_eq!(g.p_divisible_factors(2), 3);
        assert_eq!(g.p_divisible_factors(3), 2);
        assert_eq!(g.p_divisible_factors(5), 1);
        assert_eq!(g.p_divisible_factors(7), 0);
        assert_eq!(g.order(), Some(BigInt::from(360)));
    }
}
