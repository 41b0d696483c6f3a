use std::fmt;

use serde::Serialize;

/// Weak composition `(λ_t, ..., λ_1)`, stored leftmost part first.
///
/// The derived `Ord` is lexicographic on the stored parts. Basis order is
/// ascending in this order, which is descending for the reverse-lexicographic
/// monomial order on `x_1^{λ_1} ... x_t^{λ_t}` (see [`Composition::succeq`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts `t`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `λ_j`, counting from the right starting at 1.
    pub fn part(&self, j: usize) -> u32 {
        self.0[self.0.len() - j]
    }

    /// Leftmost part `λ_t`.
    pub fn leading(&self) -> u32 {
        self.0[0]
    }

    /// `self ≽ other`: equal, or the first nonzero entry of `self - other` is negative.
    pub fn succeq(&self, other: &Self) -> bool {
        self.0 <= other.0
    }

    pub(crate) fn with_leading(&self, lead: u32) -> Self {
        let mut parts = self.0.clone();
        parts[0] = lead;
        Composition(parts)
    }

    pub(crate) fn drop_leading(&self) -> Self {
        Composition(self.0[1..].to_vec())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for Composition {
    fn from(parts: Vec<u32>) -> Self {
        Composition(parts)
    }
}

/// All weak compositions of `k` into `t` parts, from `(0,...,0,k)` down to `(k,0,...,0)`
/// under `≽`.
pub fn enumerate_compositions(t: usize, k: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    if t == 0 {
        return out;
    }
    let mut parts = vec![0u32; t];
    fill(&mut parts, 0, k, &mut out);
    out
}

fn fill(parts: &mut [u32], idx: usize, remaining: u32, out: &mut Vec<Composition>) {
    if idx + 1 == parts.len() {
        parts[idx] = remaining;
        out.push(Composition(parts.to_vec()));
        return;
    }
    for first in 0..=remaining {
        parts[idx] = first;
        fill(parts, idx + 1, remaining - first, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivpoly::int_binom_i64;
    use proptest::prelude::*;

    fn comps(v: &[&[u32]]) -> Vec<Composition> {
        v.iter().map(|p| Composition::new(p.to_vec())).collect()
    }

    #[test]
    fn documented_orders() {
        assert_eq!(
            enumerate_compositions(3, 2),
            comps(&[&[0, 0, 2], &[0, 1, 1], &[0, 2, 0], &[1, 0, 1], &[1, 1, 0], &[2, 0, 0]])
        );
        assert_eq!(enumerate_compositions(1, 5), comps(&[&[5]]));
        assert_eq!(enumerate_compositions(4, 0), comps(&[&[0, 0, 0, 0]]));
    }

    #[test]
    fn parts_are_indexed_from_the_right() {
        let c = Composition::new(vec![0, 2, 0, 1]);
        assert_eq!((c.part(1), c.part(2), c.part(3), c.part(4)), (1, 0, 2, 0));
        assert_eq!(c.leading(), 0);
    }

    /// `a ≽ b` straight from the definition on the difference vector.
    fn succeq_by_difference(a: &Composition, b: &Composition) -> bool {
        a.parts()
            .iter()
            .zip(b.parts())
            .map(|(&x, &y)| x as i64 - y as i64)
            .find(|&d| d != 0)
            .is_none_or(|d| d < 0)
    }

    proptest! {
        #[test]
        fn strictly_descending_with_binomial_length(t in 1usize..6, k in 0u32..7) {
            let all = enumerate_compositions(t, k);
            prop_assert_eq!(
                all.len() as i64,
                int_binom_i64(k as i64 + t as i64 - 1, t as i64 - 1).try_into().unwrap_or(-1i64)
            );
            for w in all.windows(2) {
                prop_assert!(succeq_by_difference(&w[0], &w[1]));
                prop_assert!(!succeq_by_difference(&w[1], &w[0]));
                prop_assert!(w[0].succeq(&w[1]));
            }
            prop_assert!(all.iter().all(|c| c.total() == k as u64 && c.len() == t));
        }
    }
}
