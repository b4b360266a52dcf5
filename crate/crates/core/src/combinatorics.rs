//! Multi-index machinery: exponent vectors, multinomial coefficients and the
//! index-tuple to exponent map that underlies compressed symmetric storage.
//!
//! An order-`k` symmetric tensor over `C^n` has one free entry per exponent
//! vector `p = (p_1, .., p_n)` with `|p| = k`; `p_i` counts how often index `i`
//! occurs in an index tuple. Index tuples are 0-based throughout.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector `(p_1, .., p_n)` with cached degree `|p|`.
///
/// Ordering is graded lexicographic: lower degree first, then larger leading
/// exponents first, so degree-2 vectors in two variables enumerate as
/// `(2,0), (1,1), (0,2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exponents: Vec<u32>,
    degree: u32,
}

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Self { exponents, degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// Canonical (sorted) index tuple of this class, e.g. `(1,2)` maps to `[0,1,1]`.
    pub fn canonical_indices(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| std::iter::repeat_n(i, p as usize))
            .collect()
    }

    /// Same exponents with two variables exchanged.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut exponents = self.exponents.clone();
        exponents.swap(a, b);
        Self::new(exponents)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(exponents: Vec<u32>) -> Self {
        Self::new(exponents)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(exponents: [u32; N]) -> Self {
        Self::new(exponents.to_vec())
    }
}

/// Index tuple `(j_1, .., j_k)` with entries in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple {
    indices: Vec<usize>,
}

impl IndexTuple {
    pub fn new(indices: Vec<usize>, dim: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&j| j >= dim) {
            return Err(Error::Invalid(format!(
                "index {bad} out of range for dimension {dim}"
            )));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }
}

/// Binomial coefficient with overflow detection.
pub fn binomial(m: u64, r: u64) -> Result<u64> {
    if r > m {
        return Ok(0);
    }
    let r = r.min(m - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (m - i) / (i + 1) is always integral.
        acc = acc * u128::from(m - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow(format!("C({m}, {r})")));
        }
    }
    Ok(acc as u64)
}

/// Dimension of the space of order-`k` symmetric tensors over `C^n`: `C(n+k-1, k)`.
pub fn sym_dimension(order: usize, dim: usize) -> Result<u64> {
    if dim == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    binomial((dim + order - 1) as u64, order as u64)
}

/// `k! / (p_1! .. p_n!)`, the number of index tuples in the class of `p`.
pub fn multinomial(p: &ExponentVector) -> Result<u64> {
    let mut acc: u64 = 1;
    let mut running: u64 = 0;
    for &e in p.exponents() {
        running += u64::from(e);
        let b = binomial(running, u64::from(e))?;
        acc = acc
            .checked_mul(b)
            .ok_or_else(|| Error::Overflow(format!("multinomial of {p:?}")))?;
    }
    Ok(acc)
}

/// All exponent vectors of degree `k` in `n` variables, in graded-lex order.
pub fn enumerate_exponents(order: usize, dim: usize) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    let mut current = vec![0u32; dim];
    fill(&mut current, 0, order as u32, &mut out);
    out
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<ExponentVector>) {
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(ExponentVector::new(current.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Multiplicity of each index in `j`.
pub fn index_to_exponent(j: &IndexTuple, dim: usize) -> Result<ExponentVector> {
    let mut exps = vec![0u32; dim];
    for &i in j.indices() {
        if i >= dim {
            return Err(Error::Invalid(format!(
                "index {i} out of range for dimension {dim}"
            )));
        }
        exps[i] += 1;
    }
    Ok(ExponentVector::new(exps))
}

/// Unchecked variant for internal loops where indices are known to be in range.
pub(crate) fn exponent_of(indices: &[usize], dim: usize) -> ExponentVector {
    let mut exps = vec![0u32; dim];
    for &i in indices {
        exps[i] += 1;
    }
    ExponentVector::new(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn sym_dimension_examples() {
        assert_eq!(sym_dimension(4, 3).unwrap(), 15);
        assert_eq!(sym_dimension(1, 7).unwrap(), 7);
        assert_eq!(sym_dimension(6, 10).unwrap(), 5005);
        assert_eq!(sym_dimension(0, 5).unwrap(), 1);
    }

    #[test]
    fn sym_dimension_overflow_is_reported() {
        assert!(matches!(sym_dimension(200, 200), Err(Error::Overflow(_))));
        assert!(sym_dimension(3, 0).is_err());
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&ev(&[1, 1, 1])).unwrap(), 6);
        assert_eq!(multinomial(&ev(&[0, 0, 5])).unwrap(), 1);
        // brute force: distinct arrangements of the multiset {1,2,2,2}
        let mut seen = std::collections::HashSet::new();
        let base = [0usize, 1, 1, 1];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let mut s = [a, b, c, d];
                        s.sort_unstable();
                        if s == [0, 1, 2, 3] {
                            seen.insert([base[a], base[b], base[c], base[d]]);
                        }
                    }
                }
            }
        }
        assert_eq!(multinomial(&ev(&[1, 3])).unwrap(), seen.len() as u64);
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn multinomial_overflow_is_reported() {
        assert!(matches!(multinomial(&ev(&[20, 20, 20, 20])), Err(Error::Overflow(_))));
    }

    #[test]
    fn enumeration_order_and_edges() {
        assert_eq!(
            enumerate_exponents(2, 2),
            vec![ev(&[2, 0]), ev(&[1, 1]), ev(&[0, 2])]
        );
        assert_eq!(enumerate_exponents(0, 3), vec![ev(&[0, 0, 0])]);
        assert_eq!(enumerate_exponents(3, 3).len(), 10);
        let list = enumerate_exponents(4, 3);
        assert!(list.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn index_tuples_map_to_counts() {
        let j = IndexTuple::new(vec![0, 1, 1], 2).unwrap();
        assert_eq!(index_to_exponent(&j, 2).unwrap(), ev(&[1, 2]));
        let j = IndexTuple::new(vec![1, 0, 1], 2).unwrap();
        assert_eq!(index_to_exponent(&j, 2).unwrap(), ev(&[1, 2]));
        let j = IndexTuple::new(vec![2, 2, 2, 2], 3).unwrap();
        assert_eq!(index_to_exponent(&j, 3).unwrap(), ev(&[0, 0, 4]));
        assert!(IndexTuple::new(vec![0, 3], 3).is_err());
        let loose = IndexTuple { indices: vec![0, 5] };
        assert!(index_to_exponent(&loose, 3).is_err());
    }

    #[test]
    fn counts_agree_over_small_grid() {
        for k in 0..=8 {
            for n in 1..=6 {
                assert_eq!(
                    enumerate_exponents(k, n).len() as u64,
                    sym_dimension(k, n).unwrap()
                );
            }
        }
        for k in 0..=6u32 {
            for n in 1..=5usize {
                let total: u64 = enumerate_exponents(k as usize, n)
                    .iter()
                    .map(|p| multinomial(p).unwrap())
                    .sum();
                assert_eq!(total, (n as u64).pow(k));
            }
        }
    }

    #[test]
    fn canonical_indices_roundtrip() {
        let p = ev(&[2, 0, 1]);
        assert_eq!(p.canonical_indices(), vec![0, 0, 2]);
        assert_eq!(exponent_of(&p.canonical_indices(), 3), p);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn exponent_is_permutation_invariant(
                (n, j, perm) in (1usize..5, 1usize..6).prop_flat_map(|(n, k)| {
                    (Just(n), proptest::collection::vec(0..n, k), Just(k))
                }).prop_flat_map(|(n, j, k)| {
                    (Just(n), Just(j), Just((0..k).collect::<Vec<_>>()).prop_shuffle())
                })
            ) {
                let t = IndexTuple::new(j.clone(), n).unwrap();
                let permuted: Vec<usize> = perm.iter().map(|&i| j[i]).collect();
                let s = IndexTuple::new(permuted, n).unwrap();
                prop_assert_eq!(index_to_exponent(&t, n).unwrap(), index_to_exponent(&s, n).unwrap());
            }
        }
    }
}
