//! Closed-form facts about generic symmetric rank over `C`.
//!
//! For order `k > 2` the generic symmetric rank in dimension `n` is
//! `ceil(C(n+k-1, k) / n)`, plus one on the four exceptional pairs
//! `(3,5), (4,3), (4,4), (4,5)` (Alexander–Hirschowitz).

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::combinatorics::{binomial, sym_dimension};
use crate::error::{Error, Result};

/// The `(order, dim)` pairs where the generic rank exceeds the expected value.
pub const EXCEPTIONS: [(usize, usize); 4] = [(3, 5), (4, 3), (4, 4), (4, 5)];

pub fn is_exception(order: usize, dim: usize) -> bool {
    EXCEPTIONS.contains(&(order, dim))
}

fn check_domain(order: usize, dim: usize) -> Result<()> {
    if order <= 2 {
        return Err(Error::UnsupportedOrder(order));
    }
    if dim < 2 {
        return Err(Error::Invalid(format!("dimension must be at least 2, got {dim}")));
    }
    Ok(())
}

/// Generic symmetric rank of order-`k` symmetric tensors over `C^n`.
pub fn generic_symmetric_rank(order: usize, dim: usize) -> Result<u64> {
    check_domain(order, dim)?;
    let expected = sym_dimension(order, dim)?.div_ceil(dim as u64);
    Ok(expected + u64::from(is_exception(order, dim)))
}

/// `(ceil(C(n+k-1,k)/n), C(n+k-2,k-1))`.
pub fn symmetric_rank_bounds(order: usize, dim: usize) -> Result<(u64, u64)> {
    check_domain(order, dim)?;
    let lower = sym_dimension(order, dim)?.div_ceil(dim as u64);
    let upper = binomial((dim + order - 2) as u64, (order - 1) as u64)?;
    Ok((lower, upper))
}

/// Dimension of the fiber of generic decompositions: `n * R - C(n+k-1, k)`.
pub fn fiber_dimension(order: usize, dim: usize) -> Result<u64> {
    let rank = generic_symmetric_rank(order, dim)?;
    let total = (dim as u64)
        .checked_mul(rank)
        .ok_or_else(|| Error::Overflow(format!("fiber dimension of ({order}, {dim})")))?;
    Ok(total - sym_dimension(order, dim)?)
}

/// Whether a generic tensor has finitely many rank-`R` decompositions,
/// i.e. whether `n` divides `C(n+k-1, k)`. Undefined on the exceptions.
pub fn finitely_many_generic_decompositions(order: usize, dim: usize) -> Result<bool> {
    check_domain(order, dim)?;
    if is_exception(order, dim) {
        return Err(Error::NotApplicable(format!(
            "({order}, {dim}) is an exceptional case; finiteness is not characterised there"
        )));
    }
    Ok(sym_dimension(order, dim)? % dim as u64 == 0)
}

/// Maximal symmetric rank of binary forms of degree `k`.
pub fn max_symmetric_rank_binary(order: usize) -> usize {
    order
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub order: usize,
    pub dim: usize,
    pub generic_rank: u64,
    pub is_exception: bool,
    pub lower_bound: u64,
    pub upper_bound: u64,
    pub fiber_dim: u64,
    /// `None` on the exceptional pairs.
    pub finitely_many_decompositions: Option<bool>,
}

pub fn rank_report(order: usize, dim: usize) -> Result<RankReport> {
    let (lower_bound, upper_bound) = symmetric_rank_bounds(order, dim)?;
    Ok(RankReport {
        order,
        dim,
        generic_rank: generic_symmetric_rank(order, dim)?,
        is_exception: is_exception(order, dim),
        lower_bound,
        upper_bound,
        fiber_dim: fiber_dimension(order, dim)?,
        finitely_many_decompositions: finitely_many_generic_decompositions(order, dim).ok(),
    })
}

/// Rows indexed by order, columns by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    pub orders: Vec<usize>,
    pub dims: Vec<usize>,
    pub values: Vec<Vec<u64>>,
    pub exceptions: Vec<Vec<bool>>,
}

fn build_table(
    orders: RangeInclusive<usize>,
    dims: RangeInclusive<usize>,
    cell: impl Fn(usize, usize) -> Result<u64>,
) -> Result<RankTable> {
    let orders: Vec<usize> = orders.collect();
    let dims: Vec<usize> = dims.collect();
    let mut values = Vec::with_capacity(orders.len());
    let mut exceptions = Vec::with_capacity(orders.len());
    for &k in &orders {
        values.push(dims.iter().map(|&n| cell(k, n)).collect::<Result<Vec<_>>>()?);
        exceptions.push(dims.iter().map(|&n| is_exception(k, n)).collect());
    }
    Ok(RankTable {
        orders,
        dims,
        values,
        exceptions,
    })
}

/// Generic symmetric ranks over a grid of orders and dimensions.
pub fn generic_rank_table(orders: RangeInclusive<usize>, dims: RangeInclusive<usize>) -> Result<RankTable> {
    build_table(orders, dims, generic_symmetric_rank)
}

/// Fiber dimensions over a grid of orders and dimensions.
pub fn fiber_dimension_table(orders: RangeInclusive<usize>, dims: RangeInclusive<usize>) -> Result<RankTable> {
    build_table(orders, dims, fiber_dimension)
}

impl RankTable {
    pub fn get(&self, order: usize, dim: usize) -> Option<u64> {
        let i = self.orders.iter().position(|&k| k == order)?;
        let j = self.dims.iter().position(|&n| n == dim)?;
        Some(self.values[i][j])
    }

    /// Aligned text; exceptional cells are marked with `*`.
    pub fn to_text(&self) -> String {
        let width = self
            .values
            .iter()
            .flatten()
            .map(|v| v.to_string().len() + 1)
            .chain(self.dims.iter().map(|n| n.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(3);
        let mut out = String::new();
        let _ = write!(out, "{:>4} |", "k\\n");
        for n in &self.dims {
            let _ = write!(out, " {n:>width$}");
        }
        out.push('\n');
        out.push_str(&"-".repeat(6 + (width + 1) * self.dims.len()));
        out.push('\n');
        for (i, k) in self.orders.iter().enumerate() {
            let _ = write!(out, "{k:>4} |");
            for (v, &ex) in self.values[i].iter().zip(&self.exceptions[i]) {
                let cell = if ex { format!("{v}*") } else { v.to_string() };
                let _ = write!(out, " {cell:>width$}");
            }
            out.push('\n');
        }
        out
    }

    /// CSV with columns `order,dim,value,exception`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,dim,value,exception\n");
        for (i, k) in self.orders.iter().enumerate() {
            for (j, n) in self.dims.iter().enumerate() {
                let _ = writeln!(out, "{k},{n},{},{}", self.values[i][j], self.exceptions[i][j]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_symmetric_rank(3, 5).unwrap(), 8);
        assert_eq!(generic_symmetric_rank(4, 3).unwrap(), 6);
        assert_eq!(generic_symmetric_rank(5, 10).unwrap(), 201);
        assert_eq!(generic_symmetric_rank(3, 9).unwrap(), 19);
        assert_eq!(generic_symmetric_rank(6, 10).unwrap(), 501);
        assert_eq!(generic_symmetric_rank(2, 4), Err(Error::UnsupportedOrder(2)));
        assert!(generic_symmetric_rank(3, 1).is_err());
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_dimension(3, 3).unwrap(), 2);
        assert_eq!(fiber_dimension(4, 5).unwrap(), 5);
        assert_eq!(fiber_dimension(5, 2).unwrap(), 0);
    }

    #[test]
    fn finiteness_examples() {
        assert!(finitely_many_generic_decompositions(5, 4).unwrap());
        assert!(!finitely_many_generic_decompositions(5, 5).unwrap());
        assert!(finitely_many_generic_decompositions(3, 2).unwrap());
        assert!(matches!(
            finitely_many_generic_decompositions(4, 4),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(symmetric_rank_bounds(3, 3).unwrap(), (4, 6));
        assert_eq!(symmetric_rank_bounds(4, 3).unwrap(), (5, 10));
        let g = generic_symmetric_rank(4, 3).unwrap();
        assert!(5 < g && g < 10);
        for k in 3..12usize {
            assert_eq!(symmetric_rank_bounds(k, 2).unwrap(), ((k as u64 + 2) / 2, k as u64));
        }
    }

    #[test]
    fn binary_max_rank() {
        assert_eq!(max_symmetric_rank_binary(1), 1);
        assert_eq!(max_symmetric_rank_binary(3), 3);
        assert_eq!(max_symmetric_rank_binary(4), 4);
    }

    #[test]
    fn consistency_over_a_wide_grid() {
        for k in 3..=10 {
            for n in 2..=12 {
                let r = rank_report(k, n).unwrap();
                assert!(r.lower_bound <= r.generic_rank && r.generic_rank <= r.upper_bound);
                assert_eq!(r.fiber_dim, n as u64 * r.generic_rank - sym_dimension(k, n).unwrap());
                if !r.is_exception {
                    assert_eq!(r.generic_rank, r.lower_bound);
                    assert_eq!(r.finitely_many_decompositions, Some(r.fiber_dim == 0));
                } else {
                    assert_eq!(r.generic_rank, r.lower_bound + 1);
                    assert_eq!(r.finitely_many_decompositions, None);
                }
            }
        }
    }

    #[test]
    fn report_serializes_with_expected_keys() {
        let json = serde_json::to_string(&rank_report(4, 3).unwrap()).unwrap();
        assert!(json.contains("\"generic_rank\":6,\"is_exception\":true"));
        assert!(json.contains("\"finitely_many_decompositions\":null"));
    }

    #[test]
    fn table_rendering() {
        let t = generic_rank_table(3..=4, 2..=5).unwrap();
        assert_eq!(t.get(4, 3), Some(6));
        let text = t.to_text();
        assert!(text.contains("6*"));
        assert!(text.contains("8*"));
        let csv = t.to_csv();
        assert!(csv.starts_with("order,dim,value,exception\n3,2,2,false\n"));
        assert!(csv.contains("4,4,10,true"));
    }
}
