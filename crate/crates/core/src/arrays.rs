//! The triangular-array family `A_n` and its refinements.
//!
//! An element of `A_n` is a triangle of nonnegative integers `a_(ij)`,
//! `2 <= j <= i <= n-1`, whose column sums satisfy the chained bounds
//!
//! ```text
//! sum_(i=k..n-1) a_(ik)  <=  (k-2) + sum_(j=2..k-1) a_(k-1,j)      k = 2..n-1
//! ```
//!
//! (so the first column is identically zero). These arrays index the
//! unimodular simplices of the decomposition built in [`crate::decomp`], so
//! `|A_n|` is the relative volume of `P_n`. This module enumerates and
//! counts `A_n` and the zero-prefix subfamilies `A_n^j`, classifies arrays
//! by how many bounds are tight (the Narayana refinement), and computes the
//! equivalent Kostant partition-function count.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::exact::{int, Int, Rat};
use crate::{Error, Result};

/// Default ceiling for full enumeration; `n = 9` (about 333M arrays) is
/// allowed only behind the heavy flag, and only in counting mode.
pub const DEFAULT_MAX_N: u32 = 8;
pub const HEAVY_MAX_N: u32 = 9;

/// Default ceiling for the Kostant dynamic program.
pub const DEFAULT_KOSTANT_MAX_N: u32 = 7;
pub const HEAVY_KOSTANT_MAX_N: u32 = 8;

/// A member of `A_n`: rows `i = 2..n-1`, row `i` holding columns `2..i`.
/// For `n = 2` the triangle is empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriArray {
    n: u32,
    rows: Vec<Vec<u32>>,
}

impl TriArray {
    pub fn new(n: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("TriArray requires n >= 2".into()));
        }
        if rows.len() != (n as usize).saturating_sub(2) {
            return Err(Error::InvalidInput(format!(
                "expected {} rows for n={n}, got {}",
                n - 2,
                rows.len()
            )));
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::InvalidInput(format!(
                    "row {} must have {} entries",
                    k + 2,
                    k + 1
                )));
            }
        }
        let arr = TriArray { n, rows };
        arr.validate()?;
        Ok(arr)
    }

    /// The all-zero array.
    pub fn zero(n: u32) -> Self {
        let rows = (0..(n as usize).saturating_sub(2)).map(|k| vec![0u32; k + 1]).collect();
        TriArray { n, rows }
    }

    /// Parse the `;`-separated row layout, e.g. `"0;0 1;0 0 2;0 0 1 2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u32>> = text
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|v| {
                        v.parse::<u32>().map_err(|_| {
                            Error::InvalidInput(format!("bad array entry `{v}`"))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = rows.len() as u32 + 2;
        TriArray::new(n, rows)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Entry `a_(ij)` for `2 <= j <= i <= n-1`.
    pub fn entry(&self, i: u32, j: u32) -> u32 {
        self.rows[i as usize - 2][j as usize - 2]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Sum of column `k` (cells `(i,k)`, `i = k..n-1`).
    fn column_sum(&self, k: u32) -> u32 {
        (k..self.n).map(|i| if i >= 2 && i < self.n && k <= i { self.entry(i, k) } else { 0 }).sum()
    }

    /// Bound for column `k`: `(k-2) +` sum of row `k-1`.
    fn column_bound(&self, k: u32) -> u32 {
        let row_sum: u32 = if k >= 3 { (2..=k - 1).map(|j| self.entry(k - 1, j)).sum() } else { 0 };
        (k - 2) + row_sum
    }

    /// Re-checks the chained column-sum constraints.
    pub fn validate(&self) -> Result<()> {
        for k in 2..self.n {
            if self.column_sum(k) > self.column_bound(k) {
                return Err(Error::InvalidInput(format!(
                    "column {k} sum {} exceeds its bound {}",
                    self.column_sum(k),
                    self.column_bound(k)
                )));
            }
        }
        Ok(())
    }

    /// Number of columns (from the left) that are identically zero; at least
    /// 1 for `n >= 3` since column 2 is forced to zero.
    pub fn zero_prefix(&self) -> u32 {
        let mut count = 0;
        for k in 2..self.n {
            if self.column_sum(k) == 0 {
                count += 1;
            } else {
                break;
            }
        }
        count
    }
}

impl fmt::Display for TriArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// How many of the `n-2` chained bounds hold with equality. The column-2
/// bound (`<= 0`) is always tight, so the result lies in `1..=n-2`.
pub fn equality_profile(arr: &TriArray) -> u32 {
    (2..arr.n).filter(|&k| arr.column_sum(k) == arr.column_bound(k)).count() as u32
}

fn guard_enumeration(n: u32, heavy: bool, materialize: bool) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput("array family requires n >= 2".into()));
    }
    let max = if heavy && !materialize { HEAVY_MAX_N } else { DEFAULT_MAX_N };
    if n > max {
        return Err(Error::GuardExceeded(format!(
            "array enumeration for n={n} exceeds the limit {max}"
        )));
    }
    Ok(())
}

/// Visits every member of `A_n^j` exactly once. Columns are filled left to
/// right; within a column, entries run from row `k` down to row `n-1` with
/// values ascending, so the stream order is deterministic.
pub fn for_each_array(
    n: u32,
    zero_prefix_cols: u32,
    heavy: bool,
    f: &mut impl FnMut(&TriArray),
) -> Result<()> {
    guard_enumeration(n, heavy, false)?;
    if zero_prefix_cols < 1 {
        return Err(Error::InvalidInput("zero_prefix_cols must be >= 1".into()));
    }
    let mut arr = TriArray::zero(n);
    fill_column(&mut arr, 2, zero_prefix_cols, &mut |a| {
        f(a);
        Ok(())
    })?;
    Ok(())
}

fn fill_column(
    arr: &mut TriArray,
    k: u32,
    zero_prefix: u32,
    f: &mut impl FnMut(&TriArray) -> Result<()>,
) -> Result<()> {
    let n = arr.n;
    if k > n - 1 {
        return f(arr);
    }
    if k <= zero_prefix + 1 {
        // Column forced to zero (always admissible: bounds are nonnegative).
        return fill_column(arr, k + 1, zero_prefix, f);
    }
    let bound = arr.column_bound(k);
    fill_column_cell(arr, k, k, bound, zero_prefix, f)
}

fn fill_column_cell(
    arr: &mut TriArray,
    k: u32,
    i: u32,
    budget: u32,
    zero_prefix: u32,
    f: &mut impl FnMut(&TriArray) -> Result<()>,
) -> Result<()> {
    let n = arr.n;
    if i > n - 1 {
        return fill_column(arr, k + 1, zero_prefix, f);
    }
    for v in 0..=budget {
        arr.rows[i as usize - 2][k as usize - 2] = v;
        fill_column_cell(arr, k, i + 1, budget - v, zero_prefix, f)?;
    }
    arr.rows[i as usize - 2][k as usize - 2] = 0;
    Ok(())
}

/// Materialized `A_n^j`, in stream order.
pub fn enumerate_arrays(n: u32, zero_prefix_cols: u32) -> Result<Vec<TriArray>> {
    guard_enumeration(n, false, true)?;
    let mut out = Vec::new();
    for_each_array(n, zero_prefix_cols, false, &mut |a| out.push(a.clone()))?;
    Ok(out)
}

/// `|A_n^j|`, streamed without materializing. The final column is counted in
/// closed form (its cells are free up to the budget).
pub fn count_arrays(n: u32, zero_prefix_cols: u32, heavy: bool) -> Result<Int> {
    guard_enumeration(n, heavy, false)?;
    if zero_prefix_cols < 1 {
        return Err(Error::InvalidInput("zero_prefix_cols must be >= 1".into()));
    }
    if n == 2 {
        return Ok(Int::one());
    }
    let mut count = Int::zero();
    let mut arr = TriArray::zero(n);
    count_column(&mut arr, 2, zero_prefix_cols, &mut count);
    Ok(count)
}

fn count_column(arr: &mut TriArray, k: u32, zero_prefix: u32, count: &mut Int) {
    let n = arr.n;
    if k > n - 1 {
        *count += 1u32;
        return;
    }
    if k <= zero_prefix + 1 {
        count_column(arr, k + 1, zero_prefix, count);
        return;
    }
    let bound = arr.column_bound(k);
    if k == n - 1 {
        // Last column has the single cell a_(n-1,n-1): bound+1 choices.
        *count += Int::from(bound + 1);
        return;
    }
    count_column_cell(arr, k, k, bound, zero_prefix, count);
}

fn count_column_cell(arr: &mut TriArray, k: u32, i: u32, budget: u32, zero_prefix: u32, count: &mut Int) {
    let n = arr.n;
    if i > n - 1 {
        count_column(arr, k + 1, zero_prefix, count);
        return;
    }
    for v in 0..=budget {
        arr.rows[i as usize - 2][k as usize - 2] = v;
        count_column_cell(arr, k, i + 1, budget - v, zero_prefix, count);
    }
    arr.rows[i as usize - 2][k as usize - 2] = 0;
}

/// Tight-bound refinement: `D_(nk)` = number of arrays in `A_n` with exactly
/// `k` equalities among the chained bounds.
pub fn profile_counts(n: u32, heavy: bool) -> Result<BTreeMap<u32, Int>> {
    let mut counts: BTreeMap<u32, Int> = BTreeMap::new();
    for_each_array(n, 1, heavy, &mut |arr| {
        let k = equality_profile(arr);
        *counts.entry(k).or_insert_with(Int::zero) += 1u32;
    })?;
    Ok(counts)
}

/// Narayana number `N(n, k) = C(n,k) * C(n,k-1) / n`.
pub fn narayana(n: u32, k: u32) -> Int {
    if k < 1 || k > n {
        return Int::zero();
    }
    binomial(int(n as i64), int(k as i64)) * binomial(int(n as i64), int(k as i64 - 1))
        / int(n as i64)
}

/// Report for the Narayana refinement of `A_n`.
#[derive(Clone, Debug)]
pub struct NarayanaReport {
    pub n: u32,
    pub counts: BTreeMap<u32, Int>,
    /// The common divisor, `C_0 * ... * C_(n-3)`.
    pub divisor: Int,
    /// Quotients `D_(nk) / divisor` where divisibility holds.
    pub quotients: BTreeMap<u32, Option<Int>>,
    pub holds: bool,
}

/// Checks `D_(nk) = (C_0 * ... * C_(n-3)) * N(n-2, k)` for every `k`.
pub fn verify_conjecture3a(n: u32, heavy: bool) -> Result<NarayanaReport> {
    if n < 3 {
        return Err(Error::InvalidInput("the refinement needs n >= 3".into()));
    }
    let counts = profile_counts(n, heavy)?;
    let divisor = crate::ehrhart::catalan_product_first(n - 2);
    let mut quotients = BTreeMap::new();
    let mut holds = true;
    for k in 1..=(n - 2) {
        let count = counts.get(&k).cloned().unwrap_or_else(Int::zero);
        if (&count % &divisor).is_zero() {
            let q = &count / &divisor;
            holds &= q == narayana(n - 2, k);
            quotients.insert(k, Some(q));
        } else {
            holds = false;
            quotients.insert(k, None);
        }
    }
    // No stray profiles outside 1..=n-2.
    holds &= counts.keys().all(|&k| (1..=n - 2).contains(&k));
    Ok(NarayanaReport { n, counts, divisor, quotients, holds })
}

/// The conjectured closed form for `|A_n^j|`:
/// `prod_(i=j..n-3) C(n+i-1, 2i) / (2i+1)`, an empty product for `j > n-3`.
pub fn conjecture3b_value(n: u32, j: u32) -> Result<Int> {
    if n < 3 || j < 1 {
        return Err(Error::InvalidInput("closed form needs n >= 3, j >= 1".into()));
    }
    let mut product = Rat::one();
    let mut i = j;
    while i + 3 <= n {
        let b = binomial(int((n + i - 1) as i64), int(2 * i as i64));
        product *= Rat::new(b, int(2 * i as i64 + 1));
        i += 1;
    }
    if !product.denom().is_one() {
        return Err(Error::SelfCheck(format!(
            "closed form for |A_{n}^{j}| is not an integer: {product}"
        )));
    }
    Ok(product.numer().clone())
}

/// Does the enumerated `|A_n^j|` match the closed form?
pub fn verify_conjecture3b(n: u32, j: u32, heavy: bool) -> Result<bool> {
    Ok(count_arrays(n, j, heavy)? == conjecture3b_value(n, j)?)
}

/// Kostant partition count equivalent to the volume conjecture: the number
/// of ways to write the weight with simple-root coordinates
/// `(1, 3, 6, ..., C(n,2))` as a nonnegative combination of the positive
/// roots of `A_(n-1)`. In prefix coordinates this asks for the number of
/// multisets of intervals `[a,b]` inside `[1, n-1]` covering position `k`
/// exactly `k(k+1)/2` times.
pub fn kostant_count(n: u32, heavy: bool) -> Result<Int> {
    if n < 2 {
        return Err(Error::InvalidInput("kostant_count requires n >= 2".into()));
    }
    let max = if heavy { HEAVY_KOSTANT_MAX_N } else { DEFAULT_KOSTANT_MAX_N };
    if n > max {
        return Err(Error::GuardExceeded(format!(
            "kostant count for n={n} exceeds the limit {max}"
        )));
    }
    let positions = (n - 1) as usize;
    let targets: Vec<u32> = (1..=positions as u32).map(|k| k * (k + 1) / 2).collect();
    let mut strides = vec![1usize; positions + 1];
    for k in 0..positions {
        strides[k + 1] = strides[k] * (targets[k] as usize + 1);
    }
    let len = strides[positions];
    let mut dp = vec![0u64; len];
    dp[0] = 1;
    // Unbounded knapsack per interval type, with an odometer to guard
    // against mixed-radix borrows.
    let mut digits = vec![0u32; positions];
    for a in 0..positions {
        for b in a..positions {
            let delta: usize = (a..=b).map(|k| strides[k]).sum();
            digits.iter_mut().for_each(|d| *d = 0);
            for idx in 0..len {
                if digits[a..=b].iter().all(|&d| d >= 1) {
                    dp[idx] = dp[idx]
                        .checked_add(dp[idx - delta])
                        .expect("kostant count overflows u64");
                }
                // Advance the odometer.
                for (k, d) in digits.iter_mut().enumerate() {
                    if *d < targets[k] {
                        *d += 1;
                        break;
                    }
                    *d = 0;
                }
            }
        }
    }
    Ok(Int::from(dp[len - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_round_trip() {
        let arr = TriArray::parse("0;0 1;0 0 2;0 0 1 2").unwrap();
        assert_eq!(arr.n(), 6);
        assert_eq!(arr.entry(3, 3), 1);
        assert_eq!(arr.entry(5, 4), 1);
        assert_eq!(arr.to_string(), "0\n0 1\n0 0 2\n0 0 1 2");
        assert!(TriArray::parse("1").is_err()); // violates the column-2 bound
        assert!(TriArray::parse("0;0 0 0").is_err()); // ragged shape
    }

    #[test]
    fn family_a5_matches_listing() {
        let arrays = enumerate_arrays(5, 1).unwrap();
        assert_eq!(arrays.len(), 10);
        let mut bottoms: Vec<(u32, Vec<u32>)> = arrays
            .iter()
            .map(|a| (a.entry(3, 3), a.rows()[2].clone()))
            .collect();
        bottoms.sort();
        // a_33 = 0: bottom rows (0,0,v) and (0,1,v) for v <= 2;
        // a_33 = 1: bottom rows (0,0,v) for v <= 3.
        let expected: Vec<(u32, Vec<u32>)> = vec![
            (0, vec![0, 0, 0]),
            (0, vec![0, 0, 1]),
            (0, vec![0, 0, 2]),
            (0, vec![0, 1, 0]),
            (0, vec![0, 1, 1]),
            (0, vec![0, 1, 2]),
            (1, vec![0, 0, 0]),
            (1, vec![0, 0, 1]),
            (1, vec![0, 0, 2]),
            (1, vec![0, 0, 3]),
        ];
        assert_eq!(bottoms, expected);
    }

    #[test]
    fn counts_match_reference_table() {
        // (n, j) -> |A_n^j| for the published-size table.
        let table: &[(u32, u32, i64)] = &[
            (3, 1, 1),
            (4, 1, 2),
            (4, 2, 1),
            (5, 1, 10),
            (5, 2, 3),
            (5, 3, 1),
            (6, 1, 140),
            (6, 2, 28),
            (6, 3, 4),
            (6, 4, 1),
            (7, 1, 5880),
            (7, 2, 840),
            (7, 3, 60),
            (7, 4, 5),
            (7, 5, 1),
        ];
        for &(n, j, expected) in table {
            assert_eq!(count_arrays(n, j, false).unwrap(), int(expected), "n={n} j={j}");
        }
    }

    #[test]
    fn count_matches_enumeration() {
        for n in 2..=7u32 {
            for j in 1..=(n.saturating_sub(2)).max(1) {
                let count = count_arrays(n, j, false).unwrap();
                if n <= 7 {
                    let listed = if n == 2 {
                        1
                    } else {
                        enumerate_arrays(n, j).unwrap().len()
                    };
                    assert_eq!(count, Int::from(listed), "n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn equality_profiles_n5() {
        assert_eq!(equality_profile(&TriArray::parse("0;0 0;0 0 0").unwrap()), 1);
        assert_eq!(equality_profile(&TriArray::parse("0;0 0;0 1 2").unwrap()), 3);
        assert_eq!(equality_profile(&TriArray::parse("0;0 1;0 0 3").unwrap()), 3);
        assert_eq!(equality_profile(&TriArray::parse("0;0 0;0 0 2").unwrap()), 2);
        let profile = profile_counts(5, false).unwrap();
        let expected: BTreeMap<u32, Int> =
            [(1u32, int(2)), (2, int(6)), (3, int(2))].into_iter().collect();
        assert_eq!(profile, expected);
    }

    #[test]
    fn narayana_refinement_small() {
        for n in 3..=6u32 {
            let report = verify_conjecture3a(n, false).unwrap();
            assert!(report.holds, "n={n}: {:?}", report.counts);
            let total: Int = report.counts.values().cloned().sum();
            assert_eq!(total, count_arrays(n, 1, false).unwrap());
        }
        let r4 = verify_conjecture3a(4, false).unwrap();
        assert_eq!(r4.counts.get(&1), Some(&int(1)));
        assert_eq!(r4.counts.get(&2), Some(&int(1)));
        assert_eq!(r4.divisor, int(1));
    }

    #[test]
    fn closed_form_matches_counts() {
        for n in 3..=7u32 {
            for j in 1..=(n - 2) {
                assert!(verify_conjecture3b(n, j, false).unwrap(), "n={n} j={j}");
            }
        }
        assert_eq!(conjecture3b_value(6, 2).unwrap(), int(28));
        assert_eq!(conjecture3b_value(5, 3).unwrap(), int(1));
        assert_eq!(conjecture3b_value(7, 1).unwrap(), int(5880));
    }

    #[test]
    fn kostant_small_values() {
        assert_eq!(kostant_count(2, false).unwrap(), int(1));
        assert_eq!(kostant_count(3, false).unwrap(), int(2));
        assert_eq!(kostant_count(4, false).unwrap(), int(10));
        assert!(matches!(kostant_count(9, true), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn guards() {
        assert!(matches!(count_arrays(9, 1, false), Err(Error::GuardExceeded(_))));
        assert!(matches!(enumerate_arrays(9, 1), Err(Error::GuardExceeded(_))));
        assert!(matches!(count_arrays(1, 1, false), Err(Error::InvalidInput(_))));
    }
}
