//! Transfer-matrix evaluation of `e(P_n, t)`.
//!
//! For a fixed dilation factor `t`, the counts `e(P_n, t)` over all `n`
//! satisfy a linear recursion of degree `p(t)`: filling the staircase array
//! row by row induces a map on partition-indexed count vectors, and the
//! matrix `M` of that map does not depend on `n`. Applying `M^(n-1)` to the
//! all-ones vector and reading the component at the one-part partition `(t)`
//! gives `e(P_n, t)`. The characteristic polynomial `f_t` of `M` supplies the
//! recursion coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::exact::{char_poly, Int, IntMatrix, UniPoly};
use crate::{Error, Result};

/// Hard default ceiling on `t` for building transfer matrices; `p(30) = 5604`
/// is already a stretch for a desk run.
pub const DEFAULT_MAX_T: u32 = 30;

/// A partition of `t`: positive parts, stored weakly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// All partitions of `t` in reverse-lexicographic order, `(t)` first:
/// `(2), (1,1)` for `t = 2`. This matches the row/column order used in all
/// matrix dumps and keeps the `(t)` component at index 0.
pub fn partitions_of(t: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_partitions(t, t, &mut stack, &mut out);
    out
}

/// Partitions of `t` with at most `max_len` parts, in the same order.
pub fn partitions_of_bounded(t: u32, max_len: usize) -> Vec<Partition> {
    partitions_of(t).into_iter().filter(|p| p.len() <= max_len).collect()
}

fn gen_partitions(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        let mut parts = stack.clone();
        parts.reverse();
        out.push(Partition { parts });
        return;
    }
    let hi = remaining.min(max_part);
    for part in (1..=hi).rev() {
        stack.push(part);
        gen_partitions(remaining - part, part, stack, out);
        stack.pop();
    }
}

/// Ordered list of partitions with ordinal lookup.
#[derive(Clone, Debug)]
pub struct PartitionIndex {
    list: Vec<Partition>,
    pos: HashMap<Vec<u32>, usize>,
}

impl PartitionIndex {
    fn new(list: Vec<Partition>) -> Self {
        let pos = list
            .iter()
            .enumerate()
            .map(|(i, p)| (p.parts.clone(), i))
            .collect();
        PartitionIndex { list, pos }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.list
    }

    pub fn position(&self, parts: &[u32]) -> Option<usize> {
        self.pos.get(parts).copied()
    }
}

/// The partition-indexed transfer matrix for weight `t`. `entries` is
/// row-major over the index; entry `(pi, sigma)` counts the first-row tuples
/// that carry residual column sums `pi` to residual column sums `sigma`.
#[derive(Debug)]
pub struct TransferMatrix {
    t: u32,
    index: PartitionIndex,
    entries: Vec<Int>,
}

impl TransferMatrix {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &PartitionIndex {
        &self.index
    }

    pub fn entry(&self, row: usize, col: usize) -> &Int {
        &self.entries[row * self.dim() + col]
    }

    pub fn row_sum(&self, row: usize) -> Int {
        let d = self.dim();
        self.entries[row * d..(row + 1) * d].iter().sum()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.dim(), self.entries.clone()).expect("square by construction")
    }

    fn apply(&self, vec: &[Int]) -> Vec<Int> {
        let d = self.dim();
        let mut out = vec![Int::zero(); d];
        for (row, slot) in out.iter_mut().enumerate() {
            let mut acc = Int::zero();
            for col in 0..d {
                let m = &self.entries[row * d + col];
                if !m.is_zero() {
                    acc += m * &vec[col];
                }
            }
            *slot = acc;
        }
        out
    }
}

fn guard_t(t: u32, override_guard: bool) -> Result<()> {
    if t > DEFAULT_MAX_T && !override_guard {
        return Err(Error::GuardExceeded(format!(
            "transfer matrix for t={t} exceeds the default limit t<={DEFAULT_MAX_T}"
        )));
    }
    Ok(())
}

type MatrixCache = Mutex<HashMap<(u32, usize), Arc<TransferMatrix>>>;

fn cache() -> &'static MatrixCache {
    static CACHE: OnceLock<MatrixCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches from the in-process cache) the full transfer matrix
/// for weight `t`.
pub fn build_transfer_matrix(t: u32, override_guard: bool) -> Result<Arc<TransferMatrix>> {
    build_inner(t, usize::MAX, override_guard)
}

/// Same matrix restricted to partitions of length at most `max_len`.
/// Transitions leaving the restricted index set are dropped; for reads of the
/// `(t)` component over `n <= max_len` row steps this loses nothing, since a
/// path of `n-1` steps starting from a one-part partition never grows past
/// length `n`.
pub fn build_transfer_matrix_truncated(
    t: u32,
    max_len: usize,
    override_guard: bool,
) -> Result<Arc<TransferMatrix>> {
    build_inner(t, max_len, override_guard)
}

fn build_inner(t: u32, max_len: usize, override_guard: bool) -> Result<Arc<TransferMatrix>> {
    guard_t(t, override_guard)?;
    // Partition lengths never exceed t (all parts >= 1), so clamp the key.
    let key_len = (max_len).min(t.max(1) as usize);
    if let Some(hit) = cache().lock().unwrap().get(&(t, key_len)) {
        return Ok(Arc::clone(hit));
    }
    let index = PartitionIndex::new(partitions_of_bounded(t, key_len));
    let d = index.len();
    let mut counts = vec![0u64; d * d];
    let mut xs: Vec<u32> = Vec::new();
    for (row, pi) in index.partitions().iter().enumerate() {
        xs.clear();
        xs.extend_from_slice(pi.parts());
        xs.push(t);
        let mut ys = vec![0u32; xs.len()];
        enumerate_tuples(&xs, t, 0, &mut ys, &mut |ys| {
            let mut sigma: Vec<u32> = xs
                .iter()
                .zip(ys.iter())
                .map(|(&x, &y)| x - y)
                .filter(|&z| z > 0)
                .collect();
            sigma.sort_unstable();
            if let Some(col) = index.position(&sigma) {
                counts[row * d + col] += 1;
            }
        });
    }
    let entries = counts.into_iter().map(Int::from).collect();
    let matrix = Arc::new(TransferMatrix { t, index, entries });
    cache()
        .lock()
        .unwrap()
        .entry((t, key_len))
        .or_insert_with(|| Arc::clone(&matrix));
    Ok(matrix)
}

/// Lexicographic enumeration of tuples `0 <= y_i <= x_i` with sum `t`.
fn enumerate_tuples(xs: &[u32], remaining: u32, i: usize, ys: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == xs.len() - 1 {
        if remaining <= xs[i] {
            ys[i] = remaining;
            f(ys);
        }
        return;
    }
    // Prune on the capacity of the suffix.
    let suffix_cap: u32 = xs[i + 1..].iter().sum();
    let lo = remaining.saturating_sub(suffix_cap);
    let hi = xs[i].min(remaining);
    for y in lo..=hi {
        ys[i] = y;
        enumerate_tuples(xs, remaining - y, i + 1, ys, f);
    }
}

/// `e(P_n, t)` via the full transfer matrix: apply `M^(n-1)` to the all-ones
/// vector and read the component of the one-part partition `(t)`.
pub fn evaluate_e(n: u32, t: u32, override_guard: bool) -> Result<Int> {
    if n == 0 {
        return Err(Error::InvalidInput("evaluate_e requires n >= 1".into()));
    }
    if n == 1 {
        return Ok(Int::one());
    }
    let m = build_transfer_matrix(t, override_guard)?;
    Ok(iterate(&m, n))
}

/// Same value as [`evaluate_e`], computed on the submatrix of partitions of
/// length at most `n`. Much cheaper when `t` is large relative to `n`.
pub fn evaluate_e_truncated(n: u32, t: u32, override_guard: bool) -> Result<Int> {
    if n == 0 {
        return Err(Error::InvalidInput("evaluate_e requires n >= 1".into()));
    }
    if n == 1 {
        return Ok(Int::one());
    }
    let m = build_transfer_matrix_truncated(t, n as usize, override_guard)?;
    Ok(iterate(&m, n))
}

fn iterate(m: &TransferMatrix, n: u32) -> Int {
    let mut vec = vec![Int::one(); m.dim()];
    for _ in 1..n {
        vec = m.apply(&vec);
    }
    vec[0].clone()
}

/// Characteristic polynomial `f_t` of the weight-`t` transfer matrix: monic,
/// integer coefficients, degree `p(t)`.
pub fn char_poly_ft(t: u32, override_guard: bool) -> Result<UniPoly> {
    let m = build_transfer_matrix(t, override_guard)?;
    Ok(char_poly(&m.to_int_matrix()))
}

/// Checks that values `e(P_1,t) ... e(P_max,t)` satisfy the `f_t` recursion:
/// with `f_t = x^d + c_1 x^(d-1) + ... + c_d`, every window obeys
/// `sum_k c_k * e(P_(n-k), t) = -e(P_n, t)`.
pub fn recursion_holds(t: u32, values: &[Int]) -> Result<bool> {
    let ft = char_poly_ft(t, false)?;
    let d = ft.degree().unwrap_or(0);
    if values.len() <= d {
        return Ok(true);
    }
    let coeffs: Vec<Int> = ft
        .coeffs()
        .iter()
        .map(|c| c.numer().clone())
        .collect();
    for window_end in d..values.len() {
        let mut acc = Int::zero();
        for (k, c) in coeffs.iter().enumerate() {
            acc += c * &values[window_end - (d - k)];
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
