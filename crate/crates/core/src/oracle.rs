//! Independent lattice-point counters for dilates of `P_n` and its faces.
//!
//! A lattice point of `t * P_n` is a staircase array: `n` left-justified rows
//! of nonnegative integers, row `i` of length `min(i+1, n)`, with every row
//! and column sum equal to `t`. Faces are cut out by forcing chosen cells to
//! zero, interiors by requiring every cell to be positive.
//!
//! Two counting paths are kept deliberately separate: a plain brute-force
//! enumerator for desk-scale anti-regression checks, and a row dynamic
//! program whose state compresses indistinguishable columns (those without a
//! pending forced zero) into a multiset of residual sums. All other modules
//! are cross-checked against these counters.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::exact::{Int, Rat};
use crate::{Error, Result};

/// Default per-layer state limit for the dynamic program.
pub const DP_STATE_LIMIT: usize = 5_000_000;

/// Row length of a staircase array (1-based row index).
pub fn row_len(n: u32, row: u32) -> u32 {
    (row + 1).min(n)
}

/// A face of `P_n`, described by the cells forced to zero. The empty set is
/// `P_n` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    n: u32,
    forced_zeros: BTreeSet<(u32, u32)>,
}

impl FaceSpec {
    pub fn new(n: u32, zeros: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("FaceSpec requires n >= 2".into()));
        }
        let mut forced_zeros = BTreeSet::new();
        for (r, s) in zeros {
            if r < 1 || r > n || s < 1 || s > row_len(n, r) {
                return Err(Error::InvalidInput(format!(
                    "cell ({r},{s}) lies outside the staircase shape for n={n}"
                )));
            }
            forced_zeros.insert((r, s));
        }
        Ok(FaceSpec { n, forced_zeros })
    }

    pub fn polytope(n: u32) -> Result<Self> {
        FaceSpec::new(n, [])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn forced_zeros(&self) -> &BTreeSet<(u32, u32)> {
        &self.forced_zeros
    }

    fn is_zero_cell(&self, r: u32, s: u32) -> bool {
        self.forced_zeros.contains(&(r, s))
    }

    /// Last row at which `col` still carries a forced zero.
    fn last_zero_row(&self, col: u32) -> Option<u32> {
        self.forced_zeros
            .iter()
            .filter(|&&(_, s)| s == col)
            .map(|&(r, _)| r)
            .max()
    }
}

/// A concrete staircase array (used by the brute-force enumerator).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StaircaseArray {
    n: u32,
    rows: Vec<Vec<u32>>,
}

impl StaircaseArray {
    pub fn new(n: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.len() != n as usize {
            return Err(Error::InvalidInput("wrong number of rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != row_len(n, i as u32 + 1) as usize {
                return Err(Error::InvalidInput(format!("row {} has the wrong length", i + 1)));
            }
        }
        Ok(StaircaseArray { n, rows })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entries of the full n×n matrix (zeros above the superdiagonal).
    pub fn full_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.n as usize;
        let mut m = vec![vec![0u32; n]; n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[i][j] = v;
            }
        }
        m
    }

    /// Triangle coordinates as rationals scaled by `1/t`: the cells
    /// `(i, j)` with `1 <= j <= i <= n-1`, row-major.
    pub fn triangle_coords(&self, t: u32) -> Vec<Rat> {
        let mut out = Vec::new();
        let den = Int::from(t.max(1));
        for i in 1..self.n {
            for j in 1..=i {
                let v = self.rows[i as usize - 1][j as usize - 1];
                out.push(Rat::new(Int::from(v), den.clone()));
            }
        }
        out
    }
}

fn guard_brute(spec: &FaceSpec, t: u32, force: bool) -> Result<()> {
    if !force && spec.n > 4 && t > 4 {
        return Err(Error::GuardExceeded(format!(
            "brute-force enumeration of n={} at t={t} (guard: n<=4 or t<=4)",
            spec.n
        )));
    }
    Ok(())
}

/// Exact count by direct enumeration of all arrays. Guarded to desk scale
/// (`n <= 4` or `t <= 4`) unless forced.
pub fn count_points_bruteforce(spec: &FaceSpec, t: u32, force: bool) -> Result<Int> {
    guard_brute(spec, t, force)?;
    let mut count = Int::zero();
    visit_arrays(spec, t, 0, &mut |_| count += 1u32);
    Ok(count)
}

/// The arrays themselves, in lexicographic row-major order.
pub fn enumerate_points_bruteforce(spec: &FaceSpec, t: u32, force: bool) -> Result<Vec<StaircaseArray>> {
    guard_brute(spec, t, force)?;
    let mut out = Vec::new();
    visit_arrays(spec, t, 0, &mut |rows| {
        out.push(StaircaseArray { n: spec.n, rows: rows.to_vec() });
    });
    Ok(out)
}

fn visit_arrays(spec: &FaceSpec, t: u32, min_entry: u32, f: &mut impl FnMut(&[Vec<u32>])) {
    let n = spec.n;
    let mut rows: Vec<Vec<u32>> = (1..=n).map(|r| vec![0u32; row_len(n, r) as usize]).collect();
    let mut col_sums = vec![0u32; n as usize];
    fill_row(spec, t, min_entry, 1, &mut rows, &mut col_sums, f);
}

fn fill_row(
    spec: &FaceSpec,
    t: u32,
    min_entry: u32,
    row: u32,
    rows: &mut Vec<Vec<u32>>,
    col_sums: &mut Vec<u32>,
    f: &mut impl FnMut(&[Vec<u32>]),
) {
    let n = spec.n;
    if row > n {
        if col_sums.iter().all(|&c| c == t) {
            f(rows);
        }
        return;
    }
    let width = row_len(n, row) as usize;
    fill_cell(spec, t, min_entry, row, 0, width, t, rows, col_sums, f);
}

#[allow(clippy::too_many_arguments)]
fn fill_cell(
    spec: &FaceSpec,
    t: u32,
    min_entry: u32,
    row: u32,
    cell: usize,
    width: usize,
    row_remaining: u32,
    rows: &mut Vec<Vec<u32>>,
    col_sums: &mut Vec<u32>,
    f: &mut impl FnMut(&[Vec<u32>]),
) {
    let n = spec.n;
    if cell == width {
        if row_remaining != 0 {
            return;
        }
        // Column feasibility: every column must still be able to reach t.
        let rows_left = n - row;
        for (c, &sum) in col_sums.iter().enumerate() {
            let open = (c as u32 + 1) <= row_len(n, row); // column already open
            if !open {
                continue;
            }
            if sum > t || (t - sum) > rows_left * t {
                return;
            }
            if min_entry > 0 && (t - sum) < rows_left * min_entry {
                return;
            }
        }
        fill_row(spec, t, min_entry, row + 1, rows, col_sums, f);
        return;
    }
    let col = cell; // 0-based; cell s = col+1
    let forced = spec.is_zero_cell(row, col as u32 + 1);
    let cap = (t - col_sums[col]).min(row_remaining);
    let (lo, hi) = if forced { (0, 0) } else { (min_entry, cap) };
    if lo > hi {
        return;
    }
    for v in lo..=hi {
        rows[row as usize - 1][cell] = v;
        col_sums[col] += v;
        fill_cell(spec, t, min_entry, row, cell + 1, width, row_remaining - v, rows, col_sums, f);
        col_sums[col] -= v;
    }
    rows[row as usize - 1][cell] = 0;
}

// ---------------------------------------------------------------------------
// Row DP with multiset-compressed column residuals
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct DpState {
    /// Residual sums of interchangeable columns, sorted ascending, zeros dropped.
    anon: Vec<u32>,
    /// Columns that must keep their identity (a forced zero is still ahead),
    /// sorted by column id.
    tagged: Vec<(u32, u32)>,
}

/// Exact count via the row DP. Agrees with [`count_points_bruteforce`]
/// wherever both run; scales far beyond it.
pub fn count_points_dp(spec: &FaceSpec, t: u32, force: bool) -> Result<Int> {
    dp_count(spec, t, 0, force)
}

/// Number of strictly positive staircase arrays with all sums `t`, i.e.
/// interior lattice points of the dilate.
pub fn count_interior(n: u32, t: u32) -> Result<Int> {
    if t == 0 {
        return Err(Error::InvalidInput("count_interior requires t >= 1".into()));
    }
    let spec = FaceSpec::polytope(n)?;
    dp_count(&spec, t, 1, false)
}

fn dp_count(spec: &FaceSpec, t: u32, min_entry: u32, force: bool) -> Result<Int> {
    if min_entry > 0 && !spec.forced_zeros.is_empty() {
        return Ok(Int::zero());
    }
    let n = spec.n;
    let mut layer: HashMap<DpState, Int> = HashMap::new();
    layer.insert(DpState { anon: Vec::new(), tagged: Vec::new() }, Int::one());
    for row in 1..=n {
        let fresh: Vec<u32> = if row == 1 {
            vec![1, 2]
        } else if row < n {
            vec![row + 1]
        } else {
            Vec::new()
        };
        let rows_left = n - row;
        let mut next: HashMap<DpState, Int> = HashMap::new();
        for (state, ways) in &layer {
            expand_state(spec, t, min_entry, row, rows_left, &fresh, state, ways, &mut next);
            if next.len() > DP_STATE_LIMIT && !force {
                return Err(Error::GuardExceeded(format!(
                    "row DP exceeded {DP_STATE_LIMIT} states at row {row} (n={n}, t={t})"
                )));
            }
        }
        layer = next;
    }
    let done = DpState { anon: Vec::new(), tagged: Vec::new() };
    Ok(layer.get(&done).cloned().unwrap_or_else(Int::zero))
}

#[derive(Clone, Copy)]
enum Slot {
    /// A column with positional identity: (col, residual, forced zero here,
    /// stays tagged after this row).
    Fixed { col: u32, res: u32, forced: bool, keep_tag: bool },
    /// A class of `mult` interchangeable columns with equal residual `value`.
    Class { value: u32, mult: u32 },
}

struct Expander<'a> {
    slots: Vec<Slot>,
    /// suffix_cap[i] = most the slots i.. can absorb this row.
    suffix_cap: Vec<u64>,
    /// suffix_min[i] = least the slots i.. must absorb this row.
    suffix_min: Vec<u64>,
    min_entry: u32,
    /// Rows still to come after this one.
    rows_left: u32,
    out: &'a mut Vec<(DpState, Int)>,
}

impl Expander<'_> {
    /// Bounds for what a single column with residual `res` may give in this
    /// row: at least `min_entry`, and small enough that the residual can
    /// still feed every remaining row. `None` means the state is dead.
    fn give_range(&self, res: u32, forced: bool) -> Option<(u32, u32)> {
        let future_need = self.rows_left * self.min_entry;
        if forced {
            (res >= future_need).then_some((0, 0))
        } else {
            let hi = res.checked_sub(future_need)?;
            (self.min_entry <= hi).then_some((self.min_entry, hi))
        }
    }

    /// A column may end this row with residual zero only if no further row
    /// demands a positive entry from it.
    fn residual_ok(&self, new_res: u32) -> bool {
        new_res > 0 || self.min_entry == 0 || self.rows_left == 0
    }

    fn run(&mut self, total: u32) {
        let mut anon = Vec::new();
        let mut tagged = Vec::new();
        self.rec(0, total, &mut anon, &mut tagged, Int::one());
    }

    fn rec(
        &mut self,
        idx: usize,
        remaining: u32,
        acc_anon: &mut Vec<u32>,
        acc_tagged: &mut Vec<(u32, u32)>,
        mult: Int,
    ) {
        if (remaining as u64) > self.suffix_cap[idx] || (remaining as u64) < self.suffix_min[idx] {
            return;
        }
        if idx == self.slots.len() {
            let mut anon = acc_anon.clone();
            anon.sort_unstable();
            let mut tagged = acc_tagged.clone();
            tagged.sort_unstable();
            self.out.push((DpState { anon, tagged }, mult));
            return;
        }
        match self.slots[idx] {
            Slot::Fixed { col, res, forced, keep_tag } => {
                let Some((lo, hi)) = self.give_range(res, forced) else { return };
                for give in lo..=hi.min(remaining) {
                    let new_res = res - give;
                    if keep_tag {
                        acc_tagged.push((col, new_res));
                    } else if new_res > 0 {
                        acc_anon.push(new_res);
                    } else if !self.residual_ok(new_res) {
                        continue;
                    }
                    self.rec(idx + 1, remaining - give, acc_anon, acc_tagged, mult.clone());
                    if keep_tag {
                        acc_tagged.pop();
                    } else if new_res > 0 {
                        acc_anon.pop();
                    }
                }
            }
            Slot::Class { value, mult: m } => {
                let Some((lo, hi)) = self.give_range(value, false) else { return };
                self.class_rec(idx, value, hi as i64, m, lo, remaining, acc_anon, acc_tagged, mult);
            }
        }
    }

    /// Distributes over the `cols_left` interchangeable columns of one class
    /// as a multiset of gives, largest value first: `give` is the candidate
    /// value, each distinct value is assigned a multiplicity exactly once,
    /// and the number of ordered assignments is the product of the binomial
    /// choices.
    #[allow(clippy::too_many_arguments)]
    fn class_rec(
        &mut self,
        idx: usize,
        value: u32,
        give: i64,
        cols_left: u32,
        lo: u32,
        remaining: u32,
        acc_anon: &mut Vec<u32>,
        acc_tagged: &mut Vec<(u32, u32)>,
        mult: Int,
    ) {
        if cols_left == 0 {
            self.rec(idx + 1, remaining, acc_anon, acc_tagged, mult);
            return;
        }
        if give < lo as i64 {
            return; // columns unfilled but no admissible values left
        }
        let g = give as u32;
        // Bounds: all-lo is the cheapest completion of this class, all-g the
        // most expensive; the later slots can pick up suffix_cap more.
        if (lo as u64) * (cols_left as u64) > remaining as u64 {
            return;
        }
        if (g as u64) * (cols_left as u64) + self.suffix_cap[idx + 1] < remaining as u64 {
            return;
        }
        let new_res = value - g;
        let max_k = remaining.checked_div(g).map_or(cols_left, |q| cols_left.min(q));
        let value_usable = self.residual_ok(new_res);
        // k = how many columns give exactly g (0 allowed: skip this value).
        for k in 0..=max_k {
            if k > 0 && !value_usable {
                break;
            }
            let used = g * k;
            let weight = if k == 0 { mult.clone() } else { &mult * Int::from(binomial(cols_left, k)) };
            for _ in 0..k {
                if new_res > 0 {
                    acc_anon.push(new_res);
                }
            }
            self.class_rec(
                idx,
                value,
                give - 1,
                cols_left - k,
                lo,
                remaining - used,
                acc_anon,
                acc_tagged,
                weight,
            );
            for _ in 0..k {
                if new_res > 0 {
                    acc_anon.pop();
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn expand_state(
    spec: &FaceSpec,
    t: u32,
    min_entry: u32,
    row: u32,
    rows_left: u32,
    fresh: &[u32],
    state: &DpState,
    ways: &Int,
    next: &mut HashMap<DpState, Int>,
) {
    // Assemble the slots for this row: previously tagged columns, freshly
    // opened columns, then the anonymous residual classes.
    let mut slots: Vec<Slot> = Vec::new();
    for &(col, res) in &state.tagged {
        slots.push(Slot::Fixed {
            col,
            res,
            forced: spec.is_zero_cell(row, col),
            keep_tag: spec.last_zero_row(col).is_some_and(|last| last > row),
        });
    }
    for &col in fresh {
        slots.push(Slot::Fixed {
            col,
            res: t,
            forced: spec.is_zero_cell(row, col),
            keep_tag: spec.last_zero_row(col).is_some_and(|last| last > row),
        });
    }
    let mut classes: Vec<(u32, u32)> = Vec::new();
    for &v in &state.anon {
        match classes.last_mut() {
            Some((value, mult)) if *value == v => *mult += 1,
            _ => classes.push((v, 1)),
        }
    }
    slots.extend(classes.into_iter().map(|(value, mult)| Slot::Class { value, mult }));

    let mut results: Vec<(DpState, Int)> = Vec::new();
    let mut expander = Expander {
        slots,
        suffix_cap: Vec::new(),
        suffix_min: Vec::new(),
        min_entry,
        rows_left,
        out: &mut results,
    };
    let k = expander.slots.len();
    let mut suffix_cap = vec![0u64; k + 1];
    let mut suffix_min = vec![0u64; k + 1];
    for i in (0..k).rev() {
        let (cap, min) = match expander.slots[i] {
            Slot::Fixed { res, forced, .. } => match expander.give_range(res, forced) {
                Some((lo, hi)) => (hi as u64, lo as u64),
                None => return, // this column can no longer survive
            },
            Slot::Class { value, mult } => match expander.give_range(value, false) {
                Some((lo, hi)) => (hi as u64 * mult as u64, lo as u64 * mult as u64),
                None => return,
            },
        };
        suffix_cap[i] = suffix_cap[i + 1] + cap;
        suffix_min[i] = suffix_min[i + 1] + min;
    }
    expander.suffix_cap = suffix_cap;
    expander.suffix_min = suffix_min;
    expander.run(t);
    drop(expander);

    for (succ, mult) in results {
        let entry = next.entry(succ).or_insert_with(Int::zero);
        *entry += ways * &mult;
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    for i in 0..k {
        num = num * (n - i) as u64 / (i + 1) as u64;
    }
    num
}

/// Smallest `t` for which the interior of `t * P_n` can contain a lattice
/// point: `max_k (k+1)(n-k)`. Interior counts vanish strictly below it.
pub fn interior_bound(n: u32) -> u32 {
    (0..n).map(|k| (k + 1) * (n - k)).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn face_spec_validates_cells() {
        assert!(FaceSpec::new(3, [(1, 3)]).is_err()); // row 1 has length 2
        assert!(FaceSpec::new(3, [(2, 3)]).is_ok());
        assert!(FaceSpec::new(3, [(4, 1)]).is_err());
        let dup = FaceSpec::new(3, [(2, 2), (2, 2)]).unwrap();
        assert_eq!(dup.forced_zeros().len(), 1);
    }

    #[test]
    fn brute_force_p3_t1() {
        let spec = FaceSpec::polytope(3).unwrap();
        let pts = enumerate_points_bruteforce(&spec, 1, false).unwrap();
        assert_eq!(pts.len(), 4);
        let mut found: Vec<Vec<Vec<u32>>> = pts.iter().map(|a| a.rows().to_vec()).collect();
        found.sort();
        let mut expected = vec![
            vec![vec![1, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![1, 0], vec![0, 0, 1], vec![0, 1, 0]],
            vec![vec![0, 1], vec![1, 0, 0], vec![0, 0, 1]],
            vec![vec![0, 1], vec![0, 0, 1], vec![1, 0, 0]],
        ];
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn brute_force_p2_line() {
        let spec = FaceSpec::polytope(2).unwrap();
        assert_eq!(count_points_bruteforce(&spec, 5, false).unwrap(), int(6));
    }

    #[test]
    fn brute_force_guard() {
        let spec = FaceSpec::polytope(5).unwrap();
        assert!(matches!(
            count_points_bruteforce(&spec, 5, false),
            Err(Error::GuardExceeded(_))
        ));
        assert!(count_points_bruteforce(&spec, 4, false).is_ok());
    }

    #[test]
    fn dp_matches_brute_small_grid() {
        for n in 2..=4u32 {
            for t in 0..=4u32 {
                let spec = FaceSpec::polytope(n).unwrap();
                assert_eq!(
                    count_points_dp(&spec, t, false).unwrap(),
                    count_points_bruteforce(&spec, t, false).unwrap(),
                    "n={n} t={t}"
                );
            }
        }
    }

    #[test]
    fn dp_matches_brute_with_zeros() {
        for n in 3..=4u32 {
            for r in 1..=n {
                for s in 1..=row_len(n, r) {
                    let spec = FaceSpec::new(n, [(r, s)]).unwrap();
                    for t in 1..=4u32 {
                        assert_eq!(
                            count_points_dp(&spec, t, false).unwrap(),
                            count_points_bruteforce(&spec, t, false).unwrap(),
                            "n={n} zero=({r},{s}) t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dp_powers_of_two_at_t1() {
        for n in 2..=12u32 {
            let spec = FaceSpec::polytope(n).unwrap();
            assert_eq!(
                count_points_dp(&spec, 1, false).unwrap(),
                Int::from(1u64 << (n - 1)),
                "n={n}"
            );
        }
    }

    #[test]
    fn interior_counts_and_bound() {
        assert_eq!(interior_bound(5), 9);
        assert_eq!(interior_bound(6), 12);
        assert_eq!(interior_bound(2), 2);
        for t in 1..=3 {
            assert_eq!(count_interior(3, t).unwrap(), int(0), "t={t}");
        }
        assert_eq!(count_interior(3, 4).unwrap(), int(1));
        for t in 1..=5 {
            assert_eq!(count_interior(4, t).unwrap(), int(0), "t={t}");
        }
    }
}
