//! Test-only oracles, deliberately written as plain nested enumeration with
//! no state compression, so they share nothing with the library's counting
//! paths.
#![allow(dead_code)] // each test binary uses a different subset

use staircase_polytope::exact::Int;

/// Row length of the staircase shape.
pub fn row_len(n: u32, row: u32) -> u32 {
    (row + 1).min(n)
}

/// Counts staircase arrays with all row and column sums `t`, entries at
/// least `min_entry`, and zeros forced at the given cells, by exhaustive
/// cell-by-cell search.
pub fn naive_count(n: u32, t: u32, zeros: &[(u32, u32)], min_entry: u32) -> u64 {
    let mut cells: Vec<(u32, u32)> = Vec::new();
    for r in 1..=n {
        for s in 1..=row_len(n, r) {
            cells.push((r, s));
        }
    }
    let mut row_sums = vec![0u32; n as usize + 1];
    let mut col_sums = vec![0u32; n as usize + 1];
    let mut count = 0u64;
    search(&cells, 0, n, t, zeros, min_entry, &mut row_sums, &mut col_sums, &mut count);
    count
}

#[allow(clippy::too_many_arguments)]
fn search(
    cells: &[(u32, u32)],
    idx: usize,
    n: u32,
    t: u32,
    zeros: &[(u32, u32)],
    min_entry: u32,
    row_sums: &mut Vec<u32>,
    col_sums: &mut Vec<u32>,
    count: &mut u64,
) {
    if idx == cells.len() {
        let rows_ok = (1..=n).all(|r| row_sums[r as usize] == t);
        let cols_ok = (1..=n).all(|c| col_sums[c as usize] == t);
        if rows_ok && cols_ok {
            *count += 1;
        }
        return;
    }
    let (r, s) = cells[idx];
    let last_in_row = s == row_len(n, r);
    let hi = if zeros.contains(&(r, s)) {
        0
    } else {
        t.saturating_sub(row_sums[r as usize]).min(t.saturating_sub(col_sums[s as usize]))
    };
    let lo = if zeros.contains(&(r, s)) { 0 } else { min_entry };
    for v in lo..=hi {
        if last_in_row && row_sums[r as usize] + v != t {
            continue;
        }
        row_sums[r as usize] += v;
        col_sums[s as usize] += v;
        search(cells, idx + 1, n, t, zeros, min_entry, row_sums, col_sums, count);
        row_sums[r as usize] -= v;
        col_sums[s as usize] -= v;
    }
}

/// Kostant partition count by brute force over root multiplicities: the
/// number of nonnegative solutions of
/// `sum_(i<j) c_(ij) (e_i - e_j) = (1, 2, ..., n-1, -n(n-1)/2)`.
///
/// Roots are processed lexicographically, so once the `(i, .)` block is
/// reached nothing can ever add to coordinate `i` again: each block must
/// drain its residual exactly, which bounds every multiplicity.
pub fn naive_kostant(n: u32) -> u64 {
    let n = n as usize;
    let mut roots: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.push((i, j));
        }
    }
    let mut target: Vec<i64> = (1..n as i64).collect();
    target.push(-((n as i64) * (n as i64 - 1) / 2));
    let mut count = 0u64;
    kostant_rec(&roots, 0, &mut target, &mut count);
    count
}

fn kostant_rec(roots: &[(usize, usize)], idx: usize, residual: &mut Vec<i64>, count: &mut u64) {
    if idx == roots.len() {
        if residual.iter().all(|&v| v == 0) {
            *count += 1;
        }
        return;
    }
    let (i, j) = roots[idx];
    if residual[i] < 0 {
        return;
    }
    let last_of_block = idx + 1 == roots.len() || roots[idx + 1].0 != i;
    let choices: Vec<i64> = if last_of_block {
        vec![residual[i]] // forced: the block must drain coordinate i
    } else {
        (0..=residual[i]).collect()
    };
    for c in choices {
        residual[i] -= c;
        residual[j] += c;
        kostant_rec(roots, idx + 1, residual, count);
        residual[i] += c;
        residual[j] -= c;
    }
}

#[allow(dead_code)]
pub fn int(v: i64) -> Int {
    Int::from(v)
}
