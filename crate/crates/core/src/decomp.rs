//! The explicit unimodular decomposition of `P_n`.
//!
//! Points of `P_n` are determined by the triangle `y_(ij)`,
//! `1 <= j <= i <= n-1`; the remaining matrix entries follow from the row
//! and column sums. Each array `alpha` in `A_n` is turned into a linear map
//! `L(alpha)` on that triangle, built column by column: the variables in row
//! `k` are parsed into chunks sized by column `k+1` of `alpha`, each chunk
//! gets a cap (the first variable not yet used by any chunk), caps absorb
//! the new column's variables in rows `1..k`, and each new variable absorbs
//! its chunk. Every cell of the result is a sum of distinct variables, the
//! map has determinant +-1, and the images of the unit simplex tile `P_n`.
//!
//! Point location inverts this: a point is assigned the cell (or cells, on
//! boundaries) whose preimage lands in the unit simplex. The tiling claim is
//! tested by locating random rational points.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrays::{self, TriArray};
use crate::exact::{det_exact, Int, IntMatrix, Rat};
use crate::vertices::staircase_permutations;
use crate::{Error, Result};

/// Default ceiling for decomposition work (140 cells at n=6); n=7 (5880
/// cells) sits behind the heavy flag.
pub const DEFAULT_MAX_N: u32 = 6;
pub const HEAVY_MAX_N: u32 = 7;

/// Triangle variable `x_(ij)`, `1 <= j <= i <= n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub i: u32,
    pub j: u32,
}

/// Orders variables column-major: compare `(j, i)`. For n = 6 this assigns
/// the letters A..O down successive columns of the triangle.
fn var_order(n: u32) -> Vec<VarId> {
    let mut vars = Vec::new();
    for j in 1..n {
        for i in j..n {
            vars.push(VarId { i, j });
        }
    }
    vars
}

/// Triangle cell positions `(i, j)`, row-major, matching the y-coordinates.
fn cell_order(n: u32) -> Vec<(u32, u32)> {
    let mut cells = Vec::new();
    for i in 1..n {
        for j in 1..=i {
            cells.push((i, j));
        }
    }
    cells
}

/// A triangle of 0/1-coefficient linear forms, one per cell `(i,j)`,
/// `1 <= j <= i <= n-1`. Each form is a set of variables stored as a bitmask
/// over the column-major variable order (dimension <= 28 for n <= 8).
#[derive(Clone, PartialEq, Eq)]
pub struct LinFuncTriangle {
    n: u32,
    /// cells[i-1][j-1] = bitmask of variable positions.
    cells: Vec<Vec<u64>>,
}

impl LinFuncTriangle {
    fn identity(n: u32) -> Self {
        let vars = var_order(n);
        let mut cells: Vec<Vec<u64>> = (1..n).map(|i| vec![0u64; i as usize]).collect();
        for (pos, v) in vars.iter().enumerate() {
            cells[v.i as usize - 1][v.j as usize - 1] = 1u64 << pos;
        }
        LinFuncTriangle { n, cells }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mask(&self, i: u32, j: u32) -> u64 {
        self.cells[i as usize - 1][j as usize - 1]
    }

    /// Variables of cell `(i,j)` in the column-major order.
    pub fn cell_vars(&self, i: u32, j: u32) -> Vec<VarId> {
        let vars = var_order(self.n);
        let mask = self.mask(i, j);
        vars.iter()
            .enumerate()
            .filter(|(pos, _)| mask & (1 << pos) != 0)
            .map(|(_, v)| *v)
            .collect()
    }

    /// Union of the variables in row `i`.
    fn row_mask(&self, i: u32) -> u64 {
        self.cells[i as usize - 1].iter().fold(0, |acc, m| acc | m)
    }

    /// Union of the variables in column `j`.
    fn col_mask(&self, j: u32) -> u64 {
        (j..self.n).fold(0, |acc, i| acc | self.mask(i, j))
    }

    /// The 0/1 coefficient matrix: rows = cells (row-major), columns =
    /// variables (column-major).
    pub fn coefficient_matrix(&self) -> IntMatrix {
        let cells = cell_order(self.n);
        let d = cells.len();
        let mut entries = vec![Int::zero(); d * d];
        for (r, &(i, j)) in cells.iter().enumerate() {
            let mask = self.mask(i, j);
            for pos in 0..d {
                if mask & (1 << pos) != 0 {
                    entries[r * d + pos] = Int::one();
                }
            }
        }
        IntMatrix::new(d, entries).expect("square by construction")
    }

    /// Renders cells as juxtaposed letters (A.. in column-major variable
    /// order) when the dimension allows, mirroring hand notation.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        let d = cell_order(self.n).len();
        (1..self.n)
            .map(|i| {
                (1..=i)
                    .map(|j| {
                        let mask = self.mask(i, j);
                        if d <= 26 {
                            (0..d)
                                .filter(|pos| mask & (1 << pos) != 0)
                                .map(|pos| char::from(b'A' + pos as u8))
                                .collect()
                        } else {
                            let vars = self.cell_vars(i, j);
                            vars.iter()
                                .map(|v| format!("x{}{}", v.i, v.j))
                                .collect::<Vec<_>>()
                                .join("+")
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for LinFuncTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.display_rows() {
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Substitution order inside substep 1; the result is provably independent
/// of it, which the tests exercise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstepOrder {
    Ascending,
    Descending,
}

fn guard_n(n: u32, heavy: bool) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput("decomposition requires n >= 2".into()));
    }
    let max = if heavy { HEAVY_MAX_N } else { DEFAULT_MAX_N };
    if n > max {
        return Err(Error::GuardExceeded(format!(
            "decomposition for n={n} exceeds the limit {max}"
        )));
    }
    if cell_order(n).len() > 64 {
        return Err(Error::GuardExceeded(format!("triangle dimension for n={n} exceeds 64 bits")));
    }
    Ok(())
}

/// Builds `L(alpha)`, validating the structural conditions at every stage.
pub fn build_linear_map(alpha: &TriArray) -> Result<LinFuncTriangle> {
    Ok(build_stages(alpha)?.pop().expect("at least the identity stage"))
}

/// The chunk parse for one step: the row-`k` variables, in order, split into
/// one chunk per entry of column `k+1` of the array, each chunk capped by
/// the first variable not yet consumed. Consecutive empty chunks share caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkPlan {
    /// Column of the array this step consumes (`k+1`).
    pub column: u32,
    /// The z-list: row-`k` variables in the assigned order.
    pub zs: Vec<VarId>,
    /// One chunk per row `i = k+1 .. n-1`, in order.
    pub chunks: Vec<Vec<VarId>>,
    /// The cap of each chunk.
    pub caps: Vec<VarId>,
}

/// All intermediate triangles: `stages[k-1]` is the state after columns
/// `2..=k` of `alpha` have been used (`stages[0]` is the identity).
pub fn build_stages(alpha: &TriArray) -> Result<Vec<LinFuncTriangle>> {
    Ok(build_stages_detailed(alpha, SubstepOrder::Ascending)?.0)
}

pub fn build_stages_with_order(
    alpha: &TriArray,
    order: SubstepOrder,
) -> Result<Vec<LinFuncTriangle>> {
    Ok(build_stages_detailed(alpha, order)?.0)
}

/// Stages plus the chunk plan used at each step.
pub fn build_stages_detailed(
    alpha: &TriArray,
    order: SubstepOrder,
) -> Result<(Vec<LinFuncTriangle>, Vec<ChunkPlan>)> {
    let n = alpha.n();
    guard_n(n, true)?;
    alpha.validate()?;
    let vars = var_order(n);
    let mut tri = LinFuncTriangle::identity(n);
    let mut stages = vec![tri.clone()];
    let mut plans = Vec::new();
    validate_conditions(&tri, alpha, 1).into_result()?;

    for k in 1..=(n - 2) {
        // z-list: variables of row k in the assigned (column-major) order.
        let row_mask = tri.row_mask(k);
        let zs: Vec<usize> = (0..vars.len()).filter(|pos| row_mask & (1 << pos) != 0).collect();

        // Parse the z's into chunks sized by column k+1 of alpha, capping
        // each chunk with the first z not yet consumed.
        let col = k + 1;
        let mut used = 0usize;
        let mut chunks: Vec<(u64, usize)> = Vec::new(); // (chunk mask, cap position)
        let mut plan = ChunkPlan {
            column: col,
            zs: zs.iter().map(|&pos| vars[pos]).collect(),
            chunks: Vec::new(),
            caps: Vec::new(),
        };
        for i in col..n {
            let size = alpha.entry(i, col) as usize;
            if used + size >= zs.len() {
                return Err(Error::InvalidInput(format!(
                    "chunk overflow at column {col}: the array violates its bound"
                )));
            }
            let mask = zs[used..used + size].iter().fold(0u64, |acc, &pos| acc | (1 << pos));
            plan.chunks.push(zs[used..used + size].iter().map(|&pos| vars[pos]).collect());
            used += size;
            plan.caps.push(vars[zs[used]]);
            chunks.push((mask, zs[used]));
        }
        plans.push(plan);

        // Substep 1: each cap absorbs the new column's variable in the old
        // columns 1..k.
        let rows: Vec<u32> = match order {
            SubstepOrder::Ascending => (col..n).collect(),
            SubstepOrder::Descending => (col..n).rev().collect(),
        };
        for &i in &rows {
            let chunk_idx = (i - col) as usize;
            let cap_bit = 1u64 << chunks[chunk_idx].1;
            let new_var_bit = var_bit(&vars, i, col);
            for ii in 1..n {
                for jj in 1..=ii.min(k) {
                    let mask = tri.mask(ii, jj);
                    if mask & cap_bit != 0 {
                        tri.cells[ii as usize - 1][jj as usize - 1] = mask | new_var_bit;
                    }
                }
            }
        }

        // Substep 2: each new variable absorbs its chunk, in place.
        for i in col..n {
            let chunk_idx = (i - col) as usize;
            let mask = tri.mask(i, col) | chunks[chunk_idx].0;
            tri.cells[i as usize - 1][col as usize - 1] = mask;
        }

        validate_conditions(&tri, alpha, k + 1).into_result()?;
        stages.push(tri.clone());
    }
    Ok((stages, plans))
}

fn var_bit(vars: &[VarId], i: u32, j: u32) -> u64 {
    let pos = vars
        .iter()
        .position(|v| v.i == i && v.j == j)
        .expect("variable inside the triangle");
    1u64 << pos
}

/// Outcome of the per-stage structural validation.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub stage: u32,
    /// (condition name, pass, offending cell description).
    pub checks: Vec<(&'static str, bool, Option<String>)>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn into_result(self) -> Result<()> {
        if self.all_pass() {
            Ok(())
        } else {
            let failing: Vec<String> = self
                .checks
                .iter()
                .filter(|(_, ok, _)| !ok)
                .map(|(name, _, cell)| match cell {
                    Some(c) => format!("{name} at {c}"),
                    None => (*name).to_string(),
                })
                .collect();
            Err(Error::SelfCheck(format!(
                "stage {} violates {}",
                self.stage,
                failing.join(", ")
            )))
        }
    }
}

/// Checks conditions C0-C6 for the triangle after columns `2..=stage` of
/// `alpha` have been used (`stage = 1` checks the identity).
pub fn validate_conditions(tri: &LinFuncTriangle, alpha: &TriArray, stage: u32) -> ConditionReport {
    let n = tri.n();
    let k = stage;
    let vars = var_order(n);
    let mut checks: Vec<(&'static str, bool, Option<String>)> = Vec::new();

    // C0: sums of distinct variables (structural with bitmasks); no variable
    // repeated within a row or a column.
    let mut c0 = (true, None);
    for i in 1..n {
        let mut seen = 0u64;
        for j in 1..=i {
            let m = tri.mask(i, j);
            if seen & m != 0 {
                c0 = (false, Some(format!("row {i}")));
            }
            seen |= m;
        }
    }
    for j in 1..n {
        let mut seen = 0u64;
        for i in j..n {
            let m = tri.mask(i, j);
            if seen & m != 0 {
                c0 = (false, Some(format!("column {j}")));
            }
            seen |= m;
        }
    }
    checks.push(("C0", c0.0, c0.1));

    // C1: in rows k..n-1, columns 1..k, the forms are pairwise disjoint.
    let mut c1 = (true, None);
    let mut seen = 0u64;
    for i in k..n {
        for j in 1..=i.min(k) {
            let m = tri.mask(i, j);
            if seen & m != 0 {
                c1 = (false, Some(format!("cell ({i},{j})")));
            }
            seen |= m;
        }
    }
    checks.push(("C1", c1.0, c1.1));

    // C2: inside that rectangle, entry (i,j) with j >= 2 has a_(ij)+1
    // variables and entry (i,1) is the single variable x_(i1).
    let mut c2 = (true, None);
    for i in k..n {
        for j in 1..=i.min(k) {
            let m = tri.mask(i, j);
            let expect = if j == 1 {
                let ok = m == var_bit(&vars, i, 1);
                if !ok {
                    c2 = (false, Some(format!("cell ({i},1)")));
                }
                continue;
            } else {
                alpha.entry(i, j) + 1
            };
            if m.count_ones() != expect {
                c2 = (false, Some(format!("cell ({i},{j})")));
            }
        }
    }
    checks.push(("C2", c2.0, c2.1));

    // C3: columns 1..k only involve variables originally from columns 1..k.
    let original: u64 = (1..=k.min(n - 1))
        .map(|j| (j..n).fold(0u64, |acc, i| acc | var_bit(&vars, i, j)))
        .fold(0u64, |acc, m| acc | m);
    let mut c3 = (true, None);
    for j in 1..=k.min(n - 1) {
        if tri.col_mask(j) & !original != 0 {
            c3 = (false, Some(format!("column {j}")));
        }
    }
    checks.push(("C3", c3.0, c3.1));

    // C4: columns k+1..n-1 are still untouched original variables.
    let mut c4 = (true, None);
    for j in (k + 1)..n {
        for i in j..n {
            if tri.mask(i, j) != var_bit(&vars, i, j) {
                c4 = (false, Some(format!("cell ({i},{j})")));
            }
        }
    }
    checks.push(("C4", c4.0, c4.1));

    // C5: for 2 <= j <= k, the column-j variables are a proper subset of the
    // row-(j-1) variables.
    let mut c5 = (true, None);
    for j in 2..=k.min(n - 1) {
        let col = tri.col_mask(j);
        let row = tri.row_mask(j - 1);
        if col & !row != 0 || col == row {
            c5 = (false, Some(format!("column {j}")));
        }
    }
    checks.push(("C5", c5.0, c5.1));

    // C6: in column 1, every variable originally from columns 1..k appears
    // exactly once.
    let mut c6 = (true, None);
    let mut count = 0u32;
    let mut union = 0u64;
    for i in 1..n {
        let m = tri.mask(i, 1);
        count += (m & original).count_ones();
        union |= m;
    }
    if union & original != original || count != original.count_ones() {
        c6 = (false, Some("column 1".into()));
    }
    checks.push(("C6", c6.0, c6.1));

    ConditionReport { stage, checks }
}

// ---------------------------------------------------------------------------
// Points of P_n
// ---------------------------------------------------------------------------

/// A point of `P_n` as a full n×n doubly stochastic matrix with staircase
/// support, stored row-major with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSPoint {
    n: u32,
    entries: Vec<Rat>,
}

impl DSPoint {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: u32, j: u32) -> &Rat {
        &self.entries[(i as usize - 1) * self.n as usize + (j as usize - 1)]
    }

    /// The free triangle coordinates `y_(ij)`, `1 <= j <= i <= n-1`,
    /// row-major.
    pub fn triangle(&self) -> Vec<Rat> {
        cell_order(self.n).iter().map(|&(i, j)| self.get(i, j).clone()).collect()
    }

    /// Validates membership in `P_n`: staircase support, nonnegative entries,
    /// all row and column sums 1.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let v = self.get(i, j);
                if v.is_negative() {
                    return Err(Error::InvalidInput(format!("negative entry at ({i},{j})")));
                }
                if j > i + 1 && !v.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "support violation at ({i},{j}): expected 0"
                    )));
                }
            }
        }
        for i in 1..=n {
            let row: Rat = (1..=n).map(|j| self.get(i, j).clone()).sum();
            if !row.is_one() {
                return Err(Error::InvalidInput(format!("row {i} sums to {row}, not 1")));
            }
            let col: Rat = (1..=n).map(|r| self.get(r, i).clone()).sum();
            if !col.is_one() {
                return Err(Error::InvalidInput(format!("column {i} sums to {col}, not 1")));
            }
        }
        Ok(())
    }

    pub fn from_permutation(perm: &[u32]) -> DSPoint {
        let n = perm.len() as u32;
        let mut entries = vec![Rat::zero(); (n * n) as usize];
        for (i, &col) in perm.iter().enumerate() {
            entries[i * n as usize + col as usize - 1] = Rat::one();
        }
        DSPoint { n, entries }
    }
}

/// Completes triangle values (row-major over cells `(i,j)`, `j <= i <= n-1`)
/// to the full doubly stochastic matrix: the superdiagonal balances each of
/// the first `n-1` rows, the last row balances every column. Errors if any
/// completed entry comes out negative.
pub fn complete_triangle(n: u32, triangle: &[Rat]) -> Result<DSPoint> {
    let cells = cell_order(n);
    if triangle.len() != cells.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} triangle values, got {}",
            cells.len(),
            triangle.len()
        )));
    }
    let nn = n as usize;
    let mut entries = vec![Rat::zero(); nn * nn];
    for (&(i, j), v) in cells.iter().zip(triangle) {
        if v.is_negative() {
            return Err(Error::InvalidInput(format!("negative triangle value at ({i},{j})")));
        }
        entries[(i as usize - 1) * nn + (j as usize - 1)] = v.clone();
    }
    // Superdiagonal: row sums of rows 1..n-1.
    for i in 1..n {
        let row_sum: Rat = (1..=i).map(|j| entries[(i as usize - 1) * nn + (j as usize - 1)].clone()).sum();
        let rest = Rat::one() - row_sum;
        if rest.is_negative() {
            return Err(Error::InvalidInput(format!("row {i} of the triangle exceeds 1")));
        }
        entries[(i as usize - 1) * nn + i as usize] = rest;
    }
    // Bottom row: column sums.
    for j in 1..=n {
        let col_sum: Rat = (1..n).map(|i| entries[(i as usize - 1) * nn + (j as usize - 1)].clone()).sum();
        let rest = Rat::one() - col_sum;
        if rest.is_negative() {
            return Err(Error::InvalidInput(format!("column {j} exceeds 1 before the last row")));
        }
        entries[(nn - 1) * nn + (j as usize - 1)] = rest;
    }
    let point = DSPoint { n, entries };
    point.validate()?;
    Ok(point)
}

/// The `d+1` vertices of the simplex `L(alpha)(S)`: the image of the origin
/// and of each unit vector, completed to doubly stochastic form.
pub fn simplex_of(alpha: &TriArray) -> Result<Vec<DSPoint>> {
    let n = alpha.n();
    let tri = build_linear_map(alpha)?;
    let cells = cell_order(n);
    let d = cells.len();
    let mut out = Vec::with_capacity(d + 1);
    let zero_triangle = vec![Rat::zero(); d];
    out.push(complete_triangle(n, &zero_triangle)?);
    for pos in 0..d {
        let triangle: Vec<Rat> = cells
            .iter()
            .map(|&(i, j)| {
                if tri.mask(i, j) & (1 << pos) != 0 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        out.push(complete_triangle(n, &triangle)?);
    }
    Ok(out)
}

/// The prepared decomposition of `P_n`: every cell's map and its exact
/// integer inverse.
pub struct Decomposition {
    n: u32,
    alphas: Vec<TriArray>,
    triangles: Vec<LinFuncTriangle>,
    /// Inverse of each coefficient matrix (integer entries since |det| = 1).
    inverses: Vec<Vec<Int>>,
    dets: Vec<Int>,
}

impl Decomposition {
    pub fn new(n: u32, heavy: bool) -> Result<Self> {
        guard_n(n, heavy)?;
        let alphas = if n == 2 {
            vec![TriArray::zero(2)]
        } else {
            arrays::enumerate_arrays(n, 1)?
        };
        let mut triangles = Vec::with_capacity(alphas.len());
        let mut inverses = Vec::with_capacity(alphas.len());
        let mut dets = Vec::with_capacity(alphas.len());
        for alpha in &alphas {
            let tri = build_linear_map(alpha)?;
            let m = tri.coefficient_matrix();
            let det = det_exact(&m);
            if det.clone().abs() != Int::one() {
                return Err(Error::SelfCheck(format!(
                    "|det L(alpha)| != 1 for alpha = {alpha}"
                )));
            }
            inverses.push(integer_inverse(&m, &det)?);
            dets.push(det);
            triangles.push(tri);
        }
        Ok(Decomposition { n, alphas, triangles, inverses, dets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[TriArray] {
        &self.alphas
    }

    pub fn triangles(&self) -> &[LinFuncTriangle] {
        &self.triangles
    }

    pub fn dets(&self) -> &[Int] {
        &self.dets
    }

    /// Preimage coordinates of a triangle vector under cell `idx`.
    fn preimage(&self, idx: usize, y: &[Rat]) -> Vec<Rat> {
        let d = y.len();
        let inv = &self.inverses[idx];
        (0..d)
            .map(|r| {
                let mut acc = Rat::zero();
                for (c, yy) in y.iter().enumerate() {
                    let coef = &inv[r * d + c];
                    if !coef.is_zero() {
                        acc += Rat::from_integer(coef.clone()) * yy;
                    }
                }
                acc
            })
            .collect()
    }

    /// All cells containing the point, each with a strictness flag: `true`
    /// when the preimage is interior to the unit simplex (all coordinates
    /// positive and the sum strictly below 1).
    pub fn locate_all(&self, point: &DSPoint) -> Result<Vec<(usize, bool)>> {
        if point.n() != self.n {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
        point.validate()?;
        let y = point.triangle();
        let mut hits = Vec::new();
        for idx in 0..self.len() {
            let x = self.preimage(idx, &y);
            if x.iter().any(|v| v.is_negative()) {
                continue;
            }
            let sum: Rat = x.iter().cloned().sum();
            if sum > Rat::one() {
                continue;
            }
            let interior = !sum.is_one() && x.iter().all(|v| v.is_positive());
            hits.push((idx, interior));
        }
        Ok(hits)
    }
}

/// Where a point landed in the decomposition.
#[derive(Clone, Debug)]
pub struct Location {
    /// Index into `Decomposition::alphas`.
    pub cell: usize,
    /// The point sits on the boundary of at least one containing cell.
    pub on_boundary: bool,
    /// Total number of containing cells.
    pub multiplicity: usize,
}

/// Finds a cell containing `point`. Errors if no cell contains it, which
/// would falsify the covering claim.
pub fn locate_point(decomp: &Decomposition, point: &DSPoint) -> Result<Location> {
    let hits = decomp.locate_all(point)?;
    match hits.first() {
        None => Err(Error::SelfCheck(
            "point of P_n not covered by any decomposition cell".into(),
        )),
        Some(&(cell, interior)) => Ok(Location {
            cell,
            on_boundary: !interior || hits.len() > 1,
            multiplicity: hits.len(),
        }),
    }
}

/// Exact integer inverse of a matrix with determinant +-1, by rational
/// Gauss-Jordan elimination.
fn integer_inverse(m: &IntMatrix, det: &Int) -> Result<Vec<Int>> {
    let d = m.dim();
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|i| (0..d).map(|j| Rat::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::SelfCheck("singular map in decomposition".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].clone();
        for j in 0..d {
            a[col][j] = &a[col][j] / &scale;
            inv[col][j] = &inv[col][j] / &scale;
        }
        for r in 0..d {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..d {
                let av = &a[col][j] * &factor;
                a[r][j] = &a[r][j] - &av;
                let iv = &inv[col][j] * &factor;
                inv[r][j] = &inv[r][j] - &iv;
            }
        }
    }
    debug_assert!(det.clone().abs().is_one());
    let mut out = Vec::with_capacity(d * d);
    for row in inv {
        for v in row {
            if !v.denom().is_one() {
                return Err(Error::SelfCheck(
                    "inverse of a unimodular map has a non-integer entry".into(),
                ));
            }
            out.push(v.numer().clone());
        }
    }
    Ok(out)
}

/// Tiling check by random sampling.
#[derive(Clone, Debug)]
pub struct TilingReport {
    pub n: u32,
    pub samples: u32,
    pub seed: u64,
    pub interior_unique: u32,
    pub boundary: u32,
    pub uncovered: u32,
    /// Samples witnessing an interior overlap or a covering gap at a wall.
    pub disjointness_violations: u32,
}

/// Denominator for random rational vertex weights.
pub const WEIGHT_DENOMINATOR: u32 = 10007;

/// Samples random rational convex combinations of the vertices of `P_n` and
/// locates each in the decomposition. Every sample must be covered; samples
/// off cell boundaries must land in exactly one cell.
pub fn tiling_report(n: u32, samples: u32, seed: u64, heavy: bool) -> Result<TilingReport> {
    guard_n(n, heavy)?;
    let decomp = Decomposition::new(n, heavy)?;
    let verts: Vec<DSPoint> = staircase_permutations(n)
        .iter()
        .map(|p| DSPoint::from_permutation(p))
        .collect();
    let mut report = TilingReport {
        n,
        samples,
        seed,
        interior_unique: 0,
        boundary: 0,
        uncovered: 0,
        disjointness_violations: 0,
    };
    for sample in 0..samples {
        // Per-sample generator: deterministic and order-independent.
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(sample as u64));
        let point = random_convex_combination(&verts, &mut rng);
        let hits = decomp.locate_all(&point)?;
        let interior_hits = hits.iter().filter(|(_, interior)| *interior).count();
        if hits.is_empty() {
            report.uncovered += 1;
        } else if interior_hits == 1 && hits.len() == 1 {
            report.interior_unique += 1;
        } else if interior_hits == 0 && hits.len() >= 2 {
            // On a shared wall: contained in several cells, interior to none.
            report.boundary += 1;
        } else {
            // Interior to one cell while touching another, or interior to
            // two cells; either way the interiors fail to be disjoint.
            report.disjointness_violations += 1;
        }
    }
    if report.uncovered > 0 {
        return Err(Error::SelfCheck(format!(
            "tiling failure: {} of {} samples uncovered (n={n}, seed={seed})",
            report.uncovered, samples
        )));
    }
    Ok(report)
}

/// A random point of `P_n`: positive rational weights with denominator
/// [`WEIGHT_DENOMINATOR`] over all vertices.
fn random_convex_combination(verts: &[DSPoint], rng: &mut impl Rng) -> DSPoint {
    let p = WEIGHT_DENOMINATOR;
    let v = verts.len() as u32;
    // A composition of p into v positive parts via distinct cut points.
    let mut cuts = std::collections::BTreeSet::new();
    while (cuts.len() as u32) < v - 1 {
        cuts.insert(rng.gen_range(1..p));
    }
    let mut weights = Vec::with_capacity(v as usize);
    let mut prev = 0u32;
    for &c in &cuts {
        weights.push(c - prev);
        prev = c;
    }
    weights.push(p - prev);

    let n = verts[0].n();
    let nn = n as usize;
    let mut entries = vec![Rat::zero(); nn * nn];
    for (vert, &w) in verts.iter().zip(&weights) {
        let weight = Rat::new(Int::from(w), Int::from(p));
        for i in 1..=n {
            for j in 1..=n {
                let val = vert.get(i, j);
                if !val.is_zero() {
                    entries[(i as usize - 1) * nn + (j as usize - 1)] += &weight * val;
                }
            }
        }
    }
    DSPoint { n, entries }
}
