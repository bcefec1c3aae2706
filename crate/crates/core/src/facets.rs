//! Relative volumes of the facets `P_n(r,s)` and their identities.
//!
//! `P_n(r,s)` is the convex hull of the vertices whose `(r,s)` entry is
//! zero; for `n >= 3` it is a facet exactly when `r != 1`, `s != n` and
//! `s != r+1`. Volumes are computed from scratch: the face Ehrhart
//! polynomial is interpolated from zero-forced lattice counts (no
//! reciprocity shortcut is assumed for faces), its leading coefficient is
//! scaled by `(d-1)!`, and the result is normalized by the index of the
//! vertex-difference lattice inside the ambient slice lattice, computed via
//! Smith form rather than assumed to be 1.
//!
//! Exchanging the first two columns or the last two rows permutes the
//! vertex set, so `vol P_n(r,1) = vol P_n(r,2)` and
//! `vol P_n(n,s) = vol P_n(n-1,s)`; the volumes fit in a triangle over
//! `2 <= s <= r <= n-1`. The triangles satisfy an anti-diagonal symmetry, a
//! two-by-two rectangular relation (equivalently: the skew-symmetric
//! completion has equal diagonal sums in every 2x2 submatrix), and the
//! facets opposite any vertex sum to the volume of `P_n` itself.

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::exact::{int, lattice_index, poly_interpolate, rat, Int, Rat, UniPoly};
use crate::fixtures::Fixtures;
use crate::oracle::{count_points_dp, FaceSpec};
use crate::vertices::staircase_permutations;
use crate::{ehrhart, Error, Result};

/// Default ceiling; the n=7 table (degree-20 interpolations) is heavy.
pub const DEFAULT_MAX_N: u32 = 6;
pub const HEAVY_MAX_N: u32 = 7;

/// A candidate facet label `(r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacetId {
    pub r: u32,
    pub s: u32,
}

impl FacetId {
    /// Is `P_n(r,s)` a facet of `P_n`? Requires a staircase cell
    /// (`s <= r+1`); for `n >= 3` the facets are exactly `r != 1`, `s != n`,
    /// `s != r+1`. For `n = 2` every staircase cell gives a facet (a vertex
    /// of the segment).
    pub fn is_facet(n: u32, r: u32, s: u32) -> bool {
        if r < 1 || s < 1 || r > n || s > n || s > r + 1 {
            return false;
        }
        if n == 2 {
            return true;
        }
        r != 1 && s != n && s != r + 1
    }

    /// Folds a facet label into the representative triangle range
    /// `2 <= s <= r <= n-1` using the two volume-preserving symmetries.
    pub fn canonical(n: u32, r: u32, s: u32) -> (u32, u32) {
        let r = if r == n { n - 1 } else { r };
        let s = if s == 1 { 2 } else { s };
        (r, s)
    }
}

fn guard_n(n: u32, heavy: bool) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidInput("facet volumes require n >= 3".into()));
    }
    let max = if heavy { HEAVY_MAX_N } else { DEFAULT_MAX_N };
    if n > max {
        return Err(Error::GuardExceeded(format!(
            "facet computation for n={n} exceeds the limit {max}"
        )));
    }
    Ok(())
}

/// Ehrhart polynomial of the facet `P_n(r,s)`, interpolated from
/// `C(n,2)` zero-forced lattice counts at `t = 0 .. C(n,2)-1`.
pub fn facet_ehrhart(n: u32, r: u32, s: u32, heavy: bool) -> Result<UniPoly> {
    guard_n(n, heavy)?;
    if !FacetId::is_facet(n, r, s) {
        return Err(Error::InvalidInput(format!("({r},{s}) is not a facet of P_{n}")));
    }
    let spec = FaceSpec::new(n, [(r, s)])?;
    let degree = ehrhart::dimension(n) - 1;
    let mut points: Vec<(Rat, Rat)> = Vec::with_capacity(degree as usize + 1);
    for t in 0..=degree {
        let count = count_points_dp(&spec, t, false)?;
        points.push((rat(t as i64), Rat::from_integer(count)));
    }
    let poly = poly_interpolate(&points)?;
    if poly.degree() != Some(degree as usize) {
        return Err(Error::SelfCheck(format!(
            "facet ({r},{s}) of P_{n}: expected Ehrhart degree {degree}, got {:?}",
            poly.degree()
        )));
    }
    Ok(poly)
}

/// Index of the lattice spanned by the facet's vertex differences inside the
/// ambient integer lattice restricted to the facet's affine span.
pub fn facet_lattice_index(n: u32, r: u32, s: u32) -> Result<Int> {
    let verts: Vec<Vec<u32>> = staircase_permutations(n)
        .into_iter()
        .filter(|perm| perm[r as usize - 1] != s)
        .collect();
    if verts.is_empty() {
        return Err(Error::InvalidInput(format!("P_{n}({r},{s}) has no vertices")));
    }
    let to_vec = |perm: &Vec<u32>| -> Vec<Int> {
        let mut flat = vec![Int::zero(); (n * n) as usize];
        for (i, &col) in perm.iter().enumerate() {
            flat[i * n as usize + col as usize - 1] = Int::one();
        }
        flat
    };
    let base = to_vec(&verts[0]);
    let diffs: Vec<Vec<Int>> = verts[1..]
        .iter()
        .map(|v| {
            to_vec(v)
                .into_iter()
                .zip(base.iter())
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let expected_rank = (ehrhart::dimension(n) - 1) as usize;
    lattice_index(&diffs, Some(expected_rank))
}

/// Relative volume of the facet `P_n(r,s)`.
pub fn facet_volume(n: u32, r: u32, s: u32, heavy: bool) -> Result<Int> {
    let poly = facet_ehrhart(n, r, s, heavy)?;
    let degree = ehrhart::dimension(n) - 1;
    let mut fact = Rat::one();
    for k in 1..=degree as i64 {
        fact *= rat(k);
    }
    let slice_volume = poly.leading() * fact;
    if !slice_volume.denom().is_one() || !slice_volume.numer().is_positive() {
        return Err(Error::SelfCheck(format!(
            "facet ({r},{s}) of P_{n}: normalized volume {slice_volume} is not a positive integer"
        )));
    }
    let index = facet_lattice_index(n, r, s)?;
    Ok(slice_volume.numer() * index)
}

/// The triangle of facet volumes, rows `r = 2..n-1`, columns `s = 2..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetTable {
    pub n: u32,
    pub triangle: Vec<Vec<Int>>,
}

impl FacetTable {
    pub fn get(&self, r: u32, s: u32) -> &Int {
        &self.triangle[r as usize - 2][s as usize - 2]
    }

    /// Volume of any facet, folding through the symmetries.
    pub fn volume(&self, r: u32, s: u32) -> Result<&Int> {
        if !FacetId::is_facet(self.n, r, s) {
            return Err(Error::InvalidInput(format!(
                "({r},{s}) is not a facet of P_{}",
                self.n
            )));
        }
        let (cr, cs) = FacetId::canonical(self.n, r, s);
        Ok(self.get(cr, cs))
    }

    /// Diagonal `vol P_n(k,k)`, `k = 2..n-1`.
    pub fn diagonal(&self) -> Vec<Int> {
        self.triangle.iter().enumerate().map(|(i, row)| row[i].clone()).collect()
    }

    /// The skew-symmetric `(n-1) x (n-1)` completion: zeros on the diagonal,
    /// `M[i][j] = vol(i, j+1)` below it, negated transposes above.
    pub fn skew_completion(&self) -> Vec<Vec<Int>> {
        let m = self.n as usize - 1;
        let mut out = vec![vec![Int::zero(); m]; m];
        for i in 1..=m {
            for j in 1..=m {
                if i > j {
                    out[i - 1][j - 1] = self.get(i as u32, j as u32 + 1).clone();
                } else if i < j {
                    out[i - 1][j - 1] = -self.get(j as u32, i as u32 + 1).clone();
                }
            }
        }
        out
    }
}

/// Computes every triangle entry independently (no symmetry shortcuts).
pub fn facet_table(n: u32, heavy: bool) -> Result<FacetTable> {
    guard_n(n, heavy)?;
    let mut triangle = Vec::new();
    for r in 2..n {
        let mut row = Vec::new();
        for s in 2..=r {
            row.push(facet_volume(n, r, s, heavy)?);
        }
        triangle.push(row);
    }
    Ok(FacetTable { n, triangle })
}

/// Rectangular-relation report. Two strengths: `triangle_holds` checks the
/// 2x2 relation on submatrices lying inside the volume triangle itself;
/// `holds` checks it on the full skew-symmetric completion, which is
/// strictly stronger (a constant nonzero triangle passes the first and
/// fails the second).
#[derive(Clone, Debug)]
pub struct RectReport {
    pub n: u32,
    pub holds: bool,
    pub triangle_holds: bool,
    /// First failing quadruple (i, j, i', j'), 1-based, if any.
    pub failure: Option<(u32, u32, u32, u32)>,
    /// Anti-diagonal symmetry of the triangle itself.
    pub antidiagonal_symmetric: bool,
}

/// Checks the rectangular relations and the anti-diagonal symmetry
/// (`vol(r,s) = vol(n+1-s, n+1-r)`).
pub fn check_rectangular(table: &FacetTable) -> RectReport {
    let n = table.n;
    let mut triangle_holds = true;
    for r in 2..n {
        for rp in r + 1..n {
            for s in 2..=r {
                for sp in s + 1..=r {
                    // All four corners inside the triangle (sp <= r <= rp).
                    let lhs = table.get(r, s) + table.get(rp, sp);
                    let rhs = table.get(r, sp) + table.get(rp, s);
                    triangle_holds &= lhs == rhs;
                }
            }
        }
    }
    let m = table.skew_completion();
    let dim = m.len();
    let mut holds = true;
    let mut failure = None;
    'outer: for i in 0..dim {
        for ip in i + 1..dim {
            for j in 0..dim {
                for jp in j + 1..dim {
                    let lhs = &m[i][j] + &m[ip][jp];
                    let rhs = &m[i][jp] + &m[ip][j];
                    if lhs != rhs {
                        holds = false;
                        failure =
                            Some((i as u32 + 1, j as u32 + 1, ip as u32 + 1, jp as u32 + 1));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut antidiagonal_symmetric = true;
    for r in 2..n {
        for s in 2..=r {
            let (rr, ss) = (n + 1 - s, n + 1 - r);
            if ss >= 2 && rr < n && ss <= rr && table.get(r, s) != table.get(rr, ss) {
                antidiagonal_symmetric = false;
            }
        }
    }
    RectReport { n, holds, triangle_holds, failure, antidiagonal_symmetric }
}

/// Vertex-sum report: for every vertex, the volumes of the facets opposite
/// it add up to the volume of `P_n`.
#[derive(Clone, Debug)]
pub struct VertexSumReport {
    pub n: u32,
    pub volume: Int,
    pub holds: bool,
    /// First failing vertex (as permutation images) and its sum.
    pub failure: Option<(Vec<u32>, Int)>,
}

/// The facets opposite a vertex are the `P_n(r,s)` with a 1 at `(r,s)`;
/// their volumes must sum to the relative volume of `P_n`.
pub fn check_vertex_sum(table: &FacetTable, volume: &Int) -> VertexSumReport {
    let n = table.n;
    let mut holds = true;
    let mut failure = None;
    for perm in staircase_permutations(n) {
        let mut sum = Int::zero();
        for (i, &col) in perm.iter().enumerate() {
            let (r, s) = (i as u32 + 1, col);
            if FacetId::is_facet(n, r, s) {
                sum += table.volume(r, s).expect("facet-valid");
            }
        }
        if &sum != volume {
            holds = false;
            if failure.is_none() {
                failure = Some((perm.clone(), sum.clone()));
            }
        }
    }
    VertexSumReport { n, volume: volume.clone(), holds, failure }
}

/// First-column / second-column diagonal data for one `n`.
#[derive(Clone, Debug)]
pub struct DiagonalSeq {
    pub n: u32,
    pub diagonal: Vec<Int>,
    pub provenance: String,
}

impl DiagonalSeq {
    pub fn a(&self) -> &Int {
        &self.diagonal[0]
    }

    /// Second diagonal entry; defined for `n >= 4`.
    pub fn b(&self) -> Option<&Int> {
        self.diagonal.get(1)
    }

    pub fn is_palindromic(&self) -> bool {
        let mut rev = self.diagonal.clone();
        rev.reverse();
        rev == self.diagonal
    }
}

/// One line of the diagonal-identity report.
#[derive(Clone, Debug)]
pub struct DiagonalCheck {
    pub n: u32,
    pub provenance: String,
    pub palindromic: bool,
    /// `a_n = 3 V_n / C(n,2)`.
    pub a_identity: Option<bool>,
    /// Three-term relation on `b/a` at this `n` (needs data through `n+2`).
    pub b_relation: Option<bool>,
}

/// Report for the diagonal conjecture.
#[derive(Clone, Debug)]
pub struct Conj2aReport {
    pub checks: Vec<DiagonalCheck>,
    pub holds: bool,
}

/// Verifies `a_n = 3 V_n / C(n,2)` for every supplied diagonal with a known
/// volume, and the three-term `b/a` relation
/// `(n-1)(b_(n+1)/a_(n+1) - b_n/a_n) = (n+2)(b_(n+2)/a_(n+2) - b_(n+1)/a_(n+1))`
/// wherever three consecutive diagonals are available.
pub fn check_conjecture2a(
    diagonals: &[DiagonalSeq],
    volumes: &dyn Fn(u32) -> Option<Int>,
) -> Conj2aReport {
    let ratio = |seq: &DiagonalSeq| -> Option<Rat> {
        seq.b().map(|b| Rat::new(b.clone(), seq.a().clone()))
    };
    let by_n = |n: u32| diagonals.iter().find(|d| d.n == n);
    let mut checks = Vec::new();
    let mut holds = true;
    for seq in diagonals {
        let n = seq.n;
        let palindromic = seq.is_palindromic();
        let a_identity = volumes(n).map(|v| {
            let expected = Rat::new(int(3) * v, binomial(int(n as i64), int(2)));
            expected == Rat::from_integer(seq.a().clone())
        });
        let b_relation = match (by_n(n), by_n(n + 1), by_n(n + 2)) {
            (Some(d0), Some(d1), Some(d2)) => match (ratio(d0), ratio(d1), ratio(d2)) {
                (Some(r0), Some(r1), Some(r2)) => {
                    let lhs = rat(n as i64 - 1) * (&r1 - &r0);
                    let rhs = rat(n as i64 + 2) * (&r2 - &r1);
                    Some(lhs == rhs)
                }
                _ => None,
            },
            _ => None,
        };
        holds &= palindromic
            && a_identity.unwrap_or(true)
            && b_relation.unwrap_or(true);
        checks.push(DiagonalCheck {
            n,
            provenance: seq.provenance.clone(),
            palindromic,
            a_identity,
            b_relation,
        });
    }
    Conj2aReport { checks, holds }
}

/// Assembles diagonal sequences from computed tables (for `n <=` the guard)
/// and fixture rows beyond, labeling provenance accordingly.
pub fn diagonal_data(
    fixtures: &Fixtures,
    computed: &[FacetTable],
) -> Vec<DiagonalSeq> {
    let mut out: Vec<DiagonalSeq> = Vec::new();
    for table in computed {
        out.push(DiagonalSeq {
            n: table.n,
            diagonal: table.diagonal(),
            provenance: "recomputed".into(),
        });
    }
    for (&n, diag) in &fixtures.diagonals {
        if out.iter().all(|d| d.n != n) {
            let provenance = fixtures
                .diagonal_provenance
                .get(&n)
                .cloned()
                .unwrap_or_else(|| "reference".into());
            out.push(DiagonalSeq { n, diagonal: diag.clone(), provenance });
        }
    }
    out.sort_by_key(|d| d.n);
    out
}
