//! Exact big-integer / big-rational arithmetic and the small linear-algebra
//! kernels the rest of the crate is built on: dense univariate polynomials,
//! Newton interpolation, characteristic polynomials, fraction-free
//! determinants, Smith-form lattice indices and Sturm root counting.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

/// Renders `p/q`, omitting `/q` when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `p/q` form produced by [`rat_to_string`].
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let mk_err = || Error::InvalidInput(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        None => Ok(Rat::from_integer(Int::from_str(s.trim()).map_err(|_| mk_err())?)),
        Some((p, q)) => {
            let num = Int::from_str(p.trim()).map_err(|_| mk_err())?;
            let den = Int::from_str(q.trim()).map_err(|_| mk_err())?;
            if den.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(num, den))
        }
    }
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with exact rational coefficients, stored
/// lowest degree first. Canonical form: the coefficient vector is empty for
/// the zero polynomial and its last entry is nonzero otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// Builds from coefficients (lowest degree first), trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::from_coeffs(coeffs)
    }

    /// `x + c`, handy for building factored forms.
    pub fn linear_shift(c: i64) -> Self {
        UniPoly::from_coeffs(vec![rat(c), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &Int) -> Rat {
        self.eval(&Rat::from_integer(x.clone()))
    }

    pub fn eval_i64(&self, x: i64) -> Rat {
        self.eval(&rat(x))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if divisor.is_zero() {
            return Err(Error::InvalidInput("polynomial division by zero".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = Rat::one() / divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &(dc * &q);
            }
            quot[k - dd] = q;
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&(Rat::one() / lead))
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Clears denominators and divides out the content, returning integer
    /// coefficients (lowest degree first) with a positive leading entry.
    pub fn primitive_integer_coeffs(&self) -> Vec<Int> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den_lcm = Int::one();
        for c in &self.coeffs {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = Int::zero();
        for v in &ints {
            content = num_integer::gcd(content, v.clone());
        }
        if ints.last().is_some_and(|l| l.is_negative()) {
            content = -content;
        }
        for v in &mut ints {
            *v = &*v / &content;
        }
        ints
    }

    /// Coefficient strings (lowest degree first), integers shown without `/1`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }

    pub fn from_coeff_strings(strings: &[String]) -> Result<UniPoly> {
        let coeffs = strings
            .iter()
            .map(|s| rat_from_string(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_coeffs(coeffs))
    }

    /// Human-friendly rendering with the given variable name, highest degree
    /// first, e.g. `x^2 - 5*x + 5`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                out.push_str(&rat_to_string(&mag));
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]", self.display("x"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

/// Newton divided-difference interpolation through the given points.
/// Abscissae must be pairwise distinct. The result has degree < #points and
/// is re-checked against every input point before being returned.
pub fn poly_interpolate(points: &[(Rat, Rat)]) -> Result<UniPoly> {
    if points.is_empty() {
        return Err(Error::InvalidInput("interpolation needs at least one point".into()));
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if xi == xj {
                return Err(Error::InvalidInput(format!(
                    "duplicate abscissa {} in interpolation input",
                    rat_to_string(xi)
                )));
            }
        }
    }

    // Divided-difference table, kept as the top row only.
    let n = points.len();
    let mut table: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut newton_coeffs = Vec::with_capacity(n);
    newton_coeffs.push(table[0].clone());
    for level in 1..n {
        for row in (level..n).rev() {
            let dx = &points[row].0 - &points[row - level].0;
            table[row] = (&table[row] - &table[row - 1]) / dx;
        }
        newton_coeffs.push(table[level].clone());
    }

    // Expand the Newton form into the monomial basis.
    let mut poly = UniPoly::zero();
    let mut basis = UniPoly::one();
    for (k, c) in newton_coeffs.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        if k + 1 < n {
            let factor = UniPoly::from_coeffs(vec![-&points[k].0, Rat::one()]);
            basis = &basis * &factor;
        }
    }

    for (x, y) in points {
        if &poly.eval(x) != y {
            return Err(Error::SelfCheck(format!(
                "interpolant misses input point ({}, {})",
                rat_to_string(x),
                rat_to_string(y)
            )));
        }
    }
    Ok(poly)
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// Square matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn new(dim: usize, entries: Vec<Int>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidInput("matrix rows must all have length dim".into()));
            }
            entries.extend(row.iter().map(|&v| int(v)));
        }
        IntMatrix::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Int::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Int::one();
        }
        IntMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut entries = vec![Int::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * rhs.get(k, j);
                }
            }
        }
        IntMatrix { dim: d, entries }
    }

    pub fn trace(&self) -> Int {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Characteristic polynomial `det(lambda*I - M)` via the Faddeev-LeVerrier
/// recurrence. All divisions are exact over the integers, so the result is
/// monic with integer coefficients.
pub fn char_poly(m: &IntMatrix) -> UniPoly {
    let d = m.dim();
    // coeffs[k] holds the coefficient of lambda^(d-k); coeffs[0] = 1.
    let mut coeffs = vec![Int::one()];
    let mut aux = m.clone();
    for k in 1..=d {
        let c = -aux.trace() / int(k as i64);
        debug_assert!((-aux.trace() % int(k as i64)).is_zero());
        coeffs.push(c.clone());
        if k < d {
            let mut shifted = aux.clone();
            for i in 0..d {
                let v = shifted.get(i, i) + &c;
                shifted.set(i, i, v);
            }
            aux = m.mul(&shifted);
        }
    }
    coeffs.reverse();
    UniPoly::from_coeffs(coeffs.into_iter().map(Rat::from_integer).collect())
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_exact(m: &IntMatrix) -> Int {
    let d = m.dim();
    let mut a: Vec<Vec<Int>> = (0..d)
        .map(|i| (0..d).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..d {
        if a[k][k].is_zero() {
            match (k + 1..d).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[d - 1][d - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Lattice index via Smith normal form
// ---------------------------------------------------------------------------

/// Index of the lattice generated by `vectors` inside the ambient integer
/// lattice restricted to their rational span, i.e. the product of the Smith
/// invariant factors. When `expected_rank` is given, a generating set of any
/// other rank is rejected.
pub fn lattice_index(vectors: &[Vec<Int>], expected_rank: Option<usize>) -> Result<Int> {
    if vectors.is_empty() {
        return match expected_rank {
            None | Some(0) => Ok(Int::one()),
            Some(r) => Err(Error::InvalidInput(format!(
                "empty generating set cannot have rank {r}"
            ))),
        };
    }
    let cols = vectors[0].len();
    if vectors.iter().any(|v| v.len() != cols) {
        return Err(Error::InvalidInput("generating vectors must share a common length".into()));
    }
    let mut a: Vec<Vec<Int>> = vectors.to_vec();
    let rows = a.len();
    let mut index = Int::one();
    let mut rank = 0usize;
    let (mut top, mut left) = (0usize, 0usize);
    while top < rows && left < cols {
        // Pivot: smallest nonzero magnitude in the working block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(left, pj);
        }
        // Clear the pivot column and row with exact Euclidean steps, redoing
        // the pass whenever a remainder forces a smaller pivot.
        loop {
            let mut clean = true;
            for i in top + 1..rows {
                if !a[i][left].is_zero() {
                    let q = div_round(&a[i][left], &a[top][left]);
                    for j in left..cols {
                        let v = &a[i][j] - &(&q * &a[top][j]);
                        a[i][j] = v;
                    }
                    if !a[i][left].is_zero() {
                        a.swap(top, i);
                        clean = false;
                    }
                }
            }
            for j in left + 1..cols {
                if !a[top][j].is_zero() {
                    let q = div_round(&a[top][j], &a[top][left]);
                    for row in a.iter_mut().take(rows).skip(top) {
                        let v = &row[j] - &(&q * &row[left]);
                        row[j] = v;
                    }
                    if !a[top][j].is_zero() {
                        for row in a.iter_mut().take(rows).skip(top) {
                            row.swap(left, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        index *= a[top][left].abs();
        rank += 1;
        top += 1;
        left += 1;
    }
    if let Some(expected) = expected_rank {
        if rank != expected {
            return Err(Error::InvalidInput(format!(
                "generating set has rank {rank}, expected {expected}"
            )));
        }
    }
    Ok(index)
}

/// Quotient used by the Smith reduction. Truncating division keeps the
/// remainder magnitude below |b|, which is all termination needs.
fn div_round(a: &Int, b: &Int) -> Int {
    a / b
}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

/// Number of distinct real roots of `p` in the open interval (0, +inf),
/// counted without multiplicity, via a Sturm chain on the squarefree part.
pub fn positive_real_root_count(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput("root count of the zero polynomial".into()));
    }
    // Strip roots at the origin, then pass to the squarefree part.
    let mut q = p.clone();
    while q.coeff(0).is_zero() {
        q = q.div_exact(&UniPoly::monomial(Rat::one(), 1)).expect("x divides");
    }
    if q.degree() == Some(0) {
        return Ok(0);
    }
    let deriv = q.derivative();
    let g = q.gcd(&deriv);
    let squarefree = q.div_exact(&g).expect("gcd divides");

    let mut chain = vec![squarefree.clone(), squarefree.derivative()];
    while !chain.last().unwrap().is_zero() {
        let len = chain.len();
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }

    let sign_at_zero: Vec<Ordering> = chain.iter().map(|f| rat_sign(&f.coeff(0))).collect();
    let sign_at_inf: Vec<Ordering> = chain.iter().map(|f| rat_sign(&f.leading())).collect();
    Ok(sign_variations(&sign_at_zero).saturating_sub(sign_variations(&sign_at_inf)))
}

fn rat_sign(r: &Rat) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn sign_variations(signs: &[Ordering]) -> usize {
    let mut count = 0;
    let mut last: Option<Ordering> = None;
    for &s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_round_trip() {
        let r = rat_frac(-22, 8);
        assert_eq!(rat_to_string(&r), "-11/4");
        assert_eq!(rat_from_string("-11/4").unwrap(), r);
        assert_eq!(rat_to_string(&rat(7)), "7");
        assert_eq!(rat_from_string("7").unwrap(), rat(7));
        assert!(rat_from_string("3/0").is_err());
    }

    #[test]
    fn interpolate_line_and_constant() {
        let p = poly_interpolate(&[(rat(0), rat(1)), (rat(1), rat(2))]).unwrap();
        assert_eq!(p, UniPoly::from_int_coeffs(&[1, 1]));
        let c = poly_interpolate(&[(rat(5), rat(7))]).unwrap();
        assert_eq!(c, UniPoly::from_int_coeffs(&[7]));
    }

    #[test]
    fn interpolate_rejects_duplicate_abscissa() {
        let err = poly_interpolate(&[(rat(1), rat(1)), (rat(1), rat(2))]);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn char_poly_2x2() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(char_poly(&m), UniPoly::from_int_coeffs(&[5, -5, 1]));
    }

    #[test]
    fn char_poly_small_cases() {
        let m = IntMatrix::from_rows(&[vec![-4]]).unwrap();
        assert_eq!(char_poly(&m), UniPoly::from_int_coeffs(&[4, 1]));
        let id3 = IntMatrix::identity(3);
        // (x-1)^3
        assert_eq!(char_poly(&id3), UniPoly::from_int_coeffs(&[-1, 3, -3, 1]));
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det_exact(&IntMatrix::identity(4)), int(1));
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(det_exact(&m), int(5));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(det_exact(&singular), int(0));
    }

    #[test]
    fn lattice_index_examples() {
        let basis = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(lattice_index(&basis, Some(2)).unwrap(), int(1));
        let stretched = vec![vec![int(2), int(0)], vec![int(0), int(1)]];
        assert_eq!(lattice_index(&stretched, Some(2)).unwrap(), int(2));
        let deficient = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(lattice_index(&deficient, Some(2)).is_err());
        assert_eq!(lattice_index(&deficient, Some(1)).unwrap(), int(1));
    }

    #[test]
    fn sturm_counts_positive_roots() {
        // x^2 - 5x + 5: both roots positive.
        let f2 = UniPoly::from_int_coeffs(&[5, -5, 1]);
        assert_eq!(positive_real_root_count(&f2).unwrap(), 2);
        let no_real = UniPoly::from_int_coeffs(&[1, 0, 1]);
        assert_eq!(positive_real_root_count(&no_real).unwrap(), 0);
        let f3 = UniPoly::from_int_coeffs(&[-20, 27, -10, 1]);
        assert_eq!(positive_real_root_count(&f3).unwrap(), 3);
        // Multiple roots collapse: (x-1)^2 has one distinct positive root.
        let sq = UniPoly::from_int_coeffs(&[1, -2, 1]);
        assert_eq!(positive_real_root_count(&sq).unwrap(), 1);
        assert!(positive_real_root_count(&UniPoly::zero()).is_err());
    }

    #[test]
    fn poly_display_readable() {
        let f2 = UniPoly::from_int_coeffs(&[5, -5, 1]);
        assert_eq!(f2.display("x"), "x^2 - 5*x + 5");
        assert_eq!(UniPoly::from_int_coeffs(&[1, 1]).display("t"), "t + 1");
    }
}
