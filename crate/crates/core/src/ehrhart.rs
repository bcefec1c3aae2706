//! Ehrhart polynomials of `P_n` and the Catalan-product volume check.
//!
//! The polynomial of `P_n` has degree `d = C(n,2)` and is pinned down by
//! `d + 1` exact conditions: `e(P_n, 0) = 1`, the reciprocity zeros
//! `e(P_n, -t) = 0` for `t = 1 .. z(n)`, and transfer-matrix evaluations at
//! small positive `t`. The zeros come for free (no interior points exist in
//! small dilates), which is what keeps `n = 10..12` within desk reach.

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::exact::{int, poly_interpolate, rat, Int, Rat, UniPoly};
use crate::transfer;
use crate::{Error, Result};

/// Default upper bound on `n`; 11 and 12 sit behind the heavy flag.
pub const DEFAULT_MAX_N: u32 = 10;
pub const HEAVY_MAX_N: u32 = 12;

/// Number of guaranteed reciprocity zeros: `e(P_n, -t) = 0` for
/// `t = 1 ..= zero_range(n)`. Interior points of `t * P_n` need
/// `t >= max_k (k+1)(n-k)`, split by parity of `n`.
pub fn zero_range(n: u32) -> u32 {
    let m = n / 2;
    if n % 2 == 1 {
        (m + 1) * (m + 1) - 1
    } else {
        m * (m + 1) - 1
    }
}

/// Dimension of `P_n`.
pub fn dimension(n: u32) -> u32 {
    n * (n - 1) / 2
}

/// An assembled Ehrhart polynomial together with the data that pinned it.
#[derive(Clone, Debug)]
pub struct EhrhartResult {
    pub n: u32,
    pub poly: UniPoly,
    pub relative_volume: Int,
    /// Positive-t transfer evaluations used for interpolation.
    pub evaluation_points: Vec<(u32, Int)>,
    /// How many reciprocity zeros were used.
    pub zero_range_used: u32,
}

fn guard_n(n: u32, heavy: bool) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput("ehrhart_poly requires n >= 2".into()));
    }
    let max = if heavy { HEAVY_MAX_N } else { DEFAULT_MAX_N };
    if n > max {
        return Err(Error::GuardExceeded(format!(
            "ehrhart computation for n={n} exceeds the configured max {max}"
        )));
    }
    Ok(())
}

/// Ehrhart polynomial of `P_n`, evaluations supplied by the transfer module.
pub fn ehrhart_poly(n: u32, heavy: bool) -> Result<EhrhartResult> {
    ehrhart_poly_with(n, heavy, &mut |n, t| transfer::evaluate_e_truncated(n, t, true))
}

/// Same, with an injectable evaluator (used by the CLI result cache). The
/// evaluator must return exact `e(P_n, t)` values.
pub fn ehrhart_poly_with(
    n: u32,
    heavy: bool,
    eval: &mut dyn FnMut(u32, u32) -> Result<Int>,
) -> Result<EhrhartResult> {
    guard_n(n, heavy)?;
    let d = dimension(n);
    let zeros = zero_range(n);
    let mut points: Vec<(Rat, Rat)> = Vec::with_capacity(d as usize + 1);
    points.push((rat(0), rat(1)));
    for k in 1..=zeros {
        points.push((rat(-(k as i64)), rat(0)));
    }
    let evals_needed = (d + 1).saturating_sub(1 + zeros);
    let mut evaluation_points = Vec::with_capacity(evals_needed as usize);
    for t in 1..=evals_needed {
        let value = eval(n, t)?;
        points.push((rat(t as i64), Rat::from_integer(value.clone())));
        evaluation_points.push((t, value));
    }
    let poly = poly_interpolate(&points)?;

    // Held-out verification at one more dilation factor.
    let t_check = evals_needed + 1;
    let expected = eval(n, t_check)?;
    if poly.eval_i64(t_check as i64) != Rat::from_integer(expected.clone()) {
        return Err(Error::SelfCheck(format!(
            "ehrhart polynomial for n={n} fails held-out check at t={t_check}"
        )));
    }

    let relative_volume = leading_times_d_factorial(&poly, d)?;
    Ok(EhrhartResult { n, poly, relative_volume, evaluation_points, zero_range_used: zeros })
}

fn leading_times_d_factorial(poly: &UniPoly, d: u32) -> Result<Int> {
    if poly.degree() != Some(d as usize) {
        return Err(Error::SelfCheck(format!(
            "expected degree {d}, interpolation produced degree {:?}",
            poly.degree()
        )));
    }
    let mut fact = Rat::one();
    for k in 1..=d as i64 {
        fact *= rat(k);
    }
    let vol = poly.leading() * fact;
    if !vol.denom().is_one() || !vol.numer().is_positive() {
        return Err(Error::SelfCheck(format!(
            "relative volume {} is not a positive integer",
            vol
        )));
    }
    Ok(vol.numer().clone())
}

/// `C(n,2)!` times the leading Ehrhart coefficient, guaranteed integral.
pub fn relative_volume(n: u32, heavy: bool) -> Result<Int> {
    Ok(ehrhart_poly(n, heavy)?.relative_volume)
}

/// The `i`-th Catalan number `C(2i, i) / (i+1)`.
pub fn catalan(i: u32) -> Int {
    binomial(int(2 * i as i64), int(i as i64)) / int(i as i64 + 1)
}

/// Product of the first `count` Catalan numbers `C_0 * ... * C_(count-1)`.
pub fn catalan_product_first(count: u32) -> Int {
    (0..count).fold(Int::one(), |acc, i| acc * catalan(i))
}

/// The conjectured relative volume of `P_n`: the product of the first `n-1`
/// Catalan numbers.
pub fn catalan_product(n: u32) -> Int {
    assert!(n >= 2, "catalan_product requires n >= 2");
    catalan_product_first(n - 1)
}

/// Does the computed relative volume equal the Catalan product?
pub fn verify_conjecture1(n: u32, heavy: bool) -> Result<bool> {
    Ok(relative_volume(n, heavy)? == catalan_product(n))
}

/// Structural factorization report: does `prod_(i=1..z(n)) (t+i)` divide
/// `e(P_n, t)`, and does `(t+3)^2` divide the quotient?
#[derive(Clone, Debug)]
pub struct FactorReport {
    pub n: u32,
    /// `prod (t+i)` over the reciprocity zero range divides the polynomial.
    pub product_divides: bool,
    /// Multiplicity of `(t+3)` in the quotient.
    pub t3_multiplicity: u32,
    pub t3_squared_divides: bool,
    /// Primitive integer coefficients (lowest degree first) of the quotient
    /// with all `(t+3)` factors removed.
    pub reduced_primitive: Vec<Int>,
    /// Rational constant `c` with
    /// `e(P_n,t) = c * (t+3)^mult * reduced(t) * prod (t+i)`.
    pub constant: Rat,
}

/// Factor structure of `e(P_n, t)` for `n >= 5`, where the `(t+3)^2`
/// observation applies.
pub fn factor_checks(n: u32, heavy: bool) -> Result<FactorReport> {
    if n < 5 {
        return Err(Error::InvalidInput("factor_checks applies to n >= 5".into()));
    }
    let result = ehrhart_poly(n, heavy)?;
    Ok(factor_structure(&result))
}

/// Shared factorization used by `factor_checks` and the pretty printer;
/// valid for any computed polynomial.
pub fn factor_structure(result: &EhrhartResult) -> FactorReport {
    let n = result.n;
    let zeros = zero_range(n);
    let mut product = UniPoly::one();
    for i in 1..=zeros as i64 {
        product = &product * &UniPoly::linear_shift(i);
    }
    let (quotient, product_divides) = match result.poly.div_exact(&product) {
        Some(q) => (q, true),
        None => (result.poly.clone(), false),
    };
    let t_plus_3 = UniPoly::linear_shift(3);
    let mut reduced = quotient;
    let mut mult = 0u32;
    while let Some(q) = reduced.div_exact(&t_plus_3) {
        reduced = q;
        mult += 1;
    }
    let reduced_primitive = reduced.primitive_integer_coeffs();
    let primitive_poly =
        UniPoly::from_coeffs(reduced_primitive.iter().cloned().map(Rat::from_integer).collect());
    let constant = if primitive_poly.is_zero() {
        Rat::zero()
    } else {
        reduced.leading() / primitive_poly.leading()
    };
    FactorReport {
        n,
        product_divides,
        t3_multiplicity: mult,
        t3_squared_divides: mult >= 2,
        reduced_primitive,
        constant,
    }
}

/// Renders the factored form, e.g.
/// `(t+3)^2 * (t^2 + 12*t + 26) / 9340531200 * prod_(i=1..11) (t+i)`.
pub fn factored_display(report: &FactorReport) -> String {
    let zeros = zero_range(report.n);
    let mut pieces: Vec<String> = Vec::new();
    if report.t3_multiplicity == 1 {
        pieces.push("(t+3)".into());
    } else if report.t3_multiplicity > 1 {
        pieces.push(format!("(t+3)^{}", report.t3_multiplicity));
    }
    let reduced = UniPoly::from_coeffs(
        report.reduced_primitive.iter().cloned().map(Rat::from_integer).collect(),
    );
    if reduced.degree().is_some_and(|d| d > 0) {
        pieces.push(format!("({})", reduced.display("t")));
    }
    // The constant is 1 / denominator in every observed case, but render a
    // general rational faithfully.
    let c = if reduced.degree().is_none_or(|d| d == 0) && !reduced.is_zero() {
        &report.constant * reduced.coeff(0)
    } else {
        report.constant.clone()
    };
    let mut out = pieces.join(" * ");
    if c.numer().is_one() {
        if !c.denom().is_one() {
            if out.is_empty() {
                out = format!("1/{}", c.denom());
            } else {
                out = format!("{out} / {}", c.denom());
            }
        }
    } else if out.is_empty() {
        out = crate::exact::rat_to_string(&c);
    } else {
        out = format!("{} * {out}", crate::exact::rat_to_string(&c));
    }
    if zeros > 0 {
        if out.is_empty() {
            out = format!("prod_(i=1..{zeros}) (t+i)");
        } else {
            out = format!("{out} * prod_(i=1..{zeros}) (t+i)");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_ranges() {
        assert_eq!(zero_range(2), 1);
        assert_eq!(zero_range(3), 3);
        assert_eq!(zero_range(4), 5);
        assert_eq!(zero_range(5), 8);
        assert_eq!(zero_range(6), 11);
        assert_eq!(zero_range(10), 29);
    }

    #[test]
    fn catalan_values() {
        let expected = [1i64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (i, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(i as u32), int(c));
        }
        assert_eq!(catalan_product(2), int(1));
        assert_eq!(catalan_product(6), int(140));
        assert_eq!(catalan_product(7), int(5880));
        assert_eq!(catalan_product(8), int(776160));
    }

    #[test]
    fn small_polynomials() {
        let e2 = ehrhart_poly(2, false).unwrap();
        assert_eq!(e2.poly, UniPoly::from_int_coeffs(&[1, 1]));
        assert_eq!(e2.relative_volume, int(1));

        // e(P_3,t) = (t+1)(t+2)(t+3)/6
        let e3 = ehrhart_poly(3, false).unwrap();
        let expected = (&(&UniPoly::linear_shift(1) * &UniPoly::linear_shift(2))
            * &UniPoly::linear_shift(3))
            .scale(&crate::exact::rat_frac(1, 6));
        assert_eq!(e3.poly, expected);
        assert_eq!(e3.relative_volume, int(1));
    }

    #[test]
    fn volume_matches_catalan_product_small() {
        for n in 2..=6u32 {
            assert!(verify_conjecture1(n, false).unwrap(), "n={n}");
        }
    }

    #[test]
    fn guard_and_input_checks() {
        assert!(matches!(ehrhart_poly(1, false), Err(Error::InvalidInput(_))));
        assert!(matches!(ehrhart_poly(11, false), Err(Error::GuardExceeded(_))));
        assert!(matches!(factor_checks(4, false), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn factor_structure_n5() {
        let report = factor_checks(5, false).unwrap();
        assert!(report.product_divides);
        assert_eq!(report.t3_multiplicity, 2);
        assert!(report.t3_squared_divides);
        // Quotient is (t+3)^2 / 362880: the reduced part is the constant 1.
        assert_eq!(report.reduced_primitive, vec![int(1)]);
        assert_eq!(report.constant, crate::exact::rat_frac(1, 362880));
    }
}
