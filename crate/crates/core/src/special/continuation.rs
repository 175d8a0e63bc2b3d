//! Continuation of F4 in its second variable.
//!
//! ```text
//! F4(a, b; c1, c2; x, y) =
//!     Γ(c2)Γ(b−a) / (Γ(b)Γ(c2−a)) (−y)^{−a} F4(a, a+1−c2; c1, a+1−b; x/y, 1/y)
//!   + Γ(c2)Γ(a−b) / (Γ(a)Γ(c2−b)) (−y)^{−b} F4(b+1−c2, b; c1, b+1−a; x/y, 1/y)
//! ```
//!
//! For y > 0 both powers sit on the cut of (−y)^s, so real arithmetic stops
//! there unless the exponents are integers.

use super::gamma::{gamma, rgamma};
use super::gauss::{geometric_tail, QUIET_RUN};
use super::{
    branch_pow, f4_series, gauss_2f1, real_pow, Branch, BranchValue, F4Params, Point2, Result,
    SeriesControl, SeriesValue, SpecialError,
};
use num_complex::Complex64;

/// One of the two terms of the continuation formula: `coeff · (−y)^{−exponent} · F4(params; x/y, 1/y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationTerm {
    pub coeff: f64,
    pub exponent: f64,
    pub params: F4Params,
}

/// The gamma prefactors and shifted parameters of the continuation formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationCoefficients {
    /// Term carrying (−y)^{−a}.
    pub a_term: ContinuationTerm,
    /// Term carrying (−y)^{−b}.
    pub b_term: ContinuationTerm,
}

impl ContinuationCoefficients {
    pub fn new(p: F4Params) -> Result<Self> {
        p.validate()?;
        let F4Params { a, b, c1, c2 } = p;
        let diff = b - a;
        if diff == diff.round() {
            return Err(SpecialError::Degenerate(format!(
                "b − a = {diff} is an integer (logarithmic case)"
            )));
        }
        let gc2 = gamma(c2)?;
        let a_term = ContinuationTerm {
            coeff: gc2 * gamma(b - a)? * rgamma(b) * rgamma(c2 - a),
            exponent: a,
            params: F4Params::new(a, a + 1.0 - c2, c1, a + 1.0 - b)?,
        };
        let b_term = ContinuationTerm {
            coeff: gc2 * gamma(a - b)? * rgamma(a) * rgamma(c2 - b),
            exponent: b,
            params: F4Params::new(b + 1.0 - c2, b, c1, b + 1.0 - a)?,
        };
        Ok(ContinuationCoefficients { a_term, b_term })
    }

    pub fn terms(&self) -> [ContinuationTerm; 2] {
        [self.a_term, self.b_term]
    }
}

/// F4 at (x, y) through the continuation formula, in real arithmetic.
///
/// Needs y < 0, or integer exponents when y > 0; otherwise returns
/// [`SpecialError::ComplexBranch`]. Both transformed series must converge.
pub fn f4_continue(p: F4Params, pt: Point2, ctrl: SeriesControl) -> Result<SeriesValue> {
    let coeffs = ContinuationCoefficients::new(p)?;
    let image = pt.inverted()?;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut terms_used = 0;
    for term in coeffs.terms() {
        if term.coeff == 0.0 {
            continue;
        }
        let w = term.coeff * real_pow(-pt.y, -term.exponent)?;
        let s = f4_series(term.params, image, ctrl)?;
        value += w * s.value;
        err += w.abs() * s.err;
        terms_used = terms_used.max(s.terms_used);
    }
    err += 4.0 * f64::EPSILON * value.abs();
    Ok(SeriesValue { value, err, terms_used })
}

/// F4 at (x, y) through the continuation formula on a named branch.
///
/// Identical to [`f4_continue`] for y < 0. For y > 0 the value is the limit
/// from `y ± i0` and is in general complex.
pub fn f4_continue_branch(
    p: F4Params,
    pt: Point2,
    branch: Branch,
    ctrl: SeriesControl,
) -> Result<BranchValue> {
    let coeffs = ContinuationCoefficients::new(p)?;
    let image = pt.inverted()?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut terms_used = 0;
    for term in coeffs.terms() {
        if term.coeff == 0.0 {
            continue;
        }
        let w = branch_pow(pt.y, term.exponent, branch)? * term.coeff;
        let s = f4_series(term.params, image, ctrl)?;
        value += w * s.value;
        err += w.norm() * s.err;
        terms_used = terms_used.max(s.terms_used);
    }
    Ok(BranchValue { value, err, terms_used })
}

fn rows_domain_check(pt: Point2) -> Result<()> {
    let Point2 { x, y } = pt;
    let ok = if y.abs() == 1.0 {
        false
    } else if y >= 0.0 {
        x.abs().sqrt() < (1.0 - y.sqrt()).abs()
    } else {
        x.abs() < 1.0 + y.abs()
    };
    if ok {
        Ok(())
    } else {
        Err(SpecialError::Domain(format!("row sum diverges at ({x}, {y})")))
    }
}

/// F4 as a single sum of Gauss functions,
///
/// ```text
/// F4 = Σ_m (a)_m (b)_m / ((c1)_m m!) x^m 2F1(a+m, b+m; c2; y),
/// ```
///
/// with each 2F1 continued through its 1/y connection formula when |y| > 1.
/// Converges on both sides of the F4 boundary (for |y| < 1 when
/// √|x| < 1 − √y, for y > 1 when √|x| < √y − 1), which makes it the bridge
/// between [`f4_series`] and [`f4_continue`].
pub fn f4_rows(p: F4Params, pt: Point2, branch: Branch, ctrl: SeriesControl) -> Result<BranchValue> {
    p.validate()?;
    rows_domain_check(pt)?;
    if pt.y.abs() < 1.0 {
        rows_inside(p, pt, ctrl)
    } else {
        rows_outside(p, pt, branch, ctrl)
    }
}

fn finish_rows(
    value: Complex64,
    last: f64,
    prev: f64,
    err: f64,
    abs_sum: f64,
    rows: usize,
) -> BranchValue {
    let ratio = if prev > 0.0 { last / prev } else { 0.5 };
    BranchValue {
        value,
        err: err + geometric_tail(last, ratio) + 8.0 * f64::EPSILON * abs_sum,
        terms_used: rows,
    }
}

fn rows_inside(p: F4Params, pt: Point2, ctrl: SeriesControl) -> Result<BranchValue> {
    let F4Params { a, b, c1, c2 } = p;
    let mut g = 1.0f64;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut abs_sum = 0.0;
    let mut quiet = 0;
    let mut last = 0.0f64;
    let mut prev: f64;
    for m in 0..ctrl.max_terms {
        let mf = m as f64;
        let row = if g == 0.0 {
            0.0
        } else {
            let f = gauss_2f1(a + mf, b + mf, c2, pt.y, ctrl)?;
            err += g.abs() * f.err;
            g * f.value
        };
        if !row.is_finite() {
            return Err(SpecialError::Overflow("F4 row sum"));
        }
        sum += row;
        abs_sum += row.abs();
        prev = last;
        last = row.abs();
        quiet = if last <= ctrl.tol * sum.abs() { quiet + 1 } else { 0 };
        if quiet >= QUIET_RUN {
            return Ok(finish_rows(Complex64::new(sum, 0.0), last, prev, err, abs_sum, m + 1));
        }
        g *= (a + mf) * (b + mf) * pt.x / ((c1 + mf) * (mf + 1.0));
    }
    Err(SpecialError::NonConvergence { terms: ctrl.max_terms, last })
}

fn rows_outside(p: F4Params, pt: Point2, branch: Branch, ctrl: SeriesControl) -> Result<BranchValue> {
    let F4Params { a, b, c1, c2 } = p;
    let diff = b - a;
    if diff == diff.round() {
        return Err(SpecialError::Degenerate(format!(
            "b − a = {diff} is an integer (logarithmic case)"
        )));
    }
    let (x, y) = (pt.x, pt.y);
    let gc2 = gamma(c2)?;
    // fa(m) = R_m K_a(m) x^m (−y)^{−m}, stepped exactly; likewise fb.
    let mut fa = gc2 * gamma(b - a)? * rgamma(b) * rgamma(c2 - a);
    let mut fb = gc2 * gamma(a - b)? * rgamma(a) * rgamma(c2 - b);
    let phase_a = branch_pow(y, a, branch)?;
    let phase_b = branch_pow(y, b, branch)?;
    let inv = 1.0 / y;
    let step = -x / y;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut abs_sum = 0.0;
    let mut quiet = 0;
    let mut last = 0.0f64;
    let mut prev: f64;
    for m in 0..ctrl.max_terms {
        let mf = m as f64;
        let mut row = Complex64::new(0.0, 0.0);
        if fa != 0.0 {
            let f = gauss_2f1(a + mf, a + mf - c2 + 1.0, a - b + 1.0, inv, ctrl)?;
            let w = phase_a * fa;
            row += w * f.value;
            err += w.norm() * f.err;
        }
        if fb != 0.0 {
            let f = gauss_2f1(b + mf, b + mf - c2 + 1.0, b - a + 1.0, inv, ctrl)?;
            let w = phase_b * fb;
            row += w * f.value;
            err += w.norm() * f.err;
        }
        if !row.re.is_finite() || !row.im.is_finite() {
            return Err(SpecialError::Overflow("F4 row sum"));
        }
        sum += row;
        abs_sum += row.norm();
        prev = last;
        last = row.norm();
        quiet = if last <= ctrl.tol * sum.norm() { quiet + 1 } else { 0 };
        if quiet >= QUIET_RUN {
            return Ok(finish_rows(sum, last, prev, err, abs_sum, m + 1));
        }
        let denom = (c1 + mf) * (mf + 1.0);
        fa *= (a + mf) * (c2 - a - mf - 1.0) / denom * step;
        fb *= (b + mf) * (c2 - b - mf - 1.0) / denom * step;
    }
    Err(SpecialError::NonConvergence { terms: ctrl.max_terms, last })
}
