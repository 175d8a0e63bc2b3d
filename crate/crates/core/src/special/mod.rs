//! Real-valued special functions: gamma, Pochhammer symbols, Gauss 2F1 and the
//! Appell F4 double series together with its two-term analytic continuation.
//!
//! The F4 series
//!
//! ```text
//! F4(a, b; c1, c2; x, y) = Σ_{m,n} (a)_{m+n} (b)_{m+n} / [(c1)_m (c2)_n m! n!] x^m y^n
//! ```
//!
//! converges for `√|x| + √|y| < 1`. Outside that region the library offers two
//! routes: the continuation to `(x/y, 1/y)` ([`f4_continue`],
//! [`f4_continue_branch`]) and a row sum of Gauss functions ([`f4_rows`]) that
//! converges on both sides of the boundary and so bridges the two.
//!
//! Everything here is real arithmetic except where a [`Branch`] is named
//! explicitly. Powers of negative bases with non-integer exponents never
//! silently become complex; see [`real_pow`].

mod appell;
mod continuation;
mod gamma;
mod gauss;

pub use appell::f4_series;
pub use continuation::{f4_continue, f4_continue_branch, f4_rows, ContinuationCoefficients};
pub use gamma::{cos_pi, gamma, pochhammer, rgamma, sin_pi};
pub use gauss::{gauss_2f1, gauss_2f1_branch};

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special-function evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("{function} has a pole at argument {arg}")]
    Pole { function: &'static str, arg: f64 },
    #[error("point outside the convergence domain: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms (last contribution {last:e})")]
    NonConvergence { terms: usize, last: f64 },
    #[error("({base})^({exponent}) is complex; name a branch to continue")]
    ComplexBranch { base: f64, exponent: f64 },
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("overflow while summing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, SpecialError>;

/// True when `v` is 0, −1, −2, …
pub fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// The four parameters (a, b; c1, c2) of an Appell F4 instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F4Params {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl F4Params {
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        let p = F4Params { a, b, c1, c2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b), ("c1", self.c1), ("c2", self.c2)] {
            if !v.is_finite() {
                return Err(SpecialError::InvalidParameter(format!("{name} = {v} is not finite")));
            }
        }
        for (name, v) in [("c1", self.c1), ("c2", self.c2)] {
            if is_nonpositive_integer(v) {
                return Err(SpecialError::InvalidParameter(format!(
                    "{name} = {v} is a non-positive integer"
                )));
            }
        }
        Ok(())
    }

    /// F4 is symmetric in its two numerator parameters.
    pub fn swap_ab(self) -> Self {
        F4Params { a: self.b, b: self.a, ..self }
    }

    /// Equality up to the a ↔ b symmetry, with an absolute tolerance.
    pub fn same_function(&self, other: &F4Params, tol: f64) -> bool {
        let close = |u: f64, v: f64| (u - v).abs() <= tol;
        let lower = close(self.c1, other.c1) && close(self.c2, other.c2);
        lower
            && ((close(self.a, other.a) && close(self.b, other.b))
                || (close(self.a, other.b) && close(self.b, other.a)))
    }
}

/// A point (x, y) of the two F4 variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(SpecialError::InvalidParameter(format!("point ({x}, {y}) is not finite")));
        }
        Ok(Point2 { x, y })
    }

    /// `√|x| + √|y|`; the double series converges when this is below one.
    pub fn radius(&self) -> f64 {
        self.x.abs().sqrt() + self.y.abs().sqrt()
    }

    pub fn in_series_domain(&self) -> bool {
        self.radius() < 1.0
    }

    /// The image `(x/y, 1/y)` used by the continuation formula.
    pub fn inverted(&self) -> Result<Point2> {
        if self.y == 0.0 {
            return Err(SpecialError::Domain("continuation needs y ≠ 0".into()));
        }
        Point2::new(self.x / self.y, 1.0 / self.y)
    }
}

/// Truncation control shared by all series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Relative error target.
    pub tol: f64,
    /// Upper bound on the summation index (anti-diagonals for F4, terms for 2F1).
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(SpecialError::InvalidParameter(format!("tol = {tol} must be positive")));
        }
        if max_terms == 0 {
            return Err(SpecialError::InvalidParameter("max_terms must be at least 1".into()));
        }
        Ok(SeriesControl { tol, max_terms })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { tol: 1e-15, max_terms: 4000 }
    }
}

/// A real series value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Estimated absolute error (truncation tail plus accumulated rounding).
    pub err: f64,
    /// Number of summation steps taken (anti-diagonals, rows or terms).
    pub terms_used: usize,
}

/// Which side of the cut `[0, ∞)` of `(−w)^s` a continued value is taken on.
///
/// `Upper` is the limit `w + i0`, so `(−w)^{−s} = |w|^{−s} e^{+iπs}` for `w > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

/// A value on a named branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchValue {
    pub value: Complex64,
    pub err: f64,
    pub terms_used: usize,
}

/// `base^exponent` restricted to real results.
///
/// A negative base is accepted only with an integer exponent.
pub fn real_pow(base: f64, exponent: f64) -> Result<f64> {
    if base > 0.0 {
        return Ok(base.powf(exponent));
    }
    if base == 0.0 {
        return match exponent {
            e if e > 0.0 => Ok(0.0),
            e if e == 0.0 => Ok(1.0),
            _ => Err(SpecialError::Pole { function: "pow", arg: base }),
        };
    }
    if exponent == exponent.round() {
        Ok(base.powf(exponent))
    } else {
        Err(SpecialError::ComplexBranch { base, exponent })
    }
}

/// `(−w)^{−s}` on the given branch. Real for `w < 0`.
pub fn branch_pow(w: f64, s: f64, branch: Branch) -> Result<Complex64> {
    if w < 0.0 {
        return Ok(Complex64::new((-w).powf(-s), 0.0));
    }
    if w == 0.0 {
        return Err(SpecialError::Pole { function: "pow", arg: 0.0 });
    }
    let modulus = w.powf(-s);
    let phase = branch.sign() * s;
    Ok(Complex64::new(modulus * gamma::cos_pi(phase), modulus * sin_pi(phase)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_pow_rejects_complex_results() {
        assert_eq!(real_pow(4.0, 0.5).unwrap(), 2.0);
        assert_eq!(real_pow(-2.0, 3.0).unwrap(), -8.0);
        assert_eq!(real_pow(-2.0, -1.0).unwrap(), -0.5);
        assert!(matches!(real_pow(-2.0, 0.5), Err(SpecialError::ComplexBranch { .. })));
        assert!(real_pow(0.0, -1.0).is_err());
    }

    #[test]
    fn branch_pow_conjugate_pair() {
        let up = branch_pow(2.0, 0.3, Branch::Upper).unwrap();
        let lo = branch_pow(2.0, 0.3, Branch::Lower).unwrap();
        assert!((up - lo.conj()).norm() < 1e-15);
        assert!((up.norm() - 2f64.powf(-0.3)).abs() < 1e-15);
        // integer exponent: the phase is a sign
        let one = branch_pow(3.0, 1.0, Branch::Upper).unwrap();
        assert!((one.re + 1.0 / 3.0).abs() < 1e-15 && one.im == 0.0);
    }

    #[test]
    fn params_reject_gamma_poles() {
        assert!(F4Params::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(F4Params::new(1.0, 1.0, 1.0, -3.0).is_err());
        assert!(F4Params::new(-3.0, 1.0, 1.5, 0.5).is_ok());
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(0.0, 10).is_err());
        assert!(SeriesControl::new(1e-10, 0).is_err());
        assert!(SeriesControl::new(1e-10, 1).is_ok());
    }
}
