use super::gamma::{gamma, rgamma};
use super::{
    branch_pow, is_nonpositive_integer, Branch, BranchValue, Result, SeriesControl, SeriesValue,
    SpecialError,
};
use num_complex::Complex64;

/// Number of consecutive negligible contributions required before a series stops.
pub(crate) const QUIET_RUN: usize = 3;

/// Tail estimate for a series whose contributions shrink roughly geometrically.
pub(crate) fn geometric_tail(last: f64, ratio: f64) -> f64 {
    let r = ratio.clamp(0.0, 0.99);
    2.0 * last * r / (1.0 - r)
}

/// Gauss 2F1(a, b; c; x) by its power series, |x| < 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64, ctrl: SeriesControl) -> Result<SeriesValue> {
    if is_nonpositive_integer(c) {
        return Err(SpecialError::Pole { function: "2F1 (lower parameter)", arg: c });
    }
    if !(x.abs() < 1.0) {
        return Err(SpecialError::Domain(format!("2F1 series needs |x| < 1, got x = {x}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    let mut quiet = 0;
    let mut prev = 1.0f64;
    for n in 0..ctrl.max_terms {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        if !term.is_finite() {
            return Err(SpecialError::Overflow("2F1 series"));
        }
        sum += term;
        abs_sum += term.abs();
        if term.abs() <= ctrl.tol * sum.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_RUN {
            let ratio = if prev > 0.0 { (term.abs() / prev).max(x.abs()) } else { x.abs() };
            let err = geometric_tail(term.abs(), ratio) + 4.0 * f64::EPSILON * abs_sum;
            return Ok(SeriesValue { value: sum, err, terms_used: n + 1 });
        }
        prev = term.abs();
    }
    Err(SpecialError::NonConvergence { terms: ctrl.max_terms, last: term })
}

/// 2F1(a, b; c; x) for any real x with |x| ≠ 1.
///
/// For |x| > 1 the value comes from the 1/x connection formula; it is complex
/// for x > 1 and is taken on the named branch. Needs a − b ∉ ℤ there.
pub fn gauss_2f1_branch(
    a: f64,
    b: f64,
    c: f64,
    x: f64,
    branch: Branch,
    ctrl: SeriesControl,
) -> Result<BranchValue> {
    if x.abs() < 1.0 {
        let v = gauss_2f1(a, b, c, x, ctrl)?;
        return Ok(BranchValue {
            value: Complex64::new(v.value, 0.0),
            err: v.err,
            terms_used: v.terms_used,
        });
    }
    if x.abs() == 1.0 {
        return Err(SpecialError::Domain("2F1 at |x| = 1 is not supported".into()));
    }
    if (a - b) == (a - b).round() {
        return Err(SpecialError::Degenerate(format!("a − b = {} is an integer", a - b)));
    }
    let gc = gamma(c)?;
    let inv = 1.0 / x;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut terms_used = 0;
    for (p, q) in [(a, b), (b, a)] {
        let coeff = gc * gamma(q - p)? * rgamma(q) * rgamma(c - p);
        if coeff == 0.0 {
            continue;
        }
        let s = gauss_2f1(p, p - c + 1.0, p - q + 1.0, inv, ctrl)?;
        let w = branch_pow(x, p, branch)? * coeff;
        value += w * s.value;
        err += w.norm() * s.err;
        terms_used = terms_used.max(s.terms_used);
    }
    Ok(BranchValue { value, err, terms_used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(gauss_2f1(0.3, 2.0, 1.7, 0.0, ctrl()).unwrap().value, 1.0);
    }

    #[test]
    fn logarithm_case() {
        // 2F1(1,1;2;x) = −ln(1−x)/x
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5, ctrl()).unwrap();
        assert_relative_eq!(v.value, 1.386_294_361_119_890_6, max_relative = 1e-14);
        assert!(v.err < 1e-13);
    }

    #[test]
    fn frozen_extended_precision_value() {
        // 200-term sum at 40 digits: 1.0428317124581208226984494407...
        let v = gauss_2f1(0.3, 0.7, 1.1, 0.2, ctrl()).unwrap();
        assert_relative_eq!(v.value, 1.042_831_712_458_120_8, max_relative = 1e-15);
    }

    #[test]
    fn terminating_series() {
        // 2F1(−2, b; c; x) = 1 − 2bx/c + b(b+1)x²/(c(c+1))
        let (b, c, x) = (1.5, 2.5, 0.4);
        let exact = 1.0 - 2.0 * b * x / c + b * (b + 1.0) * x * x / (c * (c + 1.0));
        assert_relative_eq!(gauss_2f1(-2.0, b, c, x, ctrl()).unwrap().value, exact, max_relative = 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(gauss_2f1(1.0, 1.0, -1.0, 0.2, ctrl()), Err(SpecialError::Pole { .. })));
        assert!(matches!(gauss_2f1(1.0, 1.0, 2.0, 1.0, ctrl()), Err(SpecialError::Domain(_))));
        let tight = SeriesControl::new(1e-15, 5).unwrap();
        assert!(matches!(
            gauss_2f1(1.0, 1.0, 2.0, 0.9, tight),
            Err(SpecialError::NonConvergence { .. })
        ));
    }

    #[test]
    fn connection_formula_negative_argument() {
        // mpmath: hyp2f1(0.3, 0.7, 1.6, -3) = 0.80469534491639841732...
        let v = gauss_2f1_branch(0.3, 0.7, 1.6, -3.0, Branch::Upper, ctrl()).unwrap();
        assert_relative_eq!(v.value.re, 0.804_695_344_916_398_4, max_relative = 1e-14);
        assert_eq!(v.value.im, 0.0);
    }

    #[test]
    fn connection_formula_above_one_gives_conjugate_branches() {
        // 2F1(a, b; b; x) = (1 − x)^{−a}; on x + i0, 1 − x = (x − 1) e^{−iπ}
        let (a, b, x) = (0.3, 0.8, 3.0);
        let up = gauss_2f1_branch(a, b, b, x, Branch::Upper, ctrl()).unwrap().value;
        let m = (x - 1.0f64).powf(-a);
        let phase = std::f64::consts::PI * a;
        assert_relative_eq!(up.re, m * phase.cos(), max_relative = 1e-14);
        assert_relative_eq!(up.im, m * phase.sin(), max_relative = 1e-14);
        let lo = gauss_2f1_branch(a, b, b, x, Branch::Lower, ctrl()).unwrap().value;
        assert!((lo - up.conj()).norm() < 1e-15);
    }
}
