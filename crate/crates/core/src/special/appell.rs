use super::gauss::{geometric_tail, QUIET_RUN};
use super::{F4Params, Point2, Result, SeriesControl, SeriesValue, SpecialError};

/// Appell F4 by its double series, summed along anti-diagonals m + n = k.
///
/// Each diagonal is generated from the previous one by the term ratios
///
/// ```text
/// t(m, n) / t(m, n−1) = (a+m+n−1)(b+m+n−1) y / ((c2+n−1) n)
/// t(m, 0) / t(m−1, 0) = (a+m−1)(b+m−1) x / ((c1+m−1) m)
/// ```
///
/// so no division by x or y ever happens. Summation stops after three
/// consecutive diagonals whose absolute mass is below `tol · |sum|`.
pub fn f4_series(p: F4Params, pt: Point2, ctrl: SeriesControl) -> Result<SeriesValue> {
    p.validate()?;
    let radius = pt.radius();
    if !(radius < 1.0) {
        return Err(SpecialError::Domain(format!(
            "F4 series needs √|x| + √|y| < 1, got {radius:.6} at ({}, {})",
            pt.x, pt.y
        )));
    }
    let F4Params { a, b, c1, c2 } = p;
    let Point2 { x, y } = pt;

    let mut diag: Vec<f64> = Vec::with_capacity(64);
    let mut next: Vec<f64> = Vec::with_capacity(64);
    diag.push(1.0);
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    let mut quiet = 0;
    let mut prev_mass = 1.0f64;
    let mut mass = 1.0f64;

    for k in 1..ctrl.max_terms {
        let kf = k as f64;
        next.clear();
        let mut diag_sum = 0.0;
        mass = 0.0;
        // m = 0..k-1 take a step in n from the previous diagonal
        for (m, &t) in diag.iter().enumerate() {
            let n = (k - m) as f64;
            let v = t * (a + kf - 1.0) * (b + kf - 1.0) / ((c2 + n - 1.0) * n) * y;
            next.push(v);
            diag_sum += v;
            mass += v.abs();
        }
        // m = k, n = 0 steps in m from t(k-1, 0)
        let t = diag[k - 1];
        let v = t * (a + kf - 1.0) * (b + kf - 1.0) / ((c1 + kf - 1.0) * kf) * x;
        next.push(v);
        diag_sum += v;
        mass += v.abs();

        if !diag_sum.is_finite() || !mass.is_finite() {
            return Err(SpecialError::Overflow("F4 series"));
        }
        std::mem::swap(&mut diag, &mut next);
        sum += diag_sum;
        abs_sum += mass;

        if mass <= ctrl.tol * sum.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_RUN {
            let asymptotic = radius * radius;
            let ratio = if prev_mass > 0.0 { (mass / prev_mass).max(asymptotic) } else { asymptotic };
            let err = geometric_tail(mass, ratio) + 4.0 * f64::EPSILON * abs_sum;
            return Ok(SeriesValue { value: sum, err, terms_used: k + 1 });
        }
        prev_mass = mass;
    }
    Err(SpecialError::NonConvergence { terms: ctrl.max_terms, last: mass })
}
