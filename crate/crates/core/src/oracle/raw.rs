use crate::special::{F4Params, Point2, SpecialError};
use crate::{Error, Result};
use twofloat::TwoFloat;

/// F4 by the plain double sum over 0 ≤ m, n < `terms`, in double-double.
///
/// Terms are built by the ratio recurrences along rows and columns; there is
/// no stopping rule, no error estimate and no reordering.
pub fn f4_raw(p: F4Params, pt: Point2, terms: usize) -> Result<f64> {
    p.validate()?;
    if !pt.in_series_domain() {
        return Err(SpecialError::Domain(format!("({}, {}) is not an interior point", pt.x, pt.y)).into());
    }
    if terms == 0 || terms > 20_000 {
        return Err(Error::InvalidInput(format!("terms = {terms} must lie in 1..=20000")));
    }
    let one = TwoFloat::from(1.0);
    let (a, b) = (TwoFloat::from(p.a), TwoFloat::from(p.b));
    let (c1, c2) = (TwoFloat::from(p.c1), TwoFloat::from(p.c2));
    let (x, y) = (TwoFloat::from(pt.x), TwoFloat::from(pt.y));
    let mut sum = TwoFloat::from(0.0);
    let mut head = one;
    for m in 0..terms {
        let mf = TwoFloat::from(m as f64);
        if m > 0 {
            head = head * (a + mf - one) * (b + mf - one) * x / ((c1 + mf - one) * mf);
        }
        let mut t = head;
        for n in 0..terms {
            if n > 0 {
                let nf = TwoFloat::from(n as f64);
                let k = mf + nf;
                t = t * (a + k - one) * (b + k - one) * y / ((c2 + nf - one) * nf);
            }
            sum += t;
        }
        if !sum.hi().is_finite() || !head.hi().is_finite() {
            return Err(SpecialError::Overflow("F4 raw double sum").into());
        }
    }
    Ok(sum.hi() + sum.lo())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{f4_series, SeriesControl};
    use approx::assert_relative_eq;

    #[test]
    fn origin_is_one() {
        let p = F4Params::new(0.3, -2.1, 1.7, 0.2).unwrap();
        assert_eq!(f4_raw(p, Point2::new(0.0, 0.0).unwrap(), 50).unwrap(), 1.0);
    }

    #[test]
    fn frozen_value() {
        let p = F4Params::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let v = f4_raw(p, Point2::new(0.1, 0.2).unwrap(), 300).unwrap();
        assert_relative_eq!(v, 1.561_737_618_886_060_7, max_relative = 2e-16);
    }

    #[test]
    fn agrees_with_the_series() {
        let p = F4Params::new(1.3, 0.7, 0.45, 2.2).unwrap();
        let pt = Point2::new(-0.12, 0.18).unwrap();
        let s = f4_series(p, pt, SeriesControl::default()).unwrap();
        let r = f4_raw(p, pt, 400).unwrap();
        assert!((s.value - r).abs() <= s.err.max(4.0 * f64::EPSILON * r.abs()));
    }

    #[test]
    fn rejects_exterior_points() {
        let p = F4Params::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(f4_raw(p, Point2::new(0.3, 0.3).unwrap(), 10).is_err());
        assert!(f4_raw(p, Point2::new(0.1, 0.1).unwrap(), 0).is_err());
    }
}
