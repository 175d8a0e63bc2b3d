//! Brute-force references for the closed forms.
//!
//! At D = 4 the Euclidean triangle is
//!
//! ```text
//! I = π² ∫_{α1+α2+α3=1} dα / F,   F = α1 α2 p² + α1 α3 q² + α2 α3 r²,
//! ```
//!
//! integrated here by adaptive subdivision of the simplex. F vanishes at the
//! three corners only, like the distance to the corner, so the integrand is
//! integrable without a regulator. [`f4_raw`] is the F4 double sum done the
//! slow way in double-double arithmetic.

mod quadrature;
mod raw;

pub use quadrature::{integrate_simplex, simplex_rule, QuadOptions, QuadResult};
pub use raw::f4_raw;

use crate::vertex::Kinematics;
use crate::Result;
use std::f64::consts::PI;

/// The D = 4 triangle by Feynman-parameter quadrature, relative tolerance `quad_tol`.
pub fn triangle_feynman_param(kin: &Kinematics, quad_tol: f64) -> Result<QuadResult> {
    triangle_feynman_param_with(kin, QuadOptions::new(quad_tol)?)
}

pub fn triangle_feynman_param_with(kin: &Kinematics, opts: QuadOptions) -> Result<QuadResult> {
    let (p2, q2, r2) = (kin.p2(), kin.q2(), kin.r2());
    let f = |a: [f64; 3]| {
        let big_f = a[0] * a[1] * p2 + a[0] * a[2] * q2 + a[1] * a[2] * r2;
        1.0 / big_f
    };
    let mut r = integrate_simplex(f, opts)?;
    let pi2 = PI * PI;
    r.value *= pi2;
    r.err *= pi2;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::LEG_PERMUTATIONS;
    use approx::assert_relative_eq;

    #[test]
    fn symmetric_point_golden() {
        // π² (4/√3) Cl₂(π/3) = 23.133437198714689252...
        let kin = Kinematics::new(1.0, 1.0, 1.0).unwrap();
        let r = triangle_feynman_param(&kin, 1e-11).unwrap();
        assert_relative_eq!(r.value, 23.133_437_198_714_69, max_relative = 1e-10);
        assert!(r.err <= 1e-11 * r.value);
    }

    #[test]
    fn asymmetric_golden() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        let r = triangle_feynman_param(&kin, 1e-11).unwrap();
        assert_relative_eq!(r.value, 114.543_487_086_226_9, max_relative = 1e-10);
    }

    #[test]
    fn scaling_and_permutations() {
        let kin = Kinematics::new(1.3, 0.4, 2.2).unwrap();
        let base = triangle_feynman_param(&kin, 1e-10).unwrap().value;
        for lambda in [0.5, 2.0, 10.0] {
            let v = triangle_feynman_param(&kin.scaled(lambda).unwrap(), 1e-10).unwrap().value;
            assert_relative_eq!(v * lambda, base, max_relative = 1e-12);
        }
        for legs in LEG_PERMUTATIONS {
            let v = triangle_feynman_param(&kin.relabeled(legs), 1e-10).unwrap().value;
            assert_relative_eq!(v, base, max_relative = 1e-9);
        }
    }

    #[test]
    fn tighter_tolerance_moves_less_than_the_estimate() {
        let kin = Kinematics::new(2.0, 0.7, 0.3).unwrap();
        let coarse = triangle_feynman_param(&kin, 1e-7).unwrap();
        let fine = triangle_feynman_param(&kin, 1e-10).unwrap();
        assert!((coarse.value - fine.value).abs() <= coarse.err);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let kin = Kinematics::new(1.0, 1.0, 1.0).unwrap();
        let opts = QuadOptions { tol: 1e-14, max_regions: 10 };
        assert!(matches!(
            triangle_feynman_param_with(&kin, opts),
            Err(crate::Error::Quadrature { .. })
        ));
    }
}
