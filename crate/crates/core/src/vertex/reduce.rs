//! Folding the B and D terms into one F4 at (x/y, 1/y).
//!
//! Run the continuation formula on a target F4 T at (X, Y) = (x/y, 1/y): it
//! lands on (X/Y, 1/Y) = (x, y) as K_b (−Y)^{−b} F4_b + K_a (−Y)^{−a} F4_a.
//! The target is chosen so that F4_b is the B function and F4_a the D
//! function. For y < 1, Y > 1 sits on the cut of (−Y)^{−s}; on the upper side
//!
//! ```text
//! Ω W T = Ω K_b e^{iπb} (B function, B weight) + Ω K_a e^{iπa} (D function, D weight)
//! ```
//!
//! and the B and D functions are real, so asking for Re(Ω K_b e^{iπb}) = B and
//! Re(Ω K_a e^{iπa}) = D gives two real equations for the complex Ω, with
//! determinant sin π(b − a). Then B-term + D-term = Re(Ω W T) exactly.

use super::{evaluate_all, four_term_layout, Leg, OmegaParam, TriangleTerm, TriangleValue};
use super::Kinematics;
use crate::special::{
    cos_pi, sin_pi, Branch, ContinuationCoefficients, F4Params, Point2, SeriesControl,
    SpecialError,
};
use crate::{Error, Result};
use num_complex::Complex64;

const PARAM_TOL: f64 = 1e-12;

/// The combined coefficient and the F4 it multiplies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    /// F4 parameters of the combined term.
    pub target: F4Params,
    /// Its argument (x/y, 1/y).
    pub point: Point2,
    /// Continuation prefactor attached to (−Y)^{−a} (lands on the D function).
    pub k_a: f64,
    /// Continuation prefactor attached to (−Y)^{−b} (lands on the B function).
    pub k_b: f64,
    /// Ω(B, D).
    pub omega_coeff: Complex64,
    /// Weight in front of (p²)^{ω−3}.
    pub weight_p: f64,
}

fn degenerate(msg: String) -> Error {
    Error::Special(SpecialError::Degenerate(msg))
}

/// Invert the b-branch parameter map (b+1−c2, b; c1, b+1−a) for a given
/// ordering of the numerator parameters.
fn target_from_b_branch(landed: F4Params) -> Option<F4Params> {
    let b = landed.b;
    let a = b + 1.0 - landed.c2;
    let c2 = b + 1.0 - landed.a;
    F4Params::new(a, b, landed.c1, c2).ok()
}

/// Work out the target F4 and Ω(B, D) for the B/D pair at `kin`.
pub fn reduction(kin: &Kinematics, omega: OmegaParam) -> Result<Reduction> {
    let layout = four_term_layout(kin, omega)?;
    let (tb, td) = (layout[1], layout[3]);
    let chosen = [tb.f4, tb.f4.swap_ab()].into_iter().find_map(|landed| {
        let target = target_from_b_branch(landed)?;
        let cc = ContinuationCoefficients::new(target).ok()?;
        let fits = cc.b_term.params.same_function(&tb.f4, PARAM_TOL)
            && cc.a_term.params.same_function(&td.f4, PARAM_TOL);
        fits.then_some((target, cc))
    });
    let (target, cc) = chosen.ok_or_else(|| {
        degenerate("B and D functions are not the two branches of one continuation".into())
    })?;

    let point = Point2::new(kin.x() / kin.y(), 1.0 / kin.y())?;
    let (a, b) = (target.a, target.b);
    let big_y = point.y;
    // W |Y|^{−b} must be the B weight; the D weight then has to follow.
    let weight_p = tb.weight * big_y.powf(b);
    let landed_d = weight_p * big_y.powf(-a);
    if (landed_d - td.weight).abs() > 1e-12 * td.weight.abs() {
        return Err(degenerate(format!(
            "weights do not match: W·Y^(−a) = {landed_d}, D weight = {}",
            td.weight
        )));
    }

    let (k_a, k_b) = (cc.a_term.coeff, cc.b_term.coeff);
    if k_b == 0.0 {
        return Err(degenerate("b-branch continuation prefactor vanishes".into()));
    }
    if k_a == 0.0 {
        return Err(degenerate(format!(
            "a-branch continuation prefactor Γ(c2)Γ(b−a)/(Γ(b)Γ(c2−a)) vanishes \
             (c2 − a = {} is a pole of Γ), so no multiple of the continued F4 carries the D term",
            target.c2 - a
        )));
    }
    let det = sin_pi(b - a);
    if det == 0.0 {
        return Err(degenerate(format!("sin π(b − a) = 0 at b − a = {}", b - a)));
    }
    let beta1 = tb.coeff.re / k_b;
    let beta2 = td.coeff.re / k_a;
    let u = (beta2 * sin_pi(b) - beta1 * sin_pi(a)) / det;
    let v = (beta2 * cos_pi(b) - beta1 * cos_pi(a)) / det;

    Ok(Reduction { target, point, k_a, k_b, omega_coeff: Complex64::new(u, v), weight_p })
}

/// Three-term form: A and C untouched, B and D replaced by Re(Ω W T).
///
/// The combined F4 is taken on the upper side of its cut; `value_im` reports
/// the imaginary part that the real projection drops.
pub fn reduce_four_to_three(
    kin: &Kinematics,
    omega: OmegaParam,
    ctrl: SeriesControl,
) -> Result<TriangleValue> {
    let layout = four_term_layout(kin, omega)?;
    let red = reduction(kin, omega)?;
    let w = omega.value();
    let combined = TriangleTerm {
        label: "Ω",
        coeff: red.omega_coeff,
        scale: Leg::R,
        weight: red.weight_p * (kin.p2() / kin.r2()).powf(w - 3.0),
        prefactor: red.weight_p * kin.p2().powf(w - 3.0),
        f4: red.target,
        point: red.point,
        branch: Some(Branch::Upper),
    };
    let terms = evaluate_all(&[layout[0], layout[2], combined], ctrl)?;
    Ok(TriangleValue::from_terms(terms, omega))
}
