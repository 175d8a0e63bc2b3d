//! Leg-relabelling checks. The D = 4 integral is symmetric under all six
//! permutations of (p², q², r²); the closed forms can only be compared on
//! relabellings that keep √x + √y < 1.

use super::{triangle_four_term, Kinematics, Leg, OmegaParam, LEG_PERMUTATIONS};
use crate::oracle::triangle_feynman_param;
use crate::special::SeriesControl;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct RelabelValue {
    pub legs: [Leg; 3],
    pub oracle: f64,
    pub oracle_err: f64,
    /// Four-term value at ω, when the relabelled point is inside its domain.
    pub closed_form: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub omega: f64,
    pub values: Vec<RelabelValue>,
    /// Largest relative deviation of an oracle value from the first.
    pub oracle_spread: f64,
    pub oracle_invariant: bool,
    /// Largest relative deviation among the closed-form values that exist.
    pub closed_spread: f64,
    pub closed_evaluable: usize,
    pub closed_invariant: bool,
}

fn spread(v: &[f64]) -> f64 {
    match v.first() {
        None => 0.0,
        Some(&v0) => v.iter().map(|u| ((u - v0) / v0).abs()).fold(0.0, f64::max),
    }
}

pub fn triangle_sym_check(
    kin: &Kinematics,
    omega: OmegaParam,
    quad_tol: f64,
    ctrl: SeriesControl,
) -> Result<SymmetryReport> {
    let mut values = Vec::with_capacity(6);
    for legs in LEG_PERMUTATIONS {
        let k = kin.relabeled(legs);
        let o = triangle_feynman_param(&k, quad_tol)?;
        let closed_form = if k.in_four_term_domain() {
            Some(triangle_four_term(&k, omega, ctrl)?.value)
        } else {
            None
        };
        values.push(RelabelValue { legs, oracle: o.value, oracle_err: o.err, closed_form });
    }
    let oracle: Vec<f64> = values.iter().map(|v| v.oracle).collect();
    let closed: Vec<f64> = values.iter().filter_map(|v| v.closed_form).collect();
    let oracle_spread = spread(&oracle);
    let closed_spread = spread(&closed);
    Ok(SymmetryReport {
        omega: omega.value(),
        oracle_invariant: oracle_spread <= 10.0 * quad_tol,
        closed_invariant: closed_spread <= 1e-10,
        closed_evaluable: closed.len(),
        values,
        oracle_spread,
        closed_spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_point_has_two_evaluable_labellings() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        let r = triangle_sym_check(&kin, OmegaParam::new(2.3).unwrap(), 1e-10, SeriesControl::default())
            .unwrap();
        assert!(r.oracle_invariant, "{}", r.oracle_spread);
        assert_eq!(r.closed_evaluable, 2);
        assert!(r.closed_invariant, "{}", r.closed_spread);
    }
}
