//! The three-term form with real coefficients, as written:
//!
//! ```text
//! π^ω [ (p²)^{ω−3} Γ_p F4(1, 3−ω; 3−ω, 3−ω; x, y)
//!     + y (q²)^{ω−3} Γ_q F4(1, ω−1; 3−ω, ω−1; x, y)
//!     + z (r²)^{ω−3} Γ_r F4(1, ω−1; ω−1, 3−ω; z, 1/y) ],
//! Γ_p = −Γ_q = −Γ_r = Γ²(ω−2)Γ(3−ω)/Γ(2ω−3).
//! ```
//!
//! The first two F4 need √x + √y < 1, the third √z + √(1/y) < 1, so for real
//! Euclidean kinematics the three series never converge together.

use super::{
    named_gamma, real_term, reduce_four_to_three, triangle_four_term, EvaluatedTerm, Kinematics,
    Leg, OmegaParam, TriangleTerm, TriangleValue,
};
use crate::special::{cos_pi, rgamma, Branch, F4Params, Point2, SeriesControl};
use crate::{Error, Result, TermFailure};

/// The three terms with their coefficients, prefactors and arguments.
pub fn paper_layout(kin: &Kinematics, omega: OmegaParam) -> Result<Vec<TriangleTerm>> {
    let w = omega.value();
    let g = named_gamma("Γ(ω−2)", w - 2.0)?;
    let gamma_p = g * g * named_gamma("Γ(3−ω)", 3.0 - w)? * rgamma(2.0 * w - 3.0);
    let (gamma_q, gamma_r) = (-gamma_p, -gamma_p);
    let (u, v) = (3.0 - w, w - 1.0);
    let pt = kin.point();
    let third = Point2::new(kin.z(), 1.0 / kin.y())?;
    Ok(vec![
        real_term("Γ_p", gamma_p, Leg::P, 1.0, F4Params::new(1.0, u, u, u)?, pt, kin, omega),
        real_term("Γ_q", gamma_q, Leg::Q, kin.y(), F4Params::new(1.0, v, u, v)?, pt, kin, omega),
        real_term("Γ_r", gamma_r, Leg::R, kin.z(), F4Params::new(1.0, v, v, u)?, third, kin, omega),
    ])
}

/// Every term by its double series. Fails with one entry per term whose
/// series does not converge.
pub fn triangle_three_term_paper(
    kin: &Kinematics,
    omega: OmegaParam,
    ctrl: SeriesControl,
) -> Result<TriangleValue> {
    let layout = paper_layout(kin, omega)?;
    let mut done = Vec::with_capacity(3);
    let mut failures = Vec::new();
    for t in &layout {
        match t.evaluate(ctrl) {
            Ok(e) => done.push(e),
            Err(error) => failures.push(TermFailure { label: t.label, x: t.point.x, y: t.point.y, error }),
        }
    }
    if !failures.is_empty() {
        return Err(Error::TermDomain(failures));
    }
    Ok(TriangleValue::from_terms(done, omega))
}

/// The same three terms with the third F4 continued past its boundary and
/// taken on `branch`. The result is complex in general.
pub fn paper_form_on_branch(
    kin: &Kinematics,
    omega: OmegaParam,
    branch: Branch,
    ctrl: SeriesControl,
) -> Result<TriangleValue> {
    let mut layout = paper_layout(kin, omega)?;
    layout[2].branch = Some(branch);
    let terms: Vec<EvaluatedTerm> =
        layout.iter().map(|t| t.evaluate(ctrl)).collect::<std::result::Result<_, _>>()?;
    Ok(TriangleValue::from_terms(terms, omega))
}

/// How the printed three-term form compares with the mechanical reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperComparison {
    pub omega: f64,
    pub x: f64,
    pub y: f64,
    /// Value of the reduced (or, where the reduction is degenerate, four-term) form.
    pub reference: f64,
    pub reference_form: &'static str,
    /// Why the strict series evaluation failed, if it did.
    pub strict_error: Option<String>,
    /// Real and imaginary part of the printed form, third F4 on the upper side.
    pub paper_value: f64,
    pub paper_imag: f64,
    pub discrepancy: f64,
    pub relative: f64,
    /// The D term of the four-term form.
    pub d_term: f64,
    /// discrepancy / D term.
    pub ratio_to_d_term: f64,
    pub cos_two_pi_omega: f64,
    pub agrees: bool,
}

/// Tolerance below which the printed form counts as agreeing.
pub const PAPER_AGREEMENT_TOL: f64 = 1e-6;

pub fn compare_paper_form(
    kin: &Kinematics,
    omega: OmegaParam,
    ctrl: SeriesControl,
) -> Result<PaperComparison> {
    let four = triangle_four_term(kin, omega, ctrl)?;
    let (reference, reference_form) = match reduce_four_to_three(kin, omega, ctrl) {
        Ok(v) => (v.value, "reduced"),
        Err(_) => (four.value, "four-term"),
    };
    let strict_error = triangle_three_term_paper(kin, omega, ctrl).err().map(|e| e.to_string());
    let paper = paper_form_on_branch(kin, omega, Branch::Upper, ctrl)?;
    let discrepancy = paper.value - reference;
    let relative = discrepancy / reference.abs();
    let d_term = four.term_values()[3];
    Ok(PaperComparison {
        omega: omega.value(),
        x: kin.x(),
        y: kin.y(),
        reference,
        reference_form,
        strict_error,
        paper_value: paper.value,
        paper_imag: paper.value_im,
        discrepancy,
        relative,
        d_term,
        ratio_to_d_term: discrepancy / d_term,
        cos_two_pi_omega: cos_pi(2.0 * omega.value()),
        agrees: relative.abs() < PAPER_AGREEMENT_TOL && paper.value_im.abs() < PAPER_AGREEMENT_TOL * reference.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::SpecialError;
    use approx::assert_relative_eq;

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn layout_follows_the_current_pattern() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        let t = paper_layout(&kin, OmegaParam::new(2.3).unwrap()).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!([t[0].scale, t[1].scale, t[2].scale], [Leg::P, Leg::Q, Leg::R]);
        assert_eq!(t[0].weight, 1.0);
        assert_eq!(t[1].weight, kin.y());
        assert_eq!(t[2].weight, kin.z());
        assert_eq!(t[1].coeff, -t[0].coeff);
        assert_eq!(t[2].coeff, -t[0].coeff);
    }

    #[test]
    fn strict_form_reports_the_failing_term() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        match triangle_three_term_paper(&kin, OmegaParam::new(2.3).unwrap(), ctrl()) {
            Err(Error::TermDomain(f)) => {
                assert_eq!(f.len(), 1);
                assert_eq!(f[0].label, "Γ_r");
                assert!(matches!(f[0].error, SpecialError::Domain(_)));
            }
            other => panic!("expected a per-term domain error, got {other:?}"),
        }
    }

    #[test]
    fn printed_form_is_off_by_cos_two_pi_omega_times_d() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        for w in [2.2, 2.3, 2.4] {
            let c = compare_paper_form(&kin, OmegaParam::new(w).unwrap(), ctrl()).unwrap();
            assert_relative_eq!(c.ratio_to_d_term, c.cos_two_pi_omega, max_relative = 1e-8);
            assert!(!c.agrees);
        }
    }

    #[test]
    fn printed_form_agrees_where_cos_two_pi_omega_vanishes() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        let c = compare_paper_form(&kin, OmegaParam::new(2.25).unwrap(), ctrl()).unwrap();
        assert!(c.relative.abs() < 1e-9, "{c:?}");
    }

    #[test]
    fn branches_are_conjugate() {
        let kin = Kinematics::new(1.0, 0.09, 0.04).unwrap();
        let om = OmegaParam::new(2.3).unwrap();
        let up = paper_form_on_branch(&kin, om, Branch::Upper, ctrl()).unwrap();
        let lo = paper_form_on_branch(&kin, om, Branch::Lower, ctrl()).unwrap();
        assert_relative_eq!(up.value, lo.value, max_relative = 1e-14);
        assert_relative_eq!(up.value_im, -lo.value_im, max_relative = 1e-14);
    }
}
