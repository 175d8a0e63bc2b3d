//! The one-loop massless triangle in closed form.
//!
//! In D = 2ω Euclidean dimensions
//!
//! ```text
//! I(p², q², r²) = ∫ d^Dk / (k² (k+p)² (k+q)²)
//!               = π^ω (p²)^{ω−3} [ A F4(α, β; γ, γ′; x, y)
//!                                 + B x^{1−γ} F4(α−γ+1, β−γ+1; 2−γ, γ′; x, y)
//!                                 + C y^{1−γ′} F4(α−γ′+1, β−γ′+1; γ, 2−γ′; x, y)
//!                                 + D x^{1−γ} y^{1−γ′} F4(α+2−γ−γ′, β+2−γ−γ′; 2−γ, 2−γ′; x, y) ]
//! ```
//!
//! with α = 1, β = γ = γ′ = 3 − ω, x = r²/p², y = q²/p². The four-term form
//! converges for √x + √y < 1.
//!
//! [`reduce_four_to_three`] folds the B and D terms into one F4 at
//! (x/y, 1/y) by running the F4 continuation backwards; the combined
//! coefficient is worked out from the continuation prefactors, never typed in.
//! [`triangle_three_term_paper`] is the three-term form with real
//! coefficients Γ_p = −Γ_q = −Γ_r, kept exactly as written for comparison.

mod paper;
mod probe;
mod reduce;
mod symmetry;

pub use paper::{
    compare_paper_form, paper_form_on_branch, paper_layout, triangle_three_term_paper,
    PaperComparison,
};
pub use probe::{halving_ladder, neville_at_zero, pole_cancellation_probe, PoleReport, ProbeRow};
pub use reduce::{reduce_four_to_three, reduction, Reduction};
pub use symmetry::{triangle_sym_check, RelabelValue, SymmetryReport};

use crate::special::{
    f4_rows, f4_series, gamma, rgamma, Branch, F4Params, Point2, SeriesControl, SpecialError,
};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Ratio between the four-term closed form and π² ∫_simplex 1/F at D = 4.
///
/// Matching at a reference point gives exactly one: the closed form is the
/// Euclidean integral with measure d^Dk and no extra factors of i.
pub const EUCLIDEAN_NORMALIZATION: f64 = 1.0;

/// Squared external momenta, Euclidean (all positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    p2: f64,
    q2: f64,
    r2: f64,
}

/// One of the three external legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    P,
    Q,
    R,
}

impl Leg {
    pub fn name(self) -> &'static str {
        match self {
            Leg::P => "p2",
            Leg::Q => "q2",
            Leg::R => "r2",
        }
    }
}

impl Kinematics {
    pub fn new(p2: f64, q2: f64, r2: f64) -> Result<Self> {
        for (name, v) in [("p2", p2), ("q2", q2), ("r2", r2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "{name} = {v}: Euclidean kinematics needs finite positive squared momenta"
                )));
            }
        }
        Ok(Kinematics { p2, q2, r2 })
    }

    /// From p² and the ratios x = r²/p², y = q²/p².
    pub fn from_ratios(p2: f64, x: f64, y: f64) -> Result<Self> {
        Kinematics::new(p2, y * p2, x * p2)
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn q2(&self) -> f64 {
        self.q2
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn leg(&self, leg: Leg) -> f64 {
        match leg {
            Leg::P => self.p2,
            Leg::Q => self.q2,
            Leg::R => self.r2,
        }
    }

    /// x = r²/p²
    pub fn x(&self) -> f64 {
        self.r2 / self.p2
    }

    /// y = q²/p²
    pub fn y(&self) -> f64 {
        self.q2 / self.p2
    }

    /// z = x/y (= r²/q²), recomputed from x and y on every call.
    pub fn z(&self) -> f64 {
        self.x() / self.y()
    }

    pub fn point(&self) -> Point2 {
        Point2 { x: self.x(), y: self.y() }
    }

    /// √x + √y < 1, where every F4 of the four-term form converges.
    pub fn in_four_term_domain(&self) -> bool {
        self.point().in_series_domain()
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Kinematics::new(lambda * self.p2, lambda * self.q2, lambda * self.r2)
    }

    /// Relabel the legs: the new (p², q², r²) are the old values on `legs`.
    pub fn relabeled(&self, legs: [Leg; 3]) -> Self {
        Kinematics { p2: self.leg(legs[0]), q2: self.leg(legs[1]), r2: self.leg(legs[2]) }
    }
}

/// All six orderings of the legs, identity first, then the two cyclic shifts.
pub const LEG_PERMUTATIONS: [[Leg; 3]; 6] = [
    [Leg::P, Leg::Q, Leg::R],
    [Leg::Q, Leg::R, Leg::P],
    [Leg::R, Leg::P, Leg::Q],
    [Leg::P, Leg::R, Leg::Q],
    [Leg::R, Leg::Q, Leg::P],
    [Leg::Q, Leg::P, Leg::R],
];

/// The regularization parameter ω, D = 2ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaParam {
    omega: f64,
}

impl OmegaParam {
    pub fn new(omega: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::InvalidInput(format!("omega = {omega} is not finite")));
        }
        Ok(OmegaParam { omega })
    }

    pub fn value(&self) -> f64 {
        self.omega
    }

    pub fn dimension(&self) -> f64 {
        2.0 * self.omega
    }

    pub fn pi_factor(&self) -> f64 {
        PI.powf(self.omega)
    }
}

/// Γ(z) with the pole error naming the argument as written in the formula.
pub(crate) fn named_gamma(name: &'static str, z: f64) -> Result<f64> {
    gamma(z).map_err(|e| match e {
        SpecialError::Pole { arg, .. } => Error::Special(SpecialError::Pole { function: name, arg }),
        other => Error::Special(other),
    })
}

/// Coefficients of the four-term form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// A = Γ²(ω−2)Γ(3−ω)/Γ(2ω−3), B = C = Γ(2−ω)Γ(ω−2)Γ(ω−1)/Γ(2ω−3), D = Γ²(2−ω)Γ(ω−1).
pub fn coeff_abcd(omega: OmegaParam) -> Result<Coefficients> {
    let w = omega.value();
    let g_wm2 = named_gamma("Γ(ω−2)", w - 2.0)?;
    let g_2mw = named_gamma("Γ(2−ω)", 2.0 - w)?;
    let g_3mw = named_gamma("Γ(3−ω)", 3.0 - w)?;
    let g_wm1 = named_gamma("Γ(ω−1)", w - 1.0)?;
    let inv = rgamma(2.0 * w - 3.0);
    let a = g_wm2 * g_wm2 * g_3mw * inv;
    let b = g_2mw * g_wm2 * g_wm1 * inv;
    let d = g_2mw * g_2mw * g_wm1;
    Ok(Coefficients { a, b, c: b, d })
}

/// One coefficient · prefactor · F4 triple of a closed form, before evaluation.
///
/// `prefactor = weight · (scale²)^{ω−3}`; π^ω is kept outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleTerm {
    pub label: &'static str,
    pub coeff: Complex64,
    pub scale: Leg,
    /// Dimensionless factor in front of (scale²)^{ω−3}.
    pub weight: f64,
    pub prefactor: f64,
    pub f4: F4Params,
    pub point: Point2,
    /// `None` for the plain double series; otherwise the F4 is evaluated by
    /// row sums on this side of its cut.
    pub branch: Option<Branch>,
}

/// A term together with its evaluated F4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluatedTerm {
    pub term: TriangleTerm,
    pub f4_value: Complex64,
    /// coeff · prefactor · F4, without π^ω.
    pub contribution: Complex64,
    pub err: f64,
    pub terms_used: usize,
}

impl TriangleTerm {
    pub fn evaluate(&self, ctrl: SeriesControl) -> std::result::Result<EvaluatedTerm, SpecialError> {
        let (f4_value, f4_err, terms_used) = match self.branch {
            None => {
                let s = f4_series(self.f4, self.point, ctrl)?;
                (Complex64::new(s.value, 0.0), s.err, s.terms_used)
            }
            Some(b) => {
                let s = f4_rows(self.f4, self.point, b, ctrl)?;
                (s.value, s.err, s.terms_used)
            }
        };
        let scale = self.coeff * self.prefactor;
        Ok(EvaluatedTerm {
            term: *self,
            f4_value,
            contribution: scale * f4_value,
            err: scale.norm() * f4_err,
            terms_used,
        })
    }
}

/// The triangle as a sum of evaluated terms.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleValue {
    /// Real part of the total, π^ω and the normalization included.
    pub value: f64,
    /// Imaginary part; zero unless a term was taken on a branch.
    pub value_im: f64,
    pub pi_factor: f64,
    pub terms: Vec<EvaluatedTerm>,
    pub err: f64,
}

impl TriangleValue {
    pub(crate) fn from_terms(terms: Vec<EvaluatedTerm>, omega: OmegaParam) -> Self {
        let pi_factor = omega.pi_factor();
        let total: Complex64 = terms.iter().map(|t| t.contribution).sum();
        let mass: f64 = terms.iter().map(|t| t.contribution.norm()).sum();
        let err: f64 = terms.iter().map(|t| t.err).sum::<f64>() + 8.0 * f64::EPSILON * mass;
        let scale = EUCLIDEAN_NORMALIZATION * pi_factor;
        TriangleValue {
            value: scale * total.re,
            value_im: scale * total.im,
            pi_factor,
            terms,
            err: scale * err,
        }
    }

    /// The total with π^ω left out; exact sum of the term contributions.
    pub fn value_without_pi(&self) -> f64 {
        EUCLIDEAN_NORMALIZATION * self.terms.iter().map(|t| t.contribution.re).sum::<f64>()
    }

    /// Real contribution of each term, π^ω included.
    pub fn term_values(&self) -> Vec<f64> {
        let s = EUCLIDEAN_NORMALIZATION * self.pi_factor;
        self.terms.iter().map(|t| s * t.contribution.re).collect()
    }
}

fn real_term(
    label: &'static str,
    coeff: f64,
    scale: Leg,
    weight: f64,
    f4: F4Params,
    point: Point2,
    kin: &Kinematics,
    omega: OmegaParam,
) -> TriangleTerm {
    TriangleTerm {
        label,
        coeff: Complex64::new(coeff, 0.0),
        scale,
        weight,
        prefactor: weight * kin.leg(scale).powf(omega.value() - 3.0),
        f4,
        point,
        branch: None,
    }
}

/// The four terms A, B, C, D with their parameter shifts, not yet evaluated.
pub fn four_term_layout(kin: &Kinematics, omega: OmegaParam) -> Result<Vec<TriangleTerm>> {
    let k = coeff_abcd(omega)?;
    let w = omega.value();
    let (al, be, ga, gp) = (1.0, 3.0 - w, 3.0 - w, 3.0 - w);
    let (x, y) = (kin.x(), kin.y());
    let pt = kin.point();
    let px = x.powf(1.0 - ga);
    let py = y.powf(1.0 - gp);
    let p = F4Params::new;
    Ok(vec![
        real_term("A", k.a, Leg::P, 1.0, p(al, be, ga, gp)?, pt, kin, omega),
        real_term("B", k.b, Leg::P, px, p(al - ga + 1.0, be - ga + 1.0, 2.0 - ga, gp)?, pt, kin, omega),
        real_term("C", k.c, Leg::P, py, p(al - gp + 1.0, be - gp + 1.0, ga, 2.0 - gp)?, pt, kin, omega),
        real_term(
            "D",
            k.d,
            Leg::P,
            px * py,
            p(al + 2.0 - ga - gp, be + 2.0 - ga - gp, 2.0 - ga, 2.0 - gp)?,
            pt,
            kin,
            omega,
        ),
    ])
}

pub(crate) fn evaluate_all(terms: &[TriangleTerm], ctrl: SeriesControl) -> Result<Vec<EvaluatedTerm>> {
    terms.iter().map(|t| t.evaluate(ctrl).map_err(Error::from)).collect()
}

/// The four-term closed form; needs √x + √y < 1.
pub fn triangle_four_term(
    kin: &Kinematics,
    omega: OmegaParam,
    ctrl: SeriesControl,
) -> Result<TriangleValue> {
    let layout = four_term_layout(kin, omega)?;
    Ok(TriangleValue::from_terms(evaluate_all(&layout, ctrl)?, omega))
}
