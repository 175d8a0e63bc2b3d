//! The massless bubble and the two-loop self-energies built from it.
//!
//! ```text
//! ∫ d^Dk / ((k²)^a ((k−p)²)^b) = π^ω G(a, b) (p²)^{ω−a−b}
//! G(a, b) = Γ(a+b−ω) Γ(ω−a) Γ(ω−b) / (Γ(a) Γ(b) Γ(2ω−a−b))
//! ```
//!
//! The two-loop integral ∫d^Dq/q² ∫d^Dk/((k²)^a (k−p)² (q−k)²) done q first
//! is two bubbles in a row; its closed forms for a = 1, 2 are
//! [`flying_saucer`].

use crate::vertex::{named_gamma, OmegaParam};
use crate::special::rgamma;
use crate::{Error, Result};

/// Propagator exponents of a one-loop two-point integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubblePowers {
    pub a: f64,
    pub b: f64,
}

/// G(a, b) at ω; the π^ω and (p²)^{ω−a−b} are left to the caller.
pub fn bubble(a: f64, b: f64, omega: OmegaParam) -> Result<f64> {
    let w = omega.value();
    let num = named_gamma("Γ(a+b−ω)", a + b - w)?
        * named_gamma("Γ(ω−a)", w - a)?
        * named_gamma("Γ(ω−b)", w - b)?;
    Ok(num * rgamma(a) * rgamma(b) * rgamma(2.0 * w - a - b))
}

/// Exponent of p² left by a bubble with these powers.
pub fn bubble_exponent(p: BubblePowers, omega: OmegaParam) -> f64 {
    omega.value() - p.a - p.b
}

fn check_a(a: u32) -> Result<()> {
    if a == 1 || a == 2 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("closed form exists for a = 1 and a = 2, not a = {a}")))
    }
}

/// Gamma factor of the two-loop self-energy (π^{2ω} and the power of p² left out).
pub fn flying_saucer(a: u32, omega: OmegaParam) -> Result<f64> {
    check_a(a)?;
    let w = omega.value();
    let g = |name, z| named_gamma(name, z);
    let common = g("Γ(ω−1)", w - 1.0)?.powi(3) * g("Γ(2−ω)", 2.0 - w)? * rgamma(2.0 * w - 2.0);
    Ok(if a == 1 {
        common * g("Γ(2ω−3)", 2.0 * w - 3.0)? * g("Γ(4−2ω)", 4.0 - 2.0 * w)?
            * rgamma(3.0 - w)
            * rgamma(3.0 * w - 4.0)
    } else {
        common * g("Γ(2ω−4)", 2.0 * w - 4.0)? * g("Γ(5−2ω)", 5.0 - 2.0 * w)?
            * rgamma(4.0 - w)
            * rgamma(3.0 * w - 5.0)
    })
}

/// Power of p² in the closed form: 2ω − 4 for a = 1, 2ω − 5 for a = 2.
pub fn flying_saucer_exponent(a: u32, omega: OmegaParam) -> Result<f64> {
    check_a(a)?;
    Ok(2.0 * omega.value() - if a == 1 { 4.0 } else { 5.0 })
}

/// One step of the sequential integration.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub stage: &'static str,
    /// Exponents of the two propagators integrated at this stage.
    pub powers: BubblePowers,
    /// Gamma factor produced (1 for a pure bookkeeping step).
    pub factor: f64,
    /// Exponent of the momentum left over after this stage.
    pub exponent_out: f64,
    /// loops · ω − (sum of original exponents consumed so far).
    pub expected_exponent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositionReport {
    pub a: u32,
    pub omega: f64,
    pub ledger: Vec<LedgerEntry>,
    pub composed: f64,
    pub closed_form: f64,
    pub relative: f64,
    pub composed_exponent: f64,
    pub closed_exponent: f64,
    /// Every stage's exponent matches its homogeneity count.
    pub homogeneous: bool,
}

impl CompositionReport {
    pub fn agrees(&self, tol: f64) -> bool {
        self.relative.abs() <= tol
            && self.homogeneous
            && (self.composed_exponent - self.closed_exponent).abs() <= 1e-13
    }
}

/// q loop first, then k: G(1, 1) · G(a + 2 − ω, 1), compared with [`flying_saucer`].
pub fn sequential_composition_check(a: u32, omega: OmegaParam) -> Result<CompositionReport> {
    check_a(a)?;
    let w = omega.value();
    let af = a as f64;
    let mut ledger = Vec::with_capacity(3);

    // 1/q² · 1/(q−k)²  →  π^ω G(1,1) (k²)^{ω−2}
    let inner = BubblePowers { a: 1.0, b: 1.0 };
    let inner_out = bubble_exponent(inner, omega);
    ledger.push(LedgerEntry {
        stage: "q loop: 1/q² 1/(q−k)²",
        powers: inner,
        factor: bubble(inner.a, inner.b, omega)?,
        exponent_out: inner_out,
        expected_exponent: w - 2.0,
    });

    // (k²)^{ω−2} / (k²)^a = 1/(k²)^{a+2−ω}
    let merged = af - inner_out;
    ledger.push(LedgerEntry {
        stage: "merge (k²)^{ω−2} into 1/(k²)^a",
        powers: BubblePowers { a: merged, b: 1.0 },
        factor: 1.0,
        exponent_out: -merged,
        expected_exponent: w - 2.0 - af,
    });

    let outer = BubblePowers { a: merged, b: 1.0 };
    let outer_out = bubble_exponent(outer, omega);
    ledger.push(LedgerEntry {
        stage: "k loop: 1/(k²)^{a+2−ω} 1/(k−p)²",
        powers: outer,
        factor: bubble(outer.a, outer.b, omega)?,
        exponent_out: outer_out,
        expected_exponent: 2.0 * w - (1.0 + 1.0 + af + 1.0),
    });

    let composed: f64 = ledger.iter().map(|e| e.factor).product();
    let closed_form = flying_saucer(a, omega)?;
    let homogeneous = ledger
        .iter()
        .all(|e| (e.exponent_out - e.expected_exponent).abs() <= 1e-14 * (1.0 + w.abs()));
    Ok(CompositionReport {
        a,
        omega: w,
        composed,
        closed_form,
        relative: (composed - closed_form) / closed_form,
        composed_exponent: outer_out,
        closed_exponent: flying_saucer_exponent(a, omega)?,
        homogeneous,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::SpecialError;
    use approx::assert_relative_eq;

    fn om(w: f64) -> OmegaParam {
        OmegaParam::new(w).unwrap()
    }

    #[test]
    fn bubble_at_five_halves() {
        // Γ(−1/2) Γ(3/2)² / Γ(3) = −π^{3/2}/4
        assert_relative_eq!(bubble(1.0, 1.0, om(2.5)).unwrap(), -1.392_081_999_207_927, max_relative = 1e-14);
    }

    #[test]
    fn bubble_is_symmetric() {
        assert_relative_eq!(bubble(0.7, 1.3, om(2.2)).unwrap(), bubble(1.3, 0.7, om(2.2)).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn bubble_pole_in_four_dimensions() {
        let e = bubble(1.0, 1.0, om(2.0)).unwrap_err();
        assert!(matches!(e, Error::Special(SpecialError::Pole { function: "Γ(a+b−ω)", .. })));
    }

    #[test]
    fn flying_saucer_frozen_values() {
        assert_relative_eq!(flying_saucer(1, om(2.3)).unwrap(), 3.046_759_533_458_993_5, max_relative = 1e-13);
        assert_relative_eq!(flying_saucer(2, om(2.3)).unwrap(), -8.269_775_876_531_554, max_relative = 1e-13);
        assert!(flying_saucer(3, om(2.3)).is_err());
    }

    #[test]
    fn exponents_of_p2() {
        assert_relative_eq!(flying_saucer_exponent(1, om(2.3)).unwrap(), 0.6, max_relative = 1e-15);
        assert_relative_eq!(flying_saucer_exponent(2, om(2.3)).unwrap(), -0.4, max_relative = 1e-14);
    }

    #[test]
    fn composition_matches_closed_forms() {
        for a in [1, 2] {
            for w in [1.7, 1.9, 2.1, 2.3, 2.6] {
                let r = sequential_composition_check(a, om(w)).unwrap();
                assert!(r.agrees(1e-12), "{r:?}");
                assert_eq!(r.ledger.len(), 3);
            }
        }
    }
}
