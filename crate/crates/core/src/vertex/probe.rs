//! Behaviour of the four-term form as ω → 2.
//!
//! Each coefficient carries Γ(ω−2) or Γ(2−ω) twice, so single terms blow up
//! while their sum stays finite. The probe walks ω = 2 + δ down a ladder of δ
//! and extrapolates the totals to δ = 0.

use super::{triangle_four_term, Kinematics, OmegaParam};
use crate::special::SeriesControl;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub delta: f64,
    pub omega: f64,
    pub total: f64,
    pub err: f64,
    /// A, B, C, D contributions, π^ω included.
    pub terms: Vec<f64>,
    pub max_term: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleReport {
    pub rows: Vec<ProbeRow>,
    /// |T(δ_{i+1}) − T(δ_i)|
    pub differences: Vec<f64>,
    /// Every difference smaller than the one before.
    pub contracting: bool,
    /// max_term(δ_{i+1}) / max_term(δ_i)
    pub growth_ratios: Vec<f64>,
    /// Pole order implied by each growth ratio.
    pub pole_orders: Vec<f64>,
    /// Growth ratio within 0.1 of the δ ratio (what a simple pole gives).
    pub simple_pole_growth: bool,
    /// Polynomial extrapolation of the totals to δ = 0.
    pub extrapolated: f64,
    /// Change in the extrapolation when the largest δ is dropped.
    pub extrapolation_err: f64,
}

/// Value at 0 of the polynomial through the points (Neville's scheme).
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = p.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}

pub fn pole_cancellation_probe(
    kin: &Kinematics,
    deltas: &[f64],
    ctrl: SeriesControl,
) -> Result<PoleReport> {
    if deltas.len() < 2 {
        return Err(Error::InvalidInput("need at least two values of δ".into()));
    }
    if deltas.iter().any(|d| !(d.is_finite() && *d > 0.0)) || deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput("δ values must be positive and strictly decreasing".into()));
    }
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let omega = OmegaParam::new(2.0 + delta)?;
        let v = triangle_four_term(kin, omega, ctrl)?;
        let terms = v.term_values();
        let max_term = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        rows.push(ProbeRow { delta, omega: omega.value(), total: v.value, err: v.err, terms, max_term });
    }

    let differences: Vec<f64> = rows.windows(2).map(|w| (w[1].total - w[0].total).abs()).collect();
    let contracting = differences.windows(2).all(|d| d[1] < d[0]);
    let growth_ratios: Vec<f64> = rows.windows(2).map(|w| w[1].max_term / w[0].max_term).collect();
    let pole_orders: Vec<f64> = rows
        .windows(2)
        .zip(&growth_ratios)
        .map(|(w, g)| g.ln() / (w[0].delta / w[1].delta).ln())
        .collect();
    let simple_pole_growth = rows
        .windows(2)
        .zip(&growth_ratios)
        .all(|(w, g)| (g - w[0].delta / w[1].delta).abs() <= 0.1);

    let xs: Vec<f64> = rows.iter().map(|r| r.delta).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.total).collect();
    let extrapolated = neville_at_zero(&xs, &ys);
    let extrapolation_err = if xs.len() > 2 {
        (extrapolated - neville_at_zero(&xs[1..], &ys[1..])).abs()
    } else {
        (extrapolated - ys[ys.len() - 1]).abs()
    };

    Ok(PoleReport {
        rows,
        differences,
        contracting,
        growth_ratios,
        pole_orders,
        simple_pole_growth,
        extrapolated,
        extrapolation_err,
    })
}

/// δ = first / 2^k for k = 0..n.
pub fn halving_ladder(first: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| first / f64::powi(2.0, k as i32)).collect()
}
