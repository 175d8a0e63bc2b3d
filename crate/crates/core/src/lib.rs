//! Appell F4 evaluation, the one-loop massless triangle in closed form, and the
//! supporting identities: F4 continuation, bubble composition and the Y/Δ
//! resistor equivalence. A brute-force Feynman-parameter quadrature serves as
//! ground truth for the closed forms.

pub mod checks;
pub mod oracle;
pub mod resistor;
pub mod selfenergy;
pub mod special;
pub mod vertex;

use special::SpecialError;
use thiserror::Error;

/// Errors above the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{}", term_failures(.0))]
    TermDomain(Vec<TermFailure>),
    #[error("quadrature missed tolerance: estimate {estimate:e} ± {err:e} after {regions} regions")]
    Quadrature { estimate: f64, err: f64, regions: usize },
    #[error("current conservation violated: r = {r}, q − p = {expected}")]
    Conservation { r: f64, expected: f64 },
}

/// Why one term of a closed form could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct TermFailure {
    pub label: &'static str,
    pub x: f64,
    pub y: f64,
    pub error: SpecialError,
}

fn term_failures(v: &[TermFailure]) -> String {
    let parts: Vec<String> =
        v.iter().map(|f| format!("term {} at ({}, {}): {}", f.label, f.x, f.y, f.error)).collect();
    parts.join("; ")
}

impl Error {
    /// True for errors that mean "outside the region where this form converges".
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Special(SpecialError::Domain(_))
                | Error::Special(SpecialError::Pole { .. })
                | Error::Special(SpecialError::ComplexBranch { .. })
                | Error::Special(SpecialError::Degenerate(_))
                | Error::TermDomain(_)
        )
    }

    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::Special(SpecialError::NonConvergence { .. })
                | Error::Special(SpecialError::Overflow(_))
                | Error::Quadrature { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub use special::{Branch, F4Params, Point2, SeriesControl};
pub use vertex::{Kinematics, OmegaParam};
