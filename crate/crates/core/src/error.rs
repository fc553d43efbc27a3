//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while validating parameters, evolving the
/// covariance matrix, or extracting correlation quantifiers.
#[derive(Debug, Error)]
pub enum Error {
    /// A raw input failed basic validation (positivity, ordering, finiteness).
    #[error("invalid parameter {name} = {value}: requires {constraint}")]
    InvalidParameter {
        /// Which input was rejected.
        name: &'static str,
        /// The offending value.
        value: f64,
        /// Human-readable constraint, e.g. `"omega2 > 0"`.
        constraint: &'static str,
    },

    /// The coupling reaches or exceeds the stability boundary J < ω₁ω₂, so the
    /// lower normal mode is no longer a bound oscillator.
    #[error("unstable coupling J = {coupling}: requires J < omega1*omega2 = {bound}")]
    Instability {
        /// The coupling that was requested.
        coupling: f64,
        /// The stability bound ω₁ω₂.
        bound: f64,
    },

    /// A diagonal covariance entry dropped below 1 by more than the tolerated
    /// round-off, which would mean a negative occupation number.
    #[error("negative occupation beyond tolerance: N1 = {n1:e}, N2 = {n2:e}")]
    NegativeOccupation {
        /// Occupation of the first oscillator.
        n1: f64,
        /// Occupation of the second oscillator.
        n2: f64,
    },

    /// A quantity that must be real carried too large an imaginary residue.
    #[error("imaginary residue on {context} too large: |Im| = {magnitude:e}")]
    ImaginaryResidue {
        /// What was being computed.
        context: &'static str,
        /// Magnitude of the imaginary part.
        magnitude: f64,
    },

    /// A derived quantity left its mathematical domain (negative determinant,
    /// symplectic eigenvalue below zero, and similar).
    #[error("domain violation: {what} = {value:e}")]
    Domain {
        /// Which quantity broke its domain.
        what: &'static str,
        /// The offending value.
        value: f64,
    },

    /// `figure_preset` was asked for a preset it does not know.
    #[error("unknown figure preset `{name}` (expected fig4, anisotropy, or coupling)")]
    UnknownPreset {
        /// The requested preset name.
        name: String,
    },

    /// A sweep specification is malformed (empty or non-monotone axis values,
    /// or a cell that fails basic parameter validation).
    #[error("invalid sweep: {reason}")]
    InvalidSweep {
        /// Why the sweep was rejected.
        reason: String,
    },

    /// A CSV payload did not match the fixed record schema.
    #[error("malformed CSV at line {line}: {reason}")]
    Csv {
        /// 1-based line number (line 1 is the header).
        line: usize,
        /// What failed to parse.
        reason: String,
    },

    /// Output could not be written.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A manifest could not be serialized.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
