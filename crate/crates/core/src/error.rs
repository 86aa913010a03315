//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by analyses, synthesis, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid frequency grid construction or use.
    #[error("invalid frequency grid: {0}")]
    Grid(String),

    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    Invalid(String),

    /// A matrix was singular (or numerically near-singular) during a
    /// conversion or solve. Reports the frequency where it happened.
    #[error("singular matrix at {freq_hz:.6e} Hz: {context}")]
    Singular { freq_hz: f64, context: String },

    /// A stub hit its tan/cot resonance at some evaluation frequency.
    #[error("stub resonance at {freq_hz:.6e} Hz (theta = {theta_deg:.3} deg)")]
    StubResonance { freq_hz: f64, theta_deg: f64 },

    /// A synthesis target lies outside the achievable range.
    #[error("target {target} outside achievable range [{lo:.4}, {hi:.4}]")]
    OutOfRange { target: f64, lo: f64, hi: f64 },

    /// Netlist syntax or validation failure with a line number.
    #[error("netlist error at line {line}: {msg}")]
    Netlist { line: usize, msg: String },

    /// Newton iteration failed to reach the residual tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e} A)")]
    Convergence { iterations: usize, residual: f64 },

    /// A requested analysis could not be carried out.
    #[error("analysis error: {0}")]
    Analysis(String),

    /// Touchstone file syntax failure with a line number.
    #[error("touchstone error at line {line}: {msg}")]
    Touchstone { line: usize, msg: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
