//! Error types shared by the solver modules.

use thiserror::Error;

use crate::model::TrajectorySample;

/// Crate-wide error type. Variants carry the offending quantity by name so
/// callers can produce actionable messages without string matching.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar argument lies outside its admissible domain.
    #[error("invalid {field} = {value}: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A value fell outside a required interval.
    #[error("{name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Grid or resolution too coarse for the requested operation.
    #[error("resolution {got} below minimum {min}")]
    ResolutionTooLow { got: usize, min: usize },

    /// Explicit time step violates the stability bound.
    #[error("time step {dt} exceeds stability limit {limit} (dx = {dx})")]
    Stability { dt: f64, limit: f64, dx: f64 },

    /// A marching solver produced non-finite values.
    #[error("solver diverged at step {step}: {detail}")]
    Diverged { step: usize, detail: String },

    /// A closed-form expression was evaluated outside its validity.
    #[error("unphysical result: {detail}")]
    Unphysical { detail: String },

    /// Trajectory left the valid transverse range inside the magnet.
    #[error("trajectory escaped z-range at step {step} (t = {}, z = {})", last.t, last.z)]
    Escape { step: usize, last: TrajectorySample },

    /// Mismatched array dimensions.
    #[error("dimension mismatch: {detail}")]
    Dimension { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
