//! Field-dynamical model of magnetic interactions of neutral massive
//! particles.
//!
//! A particle is described by a mass density carrying an intrinsic
//! transversal plane wave. Switching on an external magnetic field splits
//! the description into two symmetric branches that redistribute energy
//! between the field and the kinetic term in opposite directions; in an
//! inhomogeneous field the same bookkeeping yields opposite transverse
//! forces on the two branches.
//!
//! The crate provides:
//! - [`model`]: shared domain types (particles, fields, branches),
//! - [`homogeneous`]: energy redistribution and interferometer phase
//!   shifts for a spatially uniform switched-on field,
//! - [`stern_gerlach`]: branch forces, trajectories and beam statistics in
//!   an inhomogeneous field,
//! - [`coupled`]: residuals and evolution for the coupled real/imaginary
//!   field system,
//! - [`fit`], [`numfmt`]: small numeric utilities used by the above.

// validation deliberately writes `!(x > 0.0)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coupled;
pub mod error;
pub mod fit;
pub mod homogeneous;
pub mod model;
pub mod numfmt;
pub mod stern_gerlach;

pub use error::{Error, Result};
pub use fit::{linear_fit, power_law_exponent, LinearFit};
pub use model::{
    energy_density, intrinsic_fields_at, make_particle, BranchSign, EnergyMode, ExternalField,
    FieldProfile, HomogeneousField, InhomogeneousField, InteractionResult, ParticleState,
    Trajectory, TrajectorySample, UnitsLedger, Vec3,
};
