//! Beam splitting in an inhomogeneous field: branch-resolved forces,
//! trajectory integration through a magnet region plus free drift, and
//! seeded beam ensembles with per-branch spot statistics.

use crate::error::{Error, Result};
use crate::model::{
    BranchSign, InhomogeneousField, ParticleState, Trajectory, TrajectorySample, UnitsLedger,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// Magnet region of longitudinal extent `length_x` followed by a field-free
/// drift of `drift_x` to the detector plane. Particles enter on the z-axis
/// (z = 0), which must lie inside the profile's valid range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetGeometry {
    pub field: InhomogeneousField,
    pub length_x: f64,
    pub drift_x: f64,
}

impl MagnetGeometry {
    pub fn new(field: InhomogeneousField, length_x: f64, drift_x: f64) -> Result<Self> {
        if !(length_x > 0.0) || !length_x.is_finite() {
            return Err(Error::Domain {
                field: "length_x",
                value: length_x,
                reason: "must be positive and finite",
            });
        }
        if !(drift_x >= 0.0) || !drift_x.is_finite() {
            return Err(Error::Domain {
                field: "drift_x",
                value: drift_x,
                reason: "must be non-negative and finite",
            });
        }
        if !(field.z_range.0 < 0.0 && 0.0 < field.z_range.1) {
            return Err(Error::Domain {
                field: "z_range",
                value: 0.0,
                reason: "must contain the beam entry height z = 0",
            });
        }
        Ok(Self {
            field,
            length_x,
            drift_x,
        })
    }
}

/// Which force acts on a branch inside the magnet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForceLaw {
    /// Gradient of the branch kinetic energy density:
    /// F = +/- hbar c^2 B_E dB_E/dz. Scales with amplitude squared.
    EnergyGradient,
    /// Fixed magnetic moment coupled to the gradient:
    /// F = +/- (hbar/2) dB_E/dz. Scales linearly with amplitude.
    FixedMoment,
}

impl std::fmt::Display for ForceLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ForceLaw::EnergyGradient => "energy-gradient",
            ForceLaw::FixedMoment => "fixed-moment",
        })
    }
}

fn check_z(field: &InhomogeneousField, z: f64) -> Result<()> {
    if !(field.z_range.0..=field.z_range.1).contains(&z) {
        return Err(Error::OutOfRange {
            name: "z",
            value: z,
            min: field.z_range.0,
            max: field.z_range.1,
        });
    }
    Ok(())
}

/// Kinetic energy-density change after the ramp at height z:
/// (1/2) B_E(z)^2 (branch magnitude; the two branches carry opposite signs).
pub fn kinetic_density_change_z(field: &InhomogeneousField, z: f64) -> Result<f64> {
    check_z(field, z)?;
    let b = field.profile.value(z);
    Ok(0.5 * b * b)
}

/// Energy-gradient force on one branch: +/- hbar c^2 B_E(z) dB_E/dz.
pub fn force_md(
    field: &InhomogeneousField,
    z: f64,
    branch: BranchSign,
    units: &UnitsLedger,
) -> Result<f64> {
    check_z(field, z)?;
    Ok(branch.sign() * units.hbar_c_sq() * field.profile.value(z) * field.profile.gradient(z))
}

/// Fixed-moment baseline force on one branch: +/- (hbar/2) dB_E/dz.
pub fn force_qm_baseline(
    field: &InhomogeneousField,
    z: f64,
    branch: BranchSign,
    units: &UnitsLedger,
) -> Result<f64> {
    check_z(field, z)?;
    Ok(branch.sign() * 0.5 * units.hbar * field.profile.gradient(z))
}

/// Force under the selected law.
pub fn force(
    field: &InhomogeneousField,
    z: f64,
    branch: BranchSign,
    law: ForceLaw,
    units: &UnitsLedger,
) -> Result<f64> {
    match law {
        ForceLaw::EnergyGradient => force_md(field, z, branch, units),
        ForceLaw::FixedMoment => force_qm_baseline(field, z, branch, units),
    }
}

// Unchecked acceleration used inside the integrator stages; range
// containment is enforced on the accepted steps instead.
fn acceleration(
    field: &InhomogeneousField,
    z: f64,
    sign: f64,
    law: ForceLaw,
    units: &UnitsLedger,
    rho0: f64,
) -> f64 {
    let f = match law {
        ForceLaw::EnergyGradient => {
            units.hbar_c_sq() * field.profile.value(z) * field.profile.gradient(z)
        }
        ForceLaw::FixedMoment => 0.5 * units.hbar * field.profile.gradient(z),
    };
    sign * f / rho0
}

/// Classical Runge-Kutta trajectory through the magnet and drift.
///
/// The particle enters at (x = 0, z = 0) with longitudinal speed u0 and no
/// transverse speed; inside the magnet (x in [0, length_x]) the transverse
/// motion obeys du_z/dt = F(z)/rho0 while x advances uniformly. `dt` is an
/// upper bound on the step; the actual step divides the transit time
/// exactly and is recorded on the returned trajectory. Leaving the
/// profile's valid z-range inside the magnet aborts the run.
pub fn integrate_trajectory(
    state: &ParticleState,
    geometry: &MagnetGeometry,
    branch: BranchSign,
    law: ForceLaw,
    dt: f64,
    units: &UnitsLedger,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain {
            field: "dt",
            value: dt,
            reason: "must be positive and finite",
        });
    }
    let field = &geometry.field;
    let transit = geometry.length_x / state.u0;
    let n = (transit / dt).ceil().max(1.0) as usize;
    let h = transit / n as f64;
    let sign = branch.sign();
    let (z_min, z_max) = field.z_range;

    let mut samples = Vec::with_capacity(n + 2);
    let mut z = 0.0;
    let mut u_z = 0.0;
    samples.push(TrajectorySample {
        t: 0.0,
        x: 0.0,
        z,
        u_x: state.u0,
        u_z,
    });

    for step in 1..=n {
        let accel = |zz: f64| acceleration(field, zz, sign, law, units, state.rho0);
        // RK4 on (z, u_z); the force has no explicit time dependence
        let k1_z = u_z;
        let k1_u = accel(z);
        let k2_z = u_z + 0.5 * h * k1_u;
        let k2_u = accel(z + 0.5 * h * k1_z);
        let k3_z = u_z + 0.5 * h * k2_u;
        let k3_u = accel(z + 0.5 * h * k2_z);
        let k4_z = u_z + h * k3_u;
        let k4_u = accel(z + h * k3_z);
        z += h / 6.0 * (k1_z + 2.0 * k2_z + 2.0 * k3_z + k4_z);
        u_z += h / 6.0 * (k1_u + 2.0 * k2_u + 2.0 * k3_u + k4_u);

        if !(z >= z_min && z <= z_max) || !u_z.is_finite() {
            return Err(Error::Escape {
                step,
                last: *samples.last().expect("entry sample present"),
            });
        }
        let t = step as f64 * h;
        samples.push(TrajectorySample {
            t,
            x: state.u0 * t,
            z,
            u_x: state.u0,
            u_z,
        });
    }

    if geometry.drift_x > 0.0 {
        let drift_t = geometry.drift_x / state.u0;
        let exit = *samples.last().expect("magnet samples present");
        samples.push(TrajectorySample {
            t: exit.t + drift_t,
            x: exit.x + geometry.drift_x,
            z: exit.z + exit.u_z * drift_t,
            u_x: state.u0,
            u_z: exit.u_z,
        });
    }

    Ok(Trajectory {
        samples,
        branch,
        dt: h,
        field: format!("{:?} over {:?}, {} force", field.profile, field.z_range, law),
    })
}

/// How particles of a beam are assigned to branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchPolicy {
    /// Every particle takes the given branch.
    Fixed(BranchSign),
    /// Each particle draws an intrinsic phase uniformly from [0, 2 pi);
    /// phases below pi select the plus branch, the rest the minus branch.
    PhaseSampled,
}

/// A beam of identically prepared particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    pub n_particles: usize,
    pub state: ParticleState,
    pub policy: BranchPolicy,
    pub seed: u64,
}

impl BeamSpec {
    pub fn new(
        n_particles: usize,
        state: ParticleState,
        policy: BranchPolicy,
        seed: u64,
    ) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::Domain {
                field: "n_particles",
                value: 0.0,
                reason: "beam needs at least one particle",
            });
        }
        Ok(Self {
            n_particles,
            state,
            policy,
            seed,
        })
    }
}

/// End state of one beam particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParticleFate {
    /// Reached the detector plane.
    Hit(TrajectorySample),
    /// Left the profile's valid range inside the magnet.
    Escaped { step: usize, last: TrajectorySample },
}

/// Per-particle record of a beam run, ordered by particle index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamRecord {
    pub particle: usize,
    pub branch: BranchSign,
    pub phase: f64,
    pub fate: ParticleFate,
}

/// Spot statistics of a beam run. Means are taken over detector hits only;
/// `separation` is mean_z_plus - mean_z_minus when both branches hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSummary {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_escaped: usize,
    pub mean_z_plus: Option<f64>,
    pub mean_z_minus: Option<f64>,
    pub separation: Option<f64>,
}

/// Full outcome of a beam run.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamOutcome {
    pub records: Vec<BeamRecord>,
    pub summary: BeamSummary,
}

/// Run every particle of the beam through the magnet and summarize the
/// detector spots.
///
/// Deterministic for a fixed seed: each particle draws from its own
/// decorrelated generator stream keyed by its index, so the records do not
/// depend on scheduling. Particles run in parallel; escapes are recorded
/// per particle, not raised.
pub fn run_beam(
    beam: &BeamSpec,
    geometry: &MagnetGeometry,
    law: ForceLaw,
    dt: f64,
    units: &UnitsLedger,
) -> Result<BeamOutcome> {
    if beam.n_particles == 0 {
        return Err(Error::Domain {
            field: "n_particles",
            value: 0.0,
            reason: "beam needs at least one particle",
        });
    }
    let records: Vec<BeamRecord> = (0..beam.n_particles)
        .into_par_iter()
        .map(|i| -> Result<BeamRecord> {
            let (branch, phase) = match beam.policy {
                BranchPolicy::Fixed(b) => (b, beam.state.phase0),
                BranchPolicy::PhaseSampled => {
                    let mut rng = ChaCha8Rng::seed_from_u64(beam.seed);
                    rng.set_stream(i as u64);
                    let phase = rng.random::<f64>() * TAU;
                    let branch = if phase < PI {
                        BranchSign::Plus
                    } else {
                        BranchSign::Minus
                    };
                    (branch, phase)
                }
            };
            let mut state = beam.state;
            state.phase0 = phase;
            let fate = match integrate_trajectory(&state, geometry, branch, law, dt, units) {
                Ok(trajectory) => ParticleFate::Hit(*trajectory.last()),
                Err(Error::Escape { step, last }) => ParticleFate::Escaped { step, last },
                Err(other) => return Err(other),
            };
            Ok(BeamRecord {
                particle: i,
                branch,
                phase,
                fate,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut n_plus = 0;
    let mut n_minus = 0;
    let mut n_escaped = 0;
    let mut sum_plus = 0.0;
    let mut sum_minus = 0.0;
    let mut hits_plus = 0;
    let mut hits_minus = 0;
    for r in &records {
        match r.branch {
            BranchSign::Plus => n_plus += 1,
            BranchSign::Minus => n_minus += 1,
        }
        match r.fate {
            ParticleFate::Hit(sample) => match r.branch {
                BranchSign::Plus => {
                    sum_plus += sample.z;
                    hits_plus += 1;
                }
                BranchSign::Minus => {
                    sum_minus += sample.z;
                    hits_minus += 1;
                }
            },
            ParticleFate::Escaped { .. } => n_escaped += 1,
        }
    }
    let mean_z_plus = (hits_plus > 0).then(|| sum_plus / hits_plus as f64);
    let mean_z_minus = (hits_minus > 0).then(|| sum_minus / hits_minus as f64);
    let separation = match (mean_z_plus, mean_z_minus) {
        (Some(p), Some(m)) => Some(p - m),
        _ => None,
    };
    Ok(BeamOutcome {
        records,
        summary: BeamSummary {
            n_plus,
            n_minus,
            n_escaped,
            mean_z_plus,
            mean_z_minus,
            separation,
        },
    })
}
