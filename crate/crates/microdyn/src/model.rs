//! Domain types: particle states, intrinsic wave fields, external field
//! configurations, energy densities, and the two-valued branch sign.
//!
//! Conventions used throughout the crate:
//! - the intrinsic plane wave propagates along x with transversal fields,
//!   E along y and B along z; physical fields are the real (cosine) parts,
//! - a homogeneous external field of magnitude `b_ext`, tilted by `theta`
//!   from the z-axis, points along (0, -sin theta, cos theta),
//! - natural units hbar = c = 1 unless a [`UnitsLedger`] says otherwise.

use crate::error::{Error, Result};

/// Cartesian 3-vector.
pub type Vec3 = [f64; 3];

pub(crate) fn norm_sq(v: Vec3) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

/// Unit bookkeeping: the action scale `hbar` and the field propagation
/// speed `c`. Defaults to natural units (both 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsLedger {
    pub hbar: f64,
    pub c: f64,
}

impl UnitsLedger {
    /// SI magnitude of the action scale, for scale checks against natural units.
    pub const SI_HBAR: f64 = 1.054e-34;

    pub fn natural() -> Self {
        Self { hbar: 1.0, c: 1.0 }
    }

    pub fn new(hbar: f64, c: f64) -> Result<Self> {
        if !(hbar > 0.0) {
            return Err(Error::Domain {
                field: "hbar",
                value: hbar,
                reason: "must be positive",
            });
        }
        if !(c > 0.0) {
            return Err(Error::Domain {
                field: "c",
                value: c,
                reason: "must be positive",
            });
        }
        Ok(Self { hbar, c })
    }

    /// hbar * c^2, the prefactor of scaled energy densities and forces.
    pub fn hbar_c_sq(&self) -> f64 {
        self.hbar * self.c * self.c
    }
}

impl Default for UnitsLedger {
    fn default() -> Self {
        Self::natural()
    }
}

/// State of a single neutral massive particle: mass density `rho0`, phase
/// velocity `u0` of the intrinsic wave, wavenumber `k0`, magnetic amplitude
/// `b0`, and a free wave phase `phase0` normalized to [0, 2 pi).
///
/// Derived quantities: electric amplitude `e0 = u0 * b0` and angular
/// frequency `omega0 = u0 * k0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub rho0: f64,
    pub u0: f64,
    pub k0: f64,
    pub b0: f64,
    pub phase0: f64,
}

/// Validated constructor for [`ParticleState`].
pub fn make_particle(rho0: f64, u0: f64, k0: f64, b0: f64, phase0: f64) -> Result<ParticleState> {
    let positive = |field: &'static str, value: f64| -> Result<()> {
        if value > 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain {
                field,
                value,
                reason: "must be positive and finite",
            })
        }
    };
    positive("rho0", rho0)?;
    positive("u0", u0)?;
    positive("k0", k0)?;
    if !(b0 >= 0.0) || !b0.is_finite() {
        return Err(Error::Domain {
            field: "b0",
            value: b0,
            reason: "must be non-negative and finite",
        });
    }
    if !phase0.is_finite() {
        return Err(Error::Domain {
            field: "phase0",
            value: phase0,
            reason: "must be finite",
        });
    }
    Ok(ParticleState {
        rho0,
        u0,
        k0,
        b0,
        phase0: phase0.rem_euclid(std::f64::consts::TAU),
    })
}

impl ParticleState {
    /// Electric field amplitude of the intrinsic wave.
    pub fn e0(&self) -> f64 {
        self.u0 * self.b0
    }

    /// Angular frequency of the intrinsic wave.
    pub fn omega0(&self) -> f64 {
        self.u0 * self.k0
    }

    /// All-ones reference state (rho0 = u0 = k0 = b0 = 1, phase0 = 0).
    pub fn unit() -> Self {
        ParticleState {
            rho0: 1.0,
            u0: 1.0,
            k0: 1.0,
            b0: 1.0,
            phase0: 0.0,
        }
    }
}

/// Intrinsic transversal plane-wave fields at position `x` on the
/// propagation axis and time `t`:
/// E = (0, e0 cos w, 0), B = (0, 0, b0 cos w) with w = k0 x - omega0 t + phase0.
pub fn intrinsic_fields_at(state: &ParticleState, x: f64, t: f64) -> (Vec3, Vec3) {
    let w = state.k0 * x - state.omega0() * t + state.phase0;
    let c = w.cos();
    ([0.0, state.e0() * c, 0.0], [0.0, 0.0, state.b0 * c])
}

/// Weighting used by [`energy_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyMode {
    /// (1/2)(E^2 / u^2 + B^2): the electric part is weighted by the
    /// intrinsic wave's own propagation speed.
    Intrinsic { u: f64 },
    /// (hbar/2)(E^2 + c^2 B^2): weighted by the units ledger.
    Natural,
}

/// Scalar field energy density of an (E, B) pair under the chosen mode.
/// The two modes agree when hbar = c = u = 1.
pub fn energy_density(e: Vec3, b: Vec3, units: &UnitsLedger, mode: EnergyMode) -> Result<f64> {
    match mode {
        EnergyMode::Intrinsic { u } => {
            if !(u > 0.0) {
                return Err(Error::Domain {
                    field: "u",
                    value: u,
                    reason: "must be positive",
                });
            }
            Ok(0.5 * (norm_sq(e) / (u * u) + norm_sq(b)))
        }
        EnergyMode::Natural => {
            Ok(0.5 * units.hbar * (norm_sq(e) + units.c * units.c * norm_sq(b)))
        }
    }
}

/// One of the two symmetric solutions obtained by splitting the switched-on
/// external field into real and imaginary parts. The sign pairing is fixed
/// by convention: `Plus` carries the positive phase-velocity shift
/// +B_E/sqrt(rho0) and the negative kinetic energy-density change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchSign {
    Plus,
    Minus,
}

impl BranchSign {
    pub fn sign(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            BranchSign::Plus => BranchSign::Minus,
            BranchSign::Minus => BranchSign::Plus,
        }
    }

    pub const BOTH: [BranchSign; 2] = [BranchSign::Plus, BranchSign::Minus];
}

impl std::fmt::Display for BranchSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BranchSign::Plus => "+",
            BranchSign::Minus => "-",
        })
    }
}

/// Homogeneous external field of magnitude `b_ext`, tilted by `theta` from
/// the z-axis in the (y, z) plane, switched on linearly over `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousField {
    pub b_ext: f64,
    pub theta: f64,
    pub tau: f64,
}

impl HomogeneousField {
    pub fn new(b_ext: f64, theta: f64, tau: f64) -> Result<Self> {
        if !(b_ext >= 0.0) || !b_ext.is_finite() {
            return Err(Error::Domain {
                field: "b_ext",
                value: b_ext,
                reason: "must be non-negative and finite",
            });
        }
        if !theta.is_finite() {
            return Err(Error::Domain {
                field: "theta",
                value: theta,
                reason: "must be finite",
            });
        }
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::Domain {
                field: "tau",
                value: tau,
                reason: "must be positive and finite",
            });
        }
        Ok(Self { b_ext, theta, tau })
    }

    /// Field vector at full strength: (0, -sin theta, cos theta) * b_ext.
    pub fn vector(&self) -> Vec3 {
        [
            0.0,
            -self.theta.sin() * self.b_ext,
            self.theta.cos() * self.b_ext,
        ]
    }

    /// Magnitude B_E carried by each branch after the complex splitting;
    /// taken equal to the configured external magnitude.
    pub fn b_e(&self) -> f64 {
        self.b_ext
    }
}

/// Closed-form transverse profiles B_E(z) with analytic derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldProfile {
    /// B_E(z) = b0 + gradient * z
    Affine { b0: f64, gradient: f64 },
    /// B_E(z) = b0 + linear * z + quadratic * z^2
    Quadratic {
        b0: f64,
        linear: f64,
        quadratic: f64,
    },
    /// B_E(z)^2 = b0_squared + slope * z, so B_E dB_E/dz = slope/2 is
    /// constant in z: the profile with a height-independent branch force.
    SqrtAffine { b0_squared: f64, slope: f64 },
}

impl FieldProfile {
    pub fn value(&self, z: f64) -> f64 {
        match *self {
            FieldProfile::Affine { b0, gradient } => b0 + gradient * z,
            FieldProfile::Quadratic {
                b0,
                linear,
                quadratic,
            } => b0 + linear * z + quadratic * z * z,
            FieldProfile::SqrtAffine { b0_squared, slope } => (b0_squared + slope * z).sqrt(),
        }
    }

    pub fn gradient(&self, z: f64) -> f64 {
        match *self {
            FieldProfile::Affine { gradient, .. } => gradient,
            FieldProfile::Quadratic {
                linear, quadratic, ..
            } => linear + 2.0 * quadratic * z,
            FieldProfile::SqrtAffine { b0_squared, slope } => {
                0.5 * slope / (b0_squared + slope * z).sqrt()
            }
        }
    }

    /// Same profile with the amplitude multiplied by `s` everywhere:
    /// B_E(z) -> s * B_E(z).
    pub fn scaled(&self, s: f64) -> Self {
        match *self {
            FieldProfile::Affine { b0, gradient } => FieldProfile::Affine {
                b0: s * b0,
                gradient: s * gradient,
            },
            FieldProfile::Quadratic {
                b0,
                linear,
                quadratic,
            } => FieldProfile::Quadratic {
                b0: s * b0,
                linear: s * linear,
                quadratic: s * quadratic,
            },
            FieldProfile::SqrtAffine { b0_squared, slope } => FieldProfile::SqrtAffine {
                b0_squared: s * s * b0_squared,
                slope: s * s * slope,
            },
        }
    }
}

/// Inhomogeneous external field: a transverse profile valid over `z_range`,
/// with the same switch-on duration bookkeeping as the homogeneous case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InhomogeneousField {
    pub profile: FieldProfile,
    pub tau: f64,
    pub z_range: (f64, f64),
}

impl InhomogeneousField {
    /// Number of interior points sampled by the gradient consistency check.
    const GRADIENT_CHECK_SAMPLES: usize = 33;
    /// Mixed absolute/relative tolerance of the gradient consistency check.
    const GRADIENT_CHECK_TOL: f64 = 1e-6;

    pub fn new(profile: FieldProfile, tau: f64, z_range: (f64, f64)) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::Domain {
                field: "tau",
                value: tau,
                reason: "must be positive and finite",
            });
        }
        if !(z_range.0 < z_range.1) || !z_range.0.is_finite() || !z_range.1.is_finite() {
            return Err(Error::Domain {
                field: "z_range",
                value: z_range.1 - z_range.0,
                reason: "must be a finite non-empty interval (z_min < z_max)",
            });
        }
        if let FieldProfile::SqrtAffine { b0_squared, slope } = profile {
            // The squared profile must stay positive over the whole range.
            let lo = b0_squared + slope * z_range.0;
            let hi = b0_squared + slope * z_range.1;
            if lo <= 0.0 || hi <= 0.0 {
                return Err(Error::Domain {
                    field: "profile",
                    value: lo.min(hi),
                    reason: "squared amplitude must stay positive over z_range",
                });
            }
        }
        let field = Self {
            profile,
            tau,
            z_range,
        };
        field.check_gradient_consistency()?;
        Ok(field)
    }

    /// Verify the analytic derivative against central differences of the
    /// profile at interior sample points.
    fn check_gradient_consistency(&self) -> Result<()> {
        let span = self.z_range.1 - self.z_range.0;
        let h = span * 1e-5;
        let n = Self::GRADIENT_CHECK_SAMPLES;
        for i in 0..n {
            // keep the stencil inside the valid range
            let frac = (i as f64 + 0.5) / n as f64;
            let z = self.z_range.0 + h + frac * (span - 2.0 * h);
            let fd = (self.profile.value(z + h) - self.profile.value(z - h)) / (2.0 * h);
            let grad = self.profile.gradient(z);
            let tol = Self::GRADIENT_CHECK_TOL * grad.abs().max(1.0);
            // written so NaN from either side also trips the check
            if !((fd - grad).abs() <= tol) {
                return Err(Error::Domain {
                    field: "profile.gradient",
                    value: z,
                    reason: "analytic gradient disagrees with finite-difference check",
                });
            }
        }
        Ok(())
    }
}

/// External field configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExternalField {
    Homogeneous(HomogeneousField),
    Inhomogeneous(InhomogeneousField),
}

impl ExternalField {
    pub fn tau(&self) -> f64 {
        match self {
            ExternalField::Homogeneous(f) => f.tau,
            ExternalField::Inhomogeneous(f) => f.tau,
        }
    }
}

/// Branch-resolved outcome of switching a homogeneous field onto a particle.
///
/// Bookkeeping invariant: `delta_phi_em + delta_phi_k == 0` exactly, and
/// negating the branch negates `delta_phi_em`, `delta_phi_k` and `delta_u`
/// while `delta_rho` is branch-independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionResult {
    pub branch: BranchSign,
    /// Field energy-density change retained by this branch.
    pub delta_phi_em: f64,
    /// Kinetic energy-density change, exactly opposite to `delta_phi_em`.
    pub delta_phi_k: f64,
    /// Mass-density change at the end of the switch-on.
    pub delta_rho: f64,
    /// Phase-velocity shift of this branch.
    pub delta_u: f64,
}

/// One recorded point of a beam-splitting trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub z: f64,
    pub u_x: f64,
    pub u_z: f64,
}

/// Sampled trajectory through a magnet and drift region. `u_x` stays equal
/// to the entry speed: no longitudinal force is modeled.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub branch: BranchSign,
    /// Integrator step size used inside the magnet.
    pub dt: f64,
    /// Short description of the field profile and force law.
    pub field: String,
}

impl Trajectory {
    /// Final recorded point (the detector hit for a completed run).
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory has at least the entry sample")
    }
}
