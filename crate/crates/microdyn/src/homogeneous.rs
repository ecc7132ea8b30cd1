//! Switched-on homogeneous field: primed intrinsic fields during the ramp,
//! energy redistribution between the field and kinetic parts, the
//! mass-density and phase-velocity changes (closed form and by numerical
//! integration), and the interferometer fringe shift.

use crate::error::{Error, Result};
use crate::model::{
    energy_density, BranchSign, EnergyMode, HomogeneousField, InteractionResult, ParticleState,
    UnitsLedger,
};

/// Linear switch-on schedule: the external field carries fraction t/tau of
/// its final strength at time t in [0, tau].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampSchedule {
    pub tau: f64,
}

impl RampSchedule {
    pub fn linear(tau: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::Domain {
                field: "tau",
                value: tau,
                reason: "must be positive and finite",
            });
        }
        Ok(Self { tau })
    }

    /// Field fraction at time t, clamped to [0, 1] outside the ramp.
    pub fn fraction(&self, t: f64) -> f64 {
        (t / self.tau).clamp(0.0, 1.0)
    }
}

/// The four transverse field components while the external field ramps up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampedFields {
    pub e_y: f64,
    pub e_z: f64,
    pub b_y: f64,
    pub b_z: f64,
}

/// Intrinsic plane-wave fields plus the switch-on contributions at position
/// `x` and time `t` during the ramp.
///
/// The growing external field induces a static electric field linear in x
/// (its time derivative is constant while the ramp is linear), while the
/// magnetic components grow with the ramp fraction t/tau.
pub fn ramped_fields(
    state: &ParticleState,
    field: &HomogeneousField,
    x: f64,
    t: f64,
) -> Result<RampedFields> {
    if !(0.0..=field.tau).contains(&t) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            min: 0.0,
            max: field.tau,
        });
    }
    let w = state.k0 * x - state.omega0() * t + state.phase0;
    let (sin_th, cos_th) = field.theta.sin_cos();
    let ramp = t / field.tau;
    let induced = field.b_ext * x / field.tau;
    Ok(RampedFields {
        e_y: state.e0() * w.cos() - cos_th * induced,
        e_z: -sin_th * induced,
        b_y: -sin_th * field.b_ext * ramp,
        b_z: state.b0 * w.cos() + cos_th * field.b_ext * ramp,
    })
}

/// Field energy-density change after the ramp, split into the x-dependent
/// part contributed by the induced electric field and the spatially
/// constant part contributed by the external field itself.
///
/// Only the x-dependent part drives mass-density changes; a constant field
/// exerts no force, so the constant part is kept separate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPhiEm {
    pub ramp_term: f64,
    pub constant_term: f64,
}

impl DeltaPhiEm {
    pub fn total(&self) -> f64 {
        self.ramp_term + self.constant_term
    }
}

/// Both parts of the field energy-density change at position x:
/// ramp term (1/2) b_ext^2 x^2 / (u0 tau)^2 and constant term (1/2) b_ext^2.
pub fn delta_phi_em_parts(state: &ParticleState, field: &HomogeneousField, x: f64) -> DeltaPhiEm {
    let b2 = field.b_ext * field.b_ext;
    let scale = x / (state.u0 * field.tau);
    DeltaPhiEm {
        ramp_term: 0.5 * b2 * scale * scale,
        constant_term: 0.5 * b2,
    }
}

/// Total field energy-density change at position x (both parts).
pub fn delta_phi_em(state: &ParticleState, field: &HomogeneousField, x: f64) -> f64 {
    delta_phi_em_parts(state, field, x).total()
}

/// Branch-resolved field energy-density change, computed by evaluating the
/// field energy of the branch amplitude: +/- (hbar/2) c^2 B_E^2.
pub fn delta_phi_em_branch(field: &HomogeneousField, branch: BranchSign, units: &UnitsLedger) -> f64 {
    let density = energy_density([0.0; 3], field.vector(), units, EnergyMode::Natural)
        .expect("natural mode accepts any fields");
    branch.sign() * density
}

/// Kinetic energy-density changes of the two branches:
/// (-(hbar/2) c^2 B_E^2, +(hbar/2) c^2 B_E^2). Their sum is zero; each is
/// the exact opposite of the matching field-energy change.
pub fn kinetic_branches(b_e: f64, units: &UnitsLedger) -> (f64, f64) {
    let magnitude = 0.5 * units.hbar_c_sq() * b_e * b_e;
    (-magnitude, magnitude)
}

/// Kinetic energy-density change of one branch (see [`kinetic_branches`]).
pub fn delta_phi_k(b_e: f64, branch: BranchSign, units: &UnitsLedger) -> f64 {
    let (plus, minus) = kinetic_branches(b_e, units);
    match branch {
        BranchSign::Plus => plus,
        BranchSign::Minus => minus,
    }
}

/// Mass-density change at the end of the ramp: -(1/2) b_ext^2 / u0^2.
/// Branch-independent (both branches carry the same amplitude).
pub fn delta_rho_analytic(state: &ParticleState, field: &HomogeneousField) -> f64 {
    -0.5 * field.b_ext * field.b_ext / (state.u0 * state.u0)
}

/// Smallest accepted grid resolution for the numeric integrations.
pub const MIN_RESOLUTION: usize = 16;

/// Time steps taken per resolution cell by the ramp march.
const STEPS_PER_CELL: usize = 4;

/// Probe spacing (as a fraction of u0 tau) for measuring the Laplacian of
/// the energy-density change by second differences.
const LAPLACIAN_PROBE_FRACTION: f64 = 1.0 / 16.0;

/// Staggered march of the mass-density response over the ramp.
///
/// The driving term is -(Laplacian of the field energy-density change),
/// measured from [`delta_phi_em_parts`] by a 3-point second difference at a
/// fixed probe spacing (wide enough that the difference is not dominated by
/// cancellation). Density values live at time-cell centers, density rates
/// at cell faces; each is updated from the other in leapfrog fashion, with
/// the first center seeded by a Taylor step from rest.
///
/// Returns (centers, rates, dt, forcing): `centers[j]` is the density
/// change at t = (j + 1/2) dt for j < m, `rates[j]` its time derivative at
/// t = j dt for j <= m, where m = STEPS_PER_CELL * resolution.
fn ramp_march(
    state: &ParticleState,
    field: &HomogeneousField,
    resolution: usize,
) -> Result<(Vec<f64>, Vec<f64>, f64, f64)> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::ResolutionTooLow {
            got: resolution,
            min: MIN_RESOLUTION,
        });
    }
    let tau = field.tau;
    let m = STEPS_PER_CELL * resolution;
    let dt = tau / m as f64;

    let x0 = 0.5 * state.u0 * tau;
    let h = LAPLACIAN_PROBE_FRACTION * state.u0 * tau;
    let phi = |x: f64| delta_phi_em_parts(state, field, x).ramp_term;
    let laplacian = (phi(x0 + h) - 2.0 * phi(x0) + phi(x0 - h)) / (h * h);
    let forcing = -laplacian;
    if !forcing.is_finite() {
        return Err(Error::Diverged {
            step: 0,
            detail: format!("non-finite forcing estimate {forcing}"),
        });
    }

    let mut rates = Vec::with_capacity(m + 1);
    rates.push(0.0);
    for j in 1..=m {
        rates.push(rates[j - 1] + dt * forcing);
    }

    let mut centers = Vec::with_capacity(m);
    // Taylor seed from rest over the first half cell.
    centers.push(0.125 * forcing * dt * dt);
    for j in 1..m {
        let next = centers[j - 1] + dt * rates[j];
        if !next.is_finite() {
            return Err(Error::Diverged {
                step: j,
                detail: format!("density march produced {next}"),
            });
        }
        centers.push(next);
    }
    Ok((centers, rates, dt, forcing))
}

/// Mass-density change at the end of the ramp by numerical integration of
/// the density response to the switched-on field; converges to
/// [`delta_rho_analytic`] at second order in the step size.
pub fn delta_rho_numeric(
    state: &ParticleState,
    field: &HomogeneousField,
    grid_resolution: usize,
) -> Result<f64> {
    let (centers, rates, dt, _) = ramp_march(state, field, grid_resolution)?;
    let m = rates.len() - 1;
    // Close the last half cell with the endpoint rate; the forcing switches
    // off at tau, so the curvature there is one-sided and a centered closure
    // is not available.
    Ok(centers[m - 1] + 0.5 * dt * rates[m])
}

/// Phase-velocity shift at the end of the ramp by numerical integration:
/// the density march is differenced in time and accumulated along the ray
/// that moves with the wave (x = u0 t), giving the single-field velocity
/// shift; the branch splitting maps its quadratic amplitude dependence onto
/// the two symmetric shifts. Converges to [`phase_velocity_shift`] at
/// second order.
pub fn phase_velocity_shift_numeric(
    state: &ParticleState,
    field: &HomogeneousField,
    grid_resolution: usize,
    branch: BranchSign,
) -> Result<f64> {
    let (centers, rates, dt, _) = ramp_march(state, field, grid_resolution)?;
    let m = rates.len() - 1;
    // Ghost centers: the density change is identically zero before the
    // switch-on; past the ramp end, extend with the endpoint rate.
    let ghost_before = 0.0;
    let ghost_after = centers[m - 1] + dt * rates[m];
    let mut sum = 0.0;
    for i in 0..m {
        let prev = if i == 0 { ghost_before } else { centers[i - 1] };
        let next = if i + 1 == m { ghost_after } else { centers[i + 1] };
        sum += (next - prev) / (2.0 * dt);
    }
    // Continuity: rho0 du/dx = -drho/dt, integrated over the co-moving ray
    // (dx = u0 dt) by the midpoint rule.
    let delta_u_lin = -(state.u0 * dt / state.rho0) * sum;
    // The linearized march carries the squared amplitude; the branch
    // amplitude is its square root, scaled back by 2 u0.
    let delta_u_sq = 2.0 * state.u0 * delta_u_lin;
    if delta_u_sq < 0.0 {
        return Err(Error::Unphysical {
            detail: format!(
                "squared phase-velocity shift came out negative ({delta_u_sq:.3e})"
            ),
        });
    }
    Ok(branch.sign() * delta_u_sq.sqrt())
}

/// Closed-form phase-velocity shift of one branch: +/- B_E / sqrt(rho0).
pub fn phase_velocity_shift(state: &ParticleState, b_e: f64, branch: BranchSign) -> f64 {
    branch.sign() * b_e / state.rho0.sqrt()
}

/// Amplitude-proportional form of the shift, +/- (hbar/2) B_E, used only
/// for scaling cross-checks: unlike [`phase_velocity_shift`] it carries no
/// density dependence, and the two are not interchangeable.
pub fn phase_velocity_shift_scaled(b_e: f64, branch: BranchSign, units: &UnitsLedger) -> f64 {
    branch.sign() * 0.5 * units.hbar * b_e
}

/// Interferometer fringe shift of one branch against an unshifted
/// reference beam over a field region of the given length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeShiftResult {
    pub delta_u: f64,
    pub path_length: f64,
    pub delta_phase: f64,
    pub branch: BranchSign,
}

/// Accumulated phase difference over `path_length` between the shifted beam
/// and the reference beam: omega0 L (1/(u0 + du) - 1/u0), using the exact
/// reciprocal transit times rather than a small-shift expansion.
pub fn fringe_shift(
    state: &ParticleState,
    field: &HomogeneousField,
    path_length: f64,
    branch: BranchSign,
) -> Result<FringeShiftResult> {
    if !(path_length > 0.0) || !path_length.is_finite() {
        return Err(Error::Domain {
            field: "path_length",
            value: path_length,
            reason: "must be positive and finite",
        });
    }
    let delta_u = phase_velocity_shift(state, field.b_e(), branch);
    let shifted = state.u0 + delta_u;
    if shifted <= 0.0 {
        return Err(Error::Domain {
            field: "u0 + delta_u",
            value: shifted,
            reason: "shifted phase velocity must stay positive",
        });
    }
    let delta_phase = state.omega0() * path_length * (1.0 / shifted - 1.0 / state.u0);
    Ok(FringeShiftResult {
        delta_u,
        path_length,
        delta_phase,
        branch,
    })
}

/// Branch-resolved outcome of the whole switch-on, assembled from the
/// closed forms. The field and kinetic energy-density changes cancel
/// exactly by construction.
pub fn interaction_result(
    state: &ParticleState,
    field: &HomogeneousField,
    branch: BranchSign,
    units: &UnitsLedger,
) -> InteractionResult {
    let dk = delta_phi_k(field.b_e(), branch, units);
    InteractionResult {
        branch,
        delta_phi_em: -dk,
        delta_phi_k: dk,
        delta_rho: delta_rho_analytic(state, field),
        delta_u: phase_velocity_shift(state, field.b_e(), branch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_particle;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn unit_state() -> ParticleState {
        ParticleState::unit()
    }

    #[test]
    fn ramp_fraction_endpoints_and_clamp() {
        let r = RampSchedule::linear(2.0).unwrap();
        assert_eq!(r.fraction(0.0), 0.0);
        assert_eq!(r.fraction(2.0), 1.0);
        assert_eq!(r.fraction(1.0), 0.5);
        assert_eq!(r.fraction(-1.0), 0.0);
        assert_eq!(r.fraction(5.0), 1.0);
        assert!(RampSchedule::linear(0.0).is_err());
    }

    #[test]
    fn ramped_fields_reduce_to_intrinsic_without_external_field() {
        let s = unit_state();
        let f = HomogeneousField::new(0.0, 0.3, 1.0).unwrap();
        let r = ramped_fields(&s, &f, 0.4, 0.7).unwrap();
        let w = s.k0 * 0.4 - s.omega0() * 0.7;
        assert_abs_diff_eq!(r.e_y, w.cos(), epsilon = 1e-15);
        assert_eq!(r.e_z, 0.0);
        assert_eq!(r.b_y, 0.0);
        assert_abs_diff_eq!(r.b_z, w.cos(), epsilon = 1e-15);
    }

    #[test]
    fn ramped_fields_axis_aligned_at_full_ramp() {
        let s = unit_state();
        let f = HomogeneousField::new(1.0, 0.0, 1.0).unwrap();
        let r = ramped_fields(&s, &f, 1.0, 1.0).unwrap();
        let w = (s.k0 - s.omega0()).cos();
        assert_abs_diff_eq!(r.e_y, w - 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.e_z, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.b_y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.b_z, w + 1.0, epsilon = 1e-15);
    }

    #[test]
    fn ramped_fields_transverse_at_full_ramp() {
        let s = unit_state();
        let f = HomogeneousField::new(1.0, PI / 2.0, 1.0).unwrap();
        let r = ramped_fields(&s, &f, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(r.e_z, -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.b_y, -1.0, epsilon = 1e-15);
        let w = (2.0 * s.k0 - s.omega0()).cos();
        assert_abs_diff_eq!(r.e_y, w, epsilon = 1e-15);
        assert_abs_diff_eq!(r.b_z, w, epsilon = 1e-15);
    }

    #[test]
    fn ramped_fields_scale_magnetic_part_with_ramp() {
        let s = unit_state();
        let f = HomogeneousField::new(1.0, 0.0, 2.0).unwrap();
        let half = ramped_fields(&s, &f, 0.0, 1.0).unwrap();
        // plane wave at x=0, t=1: cos(-omega0) part plus half the external field
        assert_abs_diff_eq!(half.b_z, (-1.0_f64).cos() + 0.5, epsilon = 1e-15);
        // induced electric part does not depend on t
        let quarter = ramped_fields(&s, &f, 0.0, 0.5).unwrap();
        assert_eq!(half.e_z, quarter.e_z);
    }

    #[test]
    fn ramped_fields_reject_time_outside_ramp() {
        let s = unit_state();
        let f = HomogeneousField::new(1.0, 0.0, 1.0).unwrap();
        match ramped_fields(&s, &f, 0.0, 1.5).unwrap_err() {
            Error::OutOfRange { name, .. } => assert_eq!(name, "t"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(ramped_fields(&s, &f, 0.0, -0.1).is_err());
    }

    #[test]
    fn delta_phi_em_known_values() {
        let s1 = make_particle(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let f1 = HomogeneousField::new(2.0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(delta_phi_em(&s1, &f1, 1.0), 4.0, epsilon = 1e-15);

        let s2 = make_particle(1.0, 2.0, 1.0, 1.0, 0.0).unwrap();
        let f2 = HomogeneousField::new(1.0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(delta_phi_em(&s2, &f2, 2.0), 1.0, epsilon = 1e-15);

        let f0 = HomogeneousField::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(delta_phi_em(&s1, &f0, 5.0), 0.0);
    }

    #[test]
    fn delta_phi_em_parts_split() {
        let s = make_particle(1.0, 2.0, 1.0, 1.0, 0.0).unwrap();
        let f = HomogeneousField::new(1.0, 0.4, 1.0).unwrap();
        let parts = delta_phi_em_parts(&s, &f, 2.0);
        assert_abs_diff_eq!(parts.ramp_term, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(parts.constant_term, 0.5, epsilon = 1e-15);
        // the split does not depend on the field orientation
        let tilted = HomogeneousField::new(1.0, 1.2, 1.0).unwrap();
        assert_eq!(parts, delta_phi_em_parts(&s, &tilted, 2.0));
    }

    #[test]
    fn kinetic_branches_known_values() {
        let nat = UnitsLedger::natural();
        assert_eq!(kinetic_branches(0.0, &nat), (0.0, 0.0));
        assert_eq!(kinetic_branches(1.0, &nat), (-0.5, 0.5));
        let scaled = UnitsLedger::new(2.0, 1.0).unwrap();
        assert_eq!(kinetic_branches(3.0, &scaled), (-9.0, 9.0));
    }

    #[test]
    fn branch_energy_changes_cancel() {
        let nat = UnitsLedger::natural();
        let f = HomogeneousField::new(0.7, 0.9, 1.0).unwrap();
        for branch in BranchSign::BOTH {
            let em = delta_phi_em_branch(&f, branch, &nat);
            let k = delta_phi_k(f.b_e(), branch, &nat);
            // composed through the energy-density evaluation: near-exact
            assert_abs_diff_eq!(em + k, 0.0, epsilon = 1e-15);
        }
        let s = unit_state();
        let r = interaction_result(&s, &f, BranchSign::Plus, &nat);
        // assembled from the closed forms: exact
        assert_eq!(r.delta_phi_em + r.delta_phi_k, 0.0);
    }

    #[test]
    fn interaction_result_branch_antisymmetry() {
        let nat = UnitsLedger::natural();
        let s = make_particle(2.5, 1.3, 0.8, 0.6, 0.2).unwrap();
        let f = HomogeneousField::new(0.4, 0.7, 2.0).unwrap();
        let plus = interaction_result(&s, &f, BranchSign::Plus, &nat);
        let minus = interaction_result(&s, &f, BranchSign::Minus, &nat);
        assert_eq!(plus.delta_phi_em, -minus.delta_phi_em);
        assert_eq!(plus.delta_phi_k, -minus.delta_phi_k);
        assert_eq!(plus.delta_u, -minus.delta_u);
        assert_eq!(plus.delta_rho, minus.delta_rho);
    }

    #[test]
    fn delta_rho_analytic_known_values() {
        let s1 = make_particle(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let f1 = HomogeneousField::new(2.0, 0.0, 1.0).unwrap();
        assert_eq!(delta_rho_analytic(&s1, &f1), -2.0);
        let s2 = make_particle(1.0, 2.0, 1.0, 1.0, 0.0).unwrap();
        let f2 = HomogeneousField::new(1.0, 0.0, 1.0).unwrap();
        assert_eq!(delta_rho_analytic(&s2, &f2), -0.125);
        let f0 = HomogeneousField::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(delta_rho_analytic(&s1, &f0), 0.0);
    }

    #[test]
    fn delta_rho_numeric_matches_closed_form() {
        let s = make_particle(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let f = HomogeneousField::new(2.0, 0.0, 1.0).unwrap();
        let numeric = delta_rho_numeric(&s, &f, 64).unwrap();
        assert_relative_eq!(numeric, -2.0, max_relative = 1e-5);
        let f0 = HomogeneousField::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(delta_rho_numeric(&s, &f0, 64).unwrap(), 0.0);
    }

    #[test]
    fn delta_rho_numeric_rejects_coarse_grids() {
        let s = unit_state();
        let f = HomogeneousField::new(1.0, 0.0, 1.0).unwrap();
        match delta_rho_numeric(&s, &f, 8).unwrap_err() {
            Error::ResolutionTooLow { got, min } => {
                assert_eq!(got, 8);
                assert_eq!(min, MIN_RESOLUTION);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn delta_rho_numeric_independent_of_tau_and_orientation() {
        // the end-of-ramp density change depends only on b_ext and u0
        let s = make_particle(1.0, 1.5, 1.0, 1.0, 0.0).unwrap();
        let a = delta_rho_numeric(&s, &HomogeneousField::new(0.8, 0.0, 1.0).unwrap(), 64).unwrap();
        let b = delta_rho_numeric(&s, &HomogeneousField::new(0.8, 1.1, 3.0).unwrap(), 64).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn phase_velocity_shift_known_values() {
        let s4 = make_particle(4.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(phase_velocity_shift(&s4, 1.0, BranchSign::Plus), 0.5);
        let s1 = unit_state();
        assert_eq!(phase_velocity_shift(&s1, 2.0, BranchSign::Minus), -2.0);
        assert_eq!(phase_velocity_shift(&s1, 0.0, BranchSign::Plus), 0.0);
    }

    #[test]
    fn phase_velocity_shift_numeric_matches_closed_form() {
        let s = make_particle(4.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let f = HomogeneousField::new(1.0, 0.0, 1.0).unwrap();
        let plus = phase_velocity_shift_numeric(&s, &f, 64, BranchSign::Plus).unwrap();
        assert_relative_eq!(plus, 0.5, max_relative = 1e-5);
        let minus = phase_velocity_shift_numeric(&s, &f, 64, BranchSign::Minus).unwrap();
        // the branch map is a sign flip: exactly odd
        assert_eq!(minus, -plus);
        let f0 = HomogeneousField::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(
            phase_velocity_shift_numeric(&s, &f0, 64, BranchSign::Plus).unwrap(),
            0.0
        );
    }

    #[test]
    fn phase_velocity_shift_scaled_is_amplitude_linear() {
        let nat = UnitsLedger::natural();
        assert_eq!(phase_velocity_shift_scaled(2.0, BranchSign::Plus, &nat), 1.0);
        let scaled = UnitsLedger::new(3.0, 1.0).unwrap();
        assert_eq!(
            phase_velocity_shift_scaled(2.0, BranchSign::Minus, &scaled),
            -3.0
        );
    }

    #[test]
    fn fringe_shift_reference_value() {
        // delta_u = +0.5 on a unit particle over unit length
        let s = unit_state();
        let f = HomogeneousField::new(0.5, 0.0, 1.0).unwrap();
        let r = fringe_shift(&s, &f, 1.0, BranchSign::Plus).unwrap();
        assert_eq!(r.delta_u, 0.5);
        assert_abs_diff_eq!(r.delta_phase, -1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn fringe_shift_zero_without_field() {
        let s = unit_state();
        let f = HomogeneousField::new(0.0, 0.0, 1.0).unwrap();
        let r = fringe_shift(&s, &f, 2.0, BranchSign::Minus).unwrap();
        assert_eq!(r.delta_phase, 0.0);
    }

    #[test]
    fn fringe_shift_near_linear_for_small_amplitudes() {
        let s = unit_state();
        let b = 1e-4;
        let f = HomogeneousField::new(b, 0.0, 1.0).unwrap();
        let r = fringe_shift(&s, &f, 1.0, BranchSign::Plus).unwrap();
        let linear = -s.omega0() * 1.0 * r.delta_u / (s.u0 * s.u0);
        // deviation from the linearized form is second order in delta_u
        assert!((r.delta_phase - linear).abs() < 2.0 * b * b);
    }

    #[test]
    fn fringe_shift_rejects_bad_inputs() {
        let s = unit_state();
        let f = HomogeneousField::new(0.5, 0.0, 1.0).unwrap();
        match fringe_shift(&s, &f, 0.0, BranchSign::Plus).unwrap_err() {
            Error::Domain { field, .. } => assert_eq!(field, "path_length"),
            other => panic!("unexpected error {other:?}"),
        }
        // a shift that cancels the whole phase velocity is unphysical
        let strong = HomogeneousField::new(1.5, 0.0, 1.0).unwrap();
        match fringe_shift(&s, &strong, 1.0, BranchSign::Minus).unwrap_err() {
            Error::Domain { field, .. } => assert_eq!(field, "u0 + delta_u"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
