//! Scenario orchestration: run the configured experiment, write the data
//! CSV and the metadata echo, and summarize results.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use microdyn::coupled::{evolve, stability_limit, EvolveSpec, InitialQuadratics};
use microdyn::homogeneous::{
    delta_phi_em_branch, delta_phi_k, delta_rho_numeric, fringe_shift, phase_velocity_shift,
    phase_velocity_shift_numeric,
};
use microdyn::numfmt::format_full;
use microdyn::stern_gerlach::{
    run_beam, BeamSpec, BranchPolicy, ForceLaw, MagnetGeometry, ParticleFate,
};
use microdyn::{BranchSign, HomogeneousField, InhomogeneousField, UnitsLedger};
use ndarray::Array1;

use crate::config::{classify, ExperimentConfig, HarnessError, ScenarioParams};
use crate::output::{data_file_name, meta_file_name, metadata_text, write_text};
use crate::scaling::fit_scaling;

/// Fallback trajectory step for beam scenarios when `[numerics] dt` is not
/// given.
pub const DEFAULT_BEAM_DT: f64 = 1e-3;

/// What a run produced, for logging and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub data_path: PathBuf,
    pub meta_path: PathBuf,
    pub rows: usize,
    pub results: Vec<(String, String)>,
}

pub fn run_experiment(
    config: &ExperimentConfig,
    out_dir: &Path,
) -> Result<RunReport, HarnessError> {
    let started = Instant::now();
    fs::create_dir_all(out_dir).map_err(|err| {
        HarnessError::Io(format!("cannot create `{}`: {err}", out_dir.display()))
    })?;

    let (csv, resolved_dt, results) = match &config.params {
        ScenarioParams::Homogeneous {
            field,
            sweep,
            path_length,
        } => run_homogeneous(config, field, sweep, *path_length)?,
        ScenarioParams::Interferometer {
            field,
            sweep,
            path_length,
        } => run_interferometer(config, field, sweep, *path_length)?,
        ScenarioParams::SternGerlach {
            geometry,
            n_particles,
            policy,
            law,
        } => run_stern_gerlach(config, geometry, *n_particles, *policy, *law)?,
        ScenarioParams::Coupled { .. } => run_coupled(config)?,
        ScenarioParams::Compare {
            geometry,
            scales,
            n_particles,
        } => run_compare(config, geometry, scales, *n_particles)?,
    };

    let data_name = data_file_name(config.scenario);
    let data_path = out_dir.join(&data_name);
    write_text(&data_path, &csv)?;

    let wall_time_s = started.elapsed().as_secs_f64();
    let meta = metadata_text(config, resolved_dt, &data_name, wall_time_s, &results);
    let meta_path = out_dir.join(meta_file_name(config.scenario));
    write_text(&meta_path, &meta)?;

    Ok(RunReport {
        data_path,
        meta_path,
        rows: csv.lines().count().saturating_sub(1),
        results,
    })
}

type ScenarioOutput = (String, Option<f64>, Vec<(String, String)>);

fn run_homogeneous(
    config: &ExperimentConfig,
    field: &HomogeneousField,
    sweep: &[f64],
    path_length: f64,
) -> Result<ScenarioOutput, HarnessError> {
    let mut csv = String::from(
        "b_e,delta_phi_em_plus,delta_phi_k_plus,delta_rho,delta_u_plus,delta_u_minus,delta_phase_plus\n",
    );
    for &b_ext in sweep {
        let f = HomogeneousField::new(b_ext, field.theta, field.tau).map_err(classify)?;
        let b_e = f.b_e();
        let em_plus = delta_phi_em_branch(&f, BranchSign::Plus, &config.units);
        let k_plus = delta_phi_k(b_e, BranchSign::Plus, &config.units);
        let rho = delta_rho_numeric(&config.particle, &f, config.resolution).map_err(classify)?;
        let u_plus =
            phase_velocity_shift_numeric(&config.particle, &f, config.resolution, BranchSign::Plus)
                .map_err(classify)?;
        let u_minus = phase_velocity_shift_numeric(
            &config.particle,
            &f,
            config.resolution,
            BranchSign::Minus,
        )
        .map_err(classify)?;
        let fringe =
            fringe_shift(&config.particle, &f, path_length, BranchSign::Plus).map_err(classify)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            format_full(b_e),
            format_full(em_plus),
            format_full(k_plus),
            format_full(rho),
            format_full(u_plus),
            format_full(u_minus),
            format_full(fringe.delta_phase),
        );
    }
    let results = vec![("sweep_points".to_string(), sweep.len().to_string())];
    Ok((csv, None, results))
}

fn run_interferometer(
    config: &ExperimentConfig,
    field: &HomogeneousField,
    sweep: &[f64],
    path_length: f64,
) -> Result<ScenarioOutput, HarnessError> {
    let mut csv =
        String::from("b_e,delta_u_plus,delta_u_minus,delta_phase_plus,delta_phase_minus\n");
    for &b_ext in sweep {
        let f = HomogeneousField::new(b_ext, field.theta, field.tau).map_err(classify)?;
        let b_e = f.b_e();
        let u_plus = phase_velocity_shift(&config.particle, b_e, BranchSign::Plus);
        let u_minus = phase_velocity_shift(&config.particle, b_e, BranchSign::Minus);
        let plus =
            fringe_shift(&config.particle, &f, path_length, BranchSign::Plus).map_err(classify)?;
        let minus =
            fringe_shift(&config.particle, &f, path_length, BranchSign::Minus).map_err(classify)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            format_full(b_e),
            format_full(u_plus),
            format_full(u_minus),
            format_full(plus.delta_phase),
            format_full(minus.delta_phase),
        );
    }
    let results = vec![("sweep_points".to_string(), sweep.len().to_string())];
    Ok((csv, None, results))
}

fn run_stern_gerlach(
    config: &ExperimentConfig,
    geometry: &MagnetGeometry,
    n_particles: usize,
    policy: BranchPolicy,
    law: ForceLaw,
) -> Result<ScenarioOutput, HarnessError> {
    let dt = config.dt.unwrap_or(DEFAULT_BEAM_DT);
    let beam =
        BeamSpec::new(n_particles, config.particle, policy, config.seed).map_err(classify)?;
    let outcome = run_beam(&beam, geometry, law, dt, &config.units).map_err(classify)?;

    let mut csv = String::from("particle,branch,phase,outcome,t,x,z,u_x,u_z\n");
    for record in &outcome.records {
        let (label, sample) = match record.fate {
            ParticleFate::Hit(sample) => ("hit", sample),
            ParticleFate::Escaped { last, .. } => ("escaped", last),
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            record.particle,
            record.branch,
            format_full(record.phase),
            label,
            format_full(sample.t),
            format_full(sample.x),
            format_full(sample.z),
            format_full(sample.u_x),
            format_full(sample.u_z),
        );
    }

    let summary = &outcome.summary;
    let opt = |v: Option<f64>| v.map(format_full).unwrap_or_else(|| "none".to_string());
    let results = vec![
        ("n_plus".to_string(), summary.n_plus.to_string()),
        ("n_minus".to_string(), summary.n_minus.to_string()),
        ("n_escaped".to_string(), summary.n_escaped.to_string()),
        ("mean_z_plus".to_string(), opt(summary.mean_z_plus)),
        ("mean_z_minus".to_string(), opt(summary.mean_z_minus)),
        ("separation".to_string(), opt(summary.separation)),
    ];
    Ok((csv, Some(dt), results))
}

fn run_coupled(config: &ExperimentConfig) -> Result<ScenarioOutput, HarnessError> {
    let &ScenarioParams::Coupled {
        nx,
        steps,
        x_min,
        x_max,
        boundary,
        b_r_amplitude,
        b_r_wavenumber,
        b_i_amplitude,
        b_i_wavenumber,
    } = &config.params
    else {
        unreachable!("run_coupled called with non-coupled params");
    };
    use microdyn::coupled::BoundaryCondition;
    // periodic grids exclude the right endpoint (it aliases the left one)
    let dx = match boundary {
        BoundaryCondition::Periodic => (x_max - x_min) / nx as f64,
        BoundaryCondition::Dirichlet => (x_max - x_min) / (nx - 1) as f64,
    };
    let x_at = |i: usize| x_min + i as f64 * dx;
    let b_r = Array1::from_shape_fn(nx, |i| b_r_amplitude * (b_r_wavenumber * x_at(i)).cos());
    let b_i = Array1::from_shape_fn(nx, |i| b_i_amplitude * (b_i_wavenumber * x_at(i)).cos());
    let dt = config
        .dt
        .unwrap_or_else(|| EvolveSpec::DEFAULT_SAFETY * stability_limit(dx, &config.units));
    let mut spec = EvolveSpec::new(steps, dt);
    spec.boundary = boundary;
    let out = evolve(
        &b_r,
        &b_i,
        &InitialQuadratics::zero(nx),
        dx,
        &spec,
        &config.units,
    )
    .map_err(classify)?;

    let mut csv = String::from("t,x,b_r,b_i,p,q\n");
    for j in 0..out.nt() {
        let t = j as f64 * dt;
        for i in 0..nx {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                format_full(t),
                format_full(x_at(i)),
                format_full(out.b_r[i]),
                format_full(out.b_i[i]),
                format_full(out.p[[j, i]]),
                format_full(out.q[[j, i]]),
            );
        }
    }

    let max_abs = |a: &ndarray::Array2<f64>| a.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let results = vec![
        (
            "final_t".to_string(),
            format_full(steps as f64 * dt),
        ),
        ("p_max_abs".to_string(), format_full(max_abs(&out.p))),
        ("q_max_abs".to_string(), format_full(max_abs(&out.q))),
    ];
    Ok((csv, Some(dt), results))
}

fn mean_deflection(
    beam: &BeamSpec,
    geometry: &MagnetGeometry,
    law: ForceLaw,
    dt: f64,
    units: &UnitsLedger,
) -> Result<f64, HarnessError> {
    let outcome = run_beam(beam, geometry, law, dt, units).map_err(classify)?;
    let hits: Vec<f64> = outcome
        .records
        .iter()
        .filter_map(|r| match r.fate {
            ParticleFate::Hit(sample) => Some(sample.z),
            ParticleFate::Escaped { .. } => None,
        })
        .collect();
    if hits.is_empty() {
        return Err(HarnessError::Solver(format!(
            "all {} particles escaped the magnet under the {} force",
            outcome.records.len(),
            law
        )));
    }
    Ok(hits.iter().sum::<f64>() / hits.len() as f64)
}

fn run_compare(
    config: &ExperimentConfig,
    geometry: &MagnetGeometry,
    scales: &[f64],
    n_particles: usize,
) -> Result<ScenarioOutput, HarnessError> {
    let dt = config.dt.unwrap_or(DEFAULT_BEAM_DT);
    let beam = BeamSpec::new(
        n_particles,
        config.particle,
        BranchPolicy::Fixed(BranchSign::Plus),
        config.seed,
    )
    .map_err(classify)?;

    let mut csv = String::from("scale_s,mean_deflection_md,mean_deflection_qm\n");
    let mut md_pairs = Vec::with_capacity(scales.len());
    let mut qm_pairs = Vec::with_capacity(scales.len());
    for &s in scales {
        let scaled_field = InhomogeneousField::new(
            geometry.field.profile.scaled(s),
            geometry.field.tau,
            geometry.field.z_range,
        )
        .map_err(classify)?;
        let scaled_geometry =
            MagnetGeometry::new(scaled_field, geometry.length_x, geometry.drift_x)
                .map_err(classify)?;
        let d_md = mean_deflection(
            &beam,
            &scaled_geometry,
            ForceLaw::EnergyGradient,
            dt,
            &config.units,
        )?;
        let d_qm = mean_deflection(
            &beam,
            &scaled_geometry,
            ForceLaw::FixedMoment,
            dt,
            &config.units,
        )?;
        let _ = writeln!(
            csv,
            "{},{},{}",
            format_full(s),
            format_full(d_md),
            format_full(d_qm),
        );
        md_pairs.push((s, d_md));
        qm_pairs.push((s, d_qm));
    }

    let fit_md = fit_scaling(&md_pairs).map_err(classify)?;
    let fit_qm = fit_scaling(&qm_pairs).map_err(classify)?;
    let results = vec![
        ("exponent_md".to_string(), format_full(fit_md.exponent)),
        ("exponent_qm".to_string(), format_full(fit_qm.exponent)),
        ("r_squared_md".to_string(), format_full(fit_md.r_squared)),
        ("r_squared_qm".to_string(), format_full(fit_qm.r_squared)),
        (
            "exponent_separation".to_string(),
            format_full((fit_md.exponent - fit_qm.exponent).abs()),
        ),
        ("n_scales".to_string(), scales.len().to_string()),
    ];
    Ok((csv, Some(dt), results))
}
