//! Result persistence: data CSVs and a metadata file that echoes every
//! resolved parameter in the config grammar, so a run can be reproduced by
//! feeding its metadata back in as the configuration.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use microdyn::coupled::BoundaryCondition;
use microdyn::numfmt::format_full;
use microdyn::stern_gerlach::BranchPolicy;
use microdyn::{BranchSign, FieldProfile};

use crate::config::{ExperimentConfig, HarnessError, Scenario, ScenarioParams};

pub fn data_file_name(scenario: Scenario) -> String {
    format!("{scenario}.csv")
}

pub fn meta_file_name(scenario: Scenario) -> String {
    format!("{scenario}.meta.txt")
}

pub fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|err| {
        HarnessError::Io(format!("cannot write `{}`: {err}", path.display()))
    })
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key} = {value}");
}

fn kv_f(out: &mut String, key: &str, value: f64) {
    kv(out, key, format_full(value));
}

fn list_f(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_full(v))
        .collect::<Vec<_>>()
        .join(", ")
}

fn policy_name(policy: BranchPolicy) -> &'static str {
    match policy {
        BranchPolicy::Fixed(BranchSign::Plus) => "fixed-plus",
        BranchPolicy::Fixed(BranchSign::Minus) => "fixed-minus",
        BranchPolicy::PhaseSampled => "phase-sampled",
    }
}

fn boundary_name(boundary: BoundaryCondition) -> &'static str {
    match boundary {
        BoundaryCondition::Periodic => "periodic",
        BoundaryCondition::Dirichlet => "dirichlet",
    }
}

fn push_profile(out: &mut String, profile: &FieldProfile) {
    match *profile {
        FieldProfile::Affine { b0, gradient } => {
            kv(out, "profile", "affine");
            kv_f(out, "b0", b0);
            kv_f(out, "gradient", gradient);
        }
        FieldProfile::Quadratic {
            b0,
            linear,
            quadratic,
        } => {
            kv(out, "profile", "quadratic");
            kv_f(out, "b0", b0);
            kv_f(out, "linear", linear);
            kv_f(out, "quadratic", quadratic);
        }
        FieldProfile::SqrtAffine { b0_squared, slope } => {
            kv(out, "profile", "sqrt-affine");
            kv_f(out, "b0_squared", b0_squared);
            kv_f(out, "slope", slope);
        }
    }
}

/// Every resolved parameter, in the config grammar the loader accepts.
pub fn echo_config(config: &ExperimentConfig, resolved_dt: Option<f64>) -> String {
    let mut out = String::from("[run]\n");
    kv(&mut out, "scenario", config.scenario);
    kv(&mut out, "seed", config.seed);

    out.push_str("\n[units]\n");
    kv_f(&mut out, "hbar", config.units.hbar);
    kv_f(&mut out, "c", config.units.c);

    out.push_str("\n[particle]\n");
    kv_f(&mut out, "rho0", config.particle.rho0);
    kv_f(&mut out, "u0", config.particle.u0);
    kv_f(&mut out, "k0", config.particle.k0);
    kv_f(&mut out, "b0", config.particle.b0);
    kv_f(&mut out, "phase0", config.particle.phase0);

    out.push_str("\n[numerics]\n");
    kv(&mut out, "resolution", config.resolution);
    if let Some(dt) = resolved_dt {
        kv_f(&mut out, "dt", dt);
    }
    if let ScenarioParams::Coupled { steps, .. } = &config.params {
        kv(&mut out, "steps", steps);
    }

    match &config.params {
        ScenarioParams::Homogeneous {
            field,
            sweep,
            path_length,
        }
        | ScenarioParams::Interferometer {
            field,
            sweep,
            path_length,
        } => {
            out.push_str("\n[field]\n");
            kv_f(&mut out, "b_ext", field.b_ext);
            kv_f(&mut out, "theta", field.theta);
            kv_f(&mut out, "tau", field.tau);
            out.push_str("\n[sweep]\n");
            kv(&mut out, "parameter", "b_ext");
            kv(&mut out, "values", list_f(sweep));
            out.push_str("\n[interferometer]\n");
            kv_f(&mut out, "path_length", *path_length);
        }
        ScenarioParams::SternGerlach {
            geometry,
            n_particles,
            policy,
            law,
        } => {
            out.push_str("\n[magnet]\n");
            push_profile(&mut out, &geometry.field.profile);
            kv_f(&mut out, "tau", geometry.field.tau);
            kv_f(&mut out, "z_min", geometry.field.z_range.0);
            kv_f(&mut out, "z_max", geometry.field.z_range.1);
            kv_f(&mut out, "length_x", geometry.length_x);
            kv_f(&mut out, "drift_x", geometry.drift_x);
            out.push_str("\n[beam]\n");
            kv(&mut out, "n_particles", n_particles);
            kv(&mut out, "policy", policy_name(*policy));
            kv(&mut out, "force", law);
        }
        ScenarioParams::Coupled {
            nx,
            steps: _,
            x_min,
            x_max,
            boundary,
            b_r_amplitude,
            b_r_wavenumber,
            b_i_amplitude,
            b_i_wavenumber,
        } => {
            out.push_str("\n[grid]\n");
            kv(&mut out, "nx", nx);
            kv_f(&mut out, "x_min", *x_min);
            kv_f(&mut out, "x_max", *x_max);
            kv(&mut out, "boundary", boundary_name(*boundary));
            out.push_str("\n[initial]\n");
            kv_f(&mut out, "b_r_amplitude", *b_r_amplitude);
            kv_f(&mut out, "b_r_wavenumber", *b_r_wavenumber);
            kv_f(&mut out, "b_i_amplitude", *b_i_amplitude);
            kv_f(&mut out, "b_i_wavenumber", *b_i_wavenumber);
        }
        ScenarioParams::Compare {
            geometry,
            scales,
            n_particles,
        } => {
            out.push_str("\n[magnet]\n");
            push_profile(&mut out, &geometry.field.profile);
            kv_f(&mut out, "tau", geometry.field.tau);
            kv_f(&mut out, "z_min", geometry.field.z_range.0);
            kv_f(&mut out, "z_max", geometry.field.z_range.1);
            kv_f(&mut out, "length_x", geometry.length_x);
            kv_f(&mut out, "drift_x", geometry.drift_x);
            out.push_str("\n[compare]\n");
            kv(&mut out, "scales", list_f(scales));
            kv(&mut out, "n_particles", n_particles);
        }
    }
    out
}

/// Full metadata file: config echo plus provenance and result summaries.
/// The `[provenance]` and `[results]` sections are skipped on reload.
pub fn metadata_text(
    config: &ExperimentConfig,
    resolved_dt: Option<f64>,
    data_file: &str,
    wall_time_s: f64,
    results: &[(String, String)],
) -> String {
    let mut out = echo_config(config, resolved_dt);
    out.push_str("\n[provenance]\n");
    kv(&mut out, "tool", "microdyn");
    kv(&mut out, "version", env!("CARGO_PKG_VERSION"));
    kv(&mut out, "data_file", data_file);
    kv(&mut out, "wall_time_s", format!("{wall_time_s:.3}"));
    out.push_str("\n[results]\n");
    for (key, value) in results {
        kv(&mut out, key, value);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::config_from_str;

    #[test]
    fn echo_reloads_to_the_same_config() {
        let text = "[field]\nb_ext = 0.3\ntheta = 0.7\ntau = 2.0\n[sweep]\nvalues = 0.1, 0.3\n";
        let cfg = config_from_str(text, Scenario::Homogeneous).unwrap();
        let echoed = echo_config(&cfg, None);
        let reloaded = config_from_str(&echoed, Scenario::Homogeneous).unwrap();
        assert_eq!(cfg, reloaded);
    }

    #[test]
    fn metadata_reloads_despite_extra_sections() {
        let cfg = config_from_str("", Scenario::SternGerlach).unwrap();
        let meta = metadata_text(
            &cfg,
            Some(1e-3),
            "stern-gerlach.csv",
            0.25,
            &[("n_plus".to_string(), "3".to_string())],
        );
        let reloaded = config_from_str(&meta, Scenario::SternGerlach).unwrap();
        assert_eq!(reloaded.dt, Some(1e-3));
        assert_eq!(cfg.params, reloaded.params);
    }

    #[test]
    fn coupled_echo_round_trips_via_metadata() {
        let text = "[grid]\nnx = 64\nboundary = dirichlet\n[initial]\nb_i_amplitude = 0.5\n[numerics]\nsteps = 7\n";
        let cfg = config_from_str(text, Scenario::Coupled).unwrap();
        let meta = metadata_text(&cfg, Some(0.01), "coupled.csv", 0.1, &[]);
        let reloaded = config_from_str(&meta, Scenario::Coupled).unwrap();
        assert_eq!(reloaded.dt, Some(0.01));
        assert_eq!(cfg.params, reloaded.params);
    }

    #[test]
    fn compare_echo_round_trips() {
        let text = "[magnet]\nprofile = sqrt-affine\nb0_squared = 2.0\nslope = 0.5\n";
        let cfg = config_from_str(text, Scenario::Compare).unwrap();
        let echoed = echo_config(&cfg, Some(1e-3));
        let reloaded = config_from_str(&echoed, Scenario::Compare).unwrap();
        assert_eq!(cfg.params, reloaded.params);
    }
}
