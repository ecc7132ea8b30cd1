//! Experiment configuration: sectioned key-value grammar, typed loading,
//! and validation.
//!
//! Grammar: `[section]` headers, `key = value` entries, `#` starts a
//! comment, lists are comma-separated values. Unknown sections and keys are
//! rejected, except `[provenance]` and `[results]`, which are ignored so a
//! run's metadata file can be fed back in as its configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use microdyn::stern_gerlach::{BranchPolicy, ForceLaw, MagnetGeometry};
use microdyn::{
    coupled::BoundaryCondition, make_particle, BranchSign, Error as ModelError, FieldProfile,
    HomogeneousField, InhomogeneousField, ParticleState, UnitsLedger,
};
use thiserror::Error;

/// Harness-level failure, carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Solver(_) => 3,
            HarnessError::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(err: std::io::Error) -> Self {
        HarnessError::Io(err.to_string())
    }
}

/// Sort a model error into the config/solver exit classes. Stability is a
/// configuration error: the requested step is checked against the bound
/// before any marching starts.
pub fn classify(err: ModelError) -> HarnessError {
    match err {
        ModelError::Domain { .. }
        | ModelError::OutOfRange { .. }
        | ModelError::ResolutionTooLow { .. }
        | ModelError::Stability { .. }
        | ModelError::Dimension { .. } => HarnessError::Config(err.to_string()),
        ModelError::Diverged { .. } | ModelError::Unphysical { .. } | ModelError::Escape { .. } => {
            HarnessError::Solver(err.to_string())
        }
    }
}

/// The experiment families the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Homogeneous,
    Interferometer,
    SternGerlach,
    Coupled,
    Compare,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::Homogeneous,
        Scenario::Interferometer,
        Scenario::SternGerlach,
        Scenario::Coupled,
        Scenario::Compare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Homogeneous => "homogeneous",
            Scenario::Interferometer => "interferometer",
            Scenario::SternGerlach => "stern-gerlach",
            Scenario::Coupled => "coupled",
            Scenario::Compare => "compare",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Scenario::ALL.into_iter().find(|s| s.name() == text)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

/// Parsed but untyped config text: section -> key -> value.
#[derive(Debug, Default)]
struct Sections {
    map: BTreeMap<String, BTreeMap<String, Entry>>,
}

/// Sections whose content is informational output of a previous run; they
/// are skipped so metadata files round-trip as configs.
const ECHO_ONLY_SECTIONS: [&str; 2] = ["provenance", "results"];

impl Sections {
    fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut sections = Sections::default();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    HarnessError::Config(format!("line {line}: unterminated section header"))
                })?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(HarnessError::Config(format!(
                        "line {line}: empty section name"
                    )));
                }
                current = Some(name.to_string());
                sections.map.entry(name.to_string()).or_default();
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {line}: expected `key = value`, got `{content}`"))
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(HarnessError::Config(format!("line {line}: empty key")));
            }
            let section = current.clone().ok_or_else(|| {
                HarnessError::Config(format!(
                    "line {line}: key `{key}` appears before any [section] header"
                ))
            })?;
            let entries = sections.map.entry(section.clone()).or_default();
            if entries.contains_key(key) {
                return Err(HarnessError::Config(format!(
                    "line {line}: duplicate key `{section}.{key}`"
                )));
            }
            entries.insert(
                key.to_string(),
                Entry {
                    value: value.trim().to_string(),
                    line,
                },
            );
        }
        Ok(sections)
    }

    fn take(&mut self, section: &str, key: &str) -> Option<Entry> {
        self.map.get_mut(section).and_then(|s| s.remove(key))
    }

    /// Reject anything not consumed by the loader, naming the first
    /// offender; echo-only sections pass untouched.
    fn finish(self) -> Result<(), HarnessError> {
        for (section, entries) in &self.map {
            if ECHO_ONLY_SECTIONS.contains(&section.as_str()) {
                continue;
            }
            if let Some((key, entry)) = entries.iter().next() {
                return Err(HarnessError::Config(format!(
                    "line {}: unknown key `{section}.{key}`",
                    entry.line
                )));
            }
        }
        Ok(())
    }

    fn f64_opt(&mut self, section: &str, key: &str) -> Result<Option<f64>, HarnessError> {
        match self.take(section, key) {
            None => Ok(None),
            Some(entry) => entry
                .value
                .parse::<f64>()
                .map(Some)
                .map_err(|_| bad_number(section, key, &entry)),
        }
    }

    fn f64_or(&mut self, section: &str, key: &str, default: f64) -> Result<f64, HarnessError> {
        Ok(self.f64_opt(section, key)?.unwrap_or(default))
    }

    fn usize_or(&mut self, section: &str, key: &str, default: usize) -> Result<usize, HarnessError> {
        match self.take(section, key) {
            None => Ok(default),
            Some(entry) => entry
                .value
                .parse::<usize>()
                .map_err(|_| bad_number(section, key, &entry)),
        }
    }

    fn u64_or(&mut self, section: &str, key: &str, default: u64) -> Result<u64, HarnessError> {
        match self.take(section, key) {
            None => Ok(default),
            Some(entry) => entry
                .value
                .parse::<u64>()
                .map_err(|_| bad_number(section, key, &entry)),
        }
    }

    fn str_opt(&mut self, section: &str, key: &str) -> Option<String> {
        self.take(section, key).map(|e| e.value)
    }

    fn f64_list_opt(&mut self, section: &str, key: &str) -> Result<Option<Vec<f64>>, HarnessError> {
        let Some(entry) = self.take(section, key) else {
            return Ok(None);
        };
        let mut values = Vec::new();
        for piece in entry.value.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(HarnessError::Config(format!(
                    "line {}: empty element in list `{section}.{key}`",
                    entry.line
                )));
            }
            values.push(
                piece
                    .parse::<f64>()
                    .map_err(|_| bad_number(section, key, &entry))?,
            );
        }
        Ok(Some(values))
    }
}

fn bad_number(section: &str, key: &str, entry: &Entry) -> HarnessError {
    HarnessError::Config(format!(
        "line {}: `{section}.{key}` is not a number: `{}`",
        entry.line, entry.value
    ))
}

fn invalid(key_path: &str, message: impl fmt::Display) -> HarnessError {
    HarnessError::Config(format!("invalid `{key_path}`: {message}"))
}

/// Parameters specific to one scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioParams {
    /// Sweep of closed-form and marched homogeneous-field observables.
    Homogeneous {
        field: HomogeneousField,
        sweep: Vec<f64>,
        path_length: f64,
    },
    /// Fringe shifts of both branches over the same sweep.
    Interferometer {
        field: HomogeneousField,
        sweep: Vec<f64>,
        path_length: f64,
    },
    /// One beam through one magnet.
    SternGerlach {
        geometry: MagnetGeometry,
        n_particles: usize,
        policy: BranchPolicy,
        law: ForceLaw,
    },
    /// Quadratic-combination evolution under static magnetic profiles
    /// b_r(x) = a_r cos(k_r x), b_i(x) = a_i cos(k_i x).
    Coupled {
        nx: usize,
        steps: usize,
        x_min: f64,
        x_max: f64,
        boundary: BoundaryCondition,
        b_r_amplitude: f64,
        b_r_wavenumber: f64,
        b_i_amplitude: f64,
        b_i_wavenumber: f64,
    },
    /// Deflection-scaling exponents under both force laws.
    Compare {
        geometry: MagnetGeometry,
        scales: Vec<f64>,
        n_particles: usize,
    },
}

/// A fully validated experiment: defaults applied, every value checked.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub units: UnitsLedger,
    pub particle: ParticleState,
    pub resolution: usize,
    /// Explicit step for trajectory or evolution marches; `None` selects
    /// the scenario default (1e-3 for beams, half the stability limit for
    /// the coupled march).
    pub dt: Option<f64>,
    pub params: ScenarioParams,
}

pub fn load_config(path: &Path, scenario: Scenario) -> Result<ExperimentConfig, HarnessError> {
    let text = fs::read_to_string(path).map_err(|err| {
        HarnessError::Config(format!("cannot read config `{}`: {err}", path.display()))
    })?;
    config_from_str(&text, scenario)
}

/// Parse and validate config text for the given scenario.
pub fn config_from_str(text: &str, scenario: Scenario) -> Result<ExperimentConfig, HarnessError> {
    let mut sections = Sections::parse(text)?;

    if let Some(declared) = sections.str_opt("run", "scenario") {
        if Scenario::parse(&declared) != Some(scenario) {
            return Err(invalid(
                "run.scenario",
                format!("config declares `{declared}`, command runs `{}`", scenario.name()),
            ));
        }
    }
    let seed = sections.u64_or("run", "seed", 0)?;

    let hbar = sections.f64_or("units", "hbar", 1.0)?;
    let c = sections.f64_or("units", "c", 1.0)?;
    let units = UnitsLedger::new(hbar, c).map_err(classify)?;

    let rho0 = sections.f64_or("particle", "rho0", 1.0)?;
    let u0 = sections.f64_or("particle", "u0", 1.0)?;
    let k0 = sections.f64_or("particle", "k0", 1.0)?;
    let b0 = sections.f64_or("particle", "b0", 1.0)?;
    let phase0 = sections.f64_or("particle", "phase0", 0.0)?;
    let particle = make_particle(rho0, u0, k0, b0, phase0).map_err(classify)?;

    let resolution = sections.usize_or("numerics", "resolution", 256)?;
    let dt = sections.f64_opt("numerics", "dt")?;
    if let Some(dt) = dt {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(invalid("numerics.dt", "time step must be positive and finite"));
        }
    }

    let params = match scenario {
        Scenario::Homogeneous | Scenario::Interferometer => {
            let field = homogeneous_field(&mut sections)?;
            let sweep = sweep_values(&mut sections, &field)?;
            let path_length = sections.f64_or("interferometer", "path_length", 1.0)?;
            if !(path_length > 0.0) || !path_length.is_finite() {
                return Err(invalid(
                    "interferometer.path_length",
                    "path length must be positive and finite",
                ));
            }
            if scenario == Scenario::Homogeneous {
                ScenarioParams::Homogeneous {
                    field,
                    sweep,
                    path_length,
                }
            } else {
                ScenarioParams::Interferometer {
                    field,
                    sweep,
                    path_length,
                }
            }
        }
        Scenario::SternGerlach => {
            let geometry = magnet_geometry(&mut sections)?;
            let n_particles = sections.usize_or("beam", "n_particles", 1000)?;
            if n_particles == 0 {
                return Err(invalid("beam.n_particles", "beam needs at least one particle"));
            }
            let policy = match sections
                .str_opt("beam", "policy")
                .unwrap_or_else(|| "phase-sampled".to_string())
                .as_str()
            {
                "phase-sampled" => BranchPolicy::PhaseSampled,
                "fixed-plus" => BranchPolicy::Fixed(BranchSign::Plus),
                "fixed-minus" => BranchPolicy::Fixed(BranchSign::Minus),
                other => {
                    return Err(invalid(
                        "beam.policy",
                        format!("`{other}` is not one of phase-sampled, fixed-plus, fixed-minus"),
                    ))
                }
            };
            let law = force_law(&mut sections, "beam")?;
            ScenarioParams::SternGerlach {
                geometry,
                n_particles,
                policy,
                law,
            }
        }
        Scenario::Coupled => {
            let nx = sections.usize_or("grid", "nx", 256)?;
            if nx < 3 {
                return Err(invalid("grid.nx", "need at least three grid points"));
            }
            let x_min = sections.f64_or("grid", "x_min", 0.0)?;
            let x_max = sections.f64_or("grid", "x_max", std::f64::consts::TAU)?;
            if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
                return Err(invalid("grid.x_max", "domain must satisfy x_min < x_max"));
            }
            let boundary = match sections
                .str_opt("grid", "boundary")
                .unwrap_or_else(|| "periodic".to_string())
                .as_str()
            {
                "periodic" => BoundaryCondition::Periodic,
                "dirichlet" => BoundaryCondition::Dirichlet,
                other => {
                    return Err(invalid(
                        "grid.boundary",
                        format!("`{other}` is not one of periodic, dirichlet"),
                    ))
                }
            };
            let steps = sections.usize_or("numerics", "steps", 100)?;
            if steps == 0 {
                return Err(invalid("numerics.steps", "need at least one step"));
            }
            let b_r_amplitude = sections.f64_or("initial", "b_r_amplitude", 1.0)?;
            let b_r_wavenumber = sections.f64_or("initial", "b_r_wavenumber", 1.0)?;
            let b_i_amplitude = sections.f64_or("initial", "b_i_amplitude", 0.0)?;
            let b_i_wavenumber = sections.f64_or("initial", "b_i_wavenumber", 1.0)?;
            for (key, value) in [
                ("initial.b_r_amplitude", b_r_amplitude),
                ("initial.b_r_wavenumber", b_r_wavenumber),
                ("initial.b_i_amplitude", b_i_amplitude),
                ("initial.b_i_wavenumber", b_i_wavenumber),
            ] {
                if !value.is_finite() {
                    return Err(invalid(key, "must be finite"));
                }
            }
            ScenarioParams::Coupled {
                nx,
                steps,
                x_min,
                x_max,
                boundary,
                b_r_amplitude,
                b_r_wavenumber,
                b_i_amplitude,
                b_i_wavenumber,
            }
        }
        Scenario::Compare => {
            let geometry = magnet_geometry(&mut sections)?;
            let scales = sections
                .f64_list_opt("compare", "scales")?
                .unwrap_or_else(|| vec![1.0, 2.0, 4.0, 8.0]);
            if scales.len() < 3 {
                return Err(invalid("compare.scales", "need at least three scales to fit"));
            }
            for &s in &scales {
                if !(s > 0.0) || !s.is_finite() {
                    return Err(invalid("compare.scales", format!("scale {s} must be positive")));
                }
            }
            let n_particles = sections.usize_or("compare", "n_particles", 1)?;
            if n_particles == 0 {
                return Err(invalid(
                    "compare.n_particles",
                    "beam needs at least one particle",
                ));
            }
            ScenarioParams::Compare {
                geometry,
                scales,
                n_particles,
            }
        }
    };

    sections.finish()?;

    Ok(ExperimentConfig {
        scenario,
        seed,
        units,
        particle,
        resolution,
        dt,
        params,
    })
}

fn homogeneous_field(sections: &mut Sections) -> Result<HomogeneousField, HarnessError> {
    let b_ext = sections.f64_or("field", "b_ext", 0.1)?;
    let theta = sections.f64_or("field", "theta", 0.0)?;
    let tau = sections.f64_or("field", "tau", 1.0)?;
    HomogeneousField::new(b_ext, theta, tau).map_err(classify)
}

/// Resolve the `[sweep]` section: the only sweepable parameter is the
/// external amplitude. Absent, the sweep is the single `[field]` value.
fn sweep_values(
    sections: &mut Sections,
    field: &HomogeneousField,
) -> Result<Vec<f64>, HarnessError> {
    let parameter = sections.str_opt("sweep", "parameter");
    let values = sections.f64_list_opt("sweep", "values")?;
    match (parameter.as_deref(), values) {
        (None, None) => Ok(vec![field.b_ext]),
        (Some(p), _) if p != "b_ext" => Err(invalid(
            "sweep.parameter",
            format!("`{p}` is not sweepable; only b_ext is"),
        )),
        (_, None) => Err(HarnessError::Config(
            "missing required key `sweep.values`".to_string(),
        )),
        (_, Some(values)) => {
            for &b in &values {
                // validate each point with the shared theta and tau
                HomogeneousField::new(b, field.theta, field.tau).map_err(classify)?;
            }
            Ok(values)
        }
    }
}

fn magnet_geometry(sections: &mut Sections) -> Result<MagnetGeometry, HarnessError> {
    let kind = sections
        .str_opt("magnet", "profile")
        .unwrap_or_else(|| "affine".to_string());
    let profile = match kind.as_str() {
        "affine" => FieldProfile::Affine {
            b0: sections.f64_or("magnet", "b0", 1.0)?,
            gradient: sections.f64_or("magnet", "gradient", 0.1)?,
        },
        "quadratic" => FieldProfile::Quadratic {
            b0: sections.f64_or("magnet", "b0", 1.0)?,
            linear: sections.f64_or("magnet", "linear", 0.1)?,
            quadratic: sections.f64_or("magnet", "quadratic", 0.0)?,
        },
        "sqrt-affine" => FieldProfile::SqrtAffine {
            b0_squared: sections.f64_or("magnet", "b0_squared", 1.0)?,
            slope: sections.f64_or("magnet", "slope", 0.1)?,
        },
        other => {
            return Err(invalid(
                "magnet.profile",
                format!("`{other}` is not one of affine, quadratic, sqrt-affine"),
            ))
        }
    };
    let tau = sections.f64_or("magnet", "tau", 1.0)?;
    let z_min = sections.f64_or("magnet", "z_min", -1.0)?;
    let z_max = sections.f64_or("magnet", "z_max", 1.0)?;
    let field = InhomogeneousField::new(profile, tau, (z_min, z_max)).map_err(classify)?;
    let length_x = sections.f64_or("magnet", "length_x", 1.0)?;
    let drift_x = sections.f64_or("magnet", "drift_x", 0.0)?;
    MagnetGeometry::new(field, length_x, drift_x).map_err(classify)
}

fn force_law(sections: &mut Sections, section: &str) -> Result<ForceLaw, HarnessError> {
    match sections
        .str_opt(section, "force")
        .unwrap_or_else(|| "energy-gradient".to_string())
        .as_str()
    {
        "energy-gradient" => Ok(ForceLaw::EnergyGradient),
        "fixed-moment" => Ok(ForceLaw::FixedMoment),
        other => Err(invalid(
            &format!("{section}.force"),
            format!("`{other}` is not one of energy-gradient, fixed-moment"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gets_documented_defaults() {
        let cfg = config_from_str("", Scenario::Homogeneous).unwrap();
        assert_eq!(cfg.units.hbar, 1.0);
        assert_eq!(cfg.units.c, 1.0);
        assert_eq!(cfg.resolution, 256);
        assert_eq!(cfg.seed, 0);
        match cfg.params {
            ScenarioParams::Homogeneous { sweep, .. } => assert_eq!(sweep, vec![0.1]),
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn nonpositive_tau_is_rejected_by_name() {
        let err = config_from_str("[field]\ntau = -1.0\n", Scenario::Homogeneous).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("tau"), "{err}");
    }

    #[test]
    fn sweep_values_are_echoed() {
        let text = "[sweep]\nvalues = 0.1, 0.2, 0.3\n";
        let cfg = config_from_str(text, Scenario::Homogeneous).unwrap();
        match cfg.params {
            ScenarioParams::Homogeneous { sweep, .. } => assert_eq!(sweep, vec![0.1, 0.2, 0.3]),
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn sweep_rejects_unknown_parameter() {
        let text = "[sweep]\nparameter = theta\nvalues = 0.1\n";
        let err = config_from_str(text, Scenario::Homogeneous).unwrap_err();
        assert!(err.to_string().contains("sweep.parameter"), "{err}");
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# leading comment\n\n[field]\nb_ext = 0.5 # trailing\n";
        let cfg = config_from_str(text, Scenario::Homogeneous).unwrap();
        match cfg.params {
            ScenarioParams::Homogeneous { field, .. } => assert_eq!(field.b_ext, 0.5),
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected_with_line() {
        let err = config_from_str("[field]\nbext = 0.5\n", Scenario::Homogeneous).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("field.bext"), "{msg}");
    }

    #[test]
    fn unparseable_lines_carry_their_number() {
        let err = config_from_str("[field]\nwhat is this\n", Scenario::Homogeneous).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let text = "[field]\nb_ext = 0.1\nb_ext = 0.2\n";
        let err = config_from_str(text, Scenario::Homogeneous).unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn scenario_mismatch_is_rejected() {
        let text = "[run]\nscenario = coupled\n";
        let err = config_from_str(text, Scenario::Homogeneous).unwrap_err();
        assert!(err.to_string().contains("run.scenario"), "{err}");
    }

    #[test]
    fn provenance_and_results_sections_are_ignored() {
        let text = "[provenance]\ntool = microdyn\n[results]\nrows = 3\n[field]\nb_ext = 0.2\n";
        let cfg = config_from_str(text, Scenario::Homogeneous).unwrap();
        match cfg.params {
            ScenarioParams::Homogeneous { field, .. } => assert_eq!(field.b_ext, 0.2),
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn beam_policy_parses_all_variants() {
        for (text, expect) in [
            ("fixed-plus", BranchPolicy::Fixed(BranchSign::Plus)),
            ("fixed-minus", BranchPolicy::Fixed(BranchSign::Minus)),
            ("phase-sampled", BranchPolicy::PhaseSampled),
        ] {
            let cfg = config_from_str(
                &format!("[beam]\npolicy = {text}\n"),
                Scenario::SternGerlach,
            )
            .unwrap();
            match cfg.params {
                ScenarioParams::SternGerlach { policy, .. } => assert_eq!(policy, expect),
                _ => panic!("wrong params"),
            }
        }
    }

    #[test]
    fn compare_needs_three_scales() {
        let err = config_from_str("[compare]\nscales = 1, 2\n", Scenario::Compare).unwrap_err();
        assert!(err.to_string().contains("compare.scales"), "{err}");
    }

    #[test]
    fn coupled_defaults_span_one_period() {
        let cfg = config_from_str("", Scenario::Coupled).unwrap();
        match cfg.params {
            ScenarioParams::Coupled { nx, x_min, x_max, .. } => {
                assert_eq!(nx, 256);
                assert_eq!(x_min, 0.0);
                assert_eq!(x_max, std::f64::consts::TAU);
            }
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn stability_violation_classifies_as_config_error() {
        let err = classify(ModelError::Stability {
            dt: 1.0,
            limit: 0.1,
            dx: 0.1,
        });
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn divergence_classifies_as_solver_error() {
        let err = classify(ModelError::Diverged {
            step: 3,
            detail: "x".to_string(),
        });
        assert_eq!(err.exit_code(), 3);
    }
}
