//! Batch runner around the `microdyn` library: load a sectioned key-value
//! config, run one experiment scenario, and persist a data CSV plus a
//! metadata file that reproduces the run when fed back in as the config.

// validation deliberately writes `!(x > 0.0)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod run;
pub mod scaling;

pub use config::{
    config_from_str, load_config, ExperimentConfig, HarnessError, Scenario, ScenarioParams,
};
pub use run::{run_experiment, RunReport};
pub use scaling::{fit_scaling, ScalingFitResult};
