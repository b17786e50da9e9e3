//! Pauli-stochastic simulation of benchmark circuits.

mod engine;
mod model;

pub use engine::{run_experiment, simulate_circuit, Program, SimConfig, SimOutcome, HISTOGRAM_CAP};
pub use model::{
    build_model_crosstalk5, build_model_from_calibration, build_model_global_depolarizing,
    build_model_injection, build_model_main_sim, crosstalk5_spectator_rate, Calibration, EdgeRate,
    ErrorModel, ErrorTerm, GateErrors, Support,
};
