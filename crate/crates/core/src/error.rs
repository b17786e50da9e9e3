use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate `{gate}` expects {expected} target(s), got {found}")]
    Arity {
        gate: String,
        expected: usize,
        found: usize,
    },

    #[error("qubit {qubit} out of range for {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("qubit {0} appears more than once")]
    DuplicateTarget(usize),

    #[error("invalid Clifford: {0}")]
    InvalidClifford(String),

    #[error("invalid stabilizer state: {0}")]
    InvalidState(String),

    #[error("matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("device connectivity graph is disconnected")]
    DisconnectedDevice,

    #[error("gate `{gate}` is not in gate set {gate_set}")]
    GateNotInGateSet { gate: String, gate_set: String },

    #[error("invalid device: {0}")]
    InvalidDevice(String),

    #[error("invalid sampler: {0}")]
    InvalidSampler(String),

    #[error("invalid experiment design: {0}")]
    InvalidDesign(String),

    #[error("error model does not cover gate label `{0}`")]
    UncoveredGate(String),

    #[error("invalid error model: {0}")]
    InvalidModel(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
