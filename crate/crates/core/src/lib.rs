pub mod analysis;
pub mod bits;
pub mod circuit;
pub mod clifford;
pub mod compile;
pub mod dataset;
pub mod device;
pub mod error;
pub mod formats;
pub mod pauli;
pub mod protocols;
pub mod rng;
pub mod sampling;
pub mod sim;
pub mod stabilizer;

pub use bits::{BitMatrix, BitVec};
pub use circuit::{circuit_to_clifford, standard_gate, Circuit, Gate, GateLabel, GateSet, Layer};
pub use clifford::CliffordOp;
pub use device::DeviceSpec;
pub use error::{Error, Result};
pub use pauli::{Pauli1, PauliOp};
pub use stabilizer::StabilizerState;
