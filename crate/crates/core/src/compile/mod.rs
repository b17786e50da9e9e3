//! Gaussian-elimination synthesis of CNOT circuits, Clifford gates and
//! stabilizer-state preparation/measurement under device connectivity.
//!
//! Every compiler first produces a list of [`SynthOp`]s (arbitrary one-qubit
//! Cliffords and CNOTs on undirected device edges), which [`lower`] turns into
//! a layered circuit over the device gate set: reversed CNOTs are rewritten as
//! `H⊗H · CNOT · H⊗H`, adjacent one-qubit operations are merged and expanded
//! into native gates, and gates are scheduled as early as possible.

mod clifford;
mod cnot;
mod lower;
mod stabilizer;
mod topology;

pub use clifford::compile_clifford;
pub use cnot::compile_cnot_circuit;
pub use lower::lower;
pub use stabilizer::{
    compile_stabilizer_meas, compile_stabilizer_meas_framed, compile_stabilizer_prep,
};

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::clifford::{one_qubit_table, CliffordOp};

/// Cost used to pick the best of the randomized trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostMetric {
    #[default]
    CnotCount,
    Depth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CompileOptions {
    /// Randomized qubit-labelling trials; the cheapest result is kept.
    pub trials: usize,
    pub respect_connectivity: bool,
    /// Eliminate peripheral qubits first (otherwise lowest label first).
    pub elimination_heuristic: bool,
    pub cost: CostMetric,
    /// Seed for the relabelling trials.
    pub seed: u64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            trials: 10,
            respect_connectivity: true,
            elimination_heuristic: true,
            cost: CostMetric::CnotCount,
            seed: 0,
        }
    }
}

impl CompileOptions {
    pub(crate) fn cost_of(&self, c: &Circuit) -> usize {
        match self.cost {
            CostMetric::CnotCount => c.cnot_count(),
            CostMetric::Depth => c.depth(),
        }
    }
}

/// Size of one compiled circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileStats {
    pub cnot_count: usize,
    pub gate_count: usize,
    pub depth: usize,
}

impl CompileStats {
    pub fn of(c: &Circuit) -> Self {
        Self {
            cnot_count: c.cnot_count(),
            gate_count: c.gate_count(),
            depth: c.depth(),
        }
    }
}

/// Averages over many compiled objects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CompileSummary {
    pub count: usize,
    pub mean_cnot_count: f64,
    pub mean_gate_count: f64,
    pub mean_depth: f64,
}

impl CompileSummary {
    pub fn from_stats(stats: &[CompileStats]) -> Self {
        let k = stats.len().max(1) as f64;
        Self {
            count: stats.len(),
            mean_cnot_count: stats.iter().map(|s| s.cnot_count as f64).sum::<f64>() / k,
            mean_gate_count: stats.iter().map(|s| s.gate_count as f64).sum::<f64>() / k,
            mean_depth: stats.iter().map(|s| s.depth as f64).sum::<f64>() / k,
        }
    }
}

/// Device-independent synthesis step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SynthOp {
    /// One-qubit Clifford by table index.
    OneQubit {
        qubit: usize,
        cliff: u8,
    },
    Cnot {
        control: usize,
        target: usize,
    },
}

impl SynthOp {
    pub fn apply_to(&self, c: &mut CliffordOp) {
        match *self {
            SynthOp::OneQubit { qubit, cliff } => c.apply_one_qubit(qubit, cliff),
            SynthOp::Cnot { control, target } => c.apply_cnot(control, target),
        }
    }

    pub fn inverse(&self) -> SynthOp {
        match *self {
            SynthOp::OneQubit { qubit, cliff } => SynthOp::OneQubit {
                qubit,
                cliff: one_qubit_table().inv[cliff as usize],
            },
            cnot => cnot,
        }
    }
}

/// The inverse sequence: reversed, each step inverted.
pub fn invert_ops(ops: &[SynthOp]) -> Vec<SynthOp> {
    ops.iter().rev().map(SynthOp::inverse).collect()
}
