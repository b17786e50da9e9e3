//! Experiment designs and benchmark-circuit generation for direct RB (DRB)
//! and Clifford RB (CRB).
//!
//! A DRB circuit prepares a uniformly random stabilizer state, applies `m`
//! layers drawn from the sampler, and measures the resulting state so that
//! the ideal outcome is a known bitstring. A CRB circuit applies `m` uniformly
//! random compiled Cliffords followed by the compiled inverse of their
//! product, so the ideal outcome is all zeros.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::BitVec;
use crate::circuit::{conjugate_by_gate, Circuit, Layer};
use crate::clifford::{one_qubit_table, CliffordOp};
use crate::compile::{
    compile_clifford, compile_stabilizer_meas, compile_stabilizer_meas_framed,
    compile_stabilizer_prep, lower, CompileOptions, CompileStats, CompileSummary, SynthOp,
};
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::pauli::PauliOp;
use crate::rng::{derive_seed, rng_from_seed};
use crate::sampling::{
    sample_clifford_uniform, sample_layer_unchecked, sample_pauli_uniform,
    sample_stabilizer_state_uniform, SamplerSpec,
};
use crate::stabilizer::StabilizerState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Protocol {
    #[serde(rename = "DRB")]
    Drb,
    #[serde(rename = "CRB")]
    Crb,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Drb => "DRB",
            Protocol::Crb => "CRB",
        })
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "DRB" => Ok(Protocol::Drb),
            "CRB" => Ok(Protocol::Crb),
            _ => Err(Error::Parse(format!("unknown protocol `{s}`"))),
        }
    }
}

pub const DEFAULT_CIRCUITS_PER_LENGTH: usize = 28;
pub const DEFAULT_SHOTS: u64 = 1024;

/// Lengths `0, 5, …, 30`.
pub fn default_lengths() -> Vec<usize> {
    (0..=30).step_by(5).collect()
}

fn default_k() -> usize {
    DEFAULT_CIRCUITS_PER_LENGTH
}

fn default_shots() -> u64 {
    DEFAULT_SHOTS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentDesign {
    pub protocol: Protocol,
    pub device: DeviceSpec,
    /// Layer distribution; DRB only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerSpec>,
    #[serde(default = "default_lengths")]
    pub lengths: Vec<usize>,
    #[serde(default = "default_k")]
    pub circuits_per_length: usize,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    /// Follow every DRB layer by a uniformly random Pauli layer.
    #[serde(default)]
    pub frame_randomization: bool,
    /// Emit the random Paulis as gates instead of folding them into the
    /// measurement.
    #[serde(default)]
    pub physical_frame: bool,
    #[serde(default)]
    pub compile: CompileOptions,
}

impl ExperimentDesign {
    /// DRB with the default lengths, circuit count and shots.
    pub fn drb(device: DeviceSpec, sampler: SamplerSpec) -> Self {
        Self {
            protocol: Protocol::Drb,
            device,
            sampler: Some(sampler),
            lengths: default_lengths(),
            circuits_per_length: DEFAULT_CIRCUITS_PER_LENGTH,
            shots: DEFAULT_SHOTS,
            seed: 0,
            frame_randomization: false,
            physical_frame: false,
            compile: CompileOptions::default(),
        }
    }

    pub fn crb(device: DeviceSpec) -> Self {
        Self {
            protocol: Protocol::Crb,
            sampler: None,
            ..Self::drb(device, SamplerSpec::p_cnot(0.0, Default::default()))
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.device.num_qubits()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDesign(msg));
        if self.lengths.is_empty() {
            return bad("lengths: empty".into());
        }
        if let Some(i) = self.lengths.windows(2).position(|w| w[0] >= w[1]) {
            return bad(format!(
                "lengths[{}]: lengths must be strictly increasing",
                i + 1
            ));
        }
        if self.circuits_per_length == 0 {
            return bad("circuits_per_length: must be at least 1".into());
        }
        if self.shots == 0 {
            return bad("shots: must be at least 1".into());
        }
        if self.compile.trials == 0 {
            return bad("compile.trials: must be at least 1".into());
        }
        match self.protocol {
            Protocol::Drb => {
                let Some(sampler) = &self.sampler else {
                    return bad("sampler: required for DRB".into());
                };
                let prefix = |e: Error| match e {
                    Error::InvalidSampler(msg) => Error::InvalidDesign(format!("sampler.{msg}")),
                    other => other,
                };
                sampler.validate(&self.device).map_err(prefix)?;
                sampler.check_generating(&self.device).map_err(prefix)?;
            }
            Protocol::Crb => {
                if self.sampler.is_some() {
                    return bad("sampler: only used by DRB".into());
                }
                if self.frame_randomization {
                    return bad("frame_randomization: only used by DRB".into());
                }
            }
        }
        if self.physical_frame && !self.frame_randomization {
            return bad("physical_frame: requires frame_randomization".into());
        }
        if self.num_qubits() > 1 && !self.device.is_connected() {
            return bad("device.edges: connectivity graph is disconnected".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("designs serialize");
        hex::encode(Sha256::digest(json))
    }
}

/// The seed of circuit `index` at length `m`.
pub fn circuit_seed(master: u64, m: usize, index: usize) -> u64 {
    derive_seed(master, &format!("circuit/{m}/{index}"))
}

pub fn circuit_id(m: usize, index: usize) -> String {
    format!("m{m:04}_c{index:04}")
}

/// One benchmark circuit: `prep`, then `core`, then `meas`, whose ideal
/// outcome is `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkCircuit {
    pub id: String,
    pub protocol: Protocol,
    pub m: usize,
    pub prep: Circuit,
    pub core: Circuit,
    pub meas: Circuit,
    pub target: BitVec,
    pub seed: u64,
    /// Random Pauli frame drawn after each core layer (frame randomization).
    pub frames: Vec<PauliOp>,
    /// Indices of the core layers that implement frames (physical frames).
    pub frame_layers: Vec<usize>,
}

impl BenchmarkCircuit {
    pub fn num_qubits(&self) -> usize {
        self.core.num_qubits()
    }

    /// `prep`, `core` and `meas` as one circuit.
    pub fn full_circuit(&self) -> Circuit {
        let mut c = self.prep.clone();
        c.append(&self.core).expect("same width");
        c.append(&self.meas).expect("same width");
        c
    }

    /// The core without its physical frame layers.
    pub fn stripped_core(&self) -> Circuit {
        let layers = self
            .core
            .layers()
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.frame_layers.contains(i))
            .map(|(_, l)| l.clone())
            .collect();
        Circuit::from_layers(self.num_qubits(), layers).expect("subset of valid layers")
    }

    /// Checks that the ideal circuit maps `|0…0⟩` to `|target⟩` using only
    /// native gates of `device`.
    pub fn verify(&self, device: &DeviceSpec) -> Result<()> {
        let full = self.full_circuit();
        let c = crate::circuit::circuit_to_clifford(&full, device)?;
        let out = StabilizerState::zero(self.num_qubits()).apply_clifford(&c)?;
        if out.as_basis_state().as_ref() != Some(&self.target) {
            return Err(Error::Generation(format!(
                "circuit {} does not map |0…0⟩ to |{}⟩",
                self.id, self.target
            )));
        }
        Ok(())
    }
}

fn options_for(design: &ExperimentDesign, seed: u64) -> CompileOptions {
    CompileOptions {
        seed,
        ..design.compile.clone()
    }
}

fn pauli_layers(frame: &PauliOp, device: &DeviceSpec, opts: &CompileOptions) -> Vec<Layer> {
    let t = one_qubit_table();
    let ops: Vec<SynthOp> = (0..frame.num_qubits())
        .map(|q| SynthOp::OneQubit {
            qubit: q,
            cliff: t.pauli_index(frame.local(q)),
        })
        .collect();
    lower(&ops, device, opts).layers().to_vec()
}

fn drb_circuit(
    design: &ExperimentDesign,
    m: usize,
    index: usize,
) -> Result<(BenchmarkCircuit, Vec<CompileStats>)> {
    let sampler = design
        .sampler
        .as_ref()
        .ok_or_else(|| Error::InvalidDesign("sampler: required for DRB".into()))?;
    let device = &design.device;
    let n = device.num_qubits();
    let seed = circuit_seed(design.seed, m, index);
    let mut rng = rng_from_seed(seed);
    let opts = options_for(design, seed);
    let pool = sampler.pool.gates();

    let psi = sample_stabilizer_state_uniform(n, &mut rng);
    let prep = compile_stabilizer_prep(&psi, device, &opts)?;

    let mut core = Circuit::new(n);
    let mut frames = Vec::new();
    let mut frame_layers = Vec::new();
    let mut folded = PauliOp::identity(n);
    for _ in 0..m {
        let layer = sample_layer_unchecked(sampler, device, &pool, &mut rng);
        if design.frame_randomization && !design.physical_frame {
            for g in &layer.gates {
                conjugate_by_gate(&mut folded, g);
            }
        }
        core.push(layer)?;
        if design.frame_randomization {
            let frame = sample_pauli_uniform(n, &mut rng);
            if design.physical_frame {
                for l in pauli_layers(&frame, device, &opts) {
                    frame_layers.push(core.depth());
                    core.push(l)?;
                }
            } else {
                folded = frame.mul(&folded);
            }
            frames.push(frame);
        }
    }

    let phi = psi.apply_clifford(&core.to_clifford())?;
    let (meas, target) = if design.frame_randomization && !design.physical_frame {
        compile_stabilizer_meas_framed(&phi, &folded, device, &opts)?
    } else {
        compile_stabilizer_meas(&phi, device, &opts)?
    };
    let stats = vec![CompileStats::of(&prep), CompileStats::of(&meas)];
    let circ = BenchmarkCircuit {
        id: circuit_id(m, index),
        protocol: Protocol::Drb,
        m,
        prep,
        core,
        meas,
        target,
        seed,
        frames,
        frame_layers,
    };
    Ok((circ, stats))
}

fn crb_circuit(
    design: &ExperimentDesign,
    m: usize,
    index: usize,
) -> Result<(BenchmarkCircuit, Vec<CompileStats>)> {
    let device = &design.device;
    let n = device.num_qubits();
    let seed = circuit_seed(design.seed, m, index);
    let mut rng = rng_from_seed(seed);
    let opts = options_for(design, seed);

    let mut cliffords: Vec<CliffordOp> = (0..m)
        .map(|_| sample_clifford_uniform(n, &mut rng))
        .collect();
    let total = cliffords.iter().fold(CliffordOp::identity(n), |acc, c| {
        CliffordOp::compose(c, &acc).expect("same width")
    });
    cliffords.push(total.invert());

    let mut core = Circuit::new(n);
    let mut stats = Vec::with_capacity(m + 1);
    for c in &cliffords {
        let compiled = compile_clifford(c, device, &opts)?;
        stats.push(CompileStats::of(&compiled));
        core.append(&compiled)?;
    }
    let circ = BenchmarkCircuit {
        id: circuit_id(m, index),
        protocol: Protocol::Crb,
        m,
        prep: Circuit::new(n),
        core,
        meas: Circuit::new(n),
        target: BitVec::zeros(n),
        seed,
        frames: Vec::new(),
        frame_layers: Vec::new(),
    };
    Ok((circ, stats))
}

fn generate_one(
    design: &ExperimentDesign,
    m: usize,
    index: usize,
) -> Result<(BenchmarkCircuit, Vec<CompileStats>)> {
    let (circ, stats) = match design.protocol {
        Protocol::Drb => drb_circuit(design, m, index)?,
        Protocol::Crb => crb_circuit(design, m, index)?,
    };
    circ.verify(&design.device)?;
    Ok((circ, stats))
}

/// DRB circuit `index` at length `m`, seeded from `(design.seed, m, index)`.
pub fn generate_drb_circuit(
    design: &ExperimentDesign,
    m: usize,
    index: usize,
) -> Result<BenchmarkCircuit> {
    if design.protocol != Protocol::Drb {
        return Err(Error::InvalidDesign("protocol: expected DRB".into()));
    }
    generate_one(design, m, index).map(|(c, _)| c)
}

/// CRB circuit `index` at length `m`, seeded from `(design.seed, m, index)`.
pub fn generate_crb_circuit(
    design: &ExperimentDesign,
    m: usize,
    index: usize,
) -> Result<BenchmarkCircuit> {
    if design.protocol != Protocol::Crb {
        return Err(Error::InvalidDesign("protocol: expected CRB".into()));
    }
    generate_one(design, m, index).map(|(c, _)| c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub m: usize,
    pub index: usize,
    pub seed: u64,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub protocol: Protocol,
    pub n: usize,
    pub design_digest: String,
    pub design: ExperimentDesign,
    pub circuits: Vec<ManifestEntry>,
    /// Over the compiled Cliffords (CRB) or the SSPAM circuits (DRB).
    pub compile_summary: CompileSummary,
}

#[derive(Clone, Debug)]
pub struct Experiment {
    pub circuits: Vec<BenchmarkCircuit>,
    pub manifest: ExperimentManifest,
}

/// All circuits of `design`, in length-major order.
pub fn generate_experiment(design: &ExperimentDesign) -> Result<Experiment> {
    design.validate()?;
    let jobs: Vec<(usize, usize)> = design
        .lengths
        .iter()
        .flat_map(|&m| (0..design.circuits_per_length).map(move |i| (m, i)))
        .collect();
    let results: Vec<(BenchmarkCircuit, Vec<CompileStats>)> = jobs
        .par_iter()
        .map(|&(m, i)| generate_one(design, m, i))
        .collect::<Result<_>>()?;
    let mut stats = Vec::new();
    let mut circuits = Vec::with_capacity(results.len());
    for (c, s) in results {
        stats.extend(s);
        circuits.push(c);
    }
    let entries = circuits
        .iter()
        .zip(&jobs)
        .map(|(c, &(m, index))| ManifestEntry {
            id: c.id.clone(),
            m,
            index,
            seed: c.seed,
            target: c.target.to_string(),
        })
        .collect();
    let manifest = ExperimentManifest {
        protocol: design.protocol,
        n: design.num_qubits(),
        design_digest: design.digest(),
        design: design.clone(),
        circuits: entries,
        compile_summary: CompileSummary::from_stats(&stats),
    };
    Ok(Experiment { circuits, manifest })
}
