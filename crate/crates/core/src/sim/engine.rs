//! Monte Carlo execution of benchmark circuits with a Pauli frame.
//!
//! The frame holds the net Pauli error accumulated so far (signs dropped) as
//! `x`/`z` bit masks. Each layer first conjugates the frame through its ideal
//! gates and then multiplies in freshly drawn errors. At the end the
//! frame's `X` part flips the ideal outcome, followed by readout flips.

use std::collections::{BTreeMap, HashMap};

use rand::Rng as _;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate};
use crate::clifford::one_qubit_table;
use crate::dataset::{Dataset, DatasetRow, Provenance};
use crate::error::{Error, Result};
use crate::protocols::BenchmarkCircuit;
use crate::rng::{derived_rng, Rng};

use super::model::{BoundKind, BoundTerm, ErrorModel};

/// Histograms keep at most this many outcomes.
pub const HISTOGRAM_CAP: usize = 64;

#[derive(Clone, Copy, Debug)]
enum FrameOp {
    H(u32),
    P(u32),
    Cnot(u32, u32),
    /// One-qubit Clifford as a map on the two-bit local Pauli code.
    Local(u32, [u8; 4]),
}

#[derive(Clone, Debug)]
struct SimTerm {
    kind: BoundKind,
    p: f64,
    qubits: Vec<u32>,
}

impl SimTerm {
    fn new(t: BoundTerm) -> Self {
        SimTerm {
            kind: t.kind,
            p: t.p,
            qubits: t.qubits.iter().map(|&q| q as u32).collect(),
        }
    }

    #[inline]
    fn apply(&self, x: &mut u64, z: &mut u64, rng: &mut Rng) {
        let mut put = |q: u32, code: u8| {
            *x ^= ((code & 1) as u64) << q;
            *z ^= ((code >> 1) as u64) << q;
        };
        match self.kind {
            BoundKind::Local => {
                for &q in &self.qubits {
                    if rng.gen::<f64>() < self.p {
                        put(q, rng.gen_range(1..4u8));
                    }
                }
            }
            BoundKind::Uniform => {
                if rng.gen::<f64>() < self.p {
                    for &q in &self.qubits {
                        put(q, rng.gen_range(0..4u8));
                    }
                }
            }
            BoundKind::NonIdentity => {
                if rng.gen::<f64>() < self.p {
                    let codes: Vec<u8> = loop {
                        let c: Vec<u8> =
                            self.qubits.iter().map(|_| rng.gen_range(0..4u8)).collect();
                        if c.iter().any(|&v| v != 0) {
                            break c;
                        }
                    };
                    for (&q, c) in self.qubits.iter().zip(codes) {
                        put(q, c);
                    }
                }
            }
            BoundKind::Fixed(packed) => {
                if rng.gen::<f64>() < self.p {
                    for (i, &q) in self.qubits.iter().enumerate() {
                        put(q, ((packed >> (2 * i)) & 3) as u8);
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
struct SimLayer {
    ops: Vec<FrameOp>,
    errors: Vec<SimTerm>,
}

/// A benchmark circuit lowered for repeated frame simulation.
#[derive(Clone, Debug)]
pub struct Program {
    n: usize,
    layers: Vec<SimLayer>,
    readout: Vec<f64>,
    target: u64,
}

fn local_maps() -> &'static [[u8; 4]; 24] {
    use std::sync::OnceLock;
    static MAPS: OnceLock<[[u8; 4]; 24]> = OnceLock::new();
    MAPS.get_or_init(|| {
        let t = one_qubit_table();
        let mut maps = [[0u8; 4]; 24];
        for (i, e) in t.entries.iter().enumerate() {
            for (b, (x, z)) in [(false, false), (true, false), (false, true), (true, true)]
                .into_iter()
                .enumerate()
            {
                let p = crate::pauli::Pauli1::from_bits(x, z);
                let (ix, iz) = e.map_hermitian(p).1.bits();
                maps[i][b] = u8::from(ix) | u8::from(iz) << 1;
            }
        }
        maps
    })
}

impl Program {
    pub fn new(circ: &BenchmarkCircuit, model: &ErrorModel) -> Result<Self> {
        let n = circ.num_qubits();
        if n != model.n {
            return Err(Error::DimensionMismatch {
                expected: model.n,
                found: n,
            });
        }
        if n > 64 {
            return Err(Error::InvalidModel(
                "the simulator supports at most 64 qubits".into(),
            ));
        }
        if circ.target.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: circ.target.len(),
            });
        }
        let layer_terms: Vec<SimTerm> = model
            .layer_bound_terms()?
            .into_iter()
            .map(SimTerm::new)
            .collect();
        let mut layers = Vec::new();
        let mut add = |c: &Circuit, gate_errors: bool, core: bool| -> Result<()> {
            for l in c.layers() {
                let mut sl = SimLayer::default();
                for g in &l.gates {
                    let q0 = g.targets[0] as u32;
                    match g.gate {
                        Gate::I => {}
                        Gate::H => sl.ops.push(FrameOp::H(q0)),
                        Gate::P => sl.ops.push(FrameOp::P(q0)),
                        Gate::Cnot => sl.ops.push(FrameOp::Cnot(q0, g.targets[1] as u32)),
                        other => {
                            let idx = other.one_qubit_index().expect("one-qubit gate");
                            sl.ops.push(FrameOp::Local(q0, local_maps()[idx as usize]));
                        }
                    }
                    // Coverage is required even for gates simulated without errors.
                    let terms = model.gate_terms(g)?;
                    if gate_errors {
                        sl.errors
                            .extend(terms.into_iter().filter(|t| t.p > 0.0).map(SimTerm::new));
                    }
                }
                if core {
                    sl.errors
                        .extend(layer_terms.iter().filter(|t| t.p > 0.0).cloned());
                }
                layers.push(sl);
            }
            Ok(())
        };
        add(&circ.prep, model.sspam_gate_errors, false)?;
        add(&circ.core, true, true)?;
        add(&circ.meas, model.sspam_gate_errors, false)?;
        let target = circ.target.iter_ones().fold(0u64, |acc, q| acc | 1 << q);
        Ok(Program {
            n,
            layers,
            readout: (0..n).map(|q| model.readout_probability(q)).collect(),
            target,
        })
    }

    /// The frame `X` mask after one noisy run, including readout flips.
    pub fn run_shot(&self, rng: &mut Rng) -> u64 {
        let (mut x, mut z) = (0u64, 0u64);
        for l in &self.layers {
            for op in &l.ops {
                match *op {
                    FrameOp::H(q) => {
                        let d = ((x >> q) ^ (z >> q)) & 1;
                        x ^= d << q;
                        z ^= d << q;
                    }
                    FrameOp::P(q) => z ^= x & (1 << q),
                    FrameOp::Cnot(c, t) => {
                        x ^= ((x >> c) & 1) << t;
                        z ^= ((z >> t) & 1) << c;
                    }
                    FrameOp::Local(q, map) => {
                        let b = (((x >> q) & 1) | ((z >> q) & 1) << 1) as usize;
                        let nb = map[b] as u64;
                        x = (x & !(1 << q)) | (nb & 1) << q;
                        z = (z & !(1 << q)) | (nb >> 1) << q;
                    }
                }
            }
            for e in &l.errors {
                e.apply(&mut x, &mut z, rng);
            }
        }
        for (q, &p) in self.readout.iter().enumerate() {
            if p > 0.0 && rng.gen::<f64>() < p {
                x ^= 1 << q;
            }
        }
        x
    }

    fn bitstring(&self, outcome: u64) -> String {
        (0..self.n)
            .map(|q| if outcome >> q & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Result of simulating one circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimOutcome {
    pub shots: u64,
    pub successes: u64,
    /// The most frequent outcomes, at most [`HISTOGRAM_CAP`].
    pub histogram: BTreeMap<String, u64>,
}

/// Runs `shots` noisy executions of `circ`.
pub fn simulate_circuit(
    circ: &BenchmarkCircuit,
    model: &ErrorModel,
    shots: u64,
    rng: &mut Rng,
) -> Result<SimOutcome> {
    let prog = Program::new(circ, model)?;
    let mut counts: HashMap<u64, u64> = HashMap::new();
    let mut successes = 0;
    for _ in 0..shots {
        let flips = prog.run_shot(rng);
        if flips == 0 {
            successes += 1;
        }
        *counts.entry(prog.target ^ flips).or_default() += 1;
    }
    let mut ranked: Vec<(u64, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let histogram = ranked
        .into_iter()
        .take(HISTOGRAM_CAP)
        .map(|(o, c)| (prog.bitstring(o), c))
        .collect();
    Ok(SimOutcome {
        shots,
        successes,
        histogram,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub shots: u64,
    pub seed: u64,
    pub histogram: bool,
}

/// Simulates every circuit with its own stream derived from `(seed, id)`.
pub fn run_experiment(
    circuits: &[BenchmarkCircuit],
    model: &ErrorModel,
    config: &SimConfig,
) -> Result<Dataset> {
    model.validate()?;
    let rows = circuits
        .par_iter()
        .map(|c| {
            let mut rng = derived_rng(config.seed, &format!("sim/{}", c.id));
            let out = simulate_circuit(c, model, config.shots, &mut rng)?;
            Ok(DatasetRow {
                circuit_id: c.id.clone(),
                m: c.m,
                target: c.target.to_string(),
                shots: out.shots,
                successes: out.successes,
                histogram: config.histogram.then_some(out.histogram),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset {
        provenance: Some(Provenance {
            design_digest: None,
            model_digest: Some(model.digest()),
            seed: Some(config.seed),
            protocol: circuits.first().map(|c| c.protocol.to_string()),
        }),
        rows,
    })
}
