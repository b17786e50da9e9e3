//! Stabilizer measurement and preparation circuits of the form
//! one-qubit layer · CNOT circuit · one-qubit layer.
//!
//! Measurement of `|ψ⟩`: Hadamards on the non-pivot qubits of the reduced
//! X-part make it invertible, so the generators can be brought to
//! `X_i Z^{B_i}` with `B` symmetric. Phase gates on selected qubits toggle
//! the diagonal of `B` so that symmetric elimination never meets a zero
//! pivot, giving `B = L Lᵀ` with `L` unit lower triangular. The CNOT circuit
//! acting as `Lᵀ` then maps the state to a product of `±Y` eigenstates, and
//! a final one-qubit layer rotates each onto `±Z`, whose signs give `s`.
//! Preparation runs the inverse from `|s⟩`.

use crate::bits::{BitMatrix, BitVec};
use crate::circuit::Circuit;
use crate::clifford::{conj_cnot, conj_h, conj_p, one_qubit_table};
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliOp};
use crate::stabilizer::StabilizerState;

use super::cnot::synth_cnots;
use super::topology::Topology;
use super::{invert_ops, lower, CompileOptions, SynthOp};

/// Gauss-Jordan on the X-part in column order; returns pivot columns.
fn reduce_x(gens: &mut [PauliOp]) -> Vec<usize> {
    let n = gens.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for q in 0..n {
        let Some(p) = (row..n).find(|&r| gens[r].x().get(q)) else {
            continue;
        };
        gens.swap(row, p);
        let pivot = gens[row].clone();
        for r in 0..n {
            if r != row && gens[r].x().get(q) {
                gens[r].mul_assign(&pivot);
            }
        }
        pivots.push(q);
        row += 1;
    }
    pivots
}

fn synth_meas(state: &StabilizerState, topo: &Topology) -> Result<(Vec<SynthOp>, BitVec)> {
    let n = state.num_qubits();
    let t = one_qubit_table();
    let mut gens = state.generators().to_vec();
    let mut first = vec![t.identity; n];

    let pivots = reduce_x(&mut gens);
    for q in 0..n {
        if !pivots.contains(&q) {
            for g in &mut gens {
                conj_h(g, q);
            }
            first[q] = t.then(first[q], t.h);
        }
    }
    let pivots = reduce_x(&mut gens);
    debug_assert_eq!(pivots.len(), n);

    // Symmetric elimination of B in the trial's qubit order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&q| topo.rank()[q]);
    let mut c = BitMatrix::zeros(n, n);
    for (i, g) in gens.iter().enumerate() {
        for j in g.z().iter_ones() {
            c.set(i, j, true);
        }
    }
    let mut e = BitMatrix::identity(n);
    for (pos, &k) in order.iter().enumerate() {
        if !c.get(k, k) {
            for g in &mut gens {
                conj_p(g, k);
            }
            first[k] = t.then(first[k], t.p);
            c.set(k, k, true);
        }
        for &j in &order[pos + 1..] {
            if c.get(j, k) {
                c.add_row(k, j);
                c.add_col(k, j);
                e.add_row(k, j);
            }
        }
    }
    let l = e.inverse().expect("unit triangular");
    let a = l.transpose();
    let cnots = synth_cnots(&a, topo)?;
    for &(ctl, tgt) in &cnots {
        for g in &mut gens {
            conj_cnot(g, ctl, tgt);
        }
    }
    reduce_x(&mut gens);

    let mut touched = vec![false; n];
    for &(ctl, tgt) in &cnots {
        touched[ctl] = true;
        touched[tgt] = true;
    }
    let mut last = vec![t.identity; n];
    let mut s = BitVec::zeros(n);
    for q in 0..n {
        let g = &gens[q];
        if g.weight() != 1 || g.local(q) != Pauli1::Y {
            return Err(Error::InvalidState(format!("reduction left generator {g}")));
        }
        let negative = g.is_negative();
        let cost = |cand: u8| {
            let merged = if touched[q] {
                cand
            } else {
                t.then(first[q], cand)
            };
            t.hp_words[merged as usize].len()
        };
        let (cand, flip) = (0..24u8)
            .filter_map(|i| {
                let (neg, img) = t.entries[i as usize].map_hermitian(Pauli1::Y);
                (img == Pauli1::Z).then_some((i, neg != negative))
            })
            .min_by_key(|&(i, flip)| (cost(i), flip, i))
            .expect("some Clifford maps Y to Z");
        last[q] = cand;
        s.set(q, flip);
    }

    let mut ops = Vec::with_capacity(2 * n + cnots.len());
    ops.extend((0..n).map(|q| SynthOp::OneQubit {
        qubit: q,
        cliff: first[q],
    }));
    ops.extend(
        cnots
            .iter()
            .map(|&(control, target)| SynthOp::Cnot { control, target }),
    );
    ops.extend((0..n).map(|q| SynthOp::OneQubit {
        qubit: q,
        cliff: last[q],
    }));
    Ok((ops, s))
}

fn check_dims(state: &StabilizerState, device: &DeviceSpec) -> Result<()> {
    if state.num_qubits() != device.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: device.num_qubits(),
            found: state.num_qubits(),
        });
    }
    Ok(())
}

fn best_of_trials(
    state: &StabilizerState,
    device: &DeviceSpec,
    opts: &CompileOptions,
    build: impl Fn(Vec<SynthOp>, &BitVec) -> Vec<SynthOp>,
) -> Result<(Circuit, BitVec)> {
    check_dims(state, device)?;
    let mut best: Option<(usize, Circuit, BitVec)> = None;
    for trial in 0..opts.trials.max(1) {
        let (topo, _) = Topology::new(device, opts)?.for_trial(opts, trial);
        let (ops, s) = synth_meas(state, &topo)?;
        let circ = lower(&build(ops, &s), device, opts);
        let cost = opts.cost_of(&circ);
        if best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
            best = Some((cost, circ, s));
        }
    }
    let (_, circ, s) = best.expect("at least one trial");
    Ok((circ, s))
}

/// A circuit `V` and bitstring `s` with `V|ψ⟩ = |s⟩` up to global phase.
pub fn compile_stabilizer_meas(
    state: &StabilizerState,
    device: &DeviceSpec,
    opts: &CompileOptions,
) -> Result<(Circuit, BitVec)> {
    best_of_trials(state, device, opts, |ops, _| ops)
}

/// Measurement of `|ψ⟩` preceded by the Pauli `frame`: the returned circuit
/// is `V'·Q` where `V'` measures `Q|ψ⟩`, with `Q` merged into the first
/// one-qubit layer.
pub fn compile_stabilizer_meas_framed(
    state: &StabilizerState,
    frame: &PauliOp,
    device: &DeviceSpec,
    opts: &CompileOptions,
) -> Result<(Circuit, BitVec)> {
    check_dims(state, device)?;
    let t = one_qubit_table();
    let framed = state.apply_pauli(frame);
    let prefix: Vec<SynthOp> = (0..frame.num_qubits())
        .map(|q| SynthOp::OneQubit {
            qubit: q,
            cliff: t.pauli_index(frame.local(q)),
        })
        .collect();
    best_of_trials(&framed, device, opts, |ops, _| {
        let mut all = prefix.clone();
        all.extend(ops);
        all
    })
}

/// A circuit `U` with `U|0…0⟩ = |ψ⟩` up to global phase.
pub fn compile_stabilizer_prep(
    state: &StabilizerState,
    device: &DeviceSpec,
    opts: &CompileOptions,
) -> Result<Circuit> {
    let t = one_qubit_table();
    best_of_trials(state, device, opts, |ops, s| {
        let mut all: Vec<SynthOp> = s
            .iter_ones()
            .map(|q| SynthOp::OneQubit {
                qubit: q,
                cliff: t.x,
            })
            .collect();
        all.extend(invert_ops(&ops));
        all
    })
    .map(|(c, _)| c)
}
