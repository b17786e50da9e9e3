use crate::circuit::{Circuit, Gate, GateLabel, GateSet, Layer};
use crate::clifford::{one_qubit_table, HpLetter};
use crate::device::DeviceSpec;

use super::{CompileOptions, SynthOp};

/// Native gates for one-qubit Clifford `idx`, in time order.
pub(crate) fn expand_one_qubit(idx: u8, gate_set: GateSet) -> Vec<Gate> {
    let t = one_qubit_table();
    if idx == t.identity {
        return Vec::new();
    }
    match gate_set {
        GateSet::C24 => vec![Gate::C(idx)],
        GateSet::Hpi => t.hp_words[idx as usize]
            .iter()
            .map(|l| match l {
                HpLetter::H => Gate::H,
                HpLetter::P => Gate::P,
            })
            .collect(),
    }
}

/// Turns synthesis steps into a layered native circuit.
pub fn lower(ops: &[SynthOp], device: &DeviceSpec, opts: &CompileOptions) -> Circuit {
    let n = device.num_qubits();
    let t = one_qubit_table();
    let gate_set = device.gate_set();

    let mut pending: Vec<u8> = vec![t.identity; n];
    let mut gates: Vec<GateLabel> = Vec::new();
    let flush = |q: usize, pending: &mut Vec<u8>, gates: &mut Vec<GateLabel>| {
        for g in expand_one_qubit(pending[q], gate_set) {
            gates.push(GateLabel::one(g, q));
        }
        pending[q] = t.identity;
    };
    for op in ops {
        match *op {
            SynthOp::OneQubit { qubit, cliff } => pending[qubit] = t.then(pending[qubit], cliff),
            SynthOp::Cnot { control, target } => {
                let reversed = opts.respect_connectivity
                    && !device.has_edge(control, target)
                    && device.has_edge(target, control);
                if reversed {
                    pending[control] = t.then(pending[control], t.h);
                    pending[target] = t.then(pending[target], t.h);
                }
                flush(control, &mut pending, &mut gates);
                flush(target, &mut pending, &mut gates);
                if reversed {
                    gates.push(GateLabel::cnot(target, control));
                    pending[control] = t.h;
                    pending[target] = t.h;
                } else {
                    gates.push(GateLabel::cnot(control, target));
                }
            }
        }
    }
    for q in 0..n {
        flush(q, &mut pending, &mut gates);
    }
    schedule(n, gates)
}

/// As-soon-as-possible layering, preserving per-qubit order.
pub(crate) fn schedule(n: usize, gates: Vec<GateLabel>) -> Circuit {
    let mut ready = vec![0usize; n];
    let mut layers: Vec<Vec<GateLabel>> = Vec::new();
    for g in gates {
        let at = g.targets.iter().map(|&q| ready[q]).max().unwrap_or(0);
        if at == layers.len() {
            layers.push(Vec::new());
        }
        for &q in &g.targets {
            ready[q] = at + 1;
        }
        layers[at].push(g);
    }
    let layers = layers
        .into_iter()
        .map(|mut l| {
            l.sort_by_key(|g| g.targets[0]);
            Layer::new(l)
        })
        .collect();
    Circuit::from_layers(n, layers).expect("scheduled layers are disjoint")
}
