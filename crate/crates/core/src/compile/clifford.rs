//! Clifford synthesis by sweeping one qubit at a time.
//!
//! Gates are applied after the target Clifford until it becomes the
//! identity. For each pivot `v` the image of `X_v` is first turned into
//! `X` on its support and gathered onto `v` with CNOTs along a Steiner
//! tree; the image of `Z_v` is then turned into `Z` on its support (with an
//! `X`-preserving gate on `v`) and gathered the same way. A final Pauli layer
//! fixes the signs, and the reversed, inverted gate list implements the
//! Clifford.

use crate::circuit::Circuit;
use crate::clifford::{one_qubit_table, CliffordOp};
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::pauli::Pauli1;

use super::topology::Topology;
use super::{invert_ops, lower, CompileOptions, SynthOp};

pub(crate) fn synth_clifford(c: &CliffordOp, topo: &Topology) -> Vec<SynthOp> {
    let n = c.num_qubits();
    let t = one_qubit_table();
    let y_to_z_keep_x = t.cheapest_where(|e| {
        e.map_hermitian(Pauli1::X).1 == Pauli1::X && e.map_hermitian(Pauli1::Y).1 == Pauli1::Z
    });

    let mut w = c.clone();
    let mut applied: Vec<SynthOp> = Vec::new();
    let mut apply = |w: &mut CliffordOp, op: SynthOp| {
        op.apply_to(w);
        applied.push(op);
    };
    let mut alive = vec![true; n];
    for _ in 0..n {
        let v = topo.next_pivot(&alive);

        let img = w.image_of_x(v).clone();
        let mut terms = Vec::new();
        for q in 0..n {
            let local = img.local(q);
            if local == Pauli1::I {
                continue;
            }
            if local != Pauli1::X {
                let cliff = t.cheapest_mapping(local, Pauli1::X);
                apply(&mut w, SynthOp::OneQubit { qubit: q, cliff });
            }
            if q != v {
                terms.push(q);
            }
        }
        if !terms.is_empty() {
            let tree = topo.steiner_tree(v, &terms, &alive);
            for &(child, parent) in &tree {
                if !w.image_of_x(v).x().get(parent) {
                    apply(
                        &mut w,
                        SynthOp::Cnot {
                            control: child,
                            target: parent,
                        },
                    );
                }
            }
            for &(child, parent) in &tree {
                apply(
                    &mut w,
                    SynthOp::Cnot {
                        control: parent,
                        target: child,
                    },
                );
            }
        }

        let img = w.image_of_z(v).clone();
        let mut terms = Vec::new();
        for q in 0..n {
            let local = img.local(q);
            if q == v {
                if local == Pauli1::Y {
                    apply(
                        &mut w,
                        SynthOp::OneQubit {
                            qubit: q,
                            cliff: y_to_z_keep_x,
                        },
                    );
                }
                continue;
            }
            if local == Pauli1::I {
                continue;
            }
            if local != Pauli1::Z {
                let cliff = t.cheapest_mapping(local, Pauli1::Z);
                apply(&mut w, SynthOp::OneQubit { qubit: q, cliff });
            }
            terms.push(q);
        }
        if !terms.is_empty() {
            let tree = topo.steiner_tree(v, &terms, &alive);
            for &(child, parent) in &tree {
                if !w.image_of_z(v).z().get(parent) {
                    apply(
                        &mut w,
                        SynthOp::Cnot {
                            control: parent,
                            target: child,
                        },
                    );
                }
            }
            for &(child, parent) in &tree {
                apply(
                    &mut w,
                    SynthOp::Cnot {
                        control: child,
                        target: parent,
                    },
                );
            }
        }
        alive[v] = false;
    }
    for q in 0..n {
        if w.image_of_x(q).is_negative() {
            apply(
                &mut w,
                SynthOp::OneQubit {
                    qubit: q,
                    cliff: t.z,
                },
            );
        }
        if w.image_of_z(q).is_negative() {
            apply(
                &mut w,
                SynthOp::OneQubit {
                    qubit: q,
                    cliff: t.x,
                },
            );
        }
    }
    debug_assert!(
        w.acts_trivially(),
        "sweep did not reach the identity: {w:?}"
    );
    invert_ops(&applied)
}

/// A native circuit implementing `c` up to global phase; the cheapest of
/// `opts.trials` randomized labellings is returned.
pub fn compile_clifford(
    c: &CliffordOp,
    device: &DeviceSpec,
    opts: &CompileOptions,
) -> Result<Circuit> {
    if c.num_qubits() != device.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: device.num_qubits(),
            found: c.num_qubits(),
        });
    }
    let mut best: Option<(usize, Circuit)> = None;
    for trial in 0..opts.trials.max(1) {
        let (topo, _) = Topology::new(device, opts)?.for_trial(opts, trial);
        let circ = lower(&synth_clifford(c, &topo), device, opts);
        let cost = opts.cost_of(&circ);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, circ));
        }
    }
    Ok(best.expect("at least one trial").1)
}
