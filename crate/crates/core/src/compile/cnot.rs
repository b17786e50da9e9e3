//! CNOT-circuit synthesis by connectivity-aware Gaussian elimination.
//!
//! `CNOT(c→t)` acts on computational-basis bit columns as `x_t ^= x_c`,
//! i.e. as `E = I + e_t e_cᵀ`. Each pivot is cleared first down its column
//! by row operations (`row_t ^= row_c`, a CNOT appended after the circuit)
//! and then along its row by column operations (`col_c ^= col_t`, a CNOT
//! prepended before it), both routed over Steiner trees of the qubits not
//! yet eliminated.

use crate::bits::BitMatrix;
use crate::circuit::Circuit;
use crate::device::DeviceSpec;
use crate::error::{Error, Result};

use super::topology::Topology;
use super::{lower, CompileOptions, SynthOp};

/// Time-ordered `(control, target)` pairs whose linear action is `m`.
pub(crate) fn synth_cnots(m: &BitMatrix, topo: &Topology) -> Result<Vec<(usize, usize)>> {
    let n = m.nrows();
    if m.ncols() != n || m.inverse().is_none() {
        return Err(Error::SingularMatrix);
    }
    let mut m = m.clone();
    let mut alive = vec![true; n];
    let mut col_ops = Vec::new();
    let mut row_ops = Vec::new();
    let mut row_op = |m: &mut BitMatrix, c: usize, t: usize| {
        m.add_row(c, t);
        row_ops.push((c, t));
    };
    for _ in 0..n {
        let v = topo.next_pivot(&alive);

        // Bring a one onto the diagonal along a path.
        if !m.get(v, v) {
            let u = (0..n)
                .filter(|&u| alive[u] && m.get(u, v))
                .min_by_key(|&u| topo.rank()[u])
                .expect("invertible matrix");
            let path = topo.steiner_tree(v, &[u], &alive);
            // path is deepest first: (u, p1), (p1, p2), …, (pk, v)
            for &(child, parent) in &path {
                if !m.get(parent, v) {
                    row_op(&mut m, child, parent);
                }
            }
        }

        // Clear the column below and above the pivot.
        let terms: Vec<usize> = (0..n)
            .filter(|&r| r != v && alive[r] && m.get(r, v))
            .collect();
        if !terms.is_empty() {
            let tree = topo.steiner_tree(v, &terms, &alive);
            for &(child, parent) in &tree {
                if !m.get(parent, v) {
                    row_op(&mut m, child, parent);
                }
            }
            for &(child, parent) in &tree {
                row_op(&mut m, parent, child);
            }
        }

        // Clear the row with column operations.
        let terms: Vec<usize> = (0..n)
            .filter(|&c| c != v && alive[c] && m.get(v, c))
            .collect();
        if !terms.is_empty() {
            let tree = topo.steiner_tree(v, &terms, &alive);
            for &(child, parent) in &tree {
                if !m.get(v, parent) {
                    m.add_col(child, parent);
                    col_ops.push((parent, child));
                }
            }
            for &(child, parent) in &tree {
                m.add_col(parent, child);
                col_ops.push((child, parent));
            }
        }
        alive[v] = false;
    }
    debug_assert!(m.is_identity());
    let mut out = col_ops;
    out.extend(row_ops.into_iter().rev());
    Ok(out)
}

/// A CNOT circuit whose action on computational-basis bit columns is `m`.
pub fn compile_cnot_circuit(
    m: &BitMatrix,
    device: &DeviceSpec,
    opts: &CompileOptions,
) -> Result<Circuit> {
    let n = device.num_qubits();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.nrows(),
        });
    }
    let mut best: Option<(usize, Circuit)> = None;
    for trial in 0..opts.trials.max(1) {
        let (topo, _) = Topology::new(device, opts)?.for_trial(opts, trial);
        let ops: Vec<SynthOp> = synth_cnots(m, &topo)?
            .into_iter()
            .map(|(control, target)| SynthOp::Cnot { control, target })
            .collect();
        let circ = lower(&ops, device, opts);
        let cost = opts.cost_of(&circ);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, circ));
        }
    }
    Ok(best.expect("at least one trial").1)
}
