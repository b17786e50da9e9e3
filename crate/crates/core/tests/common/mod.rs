//! Dense complex matrices for checking the symplectic algebra.
//!
//! Basis index `b` has qubit `q` in bit `q`. A Pauli `i^k X^x Z^z` is the
//! tensor product of `X^{x_q} Z^{z_q}` scaled by `i^k`.

#![allow(dead_code)]

use std::collections::HashMap;

use drbench_core::bits::BitMatrix;
use drbench_core::circuit::apply_gate;
use drbench_core::clifford::{one_qubit_table, HpLetter};
use drbench_core::{Circuit, CliffordOp, Gate, GateLabel, PauliOp};
use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

pub fn zero(d: usize) -> Mat {
    vec![vec![C::new(0.0, 0.0); d]; d]
}

pub fn eye(d: usize) -> Mat {
    let mut m = zero(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = zero(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Mat) -> Mat {
    let d = a.len();
    let mut out = zero(d);
    for i in 0..d {
        for j in 0..d {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn close(a: &Mat, b: &Mat) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < 1e-9)
}

/// Embeds a one-qubit matrix acting on qubit `q` of `n`.
pub fn one_qubit(u: [[C; 2]; 2], q: usize, n: usize) -> Mat {
    let d = 1 << n;
    let mut m = zero(d);
    for b in 0..d {
        let bit = (b >> q) & 1;
        for out in 0..2 {
            let c = b & !(1 << q) | out << q;
            m[c][b] += u[out][bit];
        }
    }
    m
}

pub fn cnot(c: usize, t: usize, n: usize) -> Mat {
    let d = 1 << n;
    let mut m = zero(d);
    for b in 0..d {
        let out = if (b >> c) & 1 == 1 { b ^ (1 << t) } else { b };
        m[out][b] = C::new(1.0, 0.0);
    }
    m
}

pub fn h_mat() -> [[C; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        [C::new(s, 0.0), C::new(s, 0.0)],
        [C::new(s, 0.0), C::new(-s, 0.0)],
    ]
}

pub fn p_mat() -> [[C; 2]; 2] {
    [
        [C::new(1.0, 0.0), C::new(0.0, 0.0)],
        [C::new(0.0, 0.0), C::new(0.0, 1.0)],
    ]
}

pub fn x_mat() -> [[C; 2]; 2] {
    [
        [C::new(0.0, 0.0), C::new(1.0, 0.0)],
        [C::new(1.0, 0.0), C::new(0.0, 0.0)],
    ]
}

pub fn z_mat() -> [[C; 2]; 2] {
    [
        [C::new(1.0, 0.0), C::new(0.0, 0.0)],
        [C::new(0.0, 0.0), C::new(-1.0, 0.0)],
    ]
}

pub fn y_mat() -> [[C; 2]; 2] {
    [
        [C::new(0.0, 0.0), C::new(0.0, -1.0)],
        [C::new(0.0, 1.0), C::new(0.0, 0.0)],
    ]
}

pub fn dense_pauli(p: &PauliOp) -> Mat {
    let n = p.num_qubits();
    let mut m = eye(1 << n);
    for q in 0..n {
        if p.x().get(q) {
            m = mul(&m, &one_qubit(x_mat(), q, n));
        }
        if p.z().get(q) {
            m = mul(&m, &one_qubit(z_mat(), q, n));
        }
    }
    let phase = [
        C::new(1.0, 0.0),
        C::new(0.0, 1.0),
        C::new(-1.0, 0.0),
        C::new(0.0, -1.0),
    ][p.phase() as usize];
    m.iter()
        .map(|r| r.iter().map(|&v| v * phase).collect())
        .collect()
}

/// Dense unitary of a gate, built from matrix definitions only. The
/// `C00…C23` gates use the table's `{H, P}` words.
pub fn dense_gate(g: &GateLabel, n: usize) -> Mat {
    let q = g.targets[0];
    match g.gate {
        Gate::I => eye(1 << n),
        Gate::H => one_qubit(h_mat(), q, n),
        Gate::P => one_qubit(p_mat(), q, n),
        Gate::X => one_qubit(x_mat(), q, n),
        Gate::Y => one_qubit(y_mat(), q, n),
        Gate::Z => one_qubit(z_mat(), q, n),
        Gate::Cnot => cnot(q, g.targets[1], n),
        Gate::C(i) => {
            let mut u = eye(1 << n);
            for l in &one_qubit_table().hp_words[i as usize] {
                let m = match l {
                    HpLetter::H => h_mat(),
                    HpLetter::P => p_mat(),
                };
                u = mul(&one_qubit(m, q, n), &u);
            }
            u
        }
    }
}

pub fn dense_circuit(c: &Circuit) -> Mat {
    let n = c.num_qubits();
    c.gates()
        .fold(eye(1 << n), |u, g| mul(&dense_gate(g, n), &u))
}

/// `U g U† = image(g)` for every generator `g`.
pub fn agrees(c: &CliffordOp, u: &Mat) -> bool {
    let n = c.num_qubits();
    let ud = dagger(u);
    (0..n).all(|q| {
        let x = PauliOp::single(n, q, drbench_core::Pauli1::X);
        let z = PauliOp::single(n, q, drbench_core::Pauli1::Z);
        close(
            &mul(&mul(u, &dense_pauli(&x)), &ud),
            &dense_pauli(c.image_of_x(q)),
        ) && close(
            &mul(&mul(u, &dense_pauli(&z)), &ud),
            &dense_pauli(c.image_of_z(q)),
        )
    })
}

pub fn count_symplectic(n: usize) -> usize {
    let d = 2 * n;
    (0u64..1 << (d * d))
        .filter(|bits| {
            let mut m = BitMatrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, bits >> (i * d + j) & 1 == 1);
                }
            }
            m.is_symplectic()
        })
        .count()
}

/// Breadth-first closure under `H`, `P` and `CNOT`, tracking the tableau and
/// the dense unitary side by side.
pub fn enumerate_cliffords(n: usize) -> HashMap<CliffordOp, Mat> {
    let mut gens = vec![];
    for q in 0..n {
        gens.push(GateLabel::one(Gate::H, q));
        gens.push(GateLabel::one(Gate::P, q));
    }
    if n == 2 {
        gens.push(GateLabel::cnot(0, 1));
    }
    let mut seen: HashMap<CliffordOp, Mat> = HashMap::new();
    seen.insert(CliffordOp::identity(n), eye(1 << n));
    let mut frontier = vec![CliffordOp::identity(n)];
    while let Some(c) = frontier.pop() {
        let u = seen[&c].clone();
        for g in &gens {
            let mut d = c.clone();
            apply_gate(&mut d, g);
            if !seen.contains_key(&d) {
                seen.insert(d.clone(), mul(&dense_gate(g, n), &u));
                frontier.push(d);
            }
        }
    }
    seen
}
