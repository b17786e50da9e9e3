use drbench_core::bits::BitMatrix;
use drbench_core::compile::{
    compile_clifford, compile_cnot_circuit, compile_stabilizer_meas,
    compile_stabilizer_meas_framed, compile_stabilizer_prep, CompileOptions, CompileStats,
    CompileSummary,
};
use drbench_core::rng::rng_from_seed;
use drbench_core::sampling::{
    sample_clifford_uniform, sample_pauli_uniform, sample_stabilizer_state_uniform,
};
use drbench_core::{
    circuit_to_clifford, standard_gate, CliffordOp, DeviceSpec, Error, GateSet, PauliOp,
    StabilizerState,
};
use rand::Rng;

/// Linear action of a Clifford on computational-basis bit columns:
/// column `j` is the X-support of the image of `X_j`.
fn x_action(c: &CliffordOp) -> BitMatrix {
    let n = c.num_qubits();
    let mut m = BitMatrix::zeros(n, n);
    for j in 0..n {
        for i in c.image_of_x(j).x().iter_ones() {
            m.set(i, j, true);
        }
    }
    m
}

fn random_invertible(n: usize, rng: &mut impl Rng) -> BitMatrix {
    loop {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rng.gen());
            }
        }
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn respects_edges(c: &drbench_core::Circuit, d: &DeviceSpec) -> bool {
    c.gates()
        .filter(|g| g.gate == drbench_core::Gate::Cnot)
        .all(|g| d.has_edge(g.targets[0], g.targets[1]))
}

fn devices(n: usize) -> Vec<DeviceSpec> {
    vec![
        DeviceSpec::all_to_all(n, GateSet::Hpi),
        DeviceSpec::ring(n, GateSet::Hpi),
        DeviceSpec::line(n, GateSet::C24),
    ]
}

#[test]
fn cnot_identity_is_empty() {
    let d = DeviceSpec::ring(4, GateSet::Hpi);
    let c = compile_cnot_circuit(&BitMatrix::identity(4), &d, &CompileOptions::default()).unwrap();
    assert!(c.is_empty());
}

#[test]
fn cnot_single_elementary_op() {
    let d = DeviceSpec::all_to_all(4, GateSet::Hpi);
    for (i, j) in [(1, 0), (0, 1), (3, 2), (2, 3)] {
        let mut m = BitMatrix::identity(4);
        m.set(i, j, true);
        let c = compile_cnot_circuit(&m, &d, &CompileOptions::default()).unwrap();
        assert_eq!(c.cnot_count(), 1);
        let g = c.gates().next().unwrap();
        assert_eq!(g.targets, vec![j, i]);
    }
}

#[test]
fn cnot_round_trip_ring5() {
    let mut rng = rng_from_seed(11);
    let d = DeviceSpec::ring(5, GateSet::Hpi);
    let opts = CompileOptions {
        trials: 1,
        ..Default::default()
    };
    for _ in 0..1000 {
        let m = random_invertible(5, &mut rng);
        let c = compile_cnot_circuit(&m, &d, &opts).unwrap();
        assert!(respects_edges(&c, &d));
        assert_eq!(x_action(&c.to_clifford()), m);
    }
}

#[test]
fn cnot_errors() {
    let d = DeviceSpec::ring(3, GateSet::Hpi);
    let singular = BitMatrix::zeros(3, 3);
    assert!(matches!(
        compile_cnot_circuit(&singular, &d, &CompileOptions::default()),
        Err(Error::SingularMatrix)
    ));
    let disconnected = DeviceSpec::new(3, None, vec![(0, 1)], GateSet::Hpi).unwrap();
    assert!(matches!(
        compile_cnot_circuit(
            &BitMatrix::identity(3),
            &disconnected,
            &CompileOptions::default()
        ),
        Err(Error::DisconnectedDevice)
    ));
}

#[test]
fn clifford_identity_and_hadamard() {
    let d = DeviceSpec::ring(3, GateSet::Hpi);
    let opts = CompileOptions::default();
    let id = compile_clifford(&CliffordOp::identity(3), &d, &opts).unwrap();
    assert!(circuit_to_clifford(&id, &d).unwrap().acts_trivially());
    let h0 = standard_gate("H", &[0], 3).unwrap();
    let c = compile_clifford(&h0, &d, &opts).unwrap();
    assert_eq!(circuit_to_clifford(&c, &d).unwrap(), h0);
    assert_eq!(c.cnot_count(), 0);
}

#[test]
fn clifford_exhaustive_one_qubit() {
    let t = drbench_core::clifford::one_qubit_table();
    for gs in [GateSet::Hpi, GateSet::C24] {
        let d = DeviceSpec::all_to_all(1, gs);
        for e in &t.entries {
            let target = e.to_clifford();
            let c = compile_clifford(&target, &d, &CompileOptions::default()).unwrap();
            assert_eq!(circuit_to_clifford(&c, &d).unwrap(), target);
        }
    }
}

#[test]
fn clifford_round_trip_random() {
    let mut rng = rng_from_seed(12);
    let opts = CompileOptions {
        trials: 2,
        ..Default::default()
    };
    for n in 2..=8 {
        for d in devices(n) {
            for _ in 0..25 {
                let target = sample_clifford_uniform(n, &mut rng);
                let c = compile_clifford(&target, &d, &opts).unwrap();
                assert!(respects_edges(&c, &d));
                assert_eq!(circuit_to_clifford(&c, &d).unwrap(), target);
            }
        }
    }
}

#[test]
fn clifford_cost_grows_at_most_quadratically() {
    let mut rng = rng_from_seed(13);
    let opts = CompileOptions {
        trials: 3,
        ..Default::default()
    };
    let mut means = Vec::new();
    for n in 2..=10 {
        let d = DeviceSpec::all_to_all(n, GateSet::C24);
        let stats: Vec<CompileStats> = (0..20)
            .map(|_| {
                CompileStats::of(
                    &compile_clifford(&sample_clifford_uniform(n, &mut rng), &d, &opts).unwrap(),
                )
            })
            .collect();
        means.push((n, CompileSummary::from_stats(&stats).mean_cnot_count));
    }
    for &(n, m) in &means {
        assert!(m > 0.0);
        assert!(m <= 2.0 * (n * n) as f64, "n={n} mean={m}");
    }
}

#[test]
fn trial_selection_is_deterministic() {
    let mut rng = rng_from_seed(14);
    let d = DeviceSpec::ring(5, GateSet::Hpi);
    let target = sample_clifford_uniform(5, &mut rng);
    let opts = CompileOptions {
        seed: 99,
        ..Default::default()
    };
    let a = compile_clifford(&target, &d, &opts).unwrap();
    let b = compile_clifford(&target, &d, &opts).unwrap();
    assert_eq!(a, b);
    let single = compile_clifford(&target, &d, &CompileOptions { trials: 1, ..opts }).unwrap();
    assert!(a.cnot_count() <= single.cnot_count());
}

#[test]
fn stabilizer_zero_state_is_trivial() {
    let d = DeviceSpec::ring(3, GateSet::Hpi);
    let opts = CompileOptions::default();
    let zero = StabilizerState::zero(3);
    assert!(compile_stabilizer_prep(&zero, &d, &opts)
        .unwrap()
        .is_empty());
    let (meas, s) = compile_stabilizer_meas(&zero, &d, &opts).unwrap();
    assert!(meas.is_empty());
    assert!(s.is_zero());
}

#[test]
fn bell_state_prep_and_meas() {
    let d = DeviceSpec::ring(2, GateSet::Hpi);
    let opts = CompileOptions::default();
    let bell = StabilizerState::from_generators(vec!["XX".parse().unwrap(), "ZZ".parse().unwrap()])
        .unwrap();
    let prep = compile_stabilizer_prep(&bell, &d, &opts).unwrap();
    let zero = StabilizerState::zero(2);
    assert_eq!(
        zero.apply_clifford(&circuit_to_clifford(&prep, &d).unwrap())
            .unwrap(),
        bell
    );
    let (meas, s) = compile_stabilizer_meas(&bell, &d, &opts).unwrap();
    let out = bell
        .apply_clifford(&circuit_to_clifford(&meas, &d).unwrap())
        .unwrap();
    assert_eq!(out.as_basis_state(), Some(s));
}

#[test]
fn stabilizer_round_trip_random() {
    let mut rng = rng_from_seed(15);
    let opts = CompileOptions {
        trials: 2,
        ..Default::default()
    };
    for n in 1..=6 {
        for d in devices(n) {
            for _ in 0..40 {
                let psi = sample_stabilizer_state_uniform(n, &mut rng);
                let prep = compile_stabilizer_prep(&psi, &d, &opts).unwrap();
                assert!(respects_edges(&prep, &d));
                let zero = StabilizerState::zero(n);
                assert_eq!(
                    zero.apply_clifford(&circuit_to_clifford(&prep, &d).unwrap())
                        .unwrap(),
                    psi
                );

                let (meas, s) = compile_stabilizer_meas(&psi, &d, &opts).unwrap();
                assert!(respects_edges(&meas, &d));
                let out = psi
                    .apply_clifford(&circuit_to_clifford(&meas, &d).unwrap())
                    .unwrap();
                assert_eq!(out.as_basis_state(), Some(s.clone()));

                let mut full = prep.clone();
                full.append(&meas).unwrap();
                let end = zero.apply_clifford(&full.to_clifford()).unwrap();
                assert_eq!(end, StabilizerState::basis(&s));

                let frame: PauliOp = sample_pauli_uniform(n, &mut rng);
                let (fm, fs) = compile_stabilizer_meas_framed(&psi, &frame, &d, &opts).unwrap();
                let out = psi.apply_clifford(&fm.to_clifford()).unwrap();
                assert_eq!(out.as_basis_state(), Some(fs));
            }
        }
    }
}

#[test]
fn stabilizer_prep_crosstalk5_device() {
    let mut rng = rng_from_seed(16);
    let d = DeviceSpec::crosstalk5();
    let opts = CompileOptions::default();
    for _ in 0..500 {
        let psi = sample_stabilizer_state_uniform(5, &mut rng);
        let prep = compile_stabilizer_prep(&psi, &d, &opts).unwrap();
        assert!(respects_edges(&prep, &d));
        prep.check_gate_set(GateSet::Hpi).unwrap();
        assert_eq!(
            StabilizerState::zero(5)
                .apply_clifford(&prep.to_clifford())
                .unwrap(),
            psi
        );
    }
}
