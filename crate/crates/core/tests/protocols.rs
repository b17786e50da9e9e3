use std::collections::HashSet;

use drbench_core::formats::{parse_circuit_file, write_circuit_file};
use drbench_core::protocols::{
    circuit_id, generate_crb_circuit, generate_drb_circuit, generate_experiment, ExperimentDesign,
    Protocol, DEFAULT_CIRCUITS_PER_LENGTH, DEFAULT_SHOTS,
};
use drbench_core::sampling::{GatePool, SamplerSpec};
use drbench_core::{circuit_to_clifford, Circuit, DeviceSpec, Gate, GateSet};

fn small_drb(seed: u64) -> ExperimentDesign {
    let mut d = ExperimentDesign::drb(
        DeviceSpec::ring(4, GateSet::Hpi),
        SamplerSpec::p_cnot(0.5, GatePool::Hpi),
    );
    d.lengths = vec![0, 3, 7];
    d.circuits_per_length = 4;
    d.seed = seed;
    d
}

fn small_crb(seed: u64) -> ExperimentDesign {
    let mut d = ExperimentDesign::crb(DeviceSpec::line(3, GateSet::C24));
    d.lengths = vec![0, 1, 3];
    d.circuits_per_length = 3;
    d.seed = seed;
    d
}

fn respects_device(c: &Circuit, d: &DeviceSpec) -> bool {
    c.gates().all(|g| {
        d.gate_set().contains(g.gate)
            && (g.gate != Gate::Cnot || d.has_edge(g.targets[0], g.targets[1]))
    })
}

#[test]
fn default_design_matches_the_reference_envelope() {
    let d = ExperimentDesign::drb(
        DeviceSpec::crosstalk5(),
        SamplerSpec::p_cnot(0.25, GatePool::Hpi),
    );
    assert_eq!(d.lengths, vec![0, 5, 10, 15, 20, 25, 30]);
    assert_eq!(d.circuits_per_length, DEFAULT_CIRCUITS_PER_LENGTH);
    assert_eq!(d.circuits_per_length, 28);
    assert_eq!(d.shots, DEFAULT_SHOTS);
    assert_eq!(d.shots, 1024);
}

#[test]
fn experiment_counts_and_ids() {
    for design in [small_drb(1), small_crb(1)] {
        let exp = generate_experiment(&design).unwrap();
        let expected = design.lengths.len() * design.circuits_per_length;
        assert_eq!(exp.circuits.len(), expected);
        assert_eq!(exp.manifest.circuits.len(), expected);
        let ids: HashSet<_> = exp.circuits.iter().map(|c| c.id.clone()).collect();
        assert_eq!(ids.len(), expected);
        assert_eq!(exp.circuits[0].id, circuit_id(design.lengths[0], 0));
        for (c, e) in exp.circuits.iter().zip(&exp.manifest.circuits) {
            assert_eq!((c.id.as_str(), c.m, c.seed), (e.id.as_str(), e.m, e.seed));
            assert_eq!(c.target.to_string(), e.target);
        }
        assert_eq!(exp.manifest.design_digest, design.digest());
    }
}

#[test]
fn generation_is_deterministic() {
    let a = generate_experiment(&small_drb(9)).unwrap();
    let b = generate_experiment(&small_drb(9)).unwrap();
    let c = generate_experiment(&small_drb(10)).unwrap();
    assert_eq!(a.circuits, b.circuits);
    assert_eq!(a.manifest, b.manifest);
    assert_ne!(a.circuits, c.circuits);
    // Each circuit can be regenerated on its own.
    let design = small_drb(9);
    let one = generate_drb_circuit(&design, 7, 2).unwrap();
    assert!(a.circuits.contains(&one));
    let crb = small_crb(4);
    let exp = generate_experiment(&crb).unwrap();
    assert!(exp
        .circuits
        .contains(&generate_crb_circuit(&crb, 3, 1).unwrap()));
    assert!(generate_crb_circuit(&design, 3, 1).is_err());
}

#[test]
fn drb_circuits_are_well_formed() {
    let design = small_drb(3);
    let exp = generate_experiment(&design).unwrap();
    for c in &exp.circuits {
        assert_eq!(c.protocol, Protocol::Drb);
        assert_eq!(c.core.depth(), c.m);
        assert!(respects_device(&c.full_circuit(), &design.device));
        for layer in c.core.layers() {
            assert!(layer.cnot_count() <= 1);
            let mut covered: Vec<usize> =
                layer.gates.iter().flat_map(|g| g.targets.clone()).collect();
            covered.sort_unstable();
            assert_eq!(covered, vec![0, 1, 2, 3]);
            assert!(layer
                .gates
                .iter()
                .all(|g| matches!(g.gate, Gate::I | Gate::H | Gate::P | Gate::Cnot)));
        }
        c.verify(&design.device).unwrap();
    }
}

#[test]
fn crb_circuits_invert_to_identity() {
    let design = small_crb(5);
    let exp = generate_experiment(&design).unwrap();
    for c in &exp.circuits {
        assert!(c.target.is_zero());
        assert!(c.prep.is_empty() && c.meas.is_empty());
        let total = circuit_to_clifford(&c.core, &design.device).unwrap();
        assert!(total.acts_trivially(), "{}", c.id);
    }
    let summary = &exp.manifest.compile_summary;
    assert_eq!(
        summary.count,
        exp.circuits.iter().map(|c| c.m + 1).sum::<usize>()
    );
    assert!(summary.mean_cnot_count > 0.0);
}

#[test]
fn folded_frames_keep_the_core_intact() {
    let mut design = small_drb(8);
    design.frame_randomization = true;
    let plain = generate_experiment(&small_drb(8)).unwrap();
    let framed = generate_experiment(&design).unwrap();
    for c in &framed.circuits {
        assert_eq!(c.frames.len(), c.m);
        assert!(c.frame_layers.is_empty());
        assert_eq!(c.core.depth(), c.m);
        c.verify(&design.device).unwrap();
    }
    // Frames change the measurement and usually the target.
    let differing = framed
        .circuits
        .iter()
        .zip(&plain.circuits)
        .filter(|(a, b)| a.m > 0 && a.meas != b.meas)
        .count();
    assert!(differing > 0);
}

#[test]
fn physical_frames_only_add_paulis() {
    let mut design = small_drb(11);
    design.frame_randomization = true;
    design.physical_frame = true;
    let exp = generate_experiment(&design).unwrap();
    for c in &exp.circuits {
        assert_eq!(c.frames.len(), c.m);
        let stripped = c.stripped_core();
        assert_eq!(stripped.depth(), c.m);
        // Pauli layers leave the symplectic part unchanged.
        assert_eq!(
            stripped.to_clifford().symplectic(),
            c.core.to_clifford().symplectic()
        );
        for &i in &c.frame_layers {
            assert_eq!(c.core.layers()[i].cnot_count(), 0);
        }
        c.verify(&design.device).unwrap();
    }
}

#[test]
fn design_validation_messages() {
    let cases: Vec<(Box<dyn Fn(&mut ExperimentDesign)>, &str)> = vec![
        (Box::new(|d| d.lengths.clear()), "lengths"),
        (Box::new(|d| d.lengths = vec![0, 5, 5]), "lengths[2]"),
        (
            Box::new(|d| d.circuits_per_length = 0),
            "circuits_per_length",
        ),
        (Box::new(|d| d.shots = 0), "shots"),
        (Box::new(|d| d.physical_frame = true), "physical_frame"),
        (
            Box::new(|d| d.sampler = Some(SamplerSpec::p_cnot(1.5, GatePool::Hpi))),
            "sampler.p_cnot",
        ),
        (
            Box::new(|d| d.sampler = Some(SamplerSpec::p_cnot(0.0, GatePool::Hpi))),
            "sampler",
        ),
        (
            Box::new(|d| {
                d.sampler = Some(SamplerSpec::p_cnot(0.5, GatePool::Custom(vec![Gate::H])))
            }),
            "sampler.pool",
        ),
    ];
    for (edit, field) in cases {
        let mut d = small_drb(0);
        edit(&mut d);
        let msg = d.validate().unwrap_err().to_string();
        assert!(msg.contains(field), "{msg} should mention {field}");
    }
    let mut d = small_crb(0);
    d.sampler = Some(SamplerSpec::p_cnot(0.5, GatePool::Hpi));
    assert!(d.validate().unwrap_err().to_string().contains("sampler"));
}

#[test]
fn designs_round_trip_through_json() {
    let mut d = small_drb(12);
    d.frame_randomization = true;
    let json = serde_json::to_string(&d).unwrap();
    let back: ExperimentDesign = serde_json::from_str(&json).unwrap();
    assert_eq!(back, d);
    assert_eq!(back.digest(), d.digest());
    let minimal: ExperimentDesign = serde_json::from_str(
        r#"{"protocol": "DRB", "device": {"n": 2, "edges": [[0, 1]], "gate_set": "HPI"},
            "sampler": {"kind": "p_cnot", "p_cnot": 0.75}}"#,
    )
    .unwrap();
    assert_eq!(minimal.lengths, vec![0, 5, 10, 15, 20, 25, 30]);
    minimal.validate().unwrap();
}

#[test]
fn circuit_files_round_trip() {
    let mut framed = small_drb(13);
    framed.frame_randomization = true;
    let mut physical = framed.clone();
    physical.physical_frame = true;
    for design in [small_drb(13), small_crb(13), framed, physical] {
        for c in generate_experiment(&design).unwrap().circuits {
            let text = write_circuit_file(&c);
            assert!(text.starts_with(&format!("# id={}\n", c.id)));
            assert!(text.contains(&format!("# target={}\n", c.target)));
            assert_eq!(parse_circuit_file(&text).unwrap(), c);
        }
    }
}

#[test]
fn circuit_file_errors() {
    let c = generate_drb_circuit(&small_drb(1), 3, 0).unwrap();
    let text = write_circuit_file(&c);
    let missing = text.replace(&format!("# seed={}\n", c.seed), "");
    assert!(parse_circuit_file(&missing)
        .unwrap_err()
        .to_string()
        .contains("seed"));
    let extra = format!("{text}H 0\n");
    assert!(parse_circuit_file(&extra)
        .unwrap_err()
        .to_string()
        .contains("layers"));
    let bad = text.replace("# n=4", "# n=2");
    assert!(parse_circuit_file(&bad).is_err());
}
