//! Fixtures shared by the criterion benchmarks in `benches/`.

use drbench_core::dataset::{Dataset, DatasetRow};
use drbench_core::protocols::{generate_drb_circuit, BenchmarkCircuit, ExperimentDesign};
use drbench_core::rng::rng_from_seed;
use drbench_core::sampling::{GatePool, SamplerSpec};
use drbench_core::{DeviceSpec, GateSet};
use rand::Rng;

/// A DRB circuit on an `n`-qubit ring with `m` core layers.
pub fn drb_circuit(n: usize, m: usize) -> BenchmarkCircuit {
    let mut design = ExperimentDesign::drb(
        DeviceSpec::ring(n, GateSet::Hpi),
        SamplerSpec::p_cnot(0.5, GatePool::Hpi),
    );
    design.lengths = vec![m];
    design.seed = 1;
    generate_drb_circuit(&design, m, 0).expect("valid design")
}

/// Binomial counts around `0.25 + 0.75 · 0.97ᵐ` for a two-qubit decay.
pub fn decay_dataset(lengths: &[usize], circuits: usize, shots: u64) -> Dataset {
    let mut rng = rng_from_seed(3);
    let mut rows = Vec::new();
    for &m in lengths {
        let p = 0.25 + 0.75 * 0.97f64.powi(m as i32);
        for i in 0..circuits {
            let successes = (0..shots).filter(|_| rng.gen::<f64>() < p).count() as u64;
            rows.push(DatasetRow {
                circuit_id: format!("m{m}_c{i}"),
                m,
                target: "00".into(),
                shots,
                successes,
                histogram: None,
            });
        }
    }
    Dataset {
        provenance: None,
        rows,
    }
}
