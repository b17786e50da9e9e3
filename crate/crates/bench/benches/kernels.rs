use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use drbench_bench::{decay_dataset, drb_circuit};
use drbench_core::analysis::{analyze_dataset, average_success, decay_points, fit_decay};
use drbench_core::compile::{compile_clifford, compile_stabilizer_prep, CompileOptions};
use drbench_core::rng::rng_from_seed;
use drbench_core::sampling::{
    sample_clifford_uniform, sample_stabilizer_state_uniform, sample_symplectic_uniform,
};
use drbench_core::sim::{build_model_main_sim, Program};
use drbench_core::{DeviceSpec, GateSet};

fn gf2(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2");
    for n in [5, 20, 50] {
        let m = sample_symplectic_uniform(n, &mut rng_from_seed(1));
        group.bench_with_input(BenchmarkId::new("mul", 2 * n), &m, |b, m| {
            b.iter(|| black_box(m.mul(m)))
        });
        group.bench_with_input(BenchmarkId::new("inverse", 2 * n), &m, |b, m| {
            b.iter(|| black_box(m.inverse()))
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampling");
    for n in [2, 5, 20] {
        let mut rng = rng_from_seed(2);
        group.bench_function(BenchmarkId::new("clifford", n), |b| {
            b.iter(|| black_box(sample_clifford_uniform(n, &mut rng)))
        });
        group.bench_function(BenchmarkId::new("stabilizer_state", n), |b| {
            b.iter(|| black_box(sample_stabilizer_state_uniform(n, &mut rng)))
        });
    }
    group.finish();
}

fn compilation(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile");
    let opts = CompileOptions::default();
    for n in [3, 5, 10] {
        let device = DeviceSpec::ring(n, GateSet::Hpi);
        let mut rng = rng_from_seed(4);
        let cliffords: Vec<_> = (0..16)
            .map(|_| sample_clifford_uniform(n, &mut rng))
            .collect();
        let states: Vec<_> = (0..16)
            .map(|_| sample_stabilizer_state_uniform(n, &mut rng))
            .collect();
        group.bench_function(BenchmarkId::new("clifford_ring", n), |b| {
            let mut i = 0;
            b.iter(|| {
                i = (i + 1) % cliffords.len();
                black_box(compile_clifford(&cliffords[i], &device, &opts).unwrap())
            })
        });
        group.bench_function(BenchmarkId::new("stabilizer_prep_ring", n), |b| {
            let mut i = 0;
            b.iter(|| {
                i = (i + 1) % states.len();
                black_box(compile_stabilizer_prep(&states[i], &device, &opts).unwrap())
            })
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_shot");
    for (n, m) in [(5, 30), (20, 100)] {
        let circ = drb_circuit(n, m);
        let program = Program::new(&circ, &build_model_main_sim(n)).unwrap();
        let mut rng = rng_from_seed(5);
        group.bench_function(BenchmarkId::new(format!("n{n}"), m), |b| {
            b.iter(|| black_box(program.run_shot(&mut rng)))
        });
    }
    group.finish();
}

fn analysis(c: &mut Criterion) {
    let lengths: Vec<usize> = (0..=30).step_by(5).collect();
    let ds = decay_dataset(&lengths, 28, 1024);
    let points = decay_points(&average_success(&ds).unwrap());
    c.bench_function("fit_decay", |b| {
        b.iter(|| black_box(fit_decay(&points, 2).unwrap()))
    });
    let mut group = c.benchmark_group("bootstrap");
    group.sample_size(10);
    group.bench_function("1000_resamples", |b| {
        b.iter(|| black_box(analyze_dataset(&ds, 1000, 0).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, gf2, sampling, compilation, simulation, analysis);
criterion_main!(benches);
