use anyhow::{anyhow, Context};
use drbench_core::formats::parse_circuit_file;
use drbench_core::rng::derive_seed;
use drbench_core::sim::{run_experiment, SimConfig};

use crate::config::{env_seed, load_model};
use crate::failure::{Failure, ResultExt};
use crate::manifest::{self, circuit_path, digest, Step};
use crate::SimulateArgs;

pub const DATASET: &str = "dataset.jsonl";

pub fn run(args: &SimulateArgs) -> Result<(), Failure> {
    let mut step = Step::start("simulate");
    let mut run_manifest = manifest::read(&args.run)?;
    let exp = &run_manifest.experiment;
    let design = &exp.design;
    let model = load_model(&args.model, exp.n)?;
    model
        .check_covers(&design.device)
        .with_context(|| format!("model `{}`", args.model))
        .runtime()?;

    let generated = run_manifest
        .steps
        .iter()
        .find(|s| s.subcommand == "generate");
    let mut circuits = Vec::with_capacity(exp.circuits.len());
    for entry in &exp.circuits {
        let rel = circuit_path(&entry.id);
        let path = args.run.join(&rel);
        let text =
            std::fs::read_to_string(&path).runtime_ctx(format!("reading {}", path.display()))?;
        let d = digest(text.as_bytes());
        if let Some(expected) = generated.and_then(|g| g.outputs.get(&rel)) {
            if *expected != d {
                return Err(Failure::runtime(anyhow!(
                    "{rel}: digest does not match the manifest"
                )));
            }
        }
        let c = parse_circuit_file(&text)
            .with_context(|| rel.clone())
            .runtime()?;
        step.inputs.insert(rel, d);
        circuits.push(c);
    }
    if std::path::Path::new(&args.model).exists() {
        let bytes = std::fs::read(&args.model).runtime()?;
        step.inputs.insert(args.model.clone(), digest(&bytes));
    }

    let seed = match (args.seed, env_seed()?) {
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => derive_seed(run_manifest.seed, "simulate"),
    };
    let shots = args.shots.unwrap_or(design.shots);
    if shots == 0 {
        return Err(Failure::config(anyhow!("--shots: must be at least 1")));
    }
    let config = SimConfig {
        shots,
        seed,
        histogram: args.histogram,
    };
    let mut dataset = run_experiment(&circuits, &model, &config)
        .context("simulation")
        .runtime()?;
    if let Some(p) = dataset.provenance.as_mut() {
        p.design_digest = Some(exp.design_digest.clone());
    }
    let text = dataset.to_jsonl_string();
    manifest::write_file(&args.run.join(DATASET), text.as_bytes())?;

    step.parameters.insert("model".into(), args.model.clone());
    step.parameters
        .insert("model_digest".into(), model.digest());
    step.parameters.insert("seed".into(), seed.to_string());
    step.parameters.insert("shots".into(), shots.to_string());
    step.outputs.insert(DATASET.into(), digest(text.as_bytes()));
    run_manifest.steps.push(step.finish());
    manifest::write(&args.run, &run_manifest)?;
    println!(
        "simulated {} circuits x {shots} shots into {}",
        circuits.len(),
        args.run.join(DATASET).display()
    );
    Ok(())
}
