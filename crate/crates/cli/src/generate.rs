use anyhow::Context;
use drbench_core::formats::write_circuit_file;
use drbench_core::protocols::generate_experiment;

use crate::config::load_design;
use crate::failure::{Failure, ResultExt};
use crate::manifest::{self, circuit_path, digest, RunManifest, Step, CIRCUIT_DIR};
use crate::GenerateArgs;

pub fn run(args: &GenerateArgs) -> Result<(), Failure> {
    let mut step = Step::start("generate");
    let design = load_design(&args.config)?;
    let config_text = std::fs::read(&args.config).runtime()?;
    step.inputs
        .insert(args.config.display().to_string(), digest(&config_text));
    step.parameters
        .insert("seed".into(), design.seed.to_string());

    let exp = generate_experiment(&design)
        .context("generation")
        .runtime()?;

    let dir = args.out.join(CIRCUIT_DIR);
    std::fs::create_dir_all(&dir).runtime_ctx(format!("creating {}", dir.display()))?;
    for c in &exp.circuits {
        let rel = circuit_path(&c.id);
        let text = write_circuit_file(c);
        manifest::write_file(&args.out.join(&rel), text.as_bytes())?;
        step.outputs.insert(rel, digest(text.as_bytes()));
    }
    let manifest = RunManifest {
        tool: "drbench".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: design.seed,
        experiment: exp.manifest,
        steps: vec![step.finish()],
    };
    manifest::write(&args.out, &manifest)?;
    println!(
        "wrote {} circuits ({} qubits, {}) to {}",
        exp.circuits.len(),
        design.num_qubits(),
        design.protocol,
        args.out.display()
    );
    Ok(())
}
