//! Config and model loading with field-path error messages.

use std::path::Path;

use anyhow::{anyhow, Context};
use drbench_core::protocols::ExperimentDesign;
use drbench_core::sim::{build_model_crosstalk5, build_model_main_sim, ErrorModel};
use serde::de::DeserializeOwned;

use crate::failure::{Failure, ResultExt};

pub const SEED_VAR: &str = "DRBENCH_SEED";

/// The seed from `DRBENCH_SEED`, if set.
pub fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| {
            Failure::config(anyhow!("{SEED_VAR}: `{s}` is not a non-negative integer"))
        }),
        Err(_) => Ok(None),
    }
}

/// Parses JSON, naming the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> anyhow::Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let msg = inner.to_string();
        if let Some(field) = missing_field(&msg) {
            let full = if path == "." {
                field.to_string()
            } else {
                format!("{path}.{field}")
            };
            anyhow!("{full}: missing field")
        } else if path == "." {
            anyhow!("{msg}")
        } else {
            anyhow!("{path}: {msg}")
        }
    })
}

fn missing_field(msg: &str) -> Option<&str> {
    let rest = msg.strip_prefix("missing field `")?;
    rest.split('`').next()
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .config()
}

/// Loads and validates an experiment config; `DRBENCH_SEED` replaces its seed.
pub fn load_design(path: &Path) -> Result<ExperimentDesign, Failure> {
    let text = read_text(path)?;
    let mut design: ExperimentDesign = parse_json(&text)
        .with_context(|| format!("config {}", path.display()))
        .config()?;
    if let Some(seed) = env_seed()? {
        design.seed = seed;
    }
    design
        .validate()
        .map_err(|e| {
            anyhow!(
                "{}",
                e.to_string()
                    .trim_start_matches("invalid experiment design: ")
            )
        })
        .with_context(|| format!("config {}", path.display()))
        .config()?;
    Ok(design)
}

pub const BUNDLED_MODELS: [&str; 3] = ["crosstalk5", "main_sim", "ideal"];

/// A bundled model by name, or a model JSON file.
pub fn load_model(spec: &str, n: usize) -> Result<ErrorModel, Failure> {
    let model = match spec {
        "crosstalk5" => build_model_crosstalk5(),
        "main_sim" => build_model_main_sim(n),
        "ideal" => ErrorModel::ideal(n),
        path => {
            let path = Path::new(path);
            if !path.exists() {
                return Err(Failure::config(anyhow!(
                    "model: `{spec}` is neither a file nor one of {}",
                    BUNDLED_MODELS.join(", ")
                )));
            }
            let text = read_text(path)?;
            parse_json(&text)
                .with_context(|| format!("model {}", path.display()))
                .config()?
        }
    };
    model.validate().context("model").config()?;
    Ok(model)
}
