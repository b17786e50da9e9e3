//! The run manifest: resolved config, seeds, file digests and timestamps.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use anyhow::Context;
use drbench_core::protocols::ExperimentManifest;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::failure::{Failure, ResultExt};

pub const MANIFEST: &str = "manifest.json";
pub const CIRCUIT_DIR: &str = "circuits";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub experiment: ExperimentManifest,
    pub steps: Vec<Step>,
}

/// One subcommand invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub subcommand: String,
    pub started: String,
    pub finished: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
    /// Paths relative to the run directory mapped to SHA-256 digests.
    #[serde(default)]
    pub inputs: BTreeMap<String, String>,
    #[serde(default)]
    pub outputs: BTreeMap<String, String>,
}

impl Step {
    pub fn start(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.into(),
            started: now(),
            finished: String::new(),
            parameters: BTreeMap::new(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn finish(mut self) -> Self {
        self.finished = now();
        self
    }
}

pub fn now() -> String {
    humantime::format_rfc3339_seconds(SystemTime::now()).to_string()
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn circuit_path(id: &str) -> String {
    format!("{CIRCUIT_DIR}/{id}.txt")
}

pub fn manifest_path(run: &Path) -> PathBuf {
    run.join(MANIFEST)
}

pub fn read(run: &Path) -> Result<RunManifest, Failure> {
    let path = manifest_path(run);
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading {}", path.display()))
        .runtime()?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .runtime()
}

pub fn write(run: &Path, manifest: &RunManifest) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(manifest).runtime()?;
    text.push('\n');
    write_file(&manifest_path(run), text.as_bytes())
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).runtime_ctx(format!("writing {}", path.display()))
}
