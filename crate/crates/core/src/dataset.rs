//! Per-circuit success counts and their JSON-lines form.
//!
//! The file starts with an optional `{"provenance": {...}}` line followed by
//! one row object per circuit.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub circuit_id: String,
    pub m: usize,
    /// Ideal outcome, qubit 0 first.
    pub target: String,
    pub shots: u64,
    pub successes: u64,
    /// Most frequent outcomes (at most 64).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dataset {
    pub provenance: Option<Provenance>,
    pub rows: Vec<DatasetRow>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    provenance: Provenance,
}

impl Dataset {
    /// Qubit count implied by the targets.
    pub fn num_qubits(&self) -> Option<usize> {
        self.rows.first().map(|r| r.target.len())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_qubits();
        for (i, r) in self.rows.iter().enumerate() {
            if r.successes > r.shots {
                return Err(Error::Parse(format!("rows[{i}]: successes exceed shots")));
            }
            if Some(r.target.len()) != n || r.target.chars().any(|c| c != '0' && c != '1') {
                return Err(Error::Parse(format!(
                    "rows[{i}]: malformed target `{}`",
                    r.target
                )));
            }
        }
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        if let Some(p) = &self.provenance {
            serde_json::to_writer(
                &mut w,
                &Header {
                    provenance: p.clone(),
                },
            )?;
            w.write_all(b"\n")?;
        }
        for r in &self.rows {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self> {
        let mut ds = Dataset::default();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: serde_json::Value = serde_json::from_str(line)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if value.get("provenance").is_some() {
                let h: Header = serde_json::from_value(value)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                ds.provenance = Some(h.provenance);
            } else {
                let row: DatasetRow = serde_json::from_value(value)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                ds.rows.push(row);
            }
        }
        ds.validate()?;
        Ok(ds)
    }

    pub fn from_jsonl_str(s: &str) -> Result<Self> {
        Self::read_jsonl(s.as_bytes())
    }
}
