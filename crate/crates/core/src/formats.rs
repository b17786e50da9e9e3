//! Text and JSON file formats for circuits, fit results and plot data.
//!
//! A circuit file is UTF-8 text with `# key=value` header lines followed by
//! one layer per line (`CNOT 0,1; C17 2; C03 3`, or `-` for an empty
//! layer). The `prep_layers`, `core_layers` and `meas_layers` headers say
//! how the layer lines split into the three sections.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{BuildingBlockRates, CategoryRates, DecayFit, LengthSummary};
use crate::bits::BitVec;
use crate::circuit::{Circuit, Layer};
use crate::error::{Error, Result};
use crate::pauli::PauliOp;
use crate::protocols::{BenchmarkCircuit, Protocol};

/// Serializes a benchmark circuit to the circuit file format.
pub fn write_circuit_file(c: &BenchmarkCircuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# id={}", c.id);
    let _ = writeln!(s, "# protocol={}", c.protocol);
    let _ = writeln!(s, "# n={}", c.num_qubits());
    let _ = writeln!(s, "# m={}", c.m);
    let _ = writeln!(s, "# target={}", c.target);
    let _ = writeln!(s, "# seed={}", c.seed);
    let _ = writeln!(s, "# prep_layers={}", c.prep.depth());
    let _ = writeln!(s, "# core_layers={}", c.core.depth());
    let _ = writeln!(s, "# meas_layers={}", c.meas.depth());
    if !c.frames.is_empty() {
        let frames: Vec<String> = c.frames.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "# frames={}", frames.join(","));
    }
    if !c.frame_layers.is_empty() {
        let idx: Vec<String> = c.frame_layers.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "# frame_layers={}", idx.join(","));
    }
    for l in c
        .prep
        .layers()
        .iter()
        .chain(c.core.layers())
        .chain(c.meas.layers())
    {
        let _ = writeln!(s, "{l}");
    }
    s
}

/// Parses the circuit file format.
pub fn parse_circuit_file(text: &str) -> Result<BenchmarkCircuit> {
    let mut headers: BTreeMap<String, String> = BTreeMap::new();
    let mut layers = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(h) = line.strip_prefix('#') {
            let (k, v) = h
                .trim()
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {lineno}: header without `=`")))?;
            headers.insert(k.trim().to_string(), v.trim().to_string());
        } else if !line.trim().is_empty() {
            layers.push(
                Layer::parse_line(line).map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?,
            );
        }
    }
    let get = |k: &str| {
        headers
            .get(k)
            .map(String::as_str)
            .ok_or_else(|| Error::Parse(format!("missing header `{k}`")))
    };
    let num = |k: &str| -> Result<usize> {
        get(k)?
            .parse()
            .map_err(|_| Error::Parse(format!("header `{k}`: not a number")))
    };
    let n = num("n")?;
    let (np, nc, nm) = (
        num("prep_layers")?,
        num("core_layers")?,
        num("meas_layers")?,
    );
    if np + nc + nm != layers.len() {
        return Err(Error::Parse(format!(
            "headers declare {} layers, found {}",
            np + nc + nm,
            layers.len()
        )));
    }
    let meas = layers.split_off(np + nc);
    let core = layers.split_off(np);
    let target: BitVec = get("target")?.parse()?;
    if target.len() != n {
        return Err(Error::Parse(format!(
            "target has {} bits for n={n}",
            target.len()
        )));
    }
    let frames = match headers.get("frames") {
        Some(v) if !v.is_empty() => v
            .split(',')
            .map(str::parse::<PauliOp>)
            .collect::<Result<Vec<_>>>()?,
        _ => Vec::new(),
    };
    let frame_layers = match headers.get("frame_layers") {
        Some(v) if !v.is_empty() => v
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("frame_layers: bad index `{x}`")))
            })
            .collect::<Result<Vec<usize>>>()?,
        _ => Vec::new(),
    };
    Ok(BenchmarkCircuit {
        id: get("id")?.to_string(),
        protocol: get("protocol")?.parse()?,
        m: num("m")?,
        prep: Circuit::from_layers(n, layers)?,
        core: Circuit::from_layers(n, core)?,
        meas: Circuit::from_layers(n, meas)?,
        target,
        seed: get("seed")?
            .parse()
            .map_err(|_| Error::Parse("header `seed`: not a number".into()))?,
        frames,
        frame_layers,
    })
}

/// One row of the plot CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub m: usize,
    pub p_m: f64,
    pub quantiles: [f64; 5],
    pub fitted: f64,
}

pub const PLOT_QUANTILES: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];
pub const PLOT_HEADER: &str = "m,P_m,q05,q25,q50,q75,q95,fitted";

pub fn plot_rows(summary: &BTreeMap<usize, LengthSummary>, fit: &DecayFit) -> Vec<PlotRow> {
    summary
        .iter()
        .map(|(&m, s)| PlotRow {
            m,
            p_m: s.mean,
            quantiles: PLOT_QUANTILES.map(|q| s.quantile(q)),
            fitted: fit.predict(m),
        })
        .collect()
}

pub fn write_plot_csv(rows: &[PlotRow]) -> String {
    let mut s = String::from(PLOT_HEADER);
    s.push('\n');
    for r in rows {
        let _ = write!(s, "{},{}", r.m, r.p_m);
        for q in r.quantiles {
            let _ = write!(s, ",{q}");
        }
        let _ = writeln!(s, ",{}", r.fitted);
    }
    s
}

pub fn parse_plot_csv(text: &str) -> Result<Vec<PlotRow>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(PLOT_HEADER) {
        return Err(Error::Parse(format!(
            "plot CSV must start with `{PLOT_HEADER}`"
        )));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            let bad = || Error::Parse(format!("plot CSV row {}: malformed", i + 1));
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 8 {
                return Err(bad());
            }
            let x = |j: usize| f[j].trim().parse::<f64>().map_err(|_| bad());
            Ok(PlotRow {
                m: f[0].trim().parse().map_err(|_| bad())?,
                p_m: x(1)?,
                quantiles: [x(2)?, x(3)?, x(4)?, x(5)?, x(6)?],
                fitted: x(7)?,
            })
        })
        .collect()
}

/// Category decomposition across several analyzed datasets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub mixing: Vec<Vec<f64>>,
    pub r: Vec<f64>,
    pub r_sd: Vec<f64>,
    pub categories: CategoryRates,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub building_blocks: Option<BuildingBlockRates>,
}

/// The results JSON written by the analyzer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisResults {
    /// Name of the analyzed dataset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub protocol: Option<Protocol>,
    #[serde(flatten)]
    pub fit: DecayFit,
    /// Mean success per length.
    pub success: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset_digest: Option<String>,
}

/// Results for one or more datasets, plus the decomposition when requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultsFile {
    pub runs: Vec<AnalysisResults>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
}
