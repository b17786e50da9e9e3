use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use drbench_core::analysis::{
    analyze_dataset, extract_building_block_rates, solve_category_rates, RateSystem,
};
use drbench_core::dataset::Dataset;
use drbench_core::formats::{
    plot_rows, write_plot_csv, AnalysisResults, Decomposition, ResultsFile,
};
use drbench_core::Error;

use crate::config::{env_seed, parse_json, read_text};
use crate::failure::{Failure, ResultExt};
use crate::manifest::{self, digest};
use crate::simulate::DATASET;
use crate::AnalyzeArgs;

pub const RESULTS: &str = "results.json";

fn dataset_path(p: &Path) -> PathBuf {
    if p.is_dir() {
        p.join(DATASET)
    } else {
        p.to_path_buf()
    }
}

/// The run directory name, or the file stem for a bare dataset file.
fn label(p: &Path) -> String {
    let name = if p.is_dir() {
        p.file_name()
    } else {
        p.file_stem()
    };
    name.map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

fn mixing_rows(args: &AnalyzeArgs, k: usize) -> Result<Option<Vec<Vec<f64>>>, Failure> {
    let rows = if let Some(ps) = &args.mixing {
        for (i, &p) in ps.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::config(anyhow!(
                    "--mixing[{i}]: {p} is not in [0, 1]"
                )));
            }
        }
        ps.iter().map(|&p| vec![p, 1.0 - p]).collect()
    } else if let Some(path) = &args.matrix {
        let rows: Vec<Vec<f64>> = parse_json(&read_text(path)?)
            .with_context(|| format!("matrix {}", path.display()))
            .config()?;
        rows
    } else {
        return Ok(None);
    };
    if rows.len() != k {
        return Err(Failure::config(anyhow!(
            "mixing: {} rows for {k} datasets",
            rows.len()
        )));
    }
    Ok(Some(rows))
}

pub fn run(args: &AnalyzeArgs) -> Result<(), Failure> {
    let mixing = mixing_rows(args, args.datasets.len())?;
    let one_qubit = args.one_qubit_column.or(args.mixing.as_ref().map(|_| 1));
    if one_qubit.is_some() && mixing.is_none() {
        return Err(Failure::config(anyhow!(
            "--one-qubit-column: requires --mixing or --matrix"
        )));
    }
    let seed = match (args.seed, env_seed()?) {
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => 0,
    };
    let out = match &args.out {
        Some(o) => o.clone(),
        None => {
            let first = &args.datasets[0];
            if first.is_dir() {
                first.clone()
            } else {
                first.parent().map(Path::to_path_buf).unwrap_or_default()
            }
        }
    };
    std::fs::create_dir_all(&out).runtime_ctx(format!("creating {}", out.display()))?;

    let mut runs = Vec::new();
    let mut plots = Vec::new();
    let mut problems = Vec::new();
    for p in &args.datasets {
        let path = dataset_path(p);
        let bytes = std::fs::read(&path).runtime_ctx(format!("reading {}", path.display()))?;
        let dataset = Dataset::read_jsonl(bytes.as_slice())
            .with_context(|| path.display().to_string())
            .config()?;
        let (summary, fit) = match analyze_dataset(&dataset, args.resamples, seed) {
            Ok(x) => x,
            Err(e @ (Error::Fit(_) | Error::InsufficientData(_))) => {
                return Err(Failure::analysis(
                    anyhow::Error::new(e).context(path.display().to_string()),
                ))
            }
            Err(e) => {
                return Err(Failure::config(
                    anyhow::Error::new(e).context(path.display().to_string()),
                ))
            }
        };
        if fit.diagnostics.degenerate {
            problems.push(format!(
                "{}: degenerate fit (all success probabilities equal)",
                path.display()
            ));
        }
        plots.push(write_plot_csv(&plot_rows(&summary, &fit)));
        let protocol = dataset
            .provenance
            .as_ref()
            .and_then(|p| p.protocol.as_deref())
            .and_then(|s| s.parse().ok());
        let success = summary.iter().map(|(&m, s)| (m, s.mean)).collect();
        let name = label(p);
        println!(
            "{name}: n={} r={:.6} p={:.6} A={:.4} B={:.4}{}",
            fit.n,
            fit.r,
            fit.p,
            fit.a,
            fit.b,
            fit.intervals
                .as_ref()
                .map_or(String::new(), |iv| format!(" r_sd={:.6}", iv.r_sd))
        );
        runs.push(AnalysisResults {
            label: Some(name),
            protocol,
            fit,
            success,
            dataset_digest: Some(digest(&bytes)),
        });
    }

    let decomposition = match (&mixing, problems.is_empty()) {
        (Some(rows), true) => Some(decompose(rows.clone(), &runs, one_qubit)?),
        _ => None,
    };
    let results = ResultsFile {
        runs,
        decomposition,
    };
    let mut text = serde_json::to_string_pretty(&results).runtime()?;
    text.push('\n');
    manifest::write_file(&out.join(RESULTS), text.as_bytes())?;
    if plots.len() == 1 {
        manifest::write_file(&out.join("plot.csv"), plots[0].as_bytes())?;
    } else {
        for (i, p) in plots.iter().enumerate() {
            manifest::write_file(&out.join(format!("plot_{}.csv", i + 1)), p.as_bytes())?;
        }
    }
    if let Some(d) = &results.decomposition {
        for (k, (e, sd)) in d
            .categories
            .eps
            .iter()
            .zip(&d.categories.eps_sd)
            .enumerate()
        {
            println!("category {k}: eps={e:.6} sd={sd:.6}");
        }
        if let Some(bb) = &d.building_blocks {
            println!("eps_local={:.6} sd={:.6}", bb.eps_local, bb.eps_local_sd);
            println!("eps_cnot={:.6} sd={:.6}", bb.eps_cnot, bb.eps_cnot_sd);
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::analysis(anyhow!("{}", problems.join("; "))))
    }
}

fn decompose(
    mixing: Vec<Vec<f64>>,
    runs: &[AnalysisResults],
    one_qubit: Option<usize>,
) -> Result<Decomposition, Failure> {
    let r: Vec<f64> = runs.iter().map(|x| x.fit.r).collect();
    let r_sd: Vec<f64> = runs
        .iter()
        .map(|x| x.fit.intervals.as_ref().map_or(0.0, |iv| iv.r_sd))
        .collect();
    let categories = solve_category_rates(&RateSystem {
        mixing: mixing.clone(),
        r: r.clone(),
        r_sd: r_sd.clone(),
    })
    .context("decomposition")
    .config()?;
    let building_blocks = match one_qubit {
        Some(col) => {
            let n = runs[0].fit.n;
            if runs.iter().any(|x| x.fit.n != n) {
                return Err(Failure::config(anyhow!(
                    "datasets: building-block rates need equal qubit counts"
                )));
            }
            Some(
                extract_building_block_rates(&categories, col, n)
                    .context("building blocks")
                    .config()?,
            )
        }
        None => None,
    };
    Ok(Decomposition {
        mixing,
        r,
        r_sd,
        categories,
        building_blocks,
    })
}
