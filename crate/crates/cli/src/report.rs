use std::fmt::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use drbench_core::formats::{AnalysisResults, ResultsFile};

use crate::analyze::RESULTS;
use crate::failure::{Failure, ResultExt};
use crate::manifest;
use crate::svg::decay_plot;
use crate::ReportArgs;

fn results_path(p: &Path) -> PathBuf {
    if p.is_dir() {
        p.join(RESULTS)
    } else {
        p.to_path_buf()
    }
}

pub fn summary_table(files: &[(String, ResultsFile)]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<24} {:>3} {:>10} {:>10} {:>9} {:>8} {:>8}  flags",
        "run", "n", "r", "2sd", "p", "A", "B"
    );
    for (source, file) in files {
        for run in &file.runs {
            let f = &run.fit;
            let two_sd = f
                .intervals
                .as_ref()
                .map_or("-".to_string(), |iv| format!("{:.6}", 2.0 * iv.r_sd));
            let mut flags = vec![];
            if f.diagnostics.degenerate {
                flags.push("degenerate");
            }
            if f.diagnostics.clamped {
                flags.push("clamped");
            }
            let name = run.label.clone().unwrap_or_else(|| source.clone());
            let _ = writeln!(
                s,
                "{:<24} {:>3} {:>10.6} {:>10} {:>9.6} {:>8.4} {:>8.4}  {}",
                name,
                f.n,
                f.r,
                two_sd,
                f.p,
                f.a,
                f.b,
                flags.join(",")
            );
        }
        if let Some(d) = &file.decomposition {
            let _ = writeln!(s, "\ndecomposition ({source}):");
            for (k, (e, sd)) in d
                .categories
                .eps
                .iter()
                .zip(&d.categories.eps_sd)
                .enumerate()
            {
                let _ = writeln!(s, "  category {k}: eps = {e:.6} ± {:.6}", 2.0 * sd);
            }
            if let Some(bb) = &d.building_blocks {
                let _ = writeln!(
                    s,
                    "  eps_local = {:.6} ± {:.6}",
                    bb.eps_local,
                    2.0 * bb.eps_local_sd
                );
                let _ = writeln!(
                    s,
                    "  eps_cnot  = {:.6} ± {:.6}",
                    bb.eps_cnot,
                    2.0 * bb.eps_cnot_sd
                );
                if bb.flagged {
                    let _ = writeln!(s, "  warning: some building-block rate lies outside [0, 1]");
                }
            }
        }
    }
    s
}

pub fn run(args: &ReportArgs) -> Result<(), Failure> {
    let mut files = Vec::new();
    for p in &args.runs {
        let path = results_path(p);
        if !path.is_file() {
            return Err(Failure::analysis(anyhow!(
                "{}: results not found",
                path.display()
            )));
        }
        let text =
            std::fs::read_to_string(&path).runtime_ctx(format!("reading {}", path.display()))?;
        let file: ResultsFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))
            .analysis()?;
        files.push((p.display().to_string(), file));
    }
    let out = match &args.out {
        Some(o) => o.clone(),
        None if args.runs[0].is_dir() => args.runs[0].clone(),
        None => args.runs[0]
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default(),
    };
    std::fs::create_dir_all(&out).runtime_ctx(format!("creating {}", out.display()))?;

    let table = summary_table(&files);
    manifest::write_file(&out.join("summary.txt"), table.as_bytes())?;
    let runs: Vec<&AnalysisResults> = files.iter().flat_map(|(_, f)| &f.runs).collect();
    manifest::write_file(&out.join("decay.svg"), decay_plot(&runs).as_bytes())?;
    print!("{table}");
    Ok(())
}
