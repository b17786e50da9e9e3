use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const DRB5: &str = r#"{
  "protocol": "DRB",
  "device": {"n": 5, "edges": [[0,1],[1,2],[2,3],[3,0],[4,0],[4,1],[4,2],[4,3]], "gate_set": "HPI"},
  "sampler": {"kind": "p_cnot", "p_cnot": 0.25},
  "lengths": [0, 10, 20],
  "seed": 7
}"#;

fn small_config(n: usize, p_cnot: f64, seed: u64) -> String {
    let edges: Vec<String> = (0..n).map(|q| format!("[{q},{}]", (q + 1) % n)).collect();
    let edges = if n == 2 {
        "[[0,1]]".to_string()
    } else {
        format!("[{}]", edges.join(","))
    };
    format!(
        r#"{{"protocol": "DRB", "device": {{"n": {n}, "edges": {edges}, "gate_set": "HPI"}},
            "sampler": {{"kind": "p_cnot", "p_cnot": {p_cnot}}},
            "lengths": [0, 4, 8, 12, 16, 20], "circuits_per_length": 10, "shots": 200, "seed": {seed}}}"#
    )
}

fn drbench(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_drbench"));
    cmd.args(args).env_remove("DRBENCH_SEED");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("drbench runs")
}

fn ok(args: &[&str]) -> Output {
    let out = drbench(args, &[]);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn output_digests(run: &Path, step: usize) -> BTreeMap<String, String> {
    serde_json::from_value(json(&run.join("manifest.json"))["steps"][step]["outputs"].clone())
        .unwrap()
}

fn generate(dir: &Path, name: &str, config: &str) -> PathBuf {
    let cfg = write(dir, &format!("{name}.json"), config);
    let run = dir.join(name);
    ok(&["generate", "--config", s(&cfg), "--out", s(&run)]);
    run
}

#[test]
fn generate_writes_one_file_per_circuit() {
    let tmp = TempDir::new().unwrap();
    let run = generate(tmp.path(), "a", DRB5);
    assert_eq!(fs::read_dir(run.join("circuits")).unwrap().count(), 84);
    let digests = output_digests(&run, 0);
    assert_eq!(digests.len(), 84);
    let first = fs::read_to_string(run.join("circuits/m0000_c0000.txt")).unwrap();
    assert!(first.starts_with("# id=m0000_c0000\n# protocol=DRB\n# n=5\n# m=0\n"));
    let manifest = json(&run.join("manifest.json"));
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["experiment"]["design"]["shots"], 1024);
    assert_eq!(manifest["steps"][0]["subcommand"], "generate");
    assert!(manifest["steps"][0]["started"]
        .as_str()
        .unwrap()
        .ends_with('Z'));
}

#[test]
fn generation_is_reproducible_and_seed_overridable() {
    let tmp = TempDir::new().unwrap();
    let a = generate(tmp.path(), "a", DRB5);
    let b = generate(tmp.path(), "b", DRB5);
    assert_eq!(output_digests(&a, 0), output_digests(&b, 0));

    let cfg = tmp.path().join("a.json");
    let c = tmp.path().join("c");
    let out = drbench(
        &["generate", "--config", s(&cfg), "--out", s(&c)],
        &[("DRBENCH_SEED", "99")],
    );
    assert!(out.status.success());
    assert_eq!(json(&c.join("manifest.json"))["seed"], 99);
    assert_ne!(output_digests(&a, 0), output_digests(&c, 0));

    let bad = drbench(
        &["generate", "--config", s(&cfg), "--out", s(&c)],
        &[("DRBENCH_SEED", "x")],
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("DRBENCH_SEED"));
}

#[test]
fn config_errors_name_the_field() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        (
            DRB5.replace(
                r#""edges": [[0,1],[1,2],[2,3],[3,0],[4,0],[4,1],[4,2],[4,3]], "#,
                "",
            ),
            "device.edges",
        ),
        (DRB5.replace("[[0,1],", "[[0,9],"), "device"),
        (
            DRB5.replace("\"p_cnot\": 0.25", "\"p_cnot\": 1.5"),
            "sampler.p_cnot",
        ),
        (DRB5.replace("[0, 10, 20]", "[0, 20, 10]"), "lengths[2]"),
        (DRB5.replace("\"seed\": 7", "\"seed\": \"seven\""), "seed"),
    ];
    for (i, (config, field)) in cases.iter().enumerate() {
        let cfg = write(tmp.path(), &format!("bad{i}.json"), config);
        let out = drbench(
            &[
                "generate",
                "--config",
                s(&cfg),
                "--out",
                s(&tmp.path().join("x")),
            ],
            &[],
        );
        assert_eq!(out.status.code(), Some(2), "{field}");
        assert!(stderr(&out).contains(field), "{}", stderr(&out));
    }
    let missing = drbench(
        &[
            "generate",
            "--config",
            "/nonexistent.json",
            "--out",
            s(tmp.path()),
        ],
        &[],
    );
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn ideal_simulation_always_succeeds() {
    let tmp = TempDir::new().unwrap();
    let run = generate(tmp.path(), "a", &small_config(3, 0.5, 1));
    ok(&["simulate", s(&run), "--model", "ideal"]);
    let text = fs::read_to_string(run.join("dataset.jsonl")).unwrap();
    let rows: Vec<serde_json::Value> = text
        .lines()
        .skip(1)
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 60);
    assert!(rows
        .iter()
        .all(|r| r["successes"] == r["shots"] && r["shots"] == 200));
    let manifest = json(&run.join("manifest.json"));
    assert_eq!(manifest["steps"][1]["subcommand"], "simulate");
    assert!(manifest["steps"][1]["outputs"]["dataset.jsonl"].is_string());
    assert_eq!(
        manifest["steps"][1]["inputs"].as_object().unwrap().len(),
        60
    );
}

#[test]
fn bundled_crosstalk_model_and_default_shots() {
    let tmp = TempDir::new().unwrap();
    let config = DRB5
        .replace("[0, 10, 20]", "[0, 5]")
        .replace("\"seed\": 7", "\"seed\": 7, \"circuits_per_length\": 2");
    let run = generate(tmp.path(), "a", &config);
    ok(&["simulate", s(&run), "--model", "crosstalk5", "--histogram"]);
    let text = fs::read_to_string(run.join("dataset.jsonl")).unwrap();
    let row: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    assert_eq!(row["shots"], 1024);
    assert!(row["histogram"].is_object());
}

#[test]
fn uncovered_gates_are_runtime_errors() {
    let tmp = TempDir::new().unwrap();
    let run = generate(tmp.path(), "a", &small_config(3, 0.5, 1));
    let model = write(
        tmp.path(),
        "model.json",
        r#"{"n": 3, "gates": [{"gate": "H"}, {"gate": "P"}, {"gate": "I"}, {"gate": "CNOT", "qubits": [1, 2]}]}"#,
    );
    let out = drbench(&["simulate", s(&run), "--model", s(&model)], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("CNOT 0,1"), "{}", stderr(&out));

    let unknown = drbench(&["simulate", s(&run), "--model", "nonesuch"], &[]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad = write(
        tmp.path(),
        "bad.json",
        r#"{"n": 3, "gates": [{"gate": "*", "terms": [{"kind": "local"}]}]}"#,
    );
    let out = drbench(&["simulate", s(&run), "--model", s(&bad)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("gates[0].terms[0]"),
        "{}",
        stderr(&out)
    );
    let missing = drbench(
        &["simulate", s(&tmp.path().join("none")), "--model", "ideal"],
        &[],
    );
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn tampered_circuits_are_rejected() {
    let tmp = TempDir::new().unwrap();
    let run = generate(tmp.path(), "a", &small_config(2, 0.5, 1));
    let path = run.join("circuits/m0004_c0000.txt");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, format!("{text}\n")).unwrap();
    let out = drbench(&["simulate", s(&run), "--model", "ideal"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("digest"));
}

#[test]
fn zero_error_analysis_is_flagged_degenerate() {
    let tmp = TempDir::new().unwrap();
    let run = generate(tmp.path(), "a", &small_config(2, 0.5, 1));
    ok(&["simulate", s(&run), "--model", "ideal"]);
    let out = drbench(&["analyze", s(&run)], &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("degenerate"));
    let results = json(&run.join("results.json"));
    assert_eq!(results["runs"][0]["r"], 0.0);
    assert_eq!(results["runs"][0]["diagnostics"]["degenerate"], true);
    assert!(run.join("plot.csv").exists());
}

#[test]
fn analysis_writes_results_and_plot() {
    let tmp = TempDir::new().unwrap();
    let run = generate(tmp.path(), "a", &small_config(3, 0.5, 2));
    ok(&["simulate", s(&run), "--model", "main_sim"]);
    ok(&["analyze", s(&run), "--resamples", "200"]);
    let results = json(&run.join("results.json"));
    let r0 = &results["runs"][0];
    assert_eq!(r0["n"], 3);
    assert_eq!(r0["protocol"], "DRB");
    assert_eq!(r0["label"], "a");
    for key in [
        "A",
        "B",
        "p",
        "r",
        "intervals",
        "diagnostics",
        "success",
        "dataset_digest",
    ] {
        assert!(!r0[key].is_null(), "{key}");
    }
    let plot = fs::read_to_string(run.join("plot.csv")).unwrap();
    let mut lines = plot.lines();
    assert_eq!(lines.next(), Some("m,P_m,q05,q25,q50,q75,q95,fitted"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn mixing_flag_solves_for_category_rates() {
    let tmp = TempDir::new().unwrap();
    let a = generate(tmp.path(), "hi", &small_config(3, 0.75, 3));
    let b = generate(tmp.path(), "lo", &small_config(3, 0.25, 4));
    for run in [&a, &b] {
        ok(&["simulate", s(run), "--model", "main_sim"]);
    }
    let out_dir = tmp.path().join("joint");
    ok(&[
        "analyze",
        s(&a),
        s(&b),
        "--mixing",
        "0.75,0.25",
        "--resamples",
        "200",
        "--out",
        s(&out_dir),
    ]);
    let results = json(&out_dir.join("results.json"));
    let d = &results["decomposition"];
    assert_eq!(d["mixing"], serde_json::json!([[0.75, 0.25], [0.25, 0.75]]));
    assert_eq!(d["categories"]["eps"].as_array().unwrap().len(), 2);
    assert!(d["building_blocks"]["eps_cnot"].is_number());
    assert!(out_dir.join("plot_1.csv").exists() && out_dir.join("plot_2.csv").exists());

    let wrong = drbench(
        &[
            "analyze",
            s(&a),
            s(&b),
            "--mixing",
            "0.75",
            "--out",
            s(&out_dir),
        ],
        &[],
    );
    assert_eq!(wrong.status.code(), Some(2));
    let singular = drbench(
        &[
            "analyze",
            s(&a),
            s(&b),
            "--mixing",
            "0.5,0.5",
            "--out",
            s(&out_dir),
        ],
        &[],
    );
    assert_eq!(singular.status.code(), Some(2));
    assert!(stderr(&singular).contains("singular"));
}

#[test]
fn reports_are_deterministic_with_stable_colors() {
    let tmp = TempDir::new().unwrap();
    let mut runs = vec![];
    for n in 2..=5 {
        let run = generate(
            tmp.path(),
            &format!("n{n}"),
            &small_config(n, 0.5, n as u64),
        );
        ok(&["simulate", s(&run), "--model", "main_sim"]);
        ok(&["analyze", s(&run), "--resamples", "100"]);
        runs.push(run);
    }
    ok(&["report", s(&runs[0])]);
    let single = fs::read_to_string(runs[0].join("decay.svg")).unwrap();
    assert_eq!(single.matches("<polyline").count(), 1);
    assert!(single.contains("n=2 r="));
    assert!(fs::read_to_string(runs[0].join("summary.txt"))
        .unwrap()
        .contains("n2"));

    let out = tmp.path().join("report");
    let mut args = vec!["report".to_string()];
    args.extend(runs.iter().map(|r| s(r).to_string()));
    args.extend(["--out".to_string(), s(&out).to_string()]);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    ok(&args);
    let first = fs::read_to_string(out.join("decay.svg")).unwrap();
    assert_eq!(first.matches("<polyline").count(), 4);
    let colors: std::collections::HashSet<&str> = first
        .match_indices("<polyline fill=\"none\" stroke=\"")
        .map(|(i, m)| &first[i + m.len()..i + m.len() + 7])
        .collect();
    assert_eq!(colors.len(), 4);
    // The same n keeps its color across reports.
    let n2 = &single[single.find("stroke=\"#").unwrap()..][..16];
    assert!(first.contains(n2));
    ok(&args);
    assert_eq!(first, fs::read_to_string(out.join("decay.svg")).unwrap());

    let missing = drbench(&["report", s(&tmp.path().join("nothing"))], &[]);
    assert_eq!(missing.status.code(), Some(4));
}

#[test]
fn pipeline_is_byte_identical_across_thread_counts() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(tmp.path(), "c.json", &small_config(4, 0.5, 11));
    let mut snapshots = vec![];
    for threads in ["1", "4"] {
        let run = tmp.path().join(format!("t{threads}")).join("run");
        ok(&[
            "--threads",
            threads,
            "generate",
            "--config",
            s(&cfg),
            "--out",
            s(&run),
        ]);
        ok(&[
            "--threads",
            threads,
            "simulate",
            s(&run),
            "--model",
            "main_sim",
            "--histogram",
        ]);
        ok(&[
            "--threads",
            threads,
            "analyze",
            s(&run),
            "--resamples",
            "150",
        ]);
        let mut files: BTreeMap<String, Vec<u8>> = BTreeMap::new();
        for name in ["dataset.jsonl", "results.json", "plot.csv"] {
            files.insert(name.into(), fs::read(run.join(name)).unwrap());
        }
        for e in fs::read_dir(run.join("circuits")).unwrap() {
            let e = e.unwrap();
            files.insert(
                e.file_name().to_string_lossy().into(),
                fs::read(e.path()).unwrap(),
            );
        }
        let mut manifest = json(&run.join("manifest.json"));
        for step in manifest["steps"].as_array_mut().unwrap() {
            step["started"] = serde_json::Value::Null;
            step["finished"] = serde_json::Value::Null;
        }
        files.insert("manifest".into(), manifest.to_string().into_bytes());
        snapshots.push(files);
    }
    assert_eq!(snapshots[0], snapshots[1]);
    let zero = drbench(&["--threads", "0", "report", "x"], &[]);
    assert_eq!(zero.status.code(), Some(2));
}
