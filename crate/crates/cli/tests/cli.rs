use std::path::Path;
use std::process::{Command, Output};

const FULL_TWIST: &str = "twist 0 0 0.6 6.283185307179586 0\n";
const KERCAL: &str = "twist -0.45 0 0.5 6.283185307179586 0\ntwist 0.55 0 0.35 -1 0\nkercal\n";

fn kercal(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kercal"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

#[test]
fn group_metric_on_a5() {
    let dir = tempfile::tempdir().unwrap();
    let o = kercal(dir.path(), &["group-metric", "--degree", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("metric.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# config_hash="));
    assert_eq!(lines[1], "class_repr,class_repr,q_fg,q_gf,d");
    assert_eq!(lines.len(), 2 + 16);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.cfg"), "").unwrap();
    assert_eq!(code(&kercal(dir.path(), &["--config", "empty.cfg"])), 2);
    assert_eq!(code(&kercal(dir.path(), &[])), 2);
    assert_eq!(code(&kercal(dir.path(), &["gg-estimate", "--bogus", "1"])), 2);
    std::fs::write(dir.path().join("bad.map"), "twist 0 0\n").unwrap();
    let o = kercal(dir.path(), &["gg-estimate", "--map", "bad.map", "--samples", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(
        code(&kercal(
            dir.path(),
            &["gg-estimate", "--map", "missing.map", "--samples", "3"]
        )),
        2
    );
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("exp")).unwrap();
    std::fs::write(dir.path().join("exp/ft.map"), FULL_TWIST).unwrap();
    std::fs::write(
        dir.path().join("exp/run.cfg"),
        "schema = 1\ncommand = gg-estimate\nmap = ft.map\nsamples = 12\nout = est.json\n",
    )
    .unwrap();
    let o = kercal(dir.path(), &["--config", "exp/run.cfg", "gg-estimate", "--seed", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("exp/est.json")).unwrap()).unwrap();
    assert_eq!(report["seed"], 5);
    let mean = report["report"]["mean"].as_f64().unwrap();
    assert!((mean + 6.0 * 0.6f64.powi(6)).abs() < 1e-12);
    assert!(dir.path().join("exp/est_strata.csv").is_file());
}

#[test]
fn braid_eval_prints_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = kercal(dir.path(), &["braid-eval", "--word", "1 1 2 2"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-6");
    let o = kercal(dir.path(), &["braid-eval", "--word", "1 2", "--qm", "writhe"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "2");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f.map"), KERCAL).unwrap();
    let args = [
        "scaling-check",
        "--map",
        "f.map",
        "--samples",
        "27",
        "--power",
        "2",
        "--seed",
        "9",
    ];
    let a = kercal(dir.path(), &args);
    let first = std::fs::read(dir.path().join("scaling.json")).unwrap();
    let b = kercal(dir.path(), &args);
    let second = std::fs::read(dir.path().join("scaling.json")).unwrap();
    assert_eq!(code(&a), code(&b));
    assert_eq!(first, second);
    let t = [
        "trace",
        "--map",
        "f.map",
        "--samples",
        "20",
        "--power",
        "2",
        "--seed",
        "3",
    ];
    kercal(dir.path(), &t);
    let first = std::fs::read(dir.path().join("braids.jsonl")).unwrap();
    kercal(dir.path(), &t);
    assert_eq!(first, std::fs::read(dir.path().join("braids.jsonl")).unwrap());
}

#[test]
fn writhe_scaling_is_a_computation_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f.map"), FULL_TWIST).unwrap();
    let o = kercal(
        dir.path(),
        &["scaling-check", "--map", "f.map", "--samples", "9", "--qm", "writhe"],
    );
    assert_eq!(code(&o), 1);
    assert!(!dir.path().join("scaling.json").exists());
}

#[test]
fn sequence_experiment_resumes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("f.map"), KERCAL).unwrap();
    std::fs::write(dir.path().join("g.map"), FULL_TWIST).unwrap();
    let args = [
        "sequence-experiment",
        "--f",
        "f.map",
        "--g",
        "g.map",
        "--nmax",
        "2",
        "--mmax",
        "5",
        "--defect-assumed",
        "12",
        "--power",
        "1",
        "--samples",
        "18",
    ];
    let o = kercal(dir.path(), &args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let full = std::fs::read(dir.path().join("sequence.json")).unwrap();
    let ckpt = dir.path().join("sequence.ckpt.json");
    assert!(!ckpt.exists());
    for name in ["area", "points", "certificates"] {
        assert!(dir.path().join(format!("sequence_{name}.csv")).is_file());
    }

    // rebuild the checkpoint an interrupted run would have left after n = 0
    let v: serde_json::Value = serde_json::from_slice(&full).unwrap();
    let report = &v["report"];
    assert_eq!(report["certificates"][0]["validity"], "conditional-on-D");
    let partial = serde_json::json!({
        "config_hash": v["config_hash"],
        "calabi": report["calabi"],
        "g_estimate": report["g_estimate"],
        "points": [report["points"][0]],
    });
    std::fs::write(&ckpt, serde_json::to_vec(&partial).unwrap()).unwrap();
    std::fs::remove_file(dir.path().join("sequence.json")).unwrap();
    let o = kercal(dir.path(), &args);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resuming"));
    assert_eq!(std::fs::read(dir.path().join("sequence.json")).unwrap(), full);
}
