//! Drives the compiled binary end to end: gen -> run -> play -> report,
//! plus rate, against throwaway directories.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boardbench"))
}

fn run_ok(cmd: &mut Command) -> String {
    let output = cmd.output().expect("binary runs");
    assert!(
        output.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf-8 stdout")
}

fn gen_ttt(dir: &Path, samples: &str) {
    run_ok(bin().args([
        "gen",
        "--games",
        "ttt",
        "--samples",
        samples,
        "--seed",
        "5",
        "--out",
        dir.to_str().unwrap(),
    ]));
}

#[test]
fn gen_writes_a_deterministic_dataset() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let stdout = {
        gen_ttt(a.path(), "3");
        gen_ttt(b.path(), "3");
        run_ok(bin().args(["gen", "--games", "ttt", "--samples", "3", "--seed", "5", "--out", a.path().to_str().unwrap()]))
    };
    assert!(stdout.contains("9 samples"), "{stdout}");

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join("manifest.json")).unwrap())
            .unwrap();
    let samples = manifest["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 9);
    for sample in samples {
        let image = sample["image"].as_str().unwrap();
        assert!(a.path().join(image).is_file(), "{image}");
    }

    let left = std::fs::read(a.path().join("manifest.json")).unwrap();
    let right = std::fs::read(b.path().join("manifest.json")).unwrap();
    assert_eq!(left, right, "regeneration must be byte-identical");
}

#[test]
fn run_scores_the_oracle_at_one() {
    let dir = tempfile::tempdir().unwrap();
    gen_ttt(dir.path(), "2");
    let stdout = run_ok(bin().args([
        "run",
        "--out",
        dir.path().to_str().unwrap(),
        "--agent",
        "oracle",
    ]));
    assert!(stdout.contains("run: agent oracle"), "{stdout}");
    assert!(stdout.contains("score=1.0000"), "{stdout}");

    let metrics: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("metrics-oracle-offline.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(metrics["agent"], "oracle");
    for m in metrics["metrics"].as_array().unwrap() {
        assert_eq!(m["score"], 1.0, "{m}");
        assert_eq!(m["n_samples"], 2, "{m}");
    }
}

#[test]
fn interrupted_runs_resume_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    gen_ttt(dir.path(), "2");
    let out = dir.path().to_str().unwrap();
    run_ok(bin().args(["run", "--out", out, "--agent", "random"]));
    let results = dir.path().join("results-random.jsonl");
    let full = std::fs::read_to_string(&results).unwrap();
    assert_eq!(full.lines().count(), 6);

    // Refuses to clobber without --resume.
    let status = bin().args(["run", "--out", out, "--agent", "random"]).output().unwrap();
    assert!(!status.status.success());

    let keep: String = full.lines().take(3).map(|l| format!("{l}\n")).collect();
    std::fs::write(&results, keep).unwrap();
    run_ok(bin().args(["run", "--out", out, "--agent", "random", "--resume"]));
    assert_eq!(std::fs::read_to_string(&results).unwrap(), full);
}

#[test]
fn play_finishes_sessions_and_reruns_identically() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let stdout = run_ok(bin().args([
            "play",
            "--games",
            "ttt",
            "--samples",
            "2",
            "--seed",
            "3",
            "--agent",
            "oracle",
            "--out",
            dir.path().to_str().unwrap(),
        ]));
        assert!(stdout.contains("play: agent oracle over 2 sessions"), "{stdout}");
    }

    let summary = std::fs::read_to_string(a.path().join("sessions-oracle.jsonl")).unwrap();
    assert_eq!(summary.lines().count(), 2);
    for line in summary.lines() {
        let s: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_ne!(s["outcome"], "ongoing", "{line}");
        assert_eq!(s["aborted"], false);
        let id = s["id"].as_str().unwrap();
        assert!(a.path().join("sessions/oracle").join(format!("{id}.json")).is_file());
    }

    for name in ["sessions-oracle.jsonl", "metrics-oracle-e2e.json"] {
        let left = std::fs::read(a.path().join(name)).unwrap();
        let right = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(left, right, "{name}");
    }
}

#[test]
fn rate_prints_both_scoring_paths() {
    let stdout = run_ok(bin().arg("rate"));
    assert!(stdout.contains("4.9931"), "{stdout}");
    assert!(stdout.contains("83.6128"), "{stdout}");
    assert!(stdout.contains("Divergences"), "{stdout}");
    assert!(stdout.contains("reference, stated:"), "{stdout}");
}

#[test]
fn report_merges_metrics_and_reports_missing_coverage() {
    let dir = tempfile::tempdir().unwrap();
    gen_ttt(dir.path(), "1");
    run_ok(bin().args(["run", "--out", dir.path().to_str().unwrap(), "--agent", "oracle"]));

    let report_dir = dir.path().join("rpt");
    let stdout = run_ok(bin().args([
        "report",
        dir.path().to_str().unwrap(),
        "--out",
        report_dir.to_str().unwrap(),
    ]));
    assert!(stdout.contains("overall: n/a"), "one game cannot aggregate: {stdout}");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(report_dir.join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["inputs"][0]["agent"], "oracle");
    assert!(report["tasks"][0]["overall"].is_null());
    assert!(report_dir.join("report.txt").is_file());
}
