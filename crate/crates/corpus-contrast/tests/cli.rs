//! Exercises the command-line front end through the compiled binary:
//! stage subcommands chain on real files and exit codes follow the
//! 0 / 2 (validation) / 3 (runtime) contract.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_corpus-contrast"))
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn stage_subcommands_chain_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();

    let ingest = bin()
        .args([
            "ingest",
            "--input",
            &fixture("comments.jsonl"),
            "--corpus-tag",
            "comments",
            "--output",
            &path("ingested.jsonl"),
        ])
        .output()
        .unwrap();
    assert!(ingest.status.success(), "{}", String::from_utf8_lossy(&ingest.stderr));

    let clean = bin()
        .args([
            "clean",
            "--input",
            &path("ingested.jsonl"),
            "--output",
            &path("cleaned.jsonl"),
            "--min-match",
            "5",
        ])
        .output()
        .unwrap();
    assert!(clean.status.success(), "{}", String::from_utf8_lossy(&clean.stderr));
    assert!(dir.path().join("cleaned.jsonl.report.json").exists());

    let prep = bin()
        .args([
            "prep",
            "--input",
            &path("cleaned.jsonl"),
            "--output",
            &path("prepped.jsonl"),
            "--custom-stops",
            &fixture("stoplist_extra.txt"),
        ])
        .output()
        .unwrap();
    assert!(prep.status.success(), "{}", String::from_utf8_lossy(&prep.stderr));

    let embed = bin()
        .args([
            "embed",
            "train",
            "--input",
            &path("prepped.jsonl"),
            "--dim",
            "20",
            "--epochs",
            "2",
            "--min-count",
            "2",
            "--output",
            &path("vectors.vec"),
        ])
        .output()
        .unwrap();
    assert!(embed.status.success(), "{}", String::from_utf8_lossy(&embed.stderr));

    let info = bin().args(["embed", "info", &path("vectors.vec")]).output().unwrap();
    assert!(info.status.success());
    let info_text = String::from_utf8_lossy(&info.stdout).into_owned();
    assert!(info_text.contains("dimension: 20"), "{info_text}");

    let score = bin()
        .args([
            "semaxis",
            "score",
            "--table",
            &path("vectors.vec"),
            "--pos-seeds",
            &fixture("seeds_positive.txt"),
            "--neg-seeds",
            &fixture("seeds_negative.txt"),
            "--input",
            &path("prepped.jsonl"),
            "--output",
            &path("summary.json"),
        ])
        .output()
        .unwrap();
    assert!(score.status.success(), "{}", String::from_utf8_lossy(&score.stderr));

    let compare = bin()
        .args([
            "stats",
            "compare",
            "--summary-a",
            &path("summary.json"),
            "--summary-b",
            &path("summary.json"),
        ])
        .output()
        .unwrap();
    assert!(compare.status.success());
    let out = String::from_utf8_lossy(&compare.stdout).into_owned();
    assert!(out.contains("welch_t"), "{out}");

    let topics = bin()
        .args([
            "topics",
            "fit",
            "--input",
            &path("prepped.jsonl"),
            "--k",
            "4",
            "--iterations",
            "60",
            "--burn-in",
            "20",
            "--output",
            &path("topics.model"),
        ])
        .output()
        .unwrap();
    assert!(topics.status.success(), "{}", String::from_utf8_lossy(&topics.stderr));

    let timeline = bin()
        .args([
            "topics",
            "timeline",
            "--model",
            &path("topics.model"),
            "--input",
            &path("prepped.jsonl"),
            "--bin",
            "year",
        ])
        .output()
        .unwrap();
    assert!(timeline.status.success(), "{}", String::from_utf8_lossy(&timeline.stderr));
    assert!(String::from_utf8_lossy(&timeline.stdout).lines().count() > 1);
}

#[test]
fn chi2_subcommand_prints_test_result() {
    let out = bin().args(["stats", "chi2", "--counts", "30,10,10,30"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("\"statistic\": 20.0"), "{text}");
}

#[test]
fn kappa_subcommand_joins_on_id() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    std::fs::write(
        &a,
        "{\"id\":\"x\",\"label\":1}\n{\"id\":\"y\",\"label\":-1}\n{\"id\":\"z\",\"label\":1}\n",
    )
    .unwrap();
    std::fs::write(
        &b,
        "{\"id\":\"x\",\"label\":1}\n{\"id\":\"y\",\"label\":-1}\n{\"id\":\"z\",\"label\":-1}\n",
    )
    .unwrap();
    let out = bin()
        .args(["stats", "kappa", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"n\": 3"));
}

#[test]
fn missing_input_gives_validation_exit_code() {
    let out = bin()
        .args([
            "ingest",
            "--input",
            "/nonexistent/input.jsonl",
            "--corpus-tag",
            "x",
            "--output",
            "/tmp/never-written.jsonl",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_config_gives_validation_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.toml");
    std::fs::write(&config, "seed = 1\n").unwrap();
    let out = bin().args(["run", "--config", config.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let missing = bin().args(["run", "--config", "/nonexistent/config.toml"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn malformed_counts_rejected() {
    let out = bin().args(["stats", "chi2", "--counts", "1,2,3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
