use std::path::Path;
use std::process::{Command, Output};

fn maxlev(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxlev"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) {
    std::fs::write(dir.join(name), content).unwrap();
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn cover_fixture(dir: &Path) {
    write(
        dir,
        "r.txt",
        "The cat sat on the mat.\nA dog and a cat.\nBirds fly south.\nNothing relevant here.\n",
    );
    write(dir, "t.txt", "cat\ndog\nbird\nbirds\nmat\n");
}

#[test]
fn cover_writes_cover_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cover_fixture(d);
    let out = maxlev(
        d,
        &[
            "cover",
            "--reservoir",
            "r.txt",
            "--targets",
            "t.txt",
            "--out",
            "cover.jsonl",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cover = read(d, "cover.jsonl");
    assert!(cover.lines().count() >= 2);
    let stats: serde_json::Value = serde_json::from_str(&read(d, "cover.stats.json")).unwrap();
    // "bird" never occurs as a word
    assert_eq!(stats["greedy"]["n_covered"], 4);
    assert_eq!(stats["greedy"]["n_targets"], 5);
}

#[test]
fn cover_is_byte_deterministic_with_baselines() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cover_fixture(d);
    let args = [
        "cover",
        "--reservoir",
        "r.txt",
        "--targets",
        "t.txt",
        "--out",
        "c.jsonl",
        "--baseline",
        "sametoks",
        "--baseline",
        "samecov",
        "--seed",
        "3",
    ];
    assert!(maxlev(d, &args).status.success());
    let first = (
        read(d, "c.jsonl"),
        read(d, "c.stats.json"),
        read(d, "c.samecov.jsonl"),
    );
    assert!(maxlev(d, &args).status.success());
    let second = (
        read(d, "c.jsonl"),
        read(d, "c.stats.json"),
        read(d, "c.samecov.jsonl"),
    );
    assert_eq!(first, second);
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = maxlev(dir.path(), &["cover", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let out = maxlev(dir.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    cover_fixture(dir.path());
    let out = maxlev(
        dir.path(),
        &[
            "cover",
            "--reservoir",
            "r.txt",
            "--targets",
            "t.txt",
            "--out",
            "c.jsonl",
            "--heuristic",
            "nope",
        ],
    );
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(maxlev(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_jsonl_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        d,
        "pool.jsonl",
        "{\"id\":\"a\",\"source\":\"x\",\"target\":\"y\"}\n{\"id\": broken\n",
    );
    write(d, "eval.jsonl", "{\"id\":\"e\",\"source\":\"x\"}\n");
    let out = maxlev(
        d,
        &[
            "exemplars",
            "--pool",
            "pool.jsonl",
            "--eval",
            "eval.jsonl",
            "-k",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pool.jsonl:2"), "{err}");

    let out = maxlev(
        d,
        &["stats", "--input", "missing.txt", "--targets", "t.txt"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exemplar_selection_with_prompts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        d,
        "pool.jsonl",
        concat!(
            "{\"id\":\"A\",\"source\":\"the cat sat\",\"target\":\"paka alikaa\"}\n",
            "{\"id\":\"B\",\"source\":\"the cat sat\",\"target\":\"paka alikaa\"}\n",
            "{\"id\":\"C\",\"source\":\"on the mat\",\"target\":\"juu ya mkeka\"}\n",
        ),
    );
    write(
        d,
        "eval.jsonl",
        "{\"id\":\"e1\",\"source\":\"the cat sat on the mat\"}\n",
    );
    let out = maxlev(
        d,
        &[
            "exemplars",
            "--pool",
            "pool.jsonl",
            "--eval",
            "eval.jsonl",
            "-k",
            "2",
            "--alpha",
            "2",
            "--source-lang",
            "English",
            "--target-lang",
            "Swahili",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let line: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(line["eval_id"], "e1");
    assert_eq!(line["exemplars"], serde_json::json!(["A", "C"]));
    let prompt = line["prompt"].as_str().unwrap();
    assert!(prompt.starts_with(
        "Translate from English to Swahili:\nEnglish: the cat sat\nSwahili: paka alikaa\n"
    ));
    assert!(prompt.ends_with("English: the cat sat on the mat\nSwahili:"));
}

#[test]
fn rank_then_tier() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let docs: String = (0..6)
        .map(|i| {
            let words: Vec<String> = (0..12).map(|w| format!("w{i}x{w}")).collect();
            format!("{{\"id\":\"d{i}\",\"text\":\"{}\"}}\n", words.join(" "))
        })
        .collect();
    write(d, "docs.jsonl", &docs);
    assert!(
        maxlev(d, &["rank", "--docs", "docs.jsonl", "--out", "rank.jsonl"])
            .status
            .success()
    );
    assert_eq!(read(d, "rank.jsonl").lines().count(), 6);
    let out = maxlev(d, &["tier", "--ranking", "rank.jsonl", "--plan", "4,2,1"]);
    assert!(out.status.success());
    let tiers: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(tiers["tiers"]["1"].as_array().unwrap().len(), 4);
    assert_eq!(tiers["tiers"]["3"].as_array().unwrap().len(), 1);
}

#[test]
fn qc_flags_planted_anomalies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut lines = String::new();
    for i in 0..10 {
        lines.push_str(&format!(
            "{{\"id\":\"r{i}\",\"source_lang\":\"en\",\"target_lang\":\"sw\",\"source\":\"source number {i}\",\"target\":\"lengo namba {i}\"}}\n"
        ));
    }
    lines.push_str("{\"id\":\"pua\",\"source_lang\":\"en\",\"target_lang\":\"sw\",\"source\":\"private use\",\"target\":\"abc\u{E000}def\"}\n");
    write(d, "d.jsonl", &lines);
    let out = maxlev(
        d,
        &[
            "qc",
            "--records",
            "d.jsonl",
            "--out",
            "qc.jsonl",
            "--profile",
            "latn",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let flagged: Vec<serde_json::Value> = read(d, "qc.jsonl")
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| !v["flags"].as_array().unwrap().is_empty())
        .collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0]["record_id"], "pua");
    assert!(read(d, "qc.summary.json").contains("en-sw"));
}

#[test]
fn mesh_generation_and_ranking() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        d,
        "e.json",
        r#"{"topics":["road rage","an Irish wake"],"tones":["Use a didactic tone."],
            "styles":["You are Ernest Hemingway."],"modalities":["dialogue","story"],
            "word_bank":["confirmed","move","above"]}"#,
    );
    let out = maxlev(
        d,
        &["mesh", "--elements", "e.json", "-n", "4", "--seed", "7"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("You are Ernest Hemingway. Write a"));

    write(
        d,
        "resp.jsonl",
        "{\"prompt_index\":0,\"text\":\"a a a\"}\n{\"prompt_index\":0,\"text\":\"a b c\"}\n{\"prompt_index\":0,\"text\":\"a b b\"}\n",
    );
    let out = maxlev(d, &["mesh", "--responses", "resp.jsonl"]);
    assert!(out.status.success());
    let kept: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(kept.len(), 2);
    assert_eq!(kept[0]["text"], "a b c");
}

#[test]
fn split_with_ratings() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        d,
        "docs.jsonl",
        "{\"id\":\"doc1\",\"source_lang\":\"en\",\"target_lang\":\"sw\",\"kind\":\"document\",\"source\":[\"One.\",\"Two.\"],\"target\":[\"Moja.\",\"Mbili.\"]}\n",
    );
    write(
        d,
        "ratings.jsonl",
        "{\"record_id\":\"doc1\",\"rater_id\":\"r1\",\"code\":\"NoIssues\"}\n{\"record_id\":\"doc1\",\"rater_id\":\"r2\",\"code\":\"MinorIssues\"}\n",
    );
    let out = maxlev(
        d,
        &[
            "split",
            "--records",
            "docs.jsonl",
            "--ratings",
            "ratings.jsonl",
            "--out",
            "s.jsonl",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows: Vec<serde_json::Value> = read(d, "s.jsonl")
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["id"], "doc1-1");
    assert_eq!(rows[1]["factuality"], "has_errors");
    assert_eq!(rows[1]["parent"], "doc1");
}

#[test]
fn score_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "h.txt", "abc\nxyz\n");
    write(d, "r.txt", "abc\nabc\n");
    let out = maxlev(d, &["score", "--hyp", "h.txt", "--ref", "r.txt"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["scores"], serde_json::json!([100.0, 0.0]));
    assert_eq!(v["mean"], 50.0);

    cover_fixture(d);
    let out = maxlev(d, &["stats", "--input", "r.txt", "--targets", "t.txt"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n_sentences"], 4);
    assert_eq!(v["coverage_pct"], 80.0);
}
