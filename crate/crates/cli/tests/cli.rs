use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(input: &str, command: &str, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indist"))
        .arg("--input")
        .arg(fixture(input))
        .args(["--command", command])
        .args(extra)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn every_command_answers_on_the_fixtures() {
    let cases: &[(&str, &str)] = &[
        ("fig1.json", "validate"),
        ("fig1.json", "winnable"),
        ("fig1.json", "winnable-map"),
        ("fig2.json", "feasible-inf-sets"),
        ("fig1.json", "obj-set"),
        ("fig2.json", "exists-ois"),
        ("fig2.json", "exists-winning-ois"),
        ("fig1.json", "check-ois"),
        ("fig3.json", "exists-ne"),
        ("fig3.json", "exists-multi-ne"),
        ("fig3.json", "exists-oie"),
        ("fig3.json", "exists-oine"),
        ("fig3.json", "is-ne-outcome"),
        ("fig3.json", "is-oie"),
        ("fig1.json", "equiv"),
        ("fig3.json", "export-dot"),
    ];
    for &(input, cmd) in cases {
        let out = run(input, cmd, &["--oracle"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{cmd}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc = json(&out);
        assert_eq!(doc["query"]["command"], cmd);
        assert!(
            doc.get("verdict").is_some() && doc.get("stats").is_some(),
            "{cmd}"
        );
        if let Some(o) = doc.get("oracle") {
            assert_eq!(o["agrees"], true, "{cmd}");
        }
    }
}

#[test]
fn fixture_verdicts() {
    let doc = json(&run("fig1.json", "obj-set", &["--knw", "pgw"]));
    assert_eq!(doc["verdict"], serde_json::json!(["⟨⟩"]));
    let doc = json(&run("fig3.json", "exists-oie", &["--knw", "gw"]));
    assert_eq!(doc["verdict"], true);
    assert!(doc["witness"]["outcome"]["cycle"].is_array());
    let doc = json(&run("fig3.json", "is-oie", &["--knw", "gw"]));
    assert_eq!(doc["verdict"], true);
    let doc = json(&run("fig3.json", "winnable", &[]));
    assert_eq!(doc["verdict"], false);
}

#[test]
fn blocking_arena_is_an_input_error() {
    let out = run("blocking.json", "validate", &[]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["witness"]["violations"][0]["kind"], "blocking");
    assert_eq!(run("blocking.json", "winnable", &[]).status.code(), Some(2));
    assert_eq!(run("missing.json", "winnable", &[]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run("fig3.json", "exists-multi-ne", &["--max-subsets", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "undecided");
}

#[test]
fn output_is_deterministic() {
    for cmd in ["exists-oine", "is-oie", "obj-set"] {
        let a = run("fig3.json", cmd, &["--witness-strategies"]);
        let b = run("fig3.json", cmd, &["--witness-strategies"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn witness_profile_is_verified() {
    let doc = json(&run("fig3.json", "exists-ne", &["--witness-strategies"]));
    assert_eq!(doc["witness"]["strategies"]["verified"], true);
    assert!(doc["witness"]["strategies"]["profile"]["2"]["memory"].is_array());
}

#[test]
fn dot_file_is_written() {
    let dir = std::env::temp_dir().join(format!("indist-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig3.dot");
    let out = run(
        "fig3.json",
        "exists-ne",
        &["--emit-dot", path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("style=bold"));
    std::fs::remove_dir_all(dir).unwrap();
}
