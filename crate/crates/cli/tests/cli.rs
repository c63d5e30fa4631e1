use std::process::{Command, Output};

use serde_json::Value;

fn level3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_level3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = level3(&["verify", "all"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    let report = stdout_json(&a);
    assert_eq!(report["suites"].as_array().unwrap().len(), 11);
    let checks = report["checks"].as_array().unwrap();
    let mut ids: Vec<&str> = checks
        .iter()
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n, "check ids repeat");
    assert!(checks.iter().all(|c| c["status"] == "pass"));

    let b = level3(&["verify", "all"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gamma_beta1_matrix() {
    let out = level3(&["verify", "gamma", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let beta1 = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "gamma.generator.beta1")
        .expect("beta1 check present");
    assert_eq!(beta1["expected"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(beta1["actual"], beta1["expected"]);
}

#[test]
fn landweber_primes_gives_one_row_each() {
    let out = level3(&["verify", "landweber", "--primes", "2,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let witnesses: Vec<_> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| {
            c["check_id"]
                .as_str()
                .unwrap()
                .starts_with("landweber.witness.")
        })
        .collect();
    assert_eq!(witnesses.len(), 3);

    let out = level3(&["landweber", "--primes", "2,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["witnesses"].as_array().unwrap().len(), 3);
}

#[test]
fn markdown_format() {
    let out = level3(&["verify", "weil", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| `weil.e3` | pass |"));
}

#[test]
fn injected_failure_flips_exit_code() {
    let out = level3(&[
        "verify",
        "level3",
        "--inject-failure",
        "level3.homomorphism",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["summary"]["failed"], 1);
    assert_eq!(
        level3(&["verify", "level3", "--inject-failure", "no.such.check"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bad_invocations_exit_2() {
    assert_eq!(level3(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        level3(&["verify", "all", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(
        level3(&["verify", "landweber", "--primes", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        level3(&["landweber", "--primes", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn invariants_symbolic_and_specialized() {
    let out = level3(&["invariants"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["matches"] == true));

    let out = level3(&["invariants", "--nu", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let got: Vec<&str> = ["c4", "c6", "delta", "j"]
        .iter()
        .map(|k| doc[*k].as_str().unwrap())
        .collect();
    assert_eq!(got, ["0", "-216", "-27", "0"]);

    let out = level3(&["invariants", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("j is undefined"));

    assert_eq!(
        level3(&["invariants", "--nu", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_documents() {
    let out = level3(&["classify", "--input", &data("canonical_f7.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["nu"], "3");
    assert_eq!(doc["verified"], true);

    let out = level3(&["classify", "--input", &data("moved_f7.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(
        (doc["nu"].as_str(), doc["omega"].as_str()),
        (Some("3"), Some("2"))
    );
    assert_eq!(doc["transform"]["u"], "4");

    let out = level3(&["classify", "--input", &data("dependent_f7.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SlopeDifferenceNotInvertible"));
}

#[test]
fn classify_rejects_malformed_documents() {
    let dir = std::env::temp_dir().join(format!("level3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("truncated.json", "{\"field\":"),
        ("missing.json", "{\"field\":{\"kind\":\"prime\",\"p\":7}}"),
        (
            "decimal.json",
            r#"{"field":{"kind":"prime","p":7},"curve":{"a1":"2.0","a2":"0","a3":"5","a4":"0","a6":"0"},"P":["0","0","1"],"Q":["1","1","1"]}"#,
        ),
        (
            "char3.json",
            r#"{"field":{"kind":"prime","p":3},"curve":{"a1":"0","a2":"0","a3":"1","a4":"0","a6":"0"},"P":["0","0","1"],"Q":["1","1","1"]}"#,
        ),
    ];
    for (name, body) in cases {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        let out = level3(&["classify", "--input", path.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(
        level3(&["classify", "--input", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn formal_group_command() {
    let out = level3(&["formal-group", "--precision", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["height"], 2);
    assert_eq!(doc["z"], "x^3 + x^6 + O(x^8)");
    assert_eq!(
        level3(&["formal-group", "--precision", "2"]).status.code(),
        Some(2)
    );
}
