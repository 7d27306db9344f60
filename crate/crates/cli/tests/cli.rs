use std::process::{Command, Output};

use serde_json::Value;

const Z4: &str = r#"{"kind":"zn","n":4}"#;
const M2Z2: &str = r#"{"kind":"matrix","base":{"kind":"zn","n":2},"dim":2}"#;
const TP33: &str = r#"{"kind":"trunc_poly","p":3,"m":3}"#;

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .env_remove("RINGLAB_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn ring_info_from_file_and_inline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m2z2.json");
    std::fs::write(&path, M2Z2).unwrap();
    let o = ringlab(&[
        "ring-info",
        "--ring",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--tables",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["size"], 16);
    assert_eq!(v["commutative"], false);
    assert_eq!(v["mul"].as_array().unwrap().len(), 16);

    let o = ringlab(&["ring-info", "--ring", Z4]);
    assert!(stdout(&o).contains("unity          1"));
}

#[test]
fn derivations_lists_jordan_witness() {
    let o = ringlab(&["derivations", "--ring", Z4, "--jordan", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["count"], 2);
    assert_eq!(v["maps"][1]["table"], serde_json::json!([0, 2, 0, 2]));
    assert_eq!(v["maps"][1]["derivation"], false);
}

#[test]
fn integrate_formal_and_jordan() {
    let o = ringlab(&["integrate", "--ring", TP33, "--map", "formal", "--element", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "formal: i(1) = {X, 1+X, 2+X}");

    let o = ringlab(&[
        "integrate",
        "--ring",
        Z4,
        "--map",
        "table:/nonexistent.json",
        "--element",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("double.json");
    std::fs::write(&path, "[0,2,0,2]").unwrap();
    let map = format!("table:{}", path.display());
    let o = ringlab(&["integrate", "--ring", Z4, "--map", &map, "--element", "2"]);
    assert_eq!(o.status.code(), Some(2), "not a derivation without --jordan");
    let o = ringlab(&[
        "integrate",
        "--ring",
        Z4,
        "--map",
        &map,
        "--element",
        "2",
        "--jordan",
        "--format",
        "json",
    ]);
    let v = json(&o);
    assert_eq!(v["results"][0]["integral"]["labels"], serde_json::json!(["1", "3"]));
}

#[test]
fn verify_exit_codes() {
    let o = ringlab(&["verify", "--ring", M2Z2, "--map", "inner:E11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("SKIP power_rules"));
    assert!(text.contains("overall: PASS"));

    let o = ringlab(&[
        "verify",
        "--ring",
        Z4,
        "--map",
        "enumerate:jordan",
        "--checkers",
        "separation",
    ]);
    assert_eq!(o.status.code(), Some(0));

    for bad in [
        vec!["verify", "--ring", Z4, "--map", "bogus"],
        vec!["verify", "--ring", Z4, "--checkers", "basic,nope"],
        vec!["verify", "--ring", "{\"kind\":\"zn\"}"],
        vec!["verify", "--ring", Z4, "--map", "inner:7"],
        vec!["verify"],
    ] {
        assert_eq!(ringlab(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn size_ceiling_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["verify", "--ring", M2Z2])
        .env("RINGLAB_MAX_SIZE", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the limit of 8"));
}

#[test]
fn verify_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let path = dir.path().join(name);
        let o = ringlab(&[
            "verify",
            "--ring",
            M2Z2,
            "--map",
            "enumerate",
            "--format",
            "json",
            "--seed",
            "11",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        std::fs::read(path).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "3");
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["reports"][0].get("runtime_ms").is_none());
}

#[test]
fn search_targets() {
    let o = ringlab(&[
        "search",
        "--target",
        "jordan-not-derivation",
        "--ring",
        Z4,
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["found"][0]["map"], serde_json::json!(["0", "2", "0", "2"]));

    let z3 = r#"{"kind":"zn","n":3}"#;
    let o = ringlab(&["search", "--target", "jordan-not-derivation", "--ring", z3]);
    assert_eq!(o.status.code(), Some(1), "nothing to find in Z3");

    let o = ringlab(&[
        "search",
        "--target",
        "empty-parts-witness",
        "--ring",
        M2Z2,
        "--progress-interval",
        "0",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("M2(Z2)"));
}
