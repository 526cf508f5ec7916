//! End-to-end runs of the `exotic` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn exotic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exotic"))
        .args(args)
        .env_remove("EXOTIC_STEP_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ramanujam_graph_is_not_the_plane() {
    let out = exotic(&["graph", "ramanujam", "--file", &data("ramanujam.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"verdict": "NotC2"}));
}

#[test]
fn nagata_flow_at_one() {
    let out = exotic(&[
        "lnd",
        "flow",
        "--ring",
        "C3",
        "--images",
        &data("nagata.json"),
        "--t",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let images = json(&out)["images"].clone();
    assert_eq!(
        images,
        serde_json::json!([
            "x^2*z - y*z^2 + x",
            "x^4*z - 2*x^2*y*z^2 + y^2*z^3 + 2*x^3 - 2*x*y*z + y",
            "z"
        ])
    );
}

#[test]
fn triangle_group_is_finite() {
    let out = exotic(&["group", "triangle", "--k", "2", "--l", "3", "--s", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!("Finite"));
}

#[test]
fn exit_codes() {
    assert_eq!(exotic(&[]).status.code(), Some(2));
    assert_eq!(exotic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        exotic(&["group", "triangle", "--k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        exotic(&["graph", "ramanujam", "--file", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        exotic(&["group", "triangle", "--k", "1", "--l", "3", "--s", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        exotic(&["repro", "no-such-scenario"]).status.code(),
        Some(2)
    );
    let help = exotic(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("Usage"));
}

#[test]
fn dot_only_where_a_graph_is_produced() {
    let out = exotic(&["graph", "chain", "--m", "3", "--n", "2", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.starts_with(b"graph G {"));
    assert_eq!(
        exotic(&["group", "triangle", "--k", "2", "--l", "3", "--s", "5", "--dot"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn invalid_step_budget_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_exotic"))
        .args(["poly", "parse", "--expr", "x + 1"])
        .env("EXOTIC_STEP_BUDGET", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let cases: [&[&str]; 4] = [
        &[
            "smith",
            "sequences",
            "--complex",
            &data("disc3.json"),
            "--action",
            &data("rotation3.json"),
        ],
        &["family", "--sweep", &data("sweep.json")],
        &[
            "grade",
            "decompose",
            "--poly",
            "x^2*y + x + z^2 + t^3",
            "--weights",
            "-1,2,0,0",
        ],
        &["repro", "nagata"],
    ];
    for args in cases {
        let (a, b) = (exotic(args), exotic(args));
        assert_eq!(
            a.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_goes_to_stderr_only() {
    let args = ["group", "abel", "--file", &data("braid3.json")];
    let quiet = exotic(&args);
    let verbose = exotic(&[&args[..], &["--verbose"]].concat());
    assert_eq!(quiet.stdout, verbose.stdout);
    assert!(String::from_utf8_lossy(&verbose.stderr).contains("elapsed: "));
}

#[test]
fn json_in_from_stdin_and_json_out_to_file() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_exotic"))
        .args(["group", "abel", "--json-in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let input = std::fs::read(data("z6.json")).unwrap();
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let piped = child.wait_with_output().unwrap();
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(json(&piped)["text"], "Z/6");

    let target = std::env::temp_dir().join(format!("exotic-cli-{}.json", std::process::id()));
    let path = target.to_string_lossy().into_owned();
    let out = exotic(&[
        "group",
        "abel",
        "--file",
        &data("z6.json"),
        "--json-out",
        &path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), piped.stdout);
    std::fs::remove_file(target).unwrap();
}

#[test]
fn numbers_are_strings() {
    let out = exotic(&["graph", "det", "--file", &data("ramanujam.json")]);
    assert_eq!(out.status.code(), Some(0));
    fn no_numbers(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Number(_) => false,
            serde_json::Value::Array(xs) => xs.iter().all(no_numbers),
            serde_json::Value::Object(m) => m.values().all(no_numbers),
            _ => true,
        }
    }
    assert!(no_numbers(&json(&out)));
}
