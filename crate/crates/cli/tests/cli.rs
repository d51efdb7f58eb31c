//! End-to-end tests of the `conefaces` binary: fixture verdicts, byte
//! determinism, input echo round trips, output formats, and exit codes.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conefaces"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn payload(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("stdout is a JSON report");
    v["payload"].clone()
}

#[test]
fn classes_fixture_ex73() {
    let out = run(&["classes", "--fixture", "ex7.3"]);
    let p = payload(&out);
    let members: Vec<Vec<u64>> = p["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["members"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(members, vec![vec![4], vec![2, 3], vec![1]]);
    let basic_flags: Vec<bool> = p["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["basic"].as_bool().unwrap())
        .collect();
    assert_eq!(basic_flags, vec![false, true, false]);
}

#[test]
fn check_72_fixture_verdicts() {
    let out = run(&[
        "check",
        "--theorem",
        "7.2",
        "--lambda",
        "1",
        "--fixture",
        "sec7-3x3",
    ]);
    let p = payload(&out);
    assert_eq!(p["a_kernel_dimension_one"], serde_json::json!(true));
    assert_eq!(p["f_associated_faces_comparable"], serde_json::json!(false));

    let out = run(&[
        "check",
        "--theorem",
        "7.2",
        "--lambda",
        "0",
        "--fixture",
        "sec7-4x4-nilpotent",
    ]);
    let p = payload(&out);
    assert_eq!(p["a_kernel_dimension_one"], serde_json::json!(false));
    assert_eq!(p["e_eigencone_span_dimension_one"], serde_json::json!(true));

    let out = run(&[
        "check",
        "--theorem",
        "7.2",
        "--lambda",
        "0",
        "--fixture",
        "ex7.3",
    ]);
    let p = payload(&out);
    assert_eq!(p["a_kernel_dimension_one"], serde_json::json!(false));
    assert_eq!(
        p["b_relint_faces_semi_distinguished"],
        serde_json::json!(true)
    );
}

#[test]
fn spectral_pair_example() {
    let out = run(&["spectral-pair", "--vector", "1,1", "--fixture", "sec4-2x2"]);
    let p = payload(&out);
    assert_eq!(
        p["spectral_pair"]["radius"]["value"],
        serde_json::json!("1")
    );
    assert_eq!(
        p["spectral_pair"]["radius"]["exact"],
        serde_json::json!(true)
    );
    assert_eq!(p["spectral_pair"]["order"], serde_json::json!(1));
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        vec!["classes", "--fixture", "ex7.3"],
        vec!["faces", "--fixture", "sec7-3x3"],
        vec![
            "m-lambda",
            "--lambda",
            "0",
            "--fixture",
            "sec7-4x4-nilpotent",
        ],
        vec!["dot", "--what", "faces", "--fixture", "ex7.3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn input_echo_round_trips() {
    let out = run(&["classes", "--fixture", "ex7.3"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let echo = &report["input"]["matrix"];
    // Re-feed the echoed matrix through --input and compare the new echo.
    let mut tmp = tempfile_path("echo");
    let text = serde_json::to_string(echo).unwrap();
    std::fs::File::create(&tmp)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out2 = run(&["classes", "--input", tmp.to_str().unwrap()]);
    let report2: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert_eq!(
        report2["input"]["matrix"], *echo,
        "echo reparses to the identical matrix"
    );
    assert_eq!(report2["payload"], report["payload"]);
    std::fs::remove_file(&mut tmp).ok();
}

fn tempfile_path(tag: &str) -> std::path::PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("conefaces-test-{tag}-{}.json", std::process::id()));
    p
}

#[test]
fn text_and_dot_formats() {
    let out = run(&["classes", "--fixture", "ex7.3", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("payload.spectral_radius.value"));

    let out = run(&["dot", "--what", "classes", "--fixture", "ex7.3"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph classes {"));

    let out = run(&["faces", "--fixture", "sec7-3x3", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph faces {"));
}

#[test]
fn exit_codes() {
    // Unknown command: usage error, exit 1.
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown fixture: validation error, exit 1.
    let out = run(&["classes", "--fixture", "nope"]);
    assert_eq!(out.status.code(), Some(1));

    // Missing input: exit 1.
    let out = run(&["classes"]);
    assert_eq!(out.status.code(), Some(1));

    // Irrational spectral radius where exactness is required: exit 2.
    let out = run(&["check", "--theorem", "B", "--fixture", "ex7.3"]);
    assert_eq!(out.status.code(), Some(2));

    // Cap exceeded: exit 3 (identity 13x13 has 2^13 invariant faces).
    let tmp = tempfile_path("cap");
    let mut text = String::new();
    for i in 0..13 {
        for j in 0..13 {
            text.push_str(if i == j { "1" } else { "0" });
            text.push(if j == 12 { '\n' } else { ' ' });
        }
    }
    std::fs::write(&tmp, text).unwrap();
    let out = run(&["initial-subsets", "--input", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(&tmp).ok();

    // Negative entry where nonnegativity is required: exit 1 with location.
    let tmp = tempfile_path("neg");
    std::fs::write(&tmp, "1 -1\n0 1\n").unwrap();
    let out = run(&["classes", "--input", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(1,2)"), "diagnostic names the entry: {err}");
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn fixture_command_lists_names() {
    let out = run(&["fixture", "--name", "sec4-2x2"]);
    let p = payload(&out);
    assert_eq!(p["matrix"]["n"], serde_json::json!(2));
    assert!(p["available"].as_array().unwrap().len() >= 4);
}

#[test]
fn cone_route_matches_orthant_route() {
    // Feeding the orthant explicitly as a generator cone reproduces the
    // orthant analysis.
    let tmp = tempfile_path("cone");
    std::fs::write(&tmp, r#"{"n":2,"generators":[["1","0"],["0","1"]]}"#).unwrap();
    let with_cone = run(&[
        "faces",
        "--fixture",
        "sec4-2x2",
        "--cone",
        tmp.to_str().unwrap(),
    ]);
    let p = payload(&with_cone);
    assert_eq!(p["count"], serde_json::json!(3));
    std::fs::remove_file(&tmp).ok();

    let plain = run(&["faces", "--fixture", "sec4-2x2"]);
    let q = payload(&plain);
    assert_eq!(q["count"], serde_json::json!(3));
}

#[test]
fn rothblum_chain_and_m_lambda() {
    let out = run(&[
        "rothblum-chain",
        "--lambda",
        "0",
        "--fixture",
        "sec7-4x4-nilpotent",
    ]);
    let p = payload(&out);
    assert_eq!(p["m_lambda"], serde_json::json!(3));
    let chain: Vec<Vec<u64>> = p["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            f.as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(chain, vec![vec![1], vec![1, 2], vec![1, 2, 3, 4]]);

    let out = run(&["m-lambda", "--lambda", "0", "--fixture", "ex7.3"]);
    let p = payload(&out);
    assert_eq!(p["m_lambda"], serde_json::json!(1));
    assert_eq!(p["agree"], serde_json::json!(true));
}
