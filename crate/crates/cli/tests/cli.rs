//! Integration tests for input parsing, pipeline exit codes and artifact
//! determinism; end-to-end runs go through the built binary.

use std::process::Command;

use num_traits::Zero;
use rlift::{Rat, Scalar};
use rlift_cli::input::{parse_input, serialize_bialgebra};
use rlift_cli::pipeline::{run, Emit, JobConfig};

fn q(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

const SL2: &str = r#"{
  "dim": 3,
  "basis": ["h", "e", "f"],
  "bracket": [[1, 2, 2, 2, 1], [1, 3, 3, -2, 1], [2, 3, 1, 1, 1]],
  "r": [[2, 3, 1, 1], [1, 1, "1", "4"]]
}"#;

#[test]
fn parse_minimal_abelian_document() {
    let l = parse_input(r#"{"dim":1, "bracket":[], "r":[[1,1,"1","1"]]}"#).unwrap();
    assert_eq!(l.dim, 1);
    assert_eq!(l.r[0][0], q(1, 1));
    assert!(l.bracket[0][0][0].is_zero());
}

#[test]
fn parse_sl2_and_roundtrip() {
    let l = parse_input(SL2).unwrap();
    assert!(l.validate().pass());
    assert_eq!(l.r[1][2], q(1, 1));
    assert_eq!(l.r[0][0], q(1, 4));
    // antisymmetry completion filled the mirrored orientation
    assert_eq!(l.bracket[1][0][1], q(-2, 1));
    // serialization round-trip is coefficient-identical
    let doc = serialize_bialgebra(&l).to_string();
    let l2 = parse_input(&doc).unwrap();
    assert_eq!(l.bracket, l2.bracket);
    assert_eq!(l.r, l2.r);
    assert_eq!(l.basis_names, l2.basis_names);
    assert_eq!(l.cobracket, l2.cobracket);
}

#[test]
fn parse_rejects_bad_documents() {
    // [x, x] = 0 violated
    let err = parse_input(r#"{"dim":2, "bracket":[[1,1,2,"1","1"]], "r":[]}"#).unwrap_err();
    assert!(err.contains("[x, x]"), "{err}");
    // conflicting duplicate entries
    let err = parse_input(
        r#"{"dim":2, "bracket":[[1,2,2,1,1],[2,1,2,1,1]], "r":[]}"#,
    )
    .unwrap_err();
    assert!(err.contains("conflicting"), "{err}");
    // index out of range
    let err = parse_input(r#"{"dim":2, "bracket":[], "r":[[1,3,1,1]]}"#).unwrap_err();
    assert!(err.contains("out of range"), "{err}");
    // decimals are forbidden
    let err = parse_input(r#"{"dim":1, "bracket":[], "r":[[1,1,0.5,1]]}"#).unwrap_err();
    assert!(err.contains("decimal"), "{err}");
    // malformed rational
    let err = parse_input(r#"{"dim":1, "bracket":[], "r":[[1,1,"x",1]]}"#).unwrap_err();
    assert!(err.contains("not an integer"), "{err}");
    // zero denominator
    let err = parse_input(r#"{"dim":1, "bracket":[], "r":[[1,1,1,0]]}"#).unwrap_err();
    assert!(err.contains("denominator"), "{err}");
}

#[test]
fn identical_duplicate_entries_are_accepted() {
    let l = parse_input(
        r#"{"dim":2, "bracket":[[1,2,2,1,1],[1,2,2,"2","2"]], "r":[]}"#,
    )
    .unwrap();
    assert_eq!(l.bracket[0][1][1], q(1, 1));
}

#[test]
fn run_pipeline_in_process() {
    // abelian: exit 0 and the lift contains exactly the r coefficients
    let l = parse_input(r#"{"dim":2, "bracket":[], "r":[[1,2,"3","7"],[2,2,-1,2]]}"#).unwrap();
    let mut config = JobConfig::new("unused".into());
    config.degree = 5;
    let outcome = run(&config, l);
    assert_eq!(outcome.exit_code, 0);
    let lift = outcome.document["lift"].as_array().unwrap();
    assert_eq!(lift.len(), 2);
    assert_eq!(lift[0]["exponents"].as_array().unwrap().len(), 4);
    // records are sorted by exponent vector: [0,1,0,1] before [1,0,0,1]
    assert_eq!(lift[0]["coeff"], "-1/2");
    assert_eq!(lift[1]["coeff"], "3/7");

    // strict gate rejects sl2 with r = h (x) e at the CYBE check
    let bad = parse_input(
        r#"{"dim":3, "bracket":[[1, 2, 2, 2, 1], [1, 3, 3, -2, 1], [2, 3, 1, 1, 1]],
            "r":[[1, 2, 1, 1]]}"#,
    )
    .unwrap();
    let outcome = run(&JobConfig::new("unused".into()), bad);
    assert_eq!(outcome.exit_code, 1);
    let report = &outcome.document["report"];
    let cybe = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "bialgebra.cybe")
        .unwrap();
    assert_eq!(cybe["pass"], false);
}

#[test]
fn binary_end_to_end() {
    let dir = std::env::temp_dir().join("rlift-cli-e2e");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("sl2.json");
    std::fs::write(&input, SL2).unwrap();
    let bin = env!("CARGO_BIN_EXE_rlift");

    // full artifact set with a seed check; exit 0
    let out_a = dir.join("a.json");
    let status = Command::new(bin)
        .args([
            "--degree",
            "3",
            "--emit",
            "lift,braiding,report,audit",
            "--seed-check",
            "42",
            "--out",
        ])
        .arg(&out_a)
        .arg(&input)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_a).unwrap()).unwrap();
    assert!(doc["report"]["pass"].as_bool().unwrap());
    assert!(doc.get("braiding").is_some());
    assert!(doc.get("audit").is_some());
    let uniq = doc["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "uniqueness.section_perturbation")
        .unwrap();
    assert_eq!(uniq["pass"], true);

    // deterministic output: a second run is byte-identical
    let out_b = dir.join("b.json");
    let status = Command::new(bin)
        .args([
            "--degree",
            "3",
            "--emit",
            "lift,braiding,report,audit",
            "--seed-check",
            "42",
            "--out",
        ])
        .arg(&out_b)
        .arg(&input)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );

    // axiom-gate failure: exit 1
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim":3, "bracket":[[1, 2, 2, 2, 1], [1, 3, 3, -2, 1], [2, 3, 1, 1, 1]],
            "r":[[1, 2, 1, 1]]}"#,
    )
    .unwrap();
    let status = Command::new(bin).arg(&bad).status().unwrap();
    assert_eq!(status.code(), Some(1));

    // the full degree-5 run also exits 0
    let status = Command::new(bin)
        .args(["--degree", "5", "--emit", "report"])
        .arg(&input)
        .stdout(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    // skipping the gate on a skew non-solution of CYBE still builds the
    // function algebra (the derived cobracket is a Lie cobracket), but the
    // construction then hits the cocycle-condition invariant: exit 3
    let skew = dir.join("skew.json");
    std::fs::write(
        &skew,
        r#"{"dim":3, "bracket":[[1, 2, 2, 2, 1], [1, 3, 3, -2, 1], [2, 3, 1, 1, 1]],
            "r":[[2, 3, 1, 1], [3, 2, -1, 1]]}"#,
    )
    .unwrap();
    let status = Command::new(bin)
        .args(["--skip-validation"])
        .arg(&skew)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // malformed input: exit 2
    let malformed = dir.join("malformed.json");
    std::fs::write(&malformed, "{").unwrap();
    let status = Command::new(bin).arg(&malformed).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // missing file: exit 2
    let status = Command::new(bin).arg(dir.join("nope.json")).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // bad flags: exit 2
    let status = Command::new(bin)
        .args(["--degree", "2"])
        .arg(&input)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn emit_set_is_respected() {
    let l = parse_input(SL2).unwrap();
    let mut config = JobConfig::new("unused".into());
    config.degree = 3;
    config.emit = [Emit::Report].into_iter().collect();
    let outcome = run(&config, l);
    assert_eq!(outcome.exit_code, 0);
    assert!(outcome.document.get("lift").is_none());
    assert!(outcome.document.get("report").is_some());
}
