use std::io::Write;
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semiinv::sampling::{random_left, random_tuple};
use semiinv_cli::{parse_document, run, InputDocument, Outcome};
use serde_json::Value;
use tempfile::NamedTempFile;

fn doc_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn cli(args: &[&str]) -> Outcome {
    let mut full = vec!["semiinv"];
    full.extend_from_slice(args);
    run(full)
}

fn with_file(cmd: &str, text: &str) -> (Value, i32) {
    let f = doc_file(text);
    let out = cli(&[cmd, f.path().to_str().unwrap()]);
    (serde_json::from_str(&out.stdout).unwrap(), out.code)
}

#[test]
fn invariants_of_four_tuple() {
    let text = r#"{"kind":"lr-tuple","n":4,"entries":[[[1,2],[3,4]],[[0,1],[1,0]],[[2,0],[0,"1/2"]],[[1,1],[0,1]]]}"#;
    let (v, code) = with_file("invariants", text);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 11);
    assert_eq!(v["result"]["generators"][0]["generator"], "det(1)");
    assert_eq!(v["result"]["generators"][0]["value"], "-2");
    let zero = r#"{"kind":"lr-tuple","n":2,"entries":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#;
    let (v, _) = with_file("invariants", zero);
    assert!(v["result"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .all(|g| g["value"] == "0"));
}

#[test]
fn separation_and_witness() {
    let same = r#"{"kind":"lr-pair","n":1,"entries":[[[[1,0],[0,1]]],[[[2,0],[0,"1/2"]]]]}"#;
    let (v, code) = with_file("separate", same);
    assert_eq!((v["result"]["separated"].as_bool(), code), (Some(false), 0));
    let differ = r#"{"kind":"lr-pair","n":1,"entries":[[[[1,0],[0,1]]],[[[2,0],[0,1]]]]}"#;
    let (v, code) = with_file("separate", differ);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["witness"]["generator"], "det(1)");
    assert_eq!(v["result"]["witness"]["second"], "2");
}

#[test]
fn exit_codes() {
    // Shape mismatch.
    let bad = r#"{"kind":"lr-pair","n":2,"entries":[[[[1,0],[0,1]]],[[[2,0],[0,1]]]]}"#;
    assert_eq!(with_file("separate", bad).1, 2);
    // Missing file.
    assert_eq!(cli(&["separate", "/nonexistent/input.json"]).code, 2);
    // Unknown flag.
    assert_eq!(cli(&["counts", "--bogus"]).code, 2);
    // Not upper-triangular for phi.
    let lower = r#"{"kind":"lr-pair","n":1,"entries":[[[[1,0],[1,1]]],[[[1,0],[0,1]]]]}"#;
    let (v, code) = with_file("phi", lower);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "precondition");
    // Classifying a separated pair.
    let sep = r#"{"kind":"lr-pair","n":1,"entries":[[[[1,0],[0,1]]],[[[2,0],[0,1]]]]}"#;
    assert_eq!(with_file("classify", sep).1, 3);
    // Claims outside their range.
    assert_eq!(cli(&["certify", "--n", "3"]).code, 3);
    assert_eq!(cli(&["certify", "--n", "4", "--claims", "nope"]).code, 3);
    // Left curve for l = 4 is unsupported.
    let l4 = r#"{"kind":"left-pair","l":4,"n":4,"entries":[
        [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,0]],
        [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,0,0]]]}"#;
    assert_eq!(with_file("curve", l4).1, 3);
}

#[test]
fn graph_for_large_l_is_necessary_only() {
    let l4 = r#"{"kind":"left-pair","l":4,"n":5,"entries":[
        [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,0,0]],
        [[1,0,0,0,0],[0,1,0,0,0],[0,0,0,1,0],[0,0,0,0,0]]]}"#;
    let (v, code) = with_file("graph", l4);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["member"], true);
    assert_eq!(v["result"]["status"], "necessary-only");
    let l3 = r#"{"kind":"left-pair","l":3,"n":4,"entries":[
        [[1,0,0,0],[0,1,0,0],[0,0,0,0]],
        [[0,0,1,0],[0,0,0,1],[0,0,0,0]]]}"#;
    let (v, _) = with_file("graph", l3);
    assert_eq!(v["result"]["member"], false);
    assert_eq!(v["result"]["status"], "decided");
}

#[test]
fn curve_report_verifies() {
    let l2 = r#"{"kind":"left-pair","l":2,"n":2,"entries":[[[1,0],[0,0]],[[0,1],[0,0]]]}"#;
    let (v, code) = with_file("curve", l2);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["check"]["all"], true);
}

#[test]
fn stability_and_nullcone() {
    let triple =
        r#"{"kind":"lr-tuple","n":3,"entries":[[[1,0],[0,1]],[[0,1],[0,0]],[[0,0],[1,0]]]}"#;
    assert_eq!(with_file("stability", triple).0["result"]["stable"], true);
    let single = r#"{"kind":"lr-tuple","n":1,"entries":[[[1,2],[3,4]]]}"#;
    let (v, _) = with_file("stability", single);
    assert_eq!(v["result"]["stable"], false);
    assert!(v["result"]["triangularizer"]["triangularized"].is_array());
    let null = r#"{"kind":"lr-tuple","n":2,"entries":[[[1,2],[2,4]],[[3,6],[1,2]]]}"#;
    let (v, _) = with_file("nullcone", null);
    assert_eq!(v["result"]["member"], true);
}

#[test]
fn counts_and_certify() {
    let out = cli(&["counts", "--n", "6"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["rows"][0]["dim"], 18);
    assert_eq!(v["result"]["rows"][0]["generators"], 36);
    assert_eq!(v["result"]["rows"][0]["lower_bound"], 21);
    let out = cli(&["certify", "--n", "4", "--claims", "gamma"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["certificates"][0]["verdict"], "CERTIFIED");
    assert_eq!(v["result"]["certificates"][0]["achieved_rank"], 22);
}

#[test]
fn reports_are_deterministic() {
    let f = doc_file(r#"{"kind":"lr-pair","n":1,"entries":[[[[1,2],[0,3]]],[[[3,1],[0,1]]]]}"#);
    let path = f.path().to_str().unwrap();
    for args in [
        vec!["classify", path],
        vec![
            "certify",
            "--n",
            "4",
            "--claims",
            "g2cr,cr-cc",
            "--seed",
            "17",
        ],
        vec!["counts", "--format", "text"],
    ] {
        assert_eq!(cli(&args), cli(&args));
    }
    let a = cli(&["certify", "--n", "4", "--claims", "gamma", "--seed", "1"]);
    let b = cli(&["certify", "--n", "4", "--claims", "gamma", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn documents_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=5 {
        let t = random_tuple(&mut rng, n, 9);
        let docs = [
            InputDocument::LrTuple(t.clone()),
            InputDocument::LrPair(t.clone(), random_tuple(&mut rng, n, 9)),
            InputDocument::LeftMatrix(random_left(&mut rng, 2, n, 9)),
            InputDocument::LeftPair(
                random_left(&mut rng, 3, n, 9),
                random_left(&mut rng, 3, n, 9),
            ),
        ];
        for d in docs {
            assert_eq!(parse_document(&d.to_json().to_string()).unwrap(), d);
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_semiinv");
    let ok = Command::new(bin).arg("identities").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["result"]["xi_identity"], true);
    let f = doc_file("{\"kind\": \"lr-tuple\"");
    let bad = Command::new(bin)
        .arg("invariants")
        .arg(f.path())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
