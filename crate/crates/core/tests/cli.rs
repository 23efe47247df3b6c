use std::io::Write;
use std::process::{Command, Output};

fn finring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finring")).args(args).output().unwrap()
}

fn finring_threads(args: &[&str], threads: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finring"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads.to_string())
        .output()
        .unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn ledger_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_z105() {
    let v = json(&finring(&["classify", "Z105"]));
    assert_eq!(v["schema"], "finring-report/1");
    assert_eq!(v["ring"]["cardinality"], 105);
    assert_eq!(v["censuses"]["idempotents"]["idempotents"], serde_json::json!([15, 21, 36, 70, 85, 91]));
}

#[test]
fn classify_z1_is_degenerate() {
    let v = json(&finring(&["classify", "Z1"]));
    assert_eq!(v["ring"]["cardinality"], 1);
    let c = &v["censuses"];
    assert_eq!(c["idempotents"]["idempotents"], serde_json::json!([]));
    assert_eq!(c["nilpotents"]["nilpotents"], serde_json::json!([]));
    assert_eq!(c["zero_divisors"]["zero_divisors"], serde_json::json!([]));
}

#[test]
fn substructures_z6_s_ideals() {
    let v = json(&finring(&["substructures", "Z6", "--kind", "s-ideals", "--level", "I", "--mode", "strict"]));
    assert_eq!(v["families"][0]["count"], 2);
}

#[test]
fn lattice_cover_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("cover.dot");
    let v = json(&finring(&[
        "lattice",
        "Z3 x Z12 x Z7",
        "--family",
        "s-ideals",
        "--mode",
        "strict",
        "--check",
        "modular,distributive",
        "--dot",
        dot.to_str().unwrap(),
    ]));
    let l = &v["lattices"][0];
    assert_eq!(l["size"], 19);
    assert_eq!(l["is_lattice"], true);
    assert_eq!(l["identities"][0]["holds"], false);
    assert!(l["witnesses"]["pentagon"].is_array());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.contains("digraph"));
    // a connected Hasse diagram on 19 nodes has at least 18 cover edges
    assert!(text.lines().filter(|l| l.contains("->")).count() >= 18);
}

#[test]
fn empty_predicate_filter() {
    let v = json(&finring(&["predicates", "Z12", "--only", ""]));
    assert_eq!(v["predicates"], serde_json::json!([]));
    let v = json(&finring(&["predicates", "Z12", "--only", "s_ring_i,dispotent"]));
    assert_eq!(v["predicates"][0]["id"], "s_ring_i");
    assert_eq!(v["predicates"][0]["verdict"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(finring(&["classify", "Z3 x"]).status.code(), Some(2));
    assert_eq!(finring(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(finring(&["substructures", "Z6", "--kind", "nonsense"]).status.code(), Some(2));
    assert_eq!(finring(&["classify", "M2(Z16)"]).status.code(), Some(3));

    let ok = ledger_file("id: a\nring: Z6\nkind: census\nparams: set=idempotents\nexpect: {3, 4}\n");
    assert_eq!(finring(&["claims", "run", ok.path().to_str().unwrap()]).status.code(), Some(0));

    let wrong = ledger_file("id: a\nring: Z6\nkind: census\nparams: set=idempotents\nexpect: {3}\n");
    let out = finring(&["claims", "run", wrong.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["must_pass_failures"], serde_json::json!(["a"]));

    // an informational claim may disagree without failing the run
    let info = ledger_file("id: a\nring: Z6\nkind: census\nparams: set=idempotents\nexpect: {3}\nmust_pass: false\n");
    assert_eq!(finring(&["claims", "run", info.path().to_str().unwrap()]).status.code(), Some(0));

    let malformed = ledger_file("id: a\nring: Z6\nfrob: 1\n");
    let out = finring(&["claims", "run", malformed.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn claim_filter() {
    let f = ledger_file(
        "id: keep-1\nring: Z6\nkind: census\nparams: set=idempotents\nexpect: {3, 4}\n\
         id: drop-1\nring: Z6\nkind: census\nparams: set=idempotents\nexpect: {3}\n",
    );
    let v = json(&finring(&["claims", "run", f.path().to_str().unwrap(), "--filter", "keep-*"]));
    assert_eq!(v["summary"]["total"], 1);
}

#[test]
fn reports_are_deterministic() {
    let ledger = concat!(env!("CARGO_MANIFEST_DIR"), "/claims/book.ledger");
    let cases: Vec<Vec<&str>> = vec![
        vec!["classify", "GR(Z2, S3)"],
        vec!["lattice", "Z3 x Z12 x Z7", "--family", "s-ideals", "--check", "modular,distributive,quasi_distributive"],
        vec!["predicates", "Z3 x Z12"],
        vec!["substructures", "GR(Z2, S3)", "--kind", "right-ideals"],
        vec!["claims", "run", ledger],
    ];
    for args in cases {
        let one = finring_threads(&args, 1);
        let many = finring_threads(&args, 8);
        let again = finring_threads(&args, 8);
        assert!(one.status.success(), "{args:?}");
        assert_eq!(one.stdout, many.stdout, "{args:?}");
        assert_eq!(many.stdout, again.stdout, "{args:?}");
    }
}
