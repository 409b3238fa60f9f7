use std::process::Command;

use serde_json::Value;
use spexlab::cli::{run, EXIT_DOMAIN, EXIT_INTERNAL, EXIT_OK, EXIT_VERIFY};
use spexlab::search::canonical_graph;
use spexlab::Graph;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("spexlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = format!("{}/../../docs/schema/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap()
}

fn assert_valid(name: &str, text: &str) {
    let s = schema(name);
    // reports are one pretty-printed document, the rest JSON Lines
    let docs: Vec<Value> = if name.ends_with("report") {
        vec![serde_json::from_str(text).unwrap()]
    } else {
        text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    };
    assert!(!docs.is_empty());
    for d in docs {
        if let Err(errors) = s.validate(&d) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{name}: {msgs:?}\n{d}");
        }
    }
}

#[test]
fn construct_outputs() {
    let (code, out, _) = call(&["construct", "--family", "k2hp:t=2,l=5,n=30", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid("construct", &out);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["n"], 30);

    let (_, g6, _) = call(&["construct", "--family", "wheel:n=12", "--format", "g6"]);
    let g = Graph::from_graph6(g6.trim()).unwrap();
    assert_eq!(g.edge_count(), 22);

    let (code, text, _) = call(&["construct", "--family", "star:n=4", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.lines().filter(|l| !l.trim().is_empty()).count() >= 3);
}

#[test]
fn construct_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.g6");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["construct", "--family", "wheel:n=9", "--format", "g6", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(Graph::from_graph6(text.trim()).unwrap().n(), 9);
}

#[test]
fn check_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    let graphs = [
        Graph::complete(5).unwrap(),
        Graph::complete_bipartite(2, 3).unwrap(),
        Graph::cycle(6).unwrap(),
    ];
    let lines: Vec<String> = graphs.iter().map(Graph::to_graph6).collect();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let (code, out, _) = call(&["check", "--input", path.to_str().unwrap(), "--forbidden", "C6", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid("check", &out);
    let v: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(v.len(), 3);
    assert_eq!(v[0]["planar"], false);
    assert_eq!(v[1]["planar"], true);
    assert_eq!(v[1]["outerplanar"], false);
    assert_eq!(v[2]["outerplanar"], true);
    assert_eq!(v[2]["forbidden"]["found"], true);
    assert_eq!(v[0]["forbidden"]["found"], false);
}

#[test]
fn rho_json_and_csv() {
    let g6 = Graph::star(10).unwrap().to_graph6();
    let (code, out, _) = call(&["rho", "--g6", &g6, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid("rho", &out);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert!((v["rho"].as_f64().unwrap() - 3.0).abs() < 1e-9);

    let (code, out, _) = call(&["rho", "--g6", &g6, "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph6,rho,residual,iterations"));
}

#[test]
fn transform_modes() {
    let (code, out, _) = call(&["transform", "--partition", "5,3,1", "--i", "0", "--j", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "[6,2,1]");
    let (code, out, _) = call(&["transform", "--partition", "5,3,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
    let (code, out, _) = call(&["transform", "--partition", "5,3,1", "--target", "9"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().last().unwrap(), "(8,1) -> [9]");
}

#[test]
fn search_outputs_validate() {
    let (code, out, _) = call(&[
        "search", "--class", "outerplanar", "--forbidden", "M2", "--nmin", "4", "--nmax", "6", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_valid("search_report", &out);

    let (code, out, _) = call(&[
        "search", "--class", "planar", "--forbidden", "C3", "--mode", "local", "--nmax", "7",
        "--restarts", "2", "--seed", "3", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_valid("search_report", &out);

    let (code, out, _) = call(&["search", "--forbidden", "M2", "--nmin", "5", "--nmax", "6", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "n,best_rho,certificate_graph6,candidates,seconds");
    assert_eq!(lines.count(), 2);

    let (_, out, _) = call(&["search", "--forbidden", "M2", "--nmin", "7", "--nmax", "7", "--format", "g6"]);
    let star = canonical_graph(&Graph::star(7).unwrap()).unwrap();
    assert_eq!(Graph::from_graph6(out.trim()).unwrap(), star);
}

#[test]
fn verify_outputs_and_codes() {
    let (code, out, _) = call(&["verify", "--suite", "claim-3.5", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid("traceability_report", &out);

    let (code, out, err) = call(&["verify", "--suite", "claim-4.3", "--format", "json"]);
    assert_eq!(code, EXIT_VERIFY);
    assert_valid("traceability_report", &out);
    assert!(err.contains("verification failed"));

    let (code, out, _) = call(&["verify", "--suite", "claim-3.3", "--suite", "claim-4.2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn verify_config_sections() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suites.conf");
    std::fs::write(&path, "seed = 9\n[lemma-lm1]\ncases = 4\ns2 = 1..2\n[lemma-lm5]\ncases = 2\n").unwrap();
    let (code, out, _) = call(&[
        "verify", "--suite", "lemma-lm1", "--suite", "lemma-lm5", "--config", path.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let suites = v["suites"].as_array().unwrap();
    assert!(suites.iter().all(|s| s["failures"].as_array().unwrap().is_empty()));
    assert!(suites[0]["cases"].as_u64().unwrap() > 0);

    let (code, _, _) = call(&["verify", "--suite", "lemma-lm1", "--set", "cases=1", "--set", "s2=1"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = call(&["verify", "--suite", "lemma-lm1", "--set", "bogus=1"]);
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["rho", "--g6", "~~~"],
        vec!["rho"],
        vec!["construct", "--family", "k1hop:t=2,l=5"],
        vec!["construct", "--family", "k1hop:t=2,l=5,n=3"],
        vec!["check", "--g6", "C~", "--forbidden", "Q9"],
        vec!["transform", "--partition", "9", "--target", "5,3,1"],
        vec!["transform", "--partition", "3,3", "--i", "0", "--j", "0"],
        vec!["search", "--nmax", "12"],
        vec!["search", "--nmax", "0"],
        vec!["search", "--mode", "local", "--nmax", "6", "--start", "E~~w"],
        vec!["verify", "--suite", "no-such-suite"],
        vec!["construct", "--family", "star:n=5", "--format", "csv"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, EXIT_DOMAIN, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn checkpoint_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("run.ckpt");
    let ck = ck.to_str().unwrap();
    let (code, first, _) = call(&["search", "--forbidden", "M2", "--nmin", "4", "--nmax", "5", "--checkpoint", ck, "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let (code, again, _) = call(&["search", "--forbidden", "M2", "--nmin", "4", "--nmax", "5", "--checkpoint", ck, "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let strip = |s: &str| s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&first), strip(&again));
    let (code, _, err) = call(&["search", "--forbidden", "M3", "--nmin", "4", "--nmax", "5", "--checkpoint", ck]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("checkpoint"));
}

#[test]
fn non_convergence_exits_three() {
    let g6 = Graph::path(40).unwrap().to_graph6();
    let (code, _, err) = call(&["rho", "--g6", &g6, "--tol", "1e-300"]);
    assert_eq!(code, EXIT_INTERNAL, "{err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for sub in ["construct", "check", "rho", "transform", "search", "verify"] {
        assert!(out.contains(sub));
    }
    assert_eq!(call(&["--version"]).0, EXIT_OK);
}

#[test]
fn binary_honours_thread_variable() {
    let bin = env!("CARGO_BIN_EXE_spexlab");
    let ok = Command::new(bin)
        .args(["search", "--forbidden", "M2", "--nmin", "5", "--nmax", "6", "--format", "g6"])
        .env("SPEXLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 2);
    let bad = Command::new(bin)
        .args(["rho", "--g6", "C~"])
        .env("SPEXLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_DOMAIN));
    let fail = Command::new(bin).args(["verify", "--suite", "claim-4.3"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_VERIFY));
}
