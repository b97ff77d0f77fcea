use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grpcert"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).env_remove("GRPCERT_THREADS").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("grpcert").chain(args.iter().copied());
    let code = grpcert::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn rank3_passes_with_exit_zero() {
    let (code, out, _) = run(&["verify", "rank3", "--group", "extraspecial:3:5:3"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["summary"]["fail"], 0);
    assert!(doc["summary"]["pass"].as_u64().unwrap() > 0);
    assert_eq!(doc["schema_version"], 1);
    assert!(doc["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn corrupted_beta_exits_one_with_fractional_multiplicity() {
    let (code, out, _) = run(&["verify", "rank3", "--group", "extraspecial:3:5:3", "--corrupt"]);
    assert_eq!(code, 1);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let fractional = doc["checks"].as_array().unwrap().iter().any(|c| {
        c["name"] == "character" && c["status"] == "fail" && c["witness"]["multiplicity"].as_str().is_some_and(|m| m.contains('/'))
    });
    assert!(fractional);
}

#[test]
fn bad_input_exits_two() {
    let (code, _, err) = run(&["table", "--group", "bogus:1"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 0"));
    let (code, _, err) = run(&["table", "--group", "extraspecial:3:x:3"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 15"));
    let (code, _, _) = run(&["verify"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["table", "--group", "cayley:/nonexistent/g.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/g.json"));
    let (code, _, err) = run(&["verify", "rank3", "--group", "abelian:3,3"]);
    assert_eq!(code, 2);
    assert!(err.contains("rk(G)"));
    let (code, _, err) = run(&["subgroups", "--group", "product:extraspecial:3:3:3*cyclic:3", "--classify"]);
    assert_eq!(code, 2);
    assert!(err.contains("rk(Z(G)) = 2"));
    let (code, _, _) = run(&["--max-order", "100", "table", "--group", "extraspecial:3:5:3"]);
    assert_eq!(code, 2);
}

#[test]
fn digest_is_deterministic_across_thread_counts() {
    let digest = |threads: &str| {
        let (code, out, _) = run(&["--threads", threads, "verify", "abelian", "--group", "extraspecial:3:3:3", "--rank", "1"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        doc["stable_digest"].as_str().unwrap().to_string()
    };
    let a = digest("1");
    assert_eq!(a, digest("4"));
    assert_eq!(a.len(), 64);
}

#[test]
fn thread_count_comes_from_flag_then_environment() {
    let out = bin().args(["catalog", "list"]).env("GRPCERT_THREADS", "3").output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["timing"]["threads"], 3);
    let out = bin().args(["--threads", "2", "catalog", "list"]).env("GRPCERT_THREADS", "3").output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["timing"]["threads"], 2);
}

#[test]
fn every_subcommand_runs() {
    for args in [
        vec!["catalog", "list"],
        vec!["subgroups", "--group", "extraspecial:3:3:3"],
        vec!["subgroups", "--group", "extraspecial:3:5:3", "--classify"],
        vec!["table", "--group", "modular:3:3"],
        vec!["verify", "rank3", "--group", "product:extraspecial:3:3:3*cyclic:3"],
        vec!["verify", "rank3", "--group", "extraspecial:3:5:3", "--all-q"],
        vec!["verify", "abelian", "--group", "modular:3:3", "--rank", "1"],
        vec!["verify", "amalgam", "--p", "3"],
        vec!["complex", "demo", "--group", "abelian:3,3", "--n", "2", "--rank", "2"],
        vec!["complex", "demo", "--group", "cyclic:3", "--n", "2", "--rank", "1", "--format", "text"],
    ] {
        let (code, out, err) = in_process(&args);
        assert_eq!(code, 0, "{args:?}: {err}\n{out}");
        assert!(!out.is_empty());
    }
}

#[test]
fn exhausted_search_is_an_observation() {
    let (code, out, _) = in_process(&["complex", "demo", "--group", "cyclic:3", "--n", "3", "--rank", "1"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["summary"]["observation"], 1);
    assert_eq!(doc["conclusion"], "search exhausted");
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = in_process(&["--out", path.to_str().unwrap(), "verify", "amalgam", "--p", "3"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["config"]["degree_bound"], 18);
    assert!(doc["conclusion"].as_str().unwrap().starts_with("obstruction confirmed"));
}

#[test]
fn cayley_and_permutation_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let cayley = dir.path().join("c3.json");
    std::fs::write(&cayley, r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let (code, out, err) = in_process(&["table", "--group", &format!("cayley:{}", cayley.display())]);
    assert_eq!(code, 0, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["parameters"]["degrees"], serde_json::json!([1, 1, 1]));
    let perm = dir.path().join("s3.json");
    std::fs::write(&perm, r#"{"degree": 3, "generators": [[1,0,2],[1,2,0]]}"#).unwrap();
    let (code, out, err) = in_process(&["table", "--group", &format!("perm:{}", perm.display())]);
    assert_eq!(code, 0, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["parameters"]["degrees"], serde_json::json!([1, 1, 2]));
    let broken = dir.path().join("bad.json");
    std::fs::write(&broken, r#"{"order": 2, "table": [[0,1],[1,1]]}"#).unwrap();
    let (code, _, _) = in_process(&["table", "--group", &format!("cayley:{}", broken.display())]);
    assert_eq!(code, 2);
}
