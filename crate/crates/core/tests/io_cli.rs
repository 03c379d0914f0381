mod common;

use std::path::Path;

use common::{path, q, r};
use edgedist::cli::{auto_solver, run, SolverChoice};
use edgedist::io::{read_solution, InstanceDocument, SolutionDocument};
use edgedist::model::{Assignment, BalanceSpec, Instance, VariantSpec};
use serde_json::Value;

fn edist(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["edist"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn instance_document_round_trip() {
    let inst = Instance::builder(path(4), 2)
        .variant("BIO".parse().unwrap())
        .centers(vec![0, 3])
        .balance(BalanceSpec::Additive { tau: q(1, 2) })
        .alpha(q(1, 3))
        .build()
        .unwrap();
    let doc = InstanceDocument::from_instance(&inst);
    let text = doc.to_json();
    let keys: Vec<usize> = ["\"vertices\"", "\"edges\"", "\"p\"", "\"variant\"", "\"balance\"", "\"centers\"", "\"alpha\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "canonical field order");
    assert!(text.contains("\"1/2\"") && text.contains("\"1/3\""));
    let back = InstanceDocument::parse(&text).unwrap().to_instance().unwrap();
    assert_eq!(InstanceDocument::from_instance(&back), doc);
}

#[test]
fn documents_accept_decimals_and_reject_unknown_fields() {
    let text = r#"{"vertices": 2, "edges": [[0, 1, 2.5]], "p": 1, "variant": "IOW", "centers": [0], "alpha": 0.25}"#;
    let inst = InstanceDocument::parse(text).unwrap().to_instance().unwrap();
    assert_eq!(inst.graph().edge(0).weight, q(5, 2));
    assert_eq!(inst.alpha(), q(1, 4));
    assert!(InstanceDocument::parse(r#"{"vertices": 2, "edges": [], "p": 1, "variant": "IO", "extra": 1}"#).is_err());
}

#[test]
fn solution_document_round_trip() {
    let a = Assignment::new(vec![vec![r(1), q(1, 2)], vec![r(0), q(1, 2)]], vec![0, 2]).unwrap();
    let doc = SolutionDocument::from_assignment(&a, Some(q(3, 2)));
    let back = SolutionDocument::parse(&doc.to_json()).unwrap();
    assert_eq!(back.to_assignment().unwrap(), a);
    assert_eq!(back.objective.map(|n| n.0), Some(q(3, 2)));
}

#[test]
fn auto_dispatch() {
    let v = |s: &str| s.parse::<VariantSpec>().unwrap();
    assert_eq!(auto_solver(v("BOW")), SolverChoice::Lp);
    assert_eq!(auto_solver(v("IOW")), SolverChoice::Greedy);
    assert_eq!(auto_solver(v("CI")), SolverChoice::Greedy);
    assert_eq!(auto_solver(v("BIO")), SolverChoice::LpRound);
    assert_eq!(auto_solver(v("CINW")), SolverChoice::Trivial);
    assert_eq!(auto_solver(v("BIOW")), SolverChoice::Exact);
    assert_eq!(auto_solver(v("NO")), SolverChoice::Exact);
}

#[test]
fn classify_exit_codes() {
    let (code, out, _) = edist(&["classify", "IOW"]);
    assert_eq!(code, 0);
    let rep = report(&out);
    assert_eq!(rep["outcome"]["complexity"], "P");
    assert!(rep.get("objective").is_none());
    let (code, out, _) = edist(&["classify", "BC"]);
    assert_eq!(code, 2);
    assert_eq!(report(&out)["outcome"]["kind"], "error");
    let (code, _, err) = edist(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, _, _) = edist(&["classify", "XYZ"]);
    assert_eq!(code, 1);
}

#[test]
fn solve_writes_solution_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"vertices": 4, "edges": [[0,1,1],[1,2,1],[2,3,1]], "p": 2, "variant": "BIO",
                  "balance": {"mode": "explicit", "phi_l": 1, "phi_u": 2}, "centers": [0, 3]}"#;
    let inst = write(dir.path(), "path.json", doc);
    let (code, out, _) = edist(&["solve", &inst]);
    assert_eq!(code, 0, "{out}");
    let rep = report(&out);
    assert_eq!(rep["outcome"]["solver"], "lp-round");
    assert_eq!(rep["objective"], 1);
    assert_eq!(rep["instance"]["edges"], 3);
    let sol = dir.path().join("path.sol");
    assert!(read_solution(&sol).unwrap().is_integral());

    let (code, out, _) = edist(&["validate", &inst, sol.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report(&out)["outcome"]["feasible"], true);

    let bad = write(dir.path(), "bad.sol", r#"{"x": [[1,1,1],[0,0,0]], "centers": [0, 3]}"#);
    let (code, out, _) = edist(&["validate", &inst, &bad]);
    assert_eq!(code, 3);
    let rep = report(&out);
    assert_eq!(rep["outcome"]["violations"][0]["group"], "B1");
    assert!(rep.get("objective").is_none());

    let short = write(dir.path(), "short.sol", r#"{"x": [[1,1],[0,0]], "centers": [0, 3]}"#);
    assert_eq!(edist(&["validate", &inst, &short]).0, 1);

    let (code, _, _) = edist(&["--float", "solve", &inst, "--solver", "exact"]);
    assert_eq!(code, 0);
}

#[test]
fn solve_reports_infeasible_and_limits() {
    let dir = tempfile::tempdir().unwrap();
    let tight = r#"{"vertices": 4, "edges": [[0,1,1],[1,2,1],[2,3,1]], "p": 2, "variant": "BIO",
                    "balance": {"mode": "explicit", "phi_l": 2, "phi_u": 2}, "centers": [0, 3]}"#;
    let inst = write(dir.path(), "tight.json", tight);
    let (code, out, _) = edist(&["solve", &inst]);
    assert_eq!(code, 3);
    assert_eq!(report(&out)["outcome"]["kind"], "infeasible");

    let (code, out, _) = edist(&["generate", "3partition", "4,5,5,5,5,6"]);
    assert_eq!(code, 0);
    let spider = write(dir.path(), "spider.json", &out);
    let (code, out, _) = edist(&["solve", &spider]);
    assert_eq!(code, 4);
    assert_eq!(report(&out)["outcome"]["kind"], "error");
    let (code, _, _) = edist(&["--force", "--threads", "2", "solve", &spider]);
    assert_eq!(code, 0);
}

#[test]
fn generate_is_deterministic() {
    for args in [
        vec!["--seed", "7", "generate", "random", "--n", "6", "--extra", "3", "--weighted"],
        vec!["--seed", "7", "generate", "vcover", "--n", "5", "--p", "2"],
        vec!["generate", "arms", "--p", "2", "--k", "3", "--phi-u", "5"],
        vec!["generate", "wstar", "4,5,5,5,5,6"],
    ] {
        let (c1, a, _) = edist(&args);
        let (c2, b, _) = edist(&args);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert_eq!(a, b);
        InstanceDocument::parse(&a).unwrap().to_instance().unwrap();
    }
    let (_, a, _) = edist(&["--seed", "1", "generate", "random", "--n", "6", "--extra", "3"]);
    let (_, b, _) = edist(&["--seed", "2", "generate", "random", "--n", "6", "--extra", "3"]);
    assert_ne!(a, b);
    assert_eq!(edist(&["generate", "3partition", "2,3,3"]).0, 1);
}

#[test]
fn export_and_bounds_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (_, doc, _) = edist(&["--seed", "3", "generate", "random", "--n", "5", "--extra", "2", "--variant", "BIO"]);
    let inst = write(dir.path(), "r.json", &doc);
    let (code, text, _) = edist(&["export-lp", &inst]);
    assert_eq!(code, 0);
    assert!(text.contains("CONSTRAINTS") && text.contains("balance_upper_i0"));
    let (code, _, _) = edist(&["export-lp", &inst, "--variant", "BIO"]);
    assert_eq!(code, 1);

    let (_, arms, _) = edist(&["generate", "arms", "--p", "2", "--k", "3"]);
    let arms = write(dir.path(), "arms.json", &arms);
    let (code, out, _) = edist(&["bounds", &arms]);
    assert_eq!(code, 0);
    let rep = report(&out);
    let mut sizes: Vec<u64> = rep["outcome"]["sizes"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![3, 6]);
    assert_eq!(rep["outcome"]["tightness"]["additive_tau"], "1/3");
    assert_eq!(rep["outcome"]["tightness"]["multiplicative_tau"], "2/3");
}
