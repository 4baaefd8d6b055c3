use std::process::{Command, Output};

use ldmbqc::compiler::{compile_exponential, compile_nand, LinearMap};
use ldmbqc::mbqc_engine::{MbqcPlan, Party, Resource};
use ldmbqc::qudit_state::SparseState;
use ldmbqc::weyl::{CliffordSpec, WeylLabel};

fn ldmbqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldmbqc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find(|l| l.starts_with(key))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

#[test]
fn demos() {
    let out = ldmbqc(&["demo", "nand"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(line(&text, "table:"), "table: 1,1,1,0");
    assert_eq!(
        line(&text, "ncva search:"),
        "ncva search: strongly-nonlocal (search size 64)"
    );
    assert_eq!(
        line(&text, "degree witness:"),
        "degree witness: strongly-nonlocal"
    );

    let text = stdout(&ldmbqc(&["demo", "exponential", "--d", "5", "--u", "2"]));
    assert_eq!(line(&text, "table:"), "table: 1,3,4,2,1");
    assert!(line(&text, "ncva search:").starts_with("ncva search: ncva-found"));

    let text = stdout(&ldmbqc(&["demo", "quadratic", "--d", "3"]));
    assert_eq!(line(&text, "table:"), "table: 0,0,1");
}

#[test]
fn demo_errors_are_compile_errors() {
    assert_eq!(
        ldmbqc(&["demo", "quadratic", "--d", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ldmbqc(&["demo", "exponential", "--d", "5", "--u", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn compile_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    for (args, qudits, table) in [
        (vec!["--d", "3", "--table", "1,0,0"], "12", "1,0,0"),
        (vec!["--d", "5", "--table", "1,0,0,0,0"], "80", "1,0,0,0,0"),
        (
            vec!["--d", "9", "--table", "0,1,2,3,4,5,6,7,8", "--odd-ring"],
            "18",
            "0,1,2,3,4,5,6,7,8",
        ),
    ] {
        let path = dir.path().join(format!("plan{qudits}.json"));
        let mut full = vec!["compile"];
        full.extend(&args);
        full.extend(["--out", path.to_str().unwrap()]);
        let out = ldmbqc(&full);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        assert_eq!(line(&text, "qudits:"), format!("qudits: {qudits}"));
        assert_eq!(line(&text, "verified:"), "verified: true");
        let text = stdout(&ldmbqc(&["analyze", "--plan", path.to_str().unwrap()]));
        assert_eq!(line(&text, "table:"), format!("table: {table}"));
    }
}

#[test]
fn analyze_reports_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, plan: &MbqcPlan| {
        let p = dir.path().join(name);
        std::fs::write(&p, plan.to_json_pretty()).unwrap();
        p
    };
    let nand = write("nand.json", &compile_nand().unwrap().plan);
    let text = stdout(&ldmbqc(&["analyze", "--plan", nand.to_str().unwrap()]));
    assert_eq!(line(&text, "combined degree:"), "combined degree: 2");
    assert_eq!(line(&text, "temporal bound:"), "temporal bound: 1");
    assert!(line(&text, "ncva search:").starts_with("ncva search: strongly-nonlocal"));

    let exp = write(
        "exp.json",
        &compile_exponential(5, 2, &LinearMap::identity())
            .unwrap()
            .plan,
    );
    let text = stdout(&ldmbqc(&["analyze", "--plan", exp.to_str().unwrap()]));
    assert_eq!(line(&text, "combined degree:"), "combined degree: 4");
    assert_eq!(line(&text, "temporal bound:"), "temporal bound: 4");
    assert!(line(&text, "ncva search:").starts_with("ncva search: ncva-found"));

    let party = Party {
        fiducial: WeylLabel::z(3),
        control: CliffordSpec::identity(3),
    };
    let chain = MbqcPlan {
        d: 3,
        n: 1,
        n_parties: 2,
        resource: Resource::State(SparseState::basis(3, vec![0, 0]).unwrap()),
        parties: vec![party; 2],
        q: vec![vec![1], vec![1]],
        q0: vec![0, 0],
        t: vec![vec![0, 0], vec![1, 0]],
        z: vec![1, 1],
        s0: 0,
    }
    .validated()
    .unwrap();
    let chain = write("chain.json", &chain);
    let text = stdout(&ldmbqc(&["analyze", "--plan", chain.to_str().unwrap()]));
    assert_eq!(line(&text, "temporal bound:"), "temporal bound: 4");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"d\": 2,\n \"n\": }").unwrap();
    let out = ldmbqc(&["analyze", "--plan", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        ldmbqc(&["analyze", "--plan", missing.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ldmbqc(&["compile", "--d", "3", "--table", "1,x,0"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ldmbqc(&["compile", "--d", "4", "--table", "1,0,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ldmbqc(&["compile", "--d", "3", "--table", "1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ldmbqc(&["compile", "--d", "4", "--table", "1,0,0,0", "--odd-ring"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ldmbqc(&["table", "--appendix-b", "--p", "17"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ldmbqc(&["demo", "nand", "--unknown"]).status.code(),
        Some(4)
    );
    assert_eq!(ldmbqc(&["--help"]).status.code(), Some(0));
}

#[test]
fn no_file_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = ldmbqc(&[
        "compile",
        "--d",
        "4",
        "--table",
        "1,0,0,0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn seeded_output_is_reproducible() {
    for args in [
        ["--seed", "7", "demo", "nand"],
        ["--seed", "3", "verify-all", "--json"],
    ] {
        let a = ldmbqc(&args);
        let b = ldmbqc(&args);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_mirrors_text() {
    let v: serde_json::Value =
        serde_json::from_slice(&ldmbqc(&["--json", "demo", "nand"]).stdout).unwrap();
    assert_eq!(v["table"], serde_json::json!([1, 1, 1, 0]));
    assert_eq!(v["ncva_search"]["verdict"], "strongly-nonlocal");
    assert_eq!(v["temporal_bound"], 1);
    let v: serde_json::Value =
        serde_json::from_slice(&ldmbqc(&["--json", "table", "--appendix-b", "--p", "3"]).stdout)
            .unwrap();
    assert_eq!(v["sigma"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["rows"], serde_json::json!([[1, 2, 1], [1, 1, 1]]));
}
