use std::path::PathBuf;
use std::process::{Command, Output};

use fo3pdl::parser::{parse_fo, parse_state};
use fo3pdl::structures::Structure;

fn model(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "models", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_fo3pdl"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

#[test]
fn translate_to_pdl_and_fo3() {
    let (code, out, _) = run(&["translate", "--to", "pdl", "exists y. (x <= y & P(y))"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "loop(le . test(P & <inv(le)>true) . inv(le))");
    assert!(parse_state(out.trim()).is_ok());

    let (code, out, _) = run(&["translate", "--to", "fo3", "P(x)"]);
    assert_eq!((code, out.trim()), (0, "P(x)"));

    let (code, out, _) = run(&[
        "translate",
        "--to",
        "fo3",
        "exists y. exists z. exists w. x <= y & y <= z & z <= w & P(w)",
    ]);
    assert_eq!(code, 0);
    assert!(parse_fo(out.trim()).unwrap().count_vars() <= 3);
}

#[test]
fn parse_errors_exit_with_two() {
    let (code, _, err) = run(&["translate", "exists ."]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn evaluation() {
    let (code, out, _) = run(&["eval", "--model", &model("m0.json"), "<a>Q"]);
    assert_eq!((code, out.trim()), (0, "0 1"));
    let (code, out, _) = run(&["eval", "--model", &model("m1.json"), "c3(a)"]);
    assert_eq!((code, out.trim()), (0, "(1,3)"));
    let (code, out, _) = run(&[
        "eval",
        "--model",
        &model("m0.json"),
        "--assign",
        "x=3",
        "exists y. x <= y & P(y)",
    ]);
    assert_eq!((code, out.trim()), (0, "true"));
}

#[test]
fn unbound_variables_exit_with_three() {
    let (code, _, err) = run(&[
        "eval",
        "--model",
        &model("m0.json"),
        "exists y. x <= y & P(y)",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("`x`"), "{err}");
}

#[test]
fn interval_preservation_check() {
    let (code, out, _) = run(&["check-ip", "--model", &model("m0.json")]);
    assert_eq!((code, out.trim()), (0, "a: ok"));
    let (code, out, _) = run(&["check-ip", "--model", &model("crossing.json")]);
    assert_eq!(code, 4);
    assert_eq!(out.trim(), "a: counterexample (a1=0, a2=1, b=1, forward)");
    let (code, _, _) = run(&["eval", "--model", &model("crossing.json"), "P"]);
    assert_eq!(code, 4);
    let (code, out, _) = run(&[
        "eval",
        "--allow-non-ip",
        "--model",
        &model("crossing.json"),
        "P",
    ]);
    assert_eq!((code, out.trim()), (0, "1"));
}

#[test]
fn generated_models_are_interval_preserving() {
    let dir = std::env::temp_dir().join(format!("fo3pdl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for kind in ["until", "monotone", "succ", "random"] {
        let file = dir.join(format!("{kind}.json"));
        let file = file.to_string_lossy();
        let (code, _, err) = run(&[
            "gen", "--kind", kind, "--size", "7", "--seed", "3", "--out", &file,
        ]);
        assert_eq!(code, 0, "{err}");
        let text = std::fs::read_to_string(&*file).unwrap();
        assert!(Structure::from_json(&text, false).is_ok(), "{kind}: {text}");
        let (code, out, _) = run(&["check-ip", "--model", &file]);
        assert_eq!(code, 0, "{kind}: {out}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_commands() {
    let (code, out, _) = run(&["fuzz", "--iters", "200", "--seed", "42"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS: 200 cases"), "{out}");

    let file = std::env::temp_dir().join(format!("fo3pdl-report-{}.json", std::process::id()));
    let (code, _, _) = run(&["fuzz", "--iters", "20", "--out", &file.to_string_lossy()]);
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    std::fs::remove_file(&file).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["cases"], 20);

    let (code, out, _) = run(&["exhaustive", "exists y. a(x,y) & P(y)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS"), "{out}");

    let (code, out, _) = run(&["equiv", "exists y. a(x,y)", "exists y. a(y,x)"]);
    assert_eq!(code, 1);
    assert!(out.contains("assignment: x=0"), "{out}");
}

#[test]
fn non_ip_fuzzing_finds_disagreements() {
    let (code, out, _) = run(&[
        "fuzz",
        "--iters",
        "300",
        "--allow-non-ip",
        "--weights",
        "negation-heavy",
        "--no-shrink",
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAIL"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).0, 3);
    assert_eq!(run(&["translate", "--to", "pdl", "a(x,y) & a(y,z)"]).0, 0);
    assert_eq!(run(&["fuzz", "--iters", "0"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
}
