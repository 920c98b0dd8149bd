use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schwarzian")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tamanoi_table() {
    let out = run(&["tables", "--family", "P", "--max", "4", "--format", "text"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim_end().ends_with("P4 = x4 - 5*x1*x3 + 5*x1^2*x2"));
    let out = run(&["tables", "--family", "P", "--max", "0"]);
    assert_eq!(stdout(&out).trim(), "P0 = 1");
}

#[test]
fn other_tables() {
    let out = run(&["tables", "--family", "sigma", "--max", "2"]);
    assert!(stdout(&out).lines().any(|l| l == "sigma2 = psi2"));
    let out = run(&["tables", "--family", "decomp", "--max", "6"]);
    assert!(stdout(&out).lines().any(|l| l == "S6 = S5' + 6*S2*S4 + 10*S2^3"));
    let out = run(&["tables", "--family", "psi", "--max", "2", "--format", "latex"]);
    assert!(stdout(&out).contains("Psi_{2} = "));
    let out = run(&["tables", "--family", "P", "--max", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][3]["text"], "x3 - 4*x1*x2 + 3*x1^3");
}

#[test]
fn table_cap() {
    let out = run(&["tables", "--family", "P", "--max", "21"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evaluation() {
    let out = run(&["eval", "--expr", "exp(z)", "--at", "0", "--max", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in ["S2 = -0.5", "S3 = 0", "S4 = 1"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
    let out = run(&["eval", "--expr", "z", "--at", "0.5", "--max", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["psi", "S"] {
        for entry in v[key].as_array().unwrap().iter().filter(|e| e["n"].as_u64().unwrap() >= 2) {
            assert_eq!(entry["value"], "0", "{entry}");
        }
    }
}

#[test]
fn evaluation_errors() {
    let out = run(&["eval", "--expr", "1/z", "--at", "0", "--max", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole at base point"));
    let out = run(&["eval", "--expr", "z^^2", "--at", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 2"));
    let out = run(&["eval", "--expr", "exp(z/2)", "--at", "0.3", "--metric-cod", "hyperbolic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metric_evaluation() {
    let out = run(&["eval", "--expr", "z/2 + z^2", "--at", "0", "--max", "3", "--metric-dom", "hyperbolic", "--metric-cod", "hyperbolic"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "D1 = 0.5"));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--suite", "symbolic", "--max", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "--suite", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    // A tolerance no float residual can meet still passes exact checks only.
    let out = run(&["verify", "--suite", "frame-flow", "--max", "4", "--trials", "2", "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["verify", "--suite", "two-path", "--max", "6", "--trials", "10", "--format", "json"];
    let seeded = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_schwarzian")).args(args).env("SCHWARZIAN_SEED", seed).output().unwrap()
    };
    let (a, b) = (seeded("11"), seeded("11"));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["suite"], "two-path");
    assert_eq!(v["pass"], true);
    for check in v["checks"].as_array().unwrap() {
        for key in ["name", "status", "max_residual", "witness"] {
            assert!(check.get(key).is_some(), "{key}");
        }
    }
}
