use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use stada::equations::{plane_wave, DiracSystem, Energy, EquationForm};
use stada::field::GridField;
use stada::literal::BasisSymbol;
use stada::par::Execution;
use stada::Float;

fn stada(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stada")).args(args).env_remove("STADA_REPORT_DIR").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stada-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn eval_follows_generator_rules() {
    for (expr, expected) in [("e0 * e1", "e01"), ("star(e)", "e0123"), ("e1 * e1", "-1"), ("e0 ^ e0", "0")] {
        let out = stada(&["eval", expr]);
        assert!(out.status.success(), "{expr}");
        assert_eq!(stdout(&out).trim(), expected, "{expr}");
    }
    assert_eq!(stdout(&stada(&["eval", "--basis", "l", "e2 e3"])).trim(), "l23");
}

#[test]
fn eval_parse_error_reports_position_and_exits_2() {
    let out = stada(&["eval", "e0 * (e1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 8"));
}

#[test]
fn verify_algebra_matches_every_blade_product() {
    let out = stada(&["verify", "--suite", "algebra", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("256/256 blade products matched"));
}

#[test]
fn verify_json_is_deterministic_and_summarized() {
    let args = ["verify", "--suite", "hodge", "--seed", "3", "--backend", "float", "--json"];
    let (a, b) = (stada(&args), stada(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["status"], "pass");
    assert_eq!(v["spec"]["backend"], "float");
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["id"].as_str().unwrap().starts_with("hodge.")));
}

#[test]
fn verify_float_equations_with_more_iterations() {
    let out = stada(&["verify", "--suite", "equations", "--backend", "float", "--iterations", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn a_zero_tolerance_makes_float_checks_fail_with_exit_1() {
    let out = stada(&["verify", "--suite", "hodge", "--backend", "float", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(stada(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(stada(&["verify", "--iterations", "0", "--suite", "algebra"]).status.code(), Some(2));
    assert_eq!(stada(&["residual", "--form", "nope", "--state", "zero"]).status.code(), Some(2));
    assert_eq!(stada(&["residual", "--plane-wave", "m=1,p=1,1,0,0"]).status.code(), Some(2));
    assert_eq!(stada(&["residual", "--plane-wave", "m=1,p=1,0"]).status.code(), Some(2));
    assert_eq!(stada(&["residual", "--form", "tde", "--reduce", "t-H"]).status.code(), Some(2));
    assert_eq!(stada(&["residual"]).status.code(), Some(2));
}

fn residual_json(args: &[&str]) -> (Option<i32>, Value) {
    let out = stada(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

#[test]
fn plane_wave_residuals_vanish() {
    let (code, v) = residual_json(&["residual", "--form", "tde", "--plane-wave", "m=1,p=1,0,0,0"]);
    assert_eq!(code, Some(0));
    assert!(v["max_norm"].as_f64().unwrap() <= 1e-12);
    for form in ["dirac", "ideal", "hde", "ilk", "ilk-even", "ilk-e5"] {
        let (code, v) = residual_json(&[
            "residual", "--form", form, "--backend", "float", "--plane-wave", "m=1,p=5/3,-4/3,0,0,energy=-,which=1",
        ]);
        assert_eq!(code, Some(0), "{form}");
        assert!(v["max_norm"].as_f64().unwrap() <= 1e-12, "{form}: {v}");
    }
}

#[test]
fn zero_state_has_zero_residual() {
    let (code, v) = residual_json(&["residual", "--form", "dirac", "--state", "zero"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["max_norm"], 0.0);
}

#[test]
fn non_solutions_fail_with_exit_1() {
    let (code, v) = residual_json(&["residual", "--form", "ilk", "--state", "e0 exp(i[1,0,0,0])"]);
    assert_eq!(code, Some(1));
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn ilk_reductions_are_reported() {
    for (r, form) in [("t-HI", "tde"), ("t-H", "ilk-even"), ("t-e5", "ilk-e5")] {
        let (code, v) = residual_json(&["residual", "--form", "ilk", "--reduce", r, "--seed", "4"]);
        assert_eq!(code, Some(0), "{r}");
        assert_eq!(v["form"], form);
        assert_eq!(v["max_norm"], 0.0);
        assert!(v["notes"].to_string().contains(r));
    }
    let (code, _) = residual_json(&[
        "residual", "--form", "ilk", "--reduce", "t-H", "--generators", "random", "--potential", "1/2 e1 + e3 exp(i[0,1,0,0])",
    ]);
    assert_eq!(code, Some(0));
}

#[test]
fn random_generators_keep_plane_waves_exact() {
    let (code, v) = residual_json(&[
        "residual", "--form", "hde", "--generators", "random", "--seed", "9", "--plane-wave", "m=2,p=2,0,0,0",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(v["seed"], 9);
}

#[test]
fn grid_dumps_are_accepted_as_states() {
    let sys = DiracSystem::<Float>::canonical(1.0).unwrap();
    let wave = plane_wave(&sys, EquationForm::Tensor, &[1.0, 0.0, 0.0, 0.0], Energy::Positive, 0).unwrap();
    let h = [2.0 * std::f64::consts::PI / 32.0, 1.0, 1.0, 1.0];
    let (grid, warnings) = GridField::sample(&wave, [32, 2, 2, 2], h, Execution::Sequential);
    assert!(warnings.is_empty());
    let dir = scratch("grid");
    let bin = dir.join("state.stgf");
    let json = dir.join("state.json");
    std::fs::write(&bin, grid.to_bytes(BasisSymbol::E)).unwrap();
    std::fs::write(&json, serde_json::to_string(&grid.to_json(BasisSymbol::E)).unwrap()).unwrap();
    for path in [&bin, &json] {
        let (code, v) = residual_json(&["residual", "--form", "tde", "--tolerance", "1e-2", "--state", path.to_str().unwrap()]);
        assert_eq!(code, Some(0), "{v}");
        assert_eq!(v["backend"], "float");
        assert_eq!(v["grid"]["n"], serde_json::json!([32, 2, 2, 2]));
        let err = v["max_norm"].as_f64().unwrap();
        assert!(err > 0.0 && err < 1e-2, "{err}");
    }
    let (code, _) = residual_json(&["residual", "--backend", "exact", "--state", bin.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn report_dir_and_report_subcommand() {
    let dir = scratch("reports");
    let out = Command::new(env!("CARGO_BIN_EXE_stada"))
        .args(["verify", "--suite", "spin", "--seed", "5"])
        .env("STADA_REPORT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let path = dir.join("verify-spin-exact-seed5.json");
    let summary = stada(&["report", path.to_str().unwrap()]);
    assert_eq!(summary.status.code(), Some(0));
    assert!(stdout(&summary).contains("3/3 checks passed"));

    let residual = dir.join("r.json");
    let out = stada(&["residual", "--state", "zero", "--report", residual.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(stdout(&stada(&["report", residual.to_str().unwrap()])).contains("-> pass"));
    assert_eq!(stada(&["report", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}
