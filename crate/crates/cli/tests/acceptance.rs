//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines show up in plain `cargo test` output.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use stada::suite::{run_check, CheckRecord, Status, Suite, SuiteSpec};
use stada::Backend;

const SEED: u64 = 20241016;

struct Line {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(id: &str, backend: Backend, iterations: usize) -> CheckRecord {
    let spec = SuiteSpec { suite: Suite::All, seed: SEED, backend, iterations, tolerance: None };
    run_check(id, &spec).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn passed(records: &[&CheckRecord]) -> bool {
    records.iter().all(|r| r.status == Status::Pass)
}

fn describe(records: &[&CheckRecord]) -> String {
    records
        .iter()
        .map(|r| format!("{}={:.3e} ({})", r.id, r.measured, r.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn line(id: &'static str, name: &'static str, records: &[&CheckRecord], extra: Option<(bool, String)>) -> Line {
    let (ok, note) = extra.unwrap_or((true, String::new()));
    let mut detail = describe(records);
    if !note.is_empty() {
        detail = format!("{detail}; {note}");
    }
    Line { id, name, pass: passed(records) && ok, detail }
}

fn ac1() -> Line {
    let (r, t) = timed(|| check("hodge.table-product", Backend::Exact, 1));
    let fast = t < Duration::from_secs(1);
    line("AC1", "blade-product equivalence", &[&r], Some((fast, format!("{:.3} s (limit 1 s)", t.as_secs_f64()))))
}

fn ac2() -> Line {
    line("AC2", "gamma-matrix reproduction", &[&check("representation.dirac-matrices", Backend::Exact, 1)], None)
}

fn ac3() -> Line {
    line("AC3", "anticommutation", &[&check("representation.anticommutation", Backend::Exact, 1)], None)
}

fn ac4() -> Line {
    line("AC4", "spin covering (100 samples)", &[&check("spin.covering", Backend::Float, 100)], None)
}

fn ac5() -> Line {
    line("AC5", "even bijection (20 generator sets)", &[&check("representation.even-bijection", Backend::Exact, 20)], None)
}

fn ac6() -> Line {
    let translation = check("equations.translation", Backend::Exact, 50);
    let exact = check("equations.plane-waves", Backend::Exact, 1);
    let float = check("equations.plane-waves", Backend::Float, 1);
    line("AC6", "equivalence of the four forms", &[&translation, &exact, &float], None)
}

fn ac7() -> Line {
    line("AC7", "ILK reductions (50 states)", &[&check("equations.ilk-reductions", Backend::Exact, 50)], None)
}

fn ac8() -> Line {
    let analytic = check("equations.current", Backend::Float, 20);
    let exact = check("equations.current", Backend::Exact, 20);
    let grid = check("equations.current-grid", Backend::Float, 1);
    line("AC8", "current conservation", &[&analytic, &exact, &grid], None)
}

fn ac9() -> Line {
    line("AC9", "gauge invariance", &[&check("equations.gauge", Backend::Float, 20)], None)
}

fn ac10() -> Line {
    line("AC10", "operator identities (100 fields)", &[&check("fields.identities", Backend::Exact, 100)], None)
}

/// Strips the environment stamp, the only field allowed to differ.
fn without_environment(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).expect("report is JSON");
    v.as_object_mut().expect("object").remove("environment");
    v
}

fn ac11() -> Line {
    let dir = std::env::temp_dir().join(format!("stada-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let run = |name: &str| {
        let path = dir.join(name);
        let (status, t) = timed(|| {
            Command::new(env!("CARGO_BIN_EXE_stada"))
                .args(["verify", "--suite", "all", "--seed", "1", "--report"])
                .arg(&path)
                .output()
                .expect("binary runs")
        });
        (status.status.code(), std::fs::read_to_string(&path).unwrap_or_default(), t)
    };
    let (code_a, a, ta) = run("a.json");
    let (code_b, b, tb) = run("b.json");
    let _ = std::fs::remove_dir_all(&dir);
    let bytes_equal = a == b;
    let equal = !a.is_empty() && (bytes_equal || without_environment(&a) == without_environment(&b));
    let slowest = ta.max(tb);
    let pass = code_a == Some(0) && code_b == Some(0) && equal && slowest < Duration::from_secs(60);
    Line {
        id: "AC11",
        name: "full suite: fast and deterministic",
        pass,
        detail: format!(
            "exit codes {code_a:?}/{code_b:?}, reports {}, slowest run {:.1} s (limit 60 s)",
            if bytes_equal { "byte-identical" } else if equal { "identical modulo environment" } else { "differ" },
            slowest.as_secs_f64()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Line; 11] = [ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11];
    let mut failures = 0;
    for criterion in criteria {
        let l = criterion();
        println!("{:<5} {} {}: {}", l.id, if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
        failures += usize::from(!l.pass);
    }
    println!("acceptance: {}/11 criteria pass", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
