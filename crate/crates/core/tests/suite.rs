use stada::par::Execution;
use stada::suite::{check_ids, current_convergence, run_check, run_suite_with, upsilon_convergence, Suite, SuiteSpec};
use stada::{Backend, Error};

#[test]
fn sequential_and_parallel_reports_are_identical() {
    for backend in [Backend::Exact, Backend::Float] {
        for suite in [Suite::Algebra, Suite::Hodge, Suite::Representation] {
            let spec = SuiteSpec { backend, ..SuiteSpec::new(suite, 11) };
            let seq = run_suite_with(&spec, Execution::Sequential).unwrap();
            let par = run_suite_with(&spec, Execution::Parallel).unwrap();
            assert_eq!(seq.to_json_pretty(), par.to_json_pretty());
            assert!(seq.passed(), "{}", seq.to_json_pretty());
        }
    }
}

#[test]
fn records_are_sorted_and_cover_the_suite() {
    let report = run_suite_with(&SuiteSpec::new(Suite::Spin, 2), Execution::default()).unwrap();
    let ids: Vec<&str> = report.records.iter().map(|r| r.id.as_str()).collect();
    let mut expected = check_ids(Suite::Spin);
    expected.sort();
    assert_eq!(ids, expected);
    assert_eq!(report.summary.total, 3);
}

#[test]
fn different_seeds_draw_different_samples() {
    let a = run_check("algebra.associativity", &SuiteSpec { backend: Backend::Float, ..SuiteSpec::new(Suite::All, 1) });
    let b = run_check("algebra.associativity", &SuiteSpec { backend: Backend::Float, ..SuiteSpec::new(Suite::All, 2) });
    assert_ne!(a.unwrap().measured, b.unwrap().measured);
}

#[test]
fn invalid_specs_are_rejected() {
    let spec = SuiteSpec { iterations: 0, ..SuiteSpec::new(Suite::All, 0) };
    assert!(matches!(run_check("algebra.trace", &spec), Err(Error::Malformed(_))));
    let spec = SuiteSpec { tolerance: Some(-1.0), ..SuiteSpec::new(Suite::All, 0) };
    assert!(matches!(run_check("algebra.trace", &spec), Err(Error::Malformed(_))));
    assert!(run_check("algebra.nope", &SuiteSpec::new(Suite::All, 0)).is_err());
}

#[test]
fn grid_refinement_is_second_order() {
    for exec in [Execution::Sequential, Execution::Parallel] {
        let (coarse, fine) = upsilon_convergence(exec);
        assert!((3.2..=4.8).contains(&(coarse / fine)), "{coarse} {fine}");
    }
    let (seq, par) = (current_convergence(Execution::Sequential).unwrap(), current_convergence(Execution::Parallel).unwrap());
    assert_eq!(seq, par);
    assert!((3.2..=4.8).contains(&(seq.0 / seq.1)));
}
