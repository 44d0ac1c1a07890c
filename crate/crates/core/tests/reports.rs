use sieved_jacobi::verify::{CheckReport, RunParams};
use sieved_jacobi::{Execution, Suite, SuiteConfig};

#[test]
fn suites_are_reproducible_from_seed_and_parameters() {
    for suite in [Suite::Algebra, Suite::SelfAdjoint, Suite::Identities, Suite::EigenY] {
        let cfg = SuiteConfig::new(0.5, 0.5, 3, 8).with_seed(7);
        let a = suite.run(&cfg).unwrap();
        let b = suite.run(&cfg).unwrap();
        let c = suite.run(&cfg.with_execution(Execution::Sequential)).unwrap();
        assert_eq!(a, b, "{suite}");
        assert_eq!(a, c, "{suite} sequential vs default");
    }
}

#[test]
fn every_suite_passes_at_an_exact_parameter_point() {
    // N = 2 is the one order at which every suite, three-term included, has work to do
    let cfg = SuiteConfig::new(0.5, 1.5, 2, 10);
    for suite in Suite::ALL {
        let r = suite.run(&cfg).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.suite, suite.name());
        assert!(r.details.iter().any(|d| d.asserted), "{suite} asserts nothing");
    }
}

#[test]
fn reference_details_do_not_change_the_verdict() {
    let mut r = CheckReport::new("demo", RunParams::new(0.0, 0.0, 1, 0), 1e-8);
    r.record("holds", 1e-12);
    r.reference("alternative form", 3.0);
    assert!(r.pass);
    assert_eq!(r.max_residual, 1e-12);
    r.record("breaks", 1e-3);
    assert!(!r.pass);
}

#[test]
fn nan_residuals_fail() {
    let mut r = CheckReport::new("demo", RunParams::new(0.0, 0.0, 1, 0), 1e-8);
    r.record("nan", f64::NAN);
    assert!(!r.pass);
}
