use parahol::scenarios::{
    catalog_document, catalog_names, catalog_scenario, run_catalog, run_suite, scenario_load, Report, RunConfig,
    Verdict, DEFAULT_SEED, SEED_ENV,
};
use parahol::Error;
use serde_json::{json, Value};

fn run(name: &str, suite: Option<&str>) -> Report {
    run_suite(&catalog_scenario(name).unwrap(), suite, &RunConfig::default()).unwrap()
}

fn check<'a>(r: &'a Report, id: &str, args: &[&str]) -> &'a parahol::scenarios::CheckResult {
    r.checks
        .iter()
        .find(|c| c.id == id && c.args.iter().map(String::as_str).eq(args.iter().copied()))
        .unwrap_or_else(|| panic!("{id} {args:?} not in report for {}", r.scenario))
}

#[test]
fn catalog_verdicts() {
    for r in run_catalog(&RunConfig::default()).unwrap() {
        if r.scenario == "broken-jacobi" {
            assert!(!r.passed);
            let c = check(&r, "jacobi", &[]);
            assert_eq!(c.verdict, Verdict::Fail);
            assert_eq!(c.witness, Some(json!({"triple": ["e1", "e2", "e3"], "jacobiator": "e3"})));
        } else {
            let bad: Vec<_> = r.failures().map(|c| (&c.id, &c.args, &c.observed)).collect();
            assert!(r.passed, "{}: {bad:?}", r.scenario);
        }
    }
}

#[test]
fn suite_examples() {
    let r = run("para-kahler-R4", Some("kahler"));
    assert!(r.passed);
    for id in ["connection-flat", "k-integrable", "split", "form-closed", "structure-compatible"] {
        assert_eq!(check(&r, id, &[]).verdict, Verdict::Pass, "{id}");
    }

    let r = run("iwasawa-sl2", Some("manin-triple"));
    assert!(r.passed);
    assert_eq!(check(&r, "manin-triple", &[]).observed, json!(true));

    let r = run("nonintegrable-R4", Some("nijenhuis"));
    assert!(r.passed);
    let n = check(&r, "nijenhuis-tm-zero", &[]);
    assert_eq!(n.observed, json!(false));
    assert!(n.witness.as_ref().unwrap().as_str().unwrap().ends_with("= ∂x3"));
    assert_eq!(check(&r, "phi", &["1", "2", "3"]).observed, json!("1"));
}

#[test]
fn suites_filter_checks() {
    let r = run("std-R3", Some("dirac"));
    assert!(r.checks.iter().all(|c| c.suite == "dirac"));
    assert_eq!(r.suites, vec!["dirac"]);
    let e = run_suite(&catalog_scenario("std-R3").unwrap(), Some("nope"), &RunConfig::default()).unwrap_err();
    assert_eq!(e, Error::UnknownSuite("nope".into()));
    assert_eq!(catalog_scenario("missing").unwrap_err(), Error::UnknownScenario("missing".into()));
}

#[test]
fn reports_are_deterministic() {
    let cfg = RunConfig { seed: 7, ..RunConfig::default() };
    for name in ["std-R2", "para-kahler-R4", "iwasawa-sl2"] {
        let s = catalog_scenario(name).unwrap();
        let a = run_suite(&s, None, &cfg).unwrap().without_timing().to_json();
        let b = run_suite(&s, None, &cfg).unwrap().without_timing().to_json();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn report_round_trips_through_json() {
    let r = run("b2-double", None);
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema_version"], json!(1));
    assert_eq!(v["config"]["seed"], json!(DEFAULT_SEED));
    // Exact values travel as strings.
    assert_eq!(check(&r, "r-matrix-component", &["1", "3"]).observed, json!("1/2"));
}

#[test]
fn documents_round_trip() {
    for name in catalog_names() {
        let s = catalog_scenario(name).unwrap();
        let again = scenario_load(&serde_json::to_string(&s.doc).unwrap()).unwrap();
        assert_eq!(again.doc, s.doc, "{name}");
    }
}

#[test]
fn other_seeds_still_pass() {
    let cfg = RunConfig { seed: 99, ..RunConfig::default() };
    for name in ["std-R2", "para-kahler-R4", "iwasawa-sl3"] {
        assert!(run_suite(&catalog_scenario(name).unwrap(), None, &cfg).unwrap().passed, "{name}");
    }
}

#[test]
fn seed_from_environment() {
    std::env::set_var(SEED_ENV, "12345");
    assert_eq!(RunConfig::from_env().seed, 12345);
    std::env::set_var(SEED_ENV, "not a number");
    assert_eq!(RunConfig::from_env().seed, DEFAULT_SEED);
    std::env::remove_var(SEED_ENV);
}

#[test]
fn declared_valid_broken_jacobi_is_rejected() {
    let mut doc: Value = serde_json::from_str(catalog_document("broken-jacobi").unwrap()).unwrap();
    doc["construction"]["algebra"]["declared_valid"] = json!(true);
    let e = scenario_load(&doc.to_string()).unwrap_err();
    assert!(matches!(e, Error::JacobiFailure { .. }), "{e}");
}

#[test]
fn malformed_documents_name_the_field() {
    let e = scenario_load("{").unwrap_err();
    assert!(matches!(e, Error::Parse { .. }));
    let mut doc: Value = serde_json::from_str(catalog_document("std-R2").unwrap()).unwrap();
    doc["schema_version"] = json!(9);
    let e = scenario_load(&doc.to_string()).unwrap_err();
    assert!(matches!(e, Error::InvalidField { ref field, .. } if field == "schema_version"));
}
