use cqlab_core::checks::{check_all, CheckConfig};
use cqlab_core::fixtures::{fixtures, run_fixture};
use cqlab_core::multipliers::m_stationarity;
use cqlab_core::report::Report;

#[test]
fn every_fixture_matches_its_expectations() {
    let cfg = CheckConfig::default();
    let mut failed = Vec::new();
    for f in fixtures() {
        let out = run_fixture(&f, &cfg).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        if !out.passed {
            failed.push(format!("{}: {}", f.name, out.mismatches.join("; ")));
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn reports_round_trip() {
    let cfg = CheckConfig::default();
    for f in fixtures().iter().filter(|f| !f.verdicts.is_empty()) {
        let inst = f.instance().unwrap();
        let mut r = Report::new(&inst, 0, check_all(&inst, &cfg).unwrap());
        if inst.objective.is_some() {
            r.stationarity = Some(m_stationarity(&inst).unwrap());
        }
        r.seconds = Some(0.125);
        let json = r.to_json();
        let back = Report::from_json(&json).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(back, r, "{}", f.name);
        assert_eq!(back.to_json(), json, "{}", f.name);
    }
    assert!(Report::from_json("{}").is_err());
}
