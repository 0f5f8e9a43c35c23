use orbik3::report::{export_lattice, export_series, run_suite, Status, SuiteOptions, EXPORT_LATTICES, SUITES};

#[test]
fn all_suites_pass() {
    let rep = run_suite("all", &SuiteOptions::default()).unwrap();
    let failed: Vec<_> = rep.checks.iter().filter(|c| c.status == Status::Fail).map(|c| &c.check_id).collect();
    assert!(failed.is_empty(), "{failed:?}");
    for s in &SUITES[..7] {
        assert!(rep.checks.iter().any(|c| c.check_id.starts_with(&format!("{s}."))), "{s}");
    }
}

#[test]
fn unknown_suite() {
    assert!(run_suite("lattice", &SuiteOptions::default()).is_err());
}

#[test]
fn json_layout() {
    let rep = run_suite("codes", &SuiteOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    assert_eq!(v["schema"], "orbik3.report/1");
    assert_eq!(v["suite"], "codes");
    assert_eq!(v["checks"][0]["status"], "pass");
    assert!(v["checks"][0].get("witness").is_none());
    assert!(rep.to_text().contains("weight-8 count: 759 pass"));
}

#[test]
fn exports() {
    for name in EXPORT_LATTICES {
        let v = export_lattice(name).unwrap();
        assert!(v["labels"].as_array().is_some_and(|l| !l.is_empty()), "{name}");
    }
    assert!(export_lattice("e8").is_none());
    let s = export_series(1).unwrap();
    let rows = s["coefficients"].as_array().unwrap();
    assert!(rows.iter().any(|r| r[0] == "1" && r[1] == "-2" && r[2] == 20));
}
