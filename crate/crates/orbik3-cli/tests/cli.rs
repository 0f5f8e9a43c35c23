use std::process::{Command, Output};

fn orbik3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbik3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn codes_suite() {
    let o = orbik3(&["run", "codes"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weight-8 count: 759 pass"));
}

#[test]
fn genus_suite_at_order_one() {
    let o = orbik3(&["run", "genus", "--order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("20y^-2 -128y^-1 +216 -128y +20y^2 pass"));
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(orbik3(&["run", "nope"]).status.code(), Some(2));
    assert_eq!(orbik3(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_report_is_deterministic() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("orbik3-a-{}.json", std::process::id()));
    let b = dir.join(format!("orbik3-b-{}.json", std::process::id()));
    for p in [&a, &b] {
        let o = orbik3(&["run", "mathieu", "--seed", "3", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["schema"], "orbik3.report/1");
    assert!(v.get("wall_time_ms").is_none());
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn octad_tool() {
    let o = orbik3(&["octad", "2,4,6,8,9,18"]);
    let s = stdout(&o);
    assert!(s.contains("listed as #5"));
    assert!(s.contains("remainder {11,17}"));
    assert_eq!(orbik3(&["octad", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn mog_grids() {
    let s = stdout(&orbik3(&["mog", "0"]));
    assert!(!s.contains('•'));
    let s = stdout(&orbik3(&["mog", "#28"]));
    assert_eq!(s.matches('•').count(), 8);
}

#[test]
fn export_lattice_document() {
    let o = orbik3(&["export", "lattice", "k"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lattice"]["rank"], 4);
    assert_eq!(v["lattice"]["gram"][2][3], "3");
    assert_eq!(v["labels"][0], "κ1");
}
