use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suzuki-ds")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(d, &["construct", "ds-tz", "--field", "2,3,1", "--t", "1", "--z", "1", "--variants", "all-ker", "--out", "d.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(d, &["verify", "ds", "--in", "d.json", "--method", "both", "--report", "r.json"]);
    assert_eq!(code(&o), 0);
    let r = json(&d.join("r.json"));
    assert_eq!(r["tool"], "suzuki-ds");
    assert_eq!(r["config"]["params"]["method"], "both");
    assert_eq!(r["report"]["passed"], true);
    assert_eq!(r["report"]["params"]["k"], 28);
    assert_eq!(r["report"]["params"]["lambda"], 12);
}

#[test]
fn mutated_set_fails_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["construct", "ds-z", "--field", "2,3,1", "--variants", "seed:4", "--out", "d.json"])), 0);
    let mut set = json(&d.join("d.json"));
    set["classes"].as_array_mut().unwrap().pop();
    std::fs::write(d.join("mutated.json"), set.to_string()).unwrap();
    let o = run(d, &["verify", "ds", "--in", "mutated.json", "--report", "r.json"]);
    assert_eq!(code(&o), 1);
    let r = json(&d.join("r.json"));
    assert_eq!(r["report"]["passed"], false);
    let w = r["report"]["witnesses"].as_array().unwrap();
    assert!(!w.is_empty() && w.len() <= 16);
}

#[test]
fn search_at_sixteen_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "ds", "--field", "2,2,1", "--params", "16,6,2,4"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["report"]["count"], 0);
    assert_eq!(r["report"]["sets"], Value::Array(vec![]));
}

#[test]
fn linking_family_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["construct", "linking-r", "--field", "2,6,2", "--variants", "seed:2", "--out", "fam.json"])), 0);
    let o = run(d, &["verify", "linking", "--in", "fam-1.json,fam-2.json,fam-3.json", "--method", "character", "--report", "r.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&d.join("r.json"));
    assert_eq!(r["report"]["params"]["eta"], 1008);
    assert_eq!(r["report"]["params"]["mu"], 976);
    // stripping the construction data leaves the third sets unknown
    let mut f = json(&d.join("fam-2.json"));
    f.as_object_mut().unwrap().remove("construction");
    std::fs::write(d.join("bare.json"), f.to_string()).unwrap();
    assert_eq!(code(&run(d, &["verify", "linking", "--in", "fam-1.json,bare.json"])), 2);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut outs = Vec::new();
    for n in ["1", "3"] {
        let sub = d.join(n);
        std::fs::create_dir(&sub).unwrap();
        let o = run(&sub, &["--threads", n, "--no-timing", "search", "ds", "--field", "2,3,1", "--params", "64,28,12,16", "--report", "r.json"]);
        assert_eq!(code(&o), 0);
        outs.push(std::fs::read(sub.join("r.json")).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(json(&d.join("1/r.json"))["report"]["count"], 1024);
}

#[test]
fn usage_and_precondition_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["search", "ds", "--field", "2,2,1", "--params", "16,6,2"])), 2);
    assert_eq!(code(&run(d, &["construct", "ds-tz", "--field", "2,3,1"])), 2);
    assert_eq!(code(&run(d, &["construct", "pds-z", "--field", "3,2,1"])), 2);
    assert_eq!(code(&run(d, &["verify", "ds", "--in", "missing.json"])), 2);
    assert_eq!(code(&run(d, &["frobnicate"])), 2);
    assert_eq!(code(&run(d, &["field-info", "--field", "4,3,1"])), 2);
}

#[test]
fn chartable_and_field_info() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(d, &["chartable", "--field", "3,2,1", "--csv", "t.csv", "--report", "v.json"]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(d.join("t.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 33);
    assert_eq!(json(&d.join("v.json"))["report"]["passed"], true);
    let o = run(d, &["field-info", "--field", "2,6,2"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["report"]["group_order"], 4096);
    assert_eq!(r["report"]["e"], 2);
}

#[test]
fn dillon_and_example_sets_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["construct", "dillon", "--field", "2,3,1", "--out", "dil.json"])), 0);
    assert_eq!(code(&run(d, &["verify", "ds", "--in", "dil.json", "--method", "groupring"])), 0);
    let o = run(d, &["construct", "example-mf", "--field", "2,3,1", "--t", "1", "--side", "comp", "--j0", "2,3", "--j1", "4,5,6,7", "--out", "ex.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&run(d, &["verify", "ds", "--in", "ex.json"])), 0);
}
