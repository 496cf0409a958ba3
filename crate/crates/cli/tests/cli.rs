//! The binary end to end: reports, exit codes, config files and round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn drgwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drgwb"))
        .args(args)
        .env_remove("DRGWB_CHECKPOINT_DIR")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = drgwb(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn params_report() {
    let text = stdout(&["params", "-D", "4", "-q", "2", "--alpha", "2", "--beta", "60"]);
    assert!(text.contains("{900,812,648,368;1,9,49,225}"), "{text}");
    assert!(text.contains("eta: [-3, 57, -1, 27]"), "{text}");
    let v = json(&["params", "-D", "2", "-q", "2", "--alpha", "2", "--beta", "6"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "params");
    assert!(v.to_string().contains("18"));
}

#[test]
fn feasibility_reports() {
    let text = stdout(&["feasibility", "--family", "1", "-q", "3", "-D", "6"]);
    assert!(text.contains("eliminated") && text.contains("17 does not divide 400"), "{text}");
    let text = stdout(&["feasibility", "--family", "2", "-q", "3", "-D", "5"]);
    assert!(text.contains("f2_two_adic"), "{text}");
    let text = stdout(&["feasibility", "-q", "2", "-D", "4", "--alpha", "2", "--beta", "60"]);
    assert!(text.contains("verdict"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(drgwb(&["params", "-D", "4", "-q", "0", "--alpha", "1", "--beta", "1"]).status.code(), Some(2));
    let out = drgwb(&["feasibility", "--family", "2", "-q", "2", "-D", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("use sweep instead"));
    assert_eq!(drgwb(&["graph"]).status.code(), Some(2));
    assert_eq!(drgwb(&["graph", "--gen", "nosuch:3"]).status.code(), Some(2));
    assert_eq!(drgwb(&["bogus"]).status.code(), Some(2));
    assert_eq!(drgwb(&["uniform", "--gen", "hypercube:3", "-x", "99"]).status.code(), Some(2));
    assert_eq!(drgwb(&["--help"]).status.code(), Some(0));
    // A completed run exits 0 whatever the verdict.
    assert_eq!(drgwb(&["feasibility", "--family", "1", "-q", "2", "-D", "4"]).status.code(), Some(0));
}

#[test]
fn sweep_csv_and_checkpoint_env() {
    let csv = stdout(&["sweep", "--q-max", "2", "--d-max", "6", "--format", "csv"]);
    assert!(csv.lines().any(|l| l == "2,6,0,0"), "{csv}");
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_drgwb"))
        .args(["sweep", "--q-max", "5", "--d-max", "12"])
        .env("DRGWB_CHECKPOINT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let tsv = std::fs::read_to_string(dir.path().join("sweep.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 4 * 2);
}

#[test]
fn config_file_fills_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# family 1 at q = 3\nfamily = 1\nq = 3\nD = 6\nformat = json\n").unwrap();
    let c = conf.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--config", c, "feasibility"])).unwrap();
    assert_eq!(v["command"], "feasibility");
    // The command line wins over the file.
    let text = stdout(&["--config", c, "feasibility", "-q", "5", "--format", "text"]);
    assert!(text.contains("eliminated"), "{text}");
    assert!(!text.contains("17 does not divide"), "{text}");
}

#[test]
fn graph_and_modules() {
    let text = stdout(&["graph", "--file", &corpus("petersen.el"), "--full"]);
    assert!(text.contains("distance-regular: yes") && text.contains("{3,2;1,1}"), "{text}");
    assert!(text.contains("spectrum matches array"), "{text}");
    let el = stdout(&["graph", "--gen", "cycle:5", "--edge-list"]);
    assert!(el.lines().any(|l| l.trim() == "5"), "{el}");
    let text = stdout(&["modules", "--gen", "hypercube:4"]);
    assert!(text.contains("total dimension") && text.contains("16"), "{text}");
    let csv = stdout(&["modules", "--gen", "folded-hypercube:5", "--mode", "quotient", "--format", "csv"]);
    assert!(csv.lines().count() > 2);
}

#[test]
fn uniform_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fold5.json");
    let p = path.to_str().unwrap();
    let text = stdout(&["uniform", "--gen", "folded-hypercube:5"]);
    assert!(text.contains("uniform: yes") && text.contains("resubstitution: exact on 15 vectors"), "{text}");
    stdout(&["uniform", "--gen", "folded-hypercube:5", "--format", "json", "-o", p]);
    assert!(stdout(&["uniform", "--verify", p]).contains("verified: yes"));
    // A tampered coefficient must not verify.
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let f = &mut v["verdict"]["witness"]["structure"]["f"][0];
    assert!(f.is_string(), "unexpected report layout: {v}");
    *f = serde_json::json!("12345");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = drgwb(&["uniform", "--verify", p]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!out.status.success() || text.contains("verified: no"), "{text}");
}

#[test]
fn uniform_negative_verdicts() {
    let text = stdout(&["uniform", "--gen", "cycle:8"]);
    assert!(text.contains("uniform: no"), "{text}");
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("g.el");
    std::fs::write(&el, "6\n0 3\n0 4\n0 5\n1 3\n1 4\n2 3\n").unwrap();
    let text = stdout(&["uniform", "--file", el.to_str().unwrap()]);
    assert!(text.contains("uniform: no") && text.contains("level 2"), "{text}");
}
