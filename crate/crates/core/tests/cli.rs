use std::fs;
use std::path::Path;
use std::process::{Command, Output};

mod common;

fn steane_ft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steane-ft")).args(args).env_remove("STEANE_FT_OUT").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tables_are_written_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = steane_ft(&["tables", "--out-dir", d]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for id in ["1a", "1b", "2a", "2b"] {
        assert!(dir.path().join(format!("table_{id}.csv")).exists());
    }
    let t1a = fs::read_to_string(dir.path().join("table_1a.csv")).unwrap();
    assert_eq!(t1a.lines().next(), Some("k,x_star,max_p_th"));
    assert_eq!(t1a.lines().nth(1), Some("1,3,2.545392838961480e-04"));
    let t2b = fs::read_to_string(dir.path().join("table_2b.csv")).unwrap();
    assert_eq!(t2b.lines().count(), 1 + 36);
    assert!(t2b.lines().any(|l| l.starts_with("6,inf,1,3.241350178274260e-04")));

    let out = tempfile::tempdir().unwrap();
    let o = steane_ft(&["tables", "--check", d, "--out-dir", out.path().to_str().unwrap()]);
    assert!(o.status.success());

    let edited = t1a.replace("1.581849407936365e-04", "1.59e-04");
    fs::write(dir.path().join("table_1a.csv"), edited).unwrap();
    let o = steane_ft(&["tables", "--check", d, "--out-dir", out.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("table_1a.csv line 3"));
}

#[test]
fn out_dir_defaults_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_steane-ft"))
        .args(["tables", "--table", "1b"])
        .env("STEANE_FT_OUT", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("table_1b.csv").exists());
    assert!(!dir.path().join("table_1a.csv").exists());
}

#[test]
fn threshold_single_point() {
    let o = steane_ft(&["threshold", "--block", "aux", "--k", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "k,r,x_star,max_p_th\n1,inf,2,4.235493434985176e-04\n");
    let o = steane_ft(&["threshold", "--block", "aux", "--k", "2", "--r", "10", "--gate", "t", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = v[0]["max_p_th"].as_f64().unwrap();
    assert!(common::rel_err(p, 2.332028780560102e-04) < 1e-12);
}

#[test]
fn threshold_curves_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("curves.csv");
    let o = steane_ft(&["threshold", "--k", "1", "--x-max", "5", "--curves", f.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&f).unwrap();
    assert_eq!(text.lines().next(), Some("k,x,p_th"));
    assert!(text.lines().count() >= 6);
}

#[test]
fn bad_arguments_exit_with_usage_code() {
    assert_eq!(steane_ft(&["threshold", "--r", "0.5"]).status.code(), Some(2));
    assert_eq!(steane_ft(&["threshold", "--k", "0"]).status.code(), Some(2));
    assert_eq!(steane_ft(&["resources", "--gate", "cz"]).status.code(), Some(2));
    assert_eq!(steane_ft(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn unreadable_input_is_a_failure() {
    let o = steane_ft(&["depth", "--circuit", "/nonexistent/path.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn resources_report_and_depth_check() {
    let o = steane_ft(&["resources"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("total 175"));
    assert!(s.contains("admissible up to k=26"));
    let o = steane_ft(&["resources", "--depth-limit", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = steane_ft(&["resources", "--gate", "toffoli", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["runtime"]["total_cnots"].as_u64(), Some(436 * 7));
}

#[test]
fn depth_report_matches_block_profiles() {
    let o = steane_ft(&["depth", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r: Vec<u64> = v["depth"]["r"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(r, [7, 13, 13, 15, 14, 10, 10]);
    let o = steane_ft(&["depth", "--block", "aux", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ledgers"]["X"].as_array().unwrap().len(), 0);
}

#[test]
fn propagate_lists_known_class() {
    let o = steane_ft(&["propagate", "--no-flags", "--format", "csv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("z_syn,x_syn,meas,x_flags,z_flags,residual,members"));
    assert!(s.lines().any(|l| l == "000/000,000/000,000001,,,X7,X25C X26T X29T X35T"));
}

#[test]
fn circuit_text_round_trips_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("period.txt");
    let o = steane_ft(&["circuit", "-o", f.to_str().unwrap()]);
    assert!(o.status.success());
    let built = steane_ft(&["depth", "--format", "json"]);
    let parsed = steane_ft(&["depth", "--circuit", f.to_str().unwrap(), "--format", "json"]);
    assert!(parsed.status.success(), "{}", String::from_utf8_lossy(&parsed.stderr));
    let a: serde_json::Value = serde_json::from_slice(&built.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&parsed.stdout).unwrap();
    assert_eq!(a["depth"], b["depth"]);
    assert_eq!(a["ledgers"], b["ledgers"]);
}

#[test]
fn flags_audit_rejects_misplaced_gadget_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("misplaced.txt");
    fs::write(&f, common::misplaced_flag_circuit().to_text()).unwrap();
    assert!(steane_ft(&["flags"]).status.success());
    let o = steane_ft(&["flags", "--circuit", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("CN17"));
}

#[test]
fn verify_passes() {
    let o = steane_ft(&["verify", "--faults", "40", "--format", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn gadget_listing() {
    let o = steane_ft(&["circuit", "--gadget", "tGadget", "--code", "trivial"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("QUBITS "));
    assert!(!Path::new("table_1a.csv").exists());
}
