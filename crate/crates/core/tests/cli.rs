use std::process::{Command, Output};

use serde_json::Value;

fn gqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqc"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_one_way_state() {
    let out = gqc(&["analyze", "--sts", "0.6,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["label"], "ONE_WAY_STEER_AB");
    assert_eq!(doc["report"]["e_ab"], 0.649166418921);
    assert_eq!(doc["report"]["e_ba"], 1.14446543958);
    assert_eq!(doc["signature"]["A|B"]["verdict"], "STEERING");
    assert_eq!(doc["signature"]["B|A"]["verdict"], "ENTANGLEMENT");
    assert_eq!(doc["teleport"]["direction"], "A_TO_B");
}

#[test]
fn analyze_product_state() {
    let out = gqc(&["analyze", "--sts", "0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["label"], "PRODUCT");
    assert_eq!(doc["teleport"], Value::Null);
}

#[test]
fn analyze_unphysical_matrix() {
    let out = gqc(&["analyze", "--cm", "1,1,0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["label"], "UNPHYSICAL");
    assert_eq!(doc["physical"], false);
    assert_eq!(doc["report"], Value::Null);
}

#[test]
fn analyze_raw_matrix_matches_sts() {
    let by_params = json(&gqc(&["analyze", "--sts", "0.6,0,1"]));
    let cov = &by_params["covariance"];
    let arg = format!("{},{},{}", cov["n"], cov["m"], cov["c1"]);
    let by_cm = json(&gqc(&["analyze", "--cm", &arg]));
    assert_eq!(by_cm["label"], by_params["label"]);
    assert_eq!(by_cm["sts"], Value::Null);
}

#[test]
fn exchanged_noises_give_mirror_reports() {
    let a = json(&gqc(&["analyze", "--sts", "0.7,0.3,1.2"]));
    let b = json(&gqc(&["analyze", "--sts", "0.7,1.2,0.3"]));
    let (ra, rb) = (&a["report"], &b["report"]);
    for (x, y) in [
        ("e_ab", "e_ba"),
        ("d_ab", "d_ba"),
        ("g_ab_opt", "g_ba_opt"),
        ("g_sym_ab", "g_sym_ba"),
        ("s_cond_ab", "s_cond_ba"),
        ("h_cond_ab", "h_cond_ba"),
    ] {
        assert_eq!(ra[x], rb[y], "{x}");
        assert_eq!(ra[y], rb[x], "{y}");
    }
    assert_eq!(ra["ent_ppt"], rb["ent_ppt"]);
    assert_eq!(ra["duan"], rb["duan"]);
    assert_eq!(a["flags"]["steer_ab"], b["flags"]["steer_ba"]);
    assert_eq!(a["signature"]["A|B"]["e"], b["signature"]["B|A"]["e"]);
    assert_eq!(a["teleport"]["direction"], "A_TO_B");
    assert_eq!(b["teleport"]["direction"], "B_TO_A");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["analyze", "--sts", "0.9,0.4,0.1"][..],
        &[
            "scan",
            "--r",
            "0.5",
            "--grid-na",
            "0:2:31",
            "--grid-nb",
            "0:2:29",
            "--format",
            "csv",
        ][..],
        &["thresholds", "--noise", "0.5,1.5"][..],
    ] {
        let a = gqc(args);
        let b = gqc(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn table_and_csv_formats() {
    let out = gqc(&["analyze", "--sts", "0.6,0,1", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("label") && l.ends_with("ONE_WAY_STEER_AB")));
    let out = gqc(&["analyze", "--sts", "0.6,0,1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "key,value");
    assert!(lines.contains(&"report.e_ab,0.649166418921"));
    assert!(lines.contains(&"label,ONE_WAY_STEER_AB"));
}

#[test]
fn thresholds_subcommand() {
    let doc = json(&gqc(&["thresholds", "--noise", "1,1"]));
    assert_eq!(doc["thresholds"]["r_ent"], 0.549306144334);
}

#[test]
fn scan_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    let out = gqc(&[
        "scan",
        "--grid-na",
        "0:2:11",
        "--grid-nb",
        "0:2:11",
        "--r",
        "0.6",
        "--quantities",
        "E_AB,E_BA",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["dims"], serde_json::json!([11, 11]));
    assert_eq!(doc["quantities"].as_object().unwrap().len(), 2);
    assert_eq!(doc["labels"][0], "SYMMETRIC_EPR");
}

#[test]
fn scan_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let spec = r#"{"mode":"RAW_NM_GRID","fixed":1.0,
        "axis1":{"lo":1.0,"hi":3.0,"steps":5},"axis2":{"lo":1.0,"hi":3.0,"steps":5},
        "quantities":["DUAN"]}"#;
    std::fs::write(&path, spec).unwrap();
    let out = gqc(&["scan", "--spec", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("axis1,axis2,DUAN,label"));
    assert!(text.lines().nth(1).unwrap().ends_with(",UNPHYSICAL"));
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["analyze"][..],
        &["analyze", "--sts", "0.6,0,1", "--cm", "1,1,0"][..],
        &["analyze", "--sts", "0.6,0"][..],
        &["analyze", "--sts", "-1,0,0"][..],
        &["scan", "--grid-n", "1:5:3", "--r", "0.5"][..],
        &["scan", "--format", "table"][..],
        &["frobnicate"][..],
    ] {
        let out = gqc(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_cleanly() {
    let out = gqc(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("analyze"));
}
