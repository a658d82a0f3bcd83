use std::process::{Command, Output};

use adams_fixpoints::fixpoints::{is_fixed_point, FixedPointGroup};
use adams_fixpoints::groups::GroupData;
use serde_json::Value;

fn afix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afix")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = afix(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn factors(v: &Value) -> Vec<u64> {
    v["invariant_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

#[test]
fn agroup_examples() {
    assert_eq!(
        factors(&json(&["agroup", "--group", r#"{"type":"symmetric","n":4}"#])),
        [2, 2]
    );
    assert_eq!(
        factors(&json(&["agroup", "--group", r#"{"type":"abelian","factors":[2,2]}"#])),
        [2, 2, 2]
    );
    assert_eq!(
        factors(&json(&["agroup", "--group", r#"{"type":"alternating","n":3}"#])),
        [3]
    );
    assert_eq!(factors(&json(&["agroup", "--group", "alt:4", "--oracle"])), [6]);
}

#[test]
fn agroup_output_round_trips() {
    for spec in ["sym:5", "alt:5", "cyclic:12", "dihedral:6", "quaternion"] {
        let out = afix(&["agroup", "--group", spec]);
        assert!(out.status.success());
        let a: FixedPointGroup = serde_json::from_slice(&out.stdout).unwrap();
        let g = GroupData::new(a.group.clone()).unwrap();
        for f in &a.generators {
            assert!(is_fixed_point(&g, f, 30, 1e-10), "{spec}");
        }
    }
}

#[test]
fn group_from_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("afix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let group = dir.join("group.json");
    std::fs::write(&group, r#"{"type":"symmetric","n":3}"#).unwrap();
    let report = dir.join("out.json");
    let out = afix(&[
        "agroup",
        "--group",
        group.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(factors(&v), [2]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn closed_form_exit_codes() {
    // A recorded alternating mismatch is not an error.
    let out = afix(&["agroup", "--group", "alt:4", "--closed", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["status"], "mismatch");
    assert_eq!(v["oracle"], serde_json::json!([6]));

    let v = json(&["agroup", "--group", "sym:6", "--closed"]);
    assert_eq!(v["verdict"]["status"], "match");
    let v = json(&["agroup", "--group", "abelian:3,3", "--closed"]);
    assert_eq!(v["predicted_factors"].as_array().unwrap().len(), 4);

    assert_eq!(
        afix(&["agroup", "--group", "cyclic:6", "--closed"]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--sym", "2..5"]);
    assert_eq!(v["fatal"], false);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["verdict"]["status"] == "match"));

    let v = json(&["verify", "--alt", "3..5"]);
    let statuses: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"]["status"].as_str().unwrap())
        .collect();
    assert_eq!(statuses, ["match", "mismatch", "mismatch"]);
    let classes = &v["reports"][1]["verdict"]["classes"];
    assert!(!classes.as_array().unwrap().is_empty());

    let v = json(&["verify", "--abelian", "2:1..3"]);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"]["status"] == "match"));

    assert_eq!(afix(&["verify", "--abelian", "4:1..2"]).status.code(), Some(1));
    assert_eq!(afix(&["verify", "--sym", "5..2"]).status.code(), Some(1));
}

#[test]
fn analytic_examples() {
    let v = json(&["analytic", "residues", "--group", "sym:2", "--fn", r#"{"0":1,"1":-1}"#]);
    let transposition = &v[1]["entries"];
    let at = |p: u64| {
        transposition.as_array().unwrap().iter().find(|e| e["p"] == p).unwrap()["residue"][0]
            .as_f64()
            .unwrap()
    };
    assert!((at(1) - 1.0).abs() < 1e-12, "k(-1)");
    assert!(at(0).abs() < 1e-12, "k(+1)");

    let v = json(&["analytic", "eval", "--t", "0.3", "--fn", "const1"]);
    for row in v.as_array().unwrap() {
        assert!((row["value"][0].as_f64().unwrap() - 0.7).abs() < 1e-9);
    }

    let path = "0.0,0.5 2.0,0.5 2.0,-0.5 0.0,-0.5 0.0,0.5";
    let v = json(&["analytic", "continue", "--path", path, "--fn", "const1"]);
    let m = &v[0]["monodromy"];
    assert!((m[0].as_f64().unwrap() - 1.0).abs() < 1e-8 && m[1].as_f64().unwrap().abs() < 1e-8);
    let v = json(&[
        "analytic",
        "continue",
        "--path",
        path,
        "--group",
        "sym:2",
        "--fn",
        r#"{"0":0.5,"1":0.5}"#,
    ]);
    let m = &v[0]["monodromy"];
    // Class 0 has k = 1/2 at t = 1, so the loop multiplies by -1.
    assert!((m[0].as_f64().unwrap() + 1.0).abs() < 1e-8);
}

#[test]
fn analytic_csv_and_errors() {
    let out = afix(&[
        "analytic",
        "sweep",
        "--group",
        "cyclic:3",
        "--t",
        "0,0 0.5,0 2,1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("t_re,t_im,class_id,lambda_re,lambda_im,psi_re,psi_im")
    );
    assert_eq!(lines.count(), 9);

    // Straight through t = 1.
    assert_eq!(
        afix(&["analytic", "continue", "--path", "0,0 2,0"]).status.code(),
        Some(2)
    );
    assert_eq!(afix(&["analytic", "eval", "--t", "1,0"]).status.code(), Some(2));
    assert_eq!(
        afix(&["analytic", "eval", "--t", "0.2", "--fn", r#"{"0":1,"1":2}"#])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        afix(&["analytic", "eval", "--t", "0.2", "--tol", "0.5"]).status.code(),
        Some(1)
    );
    assert_eq!(
        afix(&["agroup", "--group", "/no/such/file.json"]).status.code(),
        Some(1)
    );
    assert_eq!(afix(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        afix(&["agroup", "--group", "dihedral:60", "--bound", "100"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        afix(&["agroup", "--group", "sym:9", "--oracle", "--guard", "1000"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn minus_one_subcommand() {
    let v = json(&[
        "analytic",
        "minus-one",
        "--group",
        "cyclic:5",
        "--fn",
        r#"{"0":1,"1":2,"2":3,"3":4,"4":5}"#,
    ]);
    assert_eq!(v["result"], "defined_everywhere");
    let v = json(&["analytic", "minus-one", "--group", "sym:2", "--fn", r#"{"0":1,"1":-1}"#]);
    assert_eq!(v["result"], "defined");
}
