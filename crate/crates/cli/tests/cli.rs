use std::process::{Command, Output};

use serde_json::Value;

fn selmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selmer")).args(args).output().expect("spawn selmer")
}

fn json(args: &[&str]) -> Value {
    let out = selmer(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn output_is_deterministic() {
    let args = ["twist-report", "-a", "1,0,1,4,-6", "--degrees", "3,3"];
    let a = selmer(&args).stdout;
    let b = selmer(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn curve_info_y2_x3_plus_x() {
    let v = json(&["curve-info", "-a", "0,0,0,1,0"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "curve-info");
    assert_eq!(v["j"], "1728");
    let bad: Vec<_> = v["bad_primes"].as_array().unwrap().iter().map(|l| l["p"].as_u64().unwrap()).collect();
    assert_eq!(bad, vec![2]);
    assert_eq!(v["rational_kernels"]["2"], 1);
}

#[test]
fn fourteen_a_joint_polynomial() {
    let v = json(&["twist-report", "-a", "1,0,1,4,-6", "--degrees", "3,3"]);
    let isos = v["isogenies"].as_array().unwrap();
    assert_eq!(isos.len(), 2);
    assert_eq!(isos[0]["isogeny"]["codomain_j"], "-548347731625/1835008");
    assert_eq!(isos[1]["isogeny"]["codomain_j"], "-15625/28");
    assert_eq!(
        v["joint"]["display"],
        "35/192*x^-2 + 7/32*x^-1*y^-1 + 15/64*x^-1*y + 7/192*y^-2 + 9/32 + 3/64*x*y^-1"
    );
    assert_eq!(v["rank"]["rank_zero_lower_bound"], "1/4");
}

#[test]
fn fifty_b_restricted_ratios() {
    let v = json(&[
        "twist-report", "-a", "1,1,1,-13,-219", "--degrees", "3,5", "--restrict", "2:1,inf:+,5:1",
    ]);
    let ratios: Vec<_> = v["isogenies"].as_array().unwrap().iter().map(|i| i["ratio_on_class"].clone()).collect();
    assert_eq!(ratios, vec![Value::from("1"), Value::from("25")]);
}

#[test]
fn pretty_matches_compact() {
    let args = ["family18", "--m", "1", "--n", "3"];
    let compact = json(&args);
    let mut pretty_args = args.to_vec();
    pretty_args.push("--pretty");
    assert_eq!(json(&pretty_args), compact);
}

#[test]
fn hesse_reports_classification() {
    let v = json(&["hesse", "--u", "2", "--v", "1"]);
    assert_eq!(v["kind"], "hesse");
    assert!(v["classification"].is_object());
}

#[test]
fn bad_input_exits_2() {
    for args in [
        vec!["curve-info", "-a", "1,2,3"],
        vec!["curve-info", "-a", "0,0,0,0,0"],
        vec!["twist-report", "-a", "0,0,0,1,0", "--degrees", "11"],
        vec!["verify-empirical", "-a", "1,0,1,4,-6", "--degrees", "3,3", "--bound", "100000000"],
    ] {
        let out = selmer(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["kind"], "error");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn usage_errors_are_rejected() {
    assert!(!selmer(&["no-such-verb"]).status.success());
    assert!(!selmer(&["curve-info"]).status.success());
}
