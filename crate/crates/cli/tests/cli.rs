use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horikawa"))
        .args(args)
        .env_remove("HORIKAWA_CECH_LIMIT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_csv_has_four_rows_at_six() {
    let out = run(&["classify", "--pg", "6", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "pg,image,d,L_a,L_b,Ksq");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.starts_with("6,") && l.ends_with(",8")));
}

#[test]
fn classify_range_json() {
    let out = run(&["classify", "--pg", "3", "--to", "12"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "classify --pg 3 --to 12");
    assert_eq!(v["payload"].as_array().unwrap().len(), 28);
}

#[test]
fn classify_candidate_rejection_exits_2() {
    let out = run(&["classify", "--pg", "6", "--candidate", "F:4", "--bundle", "3,10"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["payload"]["reason"], "degree_bound");
    let out = run(&["classify", "--pg", "6", "--candidate", "cone:4", "--bundle", "3,10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["payload"]["verdict"], "accept");
}

#[test]
fn cohom_with_oracle() {
    let out = run(&["cohom", "--surface", "F:3", "--bundle", "-2,-5", "--oracle"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["payload"]["cohomology"]["h1"], 0);
    assert_eq!(v["payload"]["cohomology"], v["payload"]["oracle"]);
}

#[test]
fn cohom_limit_is_a_rejection() {
    let out = Command::new(env!("CARGO_BIN_EXE_horikawa"))
        .args(["cohom", "--surface", "F:1", "--bundle", "3,12", "--oracle"])
        .env("HORIKAWA_CECH_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn cover_plane_quartic() {
    let out = run(&["cover", "--surface", "P2", "--bundle", "4", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let p = &json(&out)["payload"];
    assert_eq!((p["invariants"]["Ksq"].as_i64(), p["invariants"]["pg"].as_i64()), (Some(2), Some(3)));
    assert_eq!(p["plurigenus"][1], 10);
}

#[test]
fn foliate_smooth_recipe() {
    let out = run(&["foliate", "--d", "4", "--ell", "9", "--m", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let r = &v["payload"]["report"];
    assert_eq!(r["divisor_class"]["coeffs"], serde_json::json!([-4, -14]));
    let zeros = r["zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 9);
    assert!(zeros.iter().all(|z| z["multiplicity"] == 8));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn foliate_explicit_points() {
    let out = run(&["foliate", "--d", "2", "--a", "1,2,3,4", "--field", "2^3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["payload"]["report"]["total_multiplicity"], 32);
    let bad = run(&["foliate", "--d", "2", "--a", "1,1"]);
    assert_eq!(code(&bad), 2);
    let odd = run(&["foliate", "--d", "3", "--ell", "2"]);
    assert_eq!(code(&odd), 2);
}

#[test]
fn foliate_outside_case_reports_and_warns() {
    let out = run(&["foliate", "--d", "2", "--ell", "4", "--m", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["payload"]["report"]["case_value"], 2);
    assert!(v["payload"]["quotient"].is_null());
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn foliate_remark_field() {
    let out = run(&["foliate", "--remark55"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["field"], "2^2");
    assert_eq!(v["payload"]["report"]["total_multiplicity"], 52);
}

#[test]
fn deform_is_deterministic() {
    let args = ["deform", "--pg", "6", "--image", "F:2", "--lambda", "0,1,2", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let rows = json(&a)["payload"]["sweep"]["rows"].as_array().unwrap().clone();
    let sep: Vec<bool> = rows.iter().map(|r| r["is_separable"].as_bool().unwrap()).collect();
    assert_eq!(sep, [false, true, true]);
}

#[test]
fn deform_inadmissible_pair_exits_2() {
    assert_eq!(code(&run(&["deform", "--pg", "7", "--image", "F:2"])), 2);
    assert_eq!(code(&run(&["deform", "--pg", "4", "--image", "F:0", "--field", "Q"])), 2);
}

#[test]
fn lift_passes_and_refuses() {
    let out = run(&["lift", "--pg", "3", "--image", "P2"]);
    assert_eq!(code(&out), 0);
    let p = &json(&out)["payload"]["report"];
    assert_eq!(p["passed"], true);
    assert_eq!(p["bundles"][0]["rational"]["h0"], 15);
    // h1(L) = 1 on F_4
    assert_eq!(code(&run(&["lift", "--pg", "6", "--image", "cone:4"])), 2);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["--bogus"])), 64);
    assert_eq!(code(&run(&["classify"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn selftest_exit_code_matches_its_verdicts() {
    let one = run(&["selftest", "--criterion", "3"]);
    assert_eq!(code(&one), 0);
    assert_eq!(json(&one)["payload"]["failed"], 0);

    let all = run(&["selftest"]);
    let v = json(&all);
    let failed = v["payload"]["failed"].as_u64().unwrap();
    assert_eq!(v["payload"]["criteria"].as_array().unwrap().len(), 8);
    assert_eq!(code(&all) == 0, failed == 0);
}
