use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

use nfc_core::scalar::{rat, KPoly};

fn nfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfc")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = nfc(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn resonances_of_m1() {
    let r = json_ok(&["resonances", "--family", "mm", "--m", "1"]);
    assert_eq!(r["tool"], "nfc");
    assert_eq!(r["command"], "resonances");
    assert_eq!(r["result"]["resonances"], serde_json::json!([2, 3]));
    assert_eq!(r["input"]["surface"]["order"], 13);
}

#[test]
fn quadric_charpoly_with_printed_matrix() {
    // (1/8) k (2k+3) (k-1) (2k^2-3k+2)^2
    let p = |c: &[i64]| KPoly::from_rationals(&c.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>());
    let expected = [p(&[0, 1]), p(&[3, 2]), p(&[-1, 1]), p(&[2, -3, 2]).pow(2)]
        .iter()
        .fold(KPoly::constant(nfc_core::scalar::GaussianRational::real(rat(1, 8))), |acc, f| &acc * f);
    let want: Vec<String> = expected.coeffs().iter().map(ToString::to_string).collect();

    let r = json_ok(&["charpoly", "--family", "quadric", "--order", "14", "--matrix", "displayed"]);
    assert_eq!(r["result"]["order"], 14);
    assert_eq!(strings(&r["result"]["char_poly"]["coefficients"]), want);

    let r = json_ok(&["charpoly", "--family", "quadric", "--order", "14"]);
    assert_eq!(r["result"]["monic_constant"], "3/16");
    assert_eq!(r["result"]["resonances"], serde_json::json!([]));
}

#[test]
fn ht_is_a_symmetry_of_m1() {
    let out = nfc(&[
        "verify-map",
        "--family",
        "mm",
        "--m",
        "1",
        "--map",
        "ht",
        "--t",
        "1",
        "--order",
        "11",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("defect: zero to order 11"));
}

#[test]
fn wrong_map_reports_first_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    fs::write(&map, r#"{"f": [{"l": 2, "k": 0, "re": "1"}]}"#).unwrap();
    let out = nfc(&["verify-map", "--family", "quadric", "--map", map.to_str().unwrap(), "--order", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["defect"], "nonzero");
    assert_eq!(r["result"]["first_nonzero"]["c"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["normalize", "--family", "cd", "--C", "1", "--D", "-3", "--order-total", "11"];
    let a = nfc(&args);
    let b = nfc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["result"]["stages_through"], 5);
    assert_eq!(r["result"]["check"]["holds"], true);
    assert_eq!(r["result"]["map_defect"]["defect"], "zero to order 11");
}

#[test]
fn exit_statuses() {
    // resonant stage under the strict policy
    let out = nfc(&["normalize", "--family", "mm", "--m", "1", "--order", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stage 2 is resonant"));
    let out = nfc(&["normalize", "--family", "mm", "--m", "1", "--order", "6", "--policy", "gauge-zero"]);
    assert_eq!(out.status.code(), Some(0));

    let out = nfc(&["charpoly", "--expr", "u*(z*zb + i*z^2*zb)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(2,1,1)"));

    let out = nfc(&["charpoly", "--expr", "u*z*zb +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 9"));

    // not in the class: phi11 = 2
    let out = nfc(&["charpoly", "--expr", "2*u*z*zb"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(nfc(&["charpoly", "--family", "cd", "--C", "1"]).status.code(), Some(2));
    assert_eq!(nfc(&["charpoly"]).status.code(), Some(2));
    assert_eq!(nfc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn spec_files_and_expressions_agree_with_families() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("surface.json");
    fs::write(&file, r#"{"expr": "u*(z*zb + 1/4*z^2*zb^2)", "order": 9}"#).unwrap();
    let from_file = json_ok(&["charpoly", "--surface", file.to_str().unwrap()]);
    let from_family = json_ok(&["charpoly", "--family", "cd", "--C", "1", "--D", "0", "--order", "9"]);
    assert_eq!(from_file["result"], from_family["result"]);
    assert_ne!(from_file["input_digest"], from_family["input_digest"]);

    // the flag overrides the file's order
    let r = json_ok(&["charpoly", "--surface", file.to_str().unwrap(), "--order-total", "10"]);
    assert_eq!(r["result"]["order"], 10);
}

#[test]
fn transform_output_is_a_surface_spec() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    fs::write(&map, r#"{"f": [{"l": 1, "k": 1, "re": "1/2", "im": "1"}], "g": [{"l": 0, "k": 2, "re": "-1"}]}"#)
        .unwrap();
    let map = map.to_str().unwrap();
    let r = json_ok(&["transform", "--family", "mm", "--m", "1", "--map", map, "--order", "8"]);
    let image = dir.path().join("image.json");
    let spec = serde_json::json!({ "series": r["result"]["series"], "order": r["result"]["order"] });
    fs::write(&image, spec.to_string()).unwrap();
    let out = nfc(&[
        "verify-map",
        "--family",
        "mm",
        "--m",
        "1",
        "--map",
        map,
        "--target",
        image.to_str().unwrap(),
        "--order",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn field_checks() {
    let r = json_ok(&["verify-field", "--family", "mmt", "--m", "1", "--T", "1", "--field", "x", "--order", "11"]);
    assert_eq!(r["result"]["defect"], "zero to order 11");
    let out =
        nfc(&["verify-field", "--family", "mmt", "--m", "1", "--T", "1", "--field", "x-displayed", "--order", "11"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_single_criterion() {
    let r = json_ok(&["selftest", "--criterion", "2"]);
    assert_eq!(r["result"]["passed"], true);
    assert_eq!(r["result"]["criteria"][0]["id"], 2);
    assert_eq!(nfc(&["selftest", "--criterion", "11"]).status.code(), Some(2));
}
