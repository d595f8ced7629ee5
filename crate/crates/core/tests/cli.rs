//! The `jetflow` binary end to end: output layouts and exit codes.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn jetflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetflow")).args(args).output().expect("binary runs")
}

fn map_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jetflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn shear() -> PathBuf {
    map_file("shear.map", "vars: z1 z2\nF1 = z1 + z2^2\nF2 = z2\n")
}

fn x_plus_x2() -> PathBuf {
    map_file("xx.map", "# one variable\nvars: x\nF1 = x + x^2\n")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn coeffs(series: &Value) -> Vec<String> {
    series["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap().to_string()).collect()
}

#[test]
fn keller_on_the_shear() {
    let out = jetflow(&["keller", "--map", shear().to_str().unwrap(), "--degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"jac_is_one":true,"div_is_zero":true,"degree":8}"#);
}

#[test]
fn keller_on_a_generic_map() {
    let out = jetflow(&["keller", "--map", x_plus_x2().to_str().unwrap(), "--degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["jac_is_one"], false);
    assert_eq!(v["div_is_zero"], false);
}

#[test]
fn invert_all_methods() {
    let out = jetflow(&["invert", "--map", x_plus_x2().to_str().unwrap(), "--degree", "4", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for m in ["exp", "iterates", "solve"] {
        assert_eq!(coeffs(&v["G"][m][0]), ["1", "-1", "2", "-5"]);
    }
    assert_eq!(v["agree"], true);
    assert_eq!(v["inverse"], true);
}

#[test]
fn infer_both_methods() {
    let out = jetflow(&["infer", "--map", x_plus_x2().to_str().unwrap(), "--degree", "4", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(coeffs(&v["a"][0]), ["1", "-1", "3/2"]);
    assert_eq!(v["a"], v["a_log"]);
    assert_eq!(v["agree"], true);
}

#[test]
fn jacobian_and_deform() {
    let p = shear();
    let p = p.to_str().unwrap();
    let v = json(&jetflow(&["jacobian", "--map", p, "--degree", "5", "--method", "exp"]));
    assert_eq!(coeffs(&v["jacobian"]), ["1"]);
    let v = json(&jetflow(&["jacobian", "--map", p, "--degree", "5", "--matrix"]));
    assert_eq!(coeffs(&v["JF"]["entries"][0][1]), ["2"]);

    let v = json(&jetflow(&["deform", "--map", p, "--degree", "4"]));
    assert_eq!(v["t"], "symbolic");
    assert_eq!(v["Ft"][0]["terms"][1]["coeff"], serde_json::json!(["0", "1"]));
    let v = json(&jetflow(&["deform", "--map", p, "--degree", "4", "--t", "-1"]));
    assert_eq!(coeffs(&v["F"][0]), ["1", "-1"]);
}

#[test]
fn structure_commands() {
    let p = shear();
    let p = p.to_str().unwrap();
    let v = json(&jetflow(&["parity", "--map", p, "--degree", "5"]));
    assert_eq!(v["a_even"], true);
    assert_eq!(v["G_equals_minus_F_minus"], true);

    let out = jetflow(&["bcw", "--map", p, "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nilpotent"], true);
    assert_eq!(v["a_equals_H"], true);

    let out = jetflow(&["liouville", "--matrix", "0 1; 0 0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mode"], "exact-nilpotent");
    assert_eq!(v["exp_M"], serde_json::json!([["1", "1"], ["0", "1"]]));

    let v = json(&jetflow(&["liouville", "--matrix", "0.5 -0.25; 0.125 0.75"]));
    assert_eq!(v["mode"], "numeric");
    assert!(v["max_abs_error"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn verify_passes() {
    for p in [shear(), x_plus_x2()] {
        let out = jetflow(&["verify", "--map", p.to_str().unwrap(), "--degree", "6"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn exit_codes() {
    // a failed identity: e^M is too large for the absolute tolerance
    let out = jetflow(&["liouville", "--matrix", "20 1; 0 20"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);

    let bad = map_file("bad.map", "vars: x\nF1 = x + 0.5*x^2\n");
    let out = jetflow(&["infer", "--map", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let not_f1 = map_file("const.map", "vars: x\nF1 = 1 + x\n");
    assert_eq!(jetflow(&["invert", "--map", not_f1.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(jetflow(&["keller", "--map", "/nonexistent/F.map"]).status.code(), Some(2));
    assert_eq!(jetflow(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(jetflow(&["selftest", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(jetflow(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--seed", "7", "--cases", "6", "--degree", "5"];
    let a = jetflow(&args);
    let b = jetflow(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 6);
    assert_ne!(jetflow(&["selftest", "--seed", "8", "--cases", "6", "--degree", "5"]).stdout, a.stdout);
}

#[test]
fn library_entry_point_matches_binary() {
    let p = shear();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = jetflow::cli::run(["jetflow", "keller", "--map", p.to_str().unwrap()], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, jetflow(&["keller", "--map", p.to_str().unwrap()]).stdout);
}
