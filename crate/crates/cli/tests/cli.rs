use std::process::{Command, Output};

use newton_commutant::algebra::parse_uni;
use newton_commutant::derivation::{newton_derivation, DerivationJson, PlanarDerivation};
use serde_json::Value;

fn ncomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncomm"))
        .args(args)
        .env_remove("COMMUTANT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = ncomm(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn certify_elliptic() {
    let o = ncomm(&["certify", "--f", "6*x^2+5", "--max-deg-y", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for q in ["q = 1 ", "q = H ", "q = H^2 "] {
        assert!(text.contains(q), "{text}");
    }
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn certify_rejects_linear_force() {
    assert_eq!(ncomm(&["certify", "--f", "x", "--max-deg-y", "3"]).status.code(), Some(2));
}

#[test]
fn pm_three() {
    let o = ncomm(&["pm", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("P_3 = 2*X^2 + 4*X - 6"), "{text}");
    assert!(text.contains("rational roots: {-3, 1}"), "{text}");
}

#[test]
fn pm_even_is_usage_error() {
    assert_eq!(ncomm(&["pm", "--m", "4"]).status.code(), Some(2));
}

#[test]
fn pm_json() {
    let (code, v) = json(&["pm", "--m", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["expected"], serde_json::json!(["-3", "-5/3", "1"]));
    assert_eq!(v["p_at_minus_one"].as_str().map(|s| s.parse::<i64>().is_ok()), Some(true));
}

#[test]
fn usage_errors() {
    assert_eq!(ncomm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ncomm(&["commutant", "--f", "x^^2", "--max-deg-y", "1"]).status.code(), Some(2));
    assert_eq!(ncomm(&["commutant", "--f", "x*y", "--max-deg-y", "1"]).status.code(), Some(2));
    assert_eq!(ncomm(&["parity", "--kind", "III", "--m", "3", "--f", "x"]).status.code(), Some(2));
}

#[test]
fn h_decompose_outcomes() {
    let (code, v) = json(&["h-decompose", "--f", "x^2", "--gamma-dx", "y^3 - 2/3*x^3*y", "--gamma-dy", "x^2*y^2 - 2/3*x^5"]);
    assert_eq!(code, 0);
    assert_eq!(v["q_coeffs"], serde_json::json!(["0", "1"]));
    let o = ncomm(&["h-decompose", "--f", "x", "--gamma-dx", "x", "--gamma-dy", "y"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn commutant_json_round_trips() {
    let (code, v) = json(&["commutant", "--f", "x^3 - x", "--max-deg-y", "5"]);
    assert_eq!(code, 0);
    let delta = newton_derivation(&parse_uni("x^3 - x").unwrap());
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 3);
    for entry in basis {
        let d: DerivationJson = serde_json::from_value(entry["derivation"].clone()).unwrap();
        let g = PlanarDerivation::from_json(&d).unwrap();
        assert!(delta.commutes_with(&g));
    }
}

#[test]
fn lemmas() {
    assert_eq!(ncomm(&["lemmas", "--f", "x^2", "--m-max", "6"]).status.code(), Some(0));
    assert_eq!(ncomm(&["lemmas", "--f", "x", "--m-max", "4"]).status.code(), Some(2));
    let (code, v) = json(&["lemmas", "--f", "x", "--m-max", "4", "--allow-degenerate"]);
    assert_eq!(code, 1);
    let iio3 = v["checks"].as_array().unwrap().iter().find(|c| c["kind"] == "IIo" && c["m"] == 3).unwrap();
    assert_eq!(iio3["pass"], false);
}

#[test]
fn parity_json() {
    let (code, v) = json(&["parity", "--kind", "Io", "--m", "3", "--f", "x^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["equations"][0], "e_4: c_3' = 0");
}

#[test]
fn witnesses_and_family() {
    assert_eq!(ncomm(&["pm-witness", "--m", "5", "--k", "2"]).status.code(), Some(0));
    assert_eq!(ncomm(&["pm-witness", "--m", "5"]).status.code(), Some(0));
    assert_eq!(ncomm(&["pm-witness", "--m", "5", "--k", "3"]).status.code(), Some(2));
    let (code, v) = json(&["laurent-family", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["a"], serde_json::json!(["-1", "3", "1", "1"]));
    assert_eq!(ncomm(&["laurent-family", "--k", "2", "--a-top", "0"]).status.code(), Some(2));
}

#[test]
fn linearize_and_flow() {
    let (code, v) = json(&["linearize", "--dx", "0", "--dy", "2*x + 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["delta"]["dx"], "x + 1/2");
    assert_eq!(v["commutes"], true);
    let (code, v) = json(&[
        "flow-check", "--dx", "1 + x^2", "--dy", "-2*x*y", "--gx", "0", "--gy", "y", "--x0", "0", "--y0", "1",
        "--t-end", "1", "--steps", "2000",
    ]);
    assert_eq!(code, 0);
    assert!(v["max_defect"].as_f64().unwrap() < 1e-6);
    let o = ncomm(&["flow-check", "--dx", "y", "--dy", "x", "--gx", "1", "--gy", "0", "--x0", "0", "--y0", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_json() {
    let (code, v) = json(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_pass"], true);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 7);
    for (i, c) in criteria.iter().enumerate() {
        assert_eq!(c["id"], i as u64 + 1);
        assert!(c["name"].is_string() && c["detail"].is_string());
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn thread_cap() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_ncomm"))
            .args(["lemmas", "--f", "x^3", "--m-max", "5"])
            .env("COMMUTANT_THREADS", value)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&run("4")));
    assert_eq!(run("0").status.code(), Some(2));
}
