use std::process::{Command, Output};

use rectbeta_cli::{mc_verify, McConfig, McReport};
use serde_json::Value;

fn rectbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectbeta")).args(args).output().expect("spawn")
}

fn json(args: &[&str]) -> Value {
    let out = rectbeta(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_owned()).collect()
}

#[test]
fn k2m_default_cumulants() {
    let v = json(&["k2m", "--q", "2", "--gamma", "3/2", "--order", "2", "--route", "all"]);
    assert_eq!(strs(&v), ["6", "66"]);
    let v = json(&["k2m", "--q", "1", "--gamma", "1", "--order", "2"]);
    assert_eq!(strs(&v), ["2", "12"]);
}

#[test]
fn k2m_then_m2k_round_trips() {
    let m = json(&["k2m", "--q", "3/2", "--gamma", "2/3", "--order", "4", "--k", "1,-1/2,1/3,2"]);
    let m = strs(&m).join(",");
    let k = json(&["m2k", "--q", "3/2", "--gamma", "2/3", "--order", "4", "--m", &m]);
    assert_eq!(strs(&k), ["1", "-1/2", "1/3", "2"]);
}

#[test]
fn charpoly_of_scalars() {
    let v = json(&["charpoly", "--ra", "1", "--rb", "1", "--m", "1", "--n", "1"]);
    assert_eq!(v["polynomial"], "z^1 - 2");
    assert_eq!(strs(&v["coefficients"]), ["1", "-2"]);
}

#[test]
fn conv_moment_trace() {
    // E[tr CC*] = tr AA* + tr BB*
    let v = json(&["conv-moment", "--lambda", "1", "--ra", "1,1/2", "--rb", "2,1", "--m", "2", "--n", "3", "--theta", "3/7"]);
    assert_eq!(v, "9/2");
}

#[test]
fn jack_single_box() {
    let v = json(&["jack", "--lambda", "1", "--theta", "2", "--nvars", "3"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "1");
}

#[test]
fn laguerre_first_moment() {
    assert_eq!(strs(&json(&["laguerre", "--q", "2", "--gamma", "3/2", "--order", "1"])), ["6"]);
}

#[test]
fn duality_ratios() {
    let v = json(&["duality", "--r", "1,1/2", "--m", "2", "--n", "3", "--order", "2"]);
    assert_eq!(strs(&v["ratios"]), ["2", "8"]);
}

#[test]
fn convolve_adds_cumulants() {
    let a = json(&["k2m", "--q", "2", "--gamma", "1", "--order", "3", "--k", "1,2,3"]);
    let b = json(&["k2m", "--q", "2", "--gamma", "1", "--order", "3", "--k", "2,-1,1"]);
    let sum = json(&["k2m", "--q", "2", "--gamma", "1", "--order", "3", "--k", "3,1,4"]);
    let (a, b) = (strs(&a).join(","), strs(&b).join(","));
    let c = json(&["convolve", "--q", "2", "--gamma", "1", "--order", "3", "--ma", &a, "--mb", &b]);
    assert_eq!(c, sum);
}

#[test]
fn exit_codes() {
    assert_eq!(rectbeta(&["k2m", "--q", "2", "--gamma", "1", "--order", "0"]).status.code(), Some(2));
    assert_eq!(rectbeta(&["k2m", "--q", "x", "--gamma", "1", "--order", "2"]).status.code(), Some(2));
    assert_eq!(rectbeta(&["m2k", "--q", "2", "--gamma", "-1", "--order", "3", "--m", "1,2,3"]).status.code(), Some(3));
    assert_eq!(rectbeta(&["k2m", "--q", "2", "--gamma", "1", "--order", "2", "--route", "nope"]).status.code(), Some(2));
    assert_ne!(rectbeta(&["no-such-command"]).status.code(), Some(0));
}

#[test]
fn mc_verify_from_config_file() {
    let cfg = McConfig {
        m: 2,
        n: 3,
        theta_case: "one".into(),
        spectra_a: vec!["1".into(), "1/2".into()],
        spectra_b: vec!["1".into(), "0".into()],
        statistics: vec![vec![1], vec![2]],
        samples: 4000,
        seed: 17,
    };
    let path = std::env::temp_dir().join(format!("rectbeta-mc-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let out = json(&["mc-verify", "--config", path.to_str().unwrap()]);
    let again = json(&["mc-verify", "--config", path.to_str().unwrap()]);
    let reseeded = json(&["mc-verify", "--config", path.to_str().unwrap(), "--seed", "18"]);
    std::fs::remove_file(&path).ok();

    let reports: Vec<McReport> = serde_json::from_value(out.clone()).unwrap();
    assert_eq!(reports.len(), 2);
    for r in &reports {
        assert_eq!(r.samples + r.rejected, 4000);
        assert!(r.z_score.abs() <= 5.0, "{r:?}");
    }
    assert_eq!(out, again);
    assert_ne!(out, reseeded);

    // the floats may differ in the last digit after a text round trip
    let direct = mc_verify(&cfg).unwrap();
    for (d, r) in direct.iter().zip(&reports) {
        assert_eq!(d.statistic, r.statistic);
        assert!((d.empirical - r.empirical).abs() <= 1e-12 * d.empirical.abs());
        assert!((d.stderr - r.stderr).abs() <= 1e-12 * d.stderr);
    }
}

#[test]
fn missing_config_is_a_usage_error() {
    assert_eq!(rectbeta(&["mc-verify", "--config", "/nonexistent/cfg.json"]).status.code(), Some(2));
}
