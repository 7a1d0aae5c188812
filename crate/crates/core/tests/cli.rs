use std::process::{Command, Output};

use serde_json::Value;

fn dkp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkp"))
        .args(args)
        .env_remove("DKP_OUTPUT_DIR")
        .output()
        .expect("spawn dkp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "stderr: {text}");
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn spectrum_json_reference_level() {
    let o = dkp(&["spectrum", "--m", "1", "--g1", "0.3", "--g2", "0", "--n-max", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let states = v["states"].as_array().unwrap();
    assert_eq!(states.len(), 4);
    let e0 = states[0]["energy"].as_f64().unwrap();
    assert!((e0 - 3.0 / 10f64.sqrt()).abs() < 1e-15);
    assert_eq!(v["params"]["n_max"], 3);
    assert_eq!(v["params"]["g1"], 0.3);
}

#[test]
fn spectrum_csv_round_trips_doubles() {
    let o = dkp(&["spectrum", "--g1", "0.3", "--g2", "0.2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert_eq!(&header, vec!["n", "energy", "s", "gamma", "lambda", "binding_energy"]);
    let records: Vec<csv::StringRecord> = rows.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 6);
    let config = dkp_core::CouplingConfig::spin0(1.0, 0.3, 0.2).unwrap();
    for r in &records {
        let n: usize = r[0].parse().unwrap();
        let e: f64 = r[1].parse().unwrap();
        assert_eq!(e.to_bits(), dkp_core::energy_level(&config, n).unwrap().energy.to_bits());
    }
}

#[test]
fn no_bound_states_is_data_with_allow_empty() {
    let o = dkp(&["spectrum", "--g1", "0", "--g2", "0.3", "--allow-empty", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "no_bound_states");
    assert!(v["states"].as_array().unwrap().is_empty());

    let o = dkp(&["spectrum", "--g1", "0", "--g2", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "no_bound_states");
}

#[test]
fn critical_coupling_exit_code_and_error_object() {
    let o = dkp(&["spectrum", "--g1", "0.3", "--g2", "0.4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let e = stderr_json(&o);
    assert_eq!(e["code"], "critical_coupling");
    assert!(e["message"].as_str().unwrap().contains("1/4"));
    assert_eq!(e["context"]["subcommand"], "spectrum");
}

#[test]
fn invalid_mass_and_bad_flags() {
    let o = dkp(&["spectrum", "--m", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "invalid_parameter");

    let o = dkp(&["spectrum", "--spin", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "usage");

    let o = dkp(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identical_flags_give_identical_bytes() {
    for args in [
        &["wavefunction", "--g1", "0.3", "--g2", "0.2", "--n", "1", "--samples", "51"][..],
        &["current", "--spin", "1", "--n", "2", "--samples", "41", "--format", "json"][..],
        &["oracle", "--n-max", "2"][..],
    ] {
        let a = dkp(args);
        let b = dkp(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn wavefunction_grid_symmetry() {
    let o = dkp(&["wavefunction", "--g1", "0.3", "--n", "2", "--samples", "201"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["x", "phi", "dphi", "j0", "j1"]);
    let rows: Vec<Vec<f64>> = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[100][0], 0.0);
    assert_eq!(rows[100][1], 0.0);
    for k in 0..100 {
        let (a, b) = (&rows[k], &rows[200 - k]);
        assert_eq!(a[0], -b[0]);
        assert_eq!(a[1], -b[1]);
        assert_eq!(a[2], b[2]);
        assert_eq!(a[3], b[3]);
    }
}

#[test]
fn current_columns_agree() {
    let o = dkp(&["current", "--spin", "1", "--g1", "0.2", "--g2", "0.1", "--n", "1", "--samples", "100"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["x", "j0_matrix", "j0_closed", "j1_matrix", "j1_closed"]);
    for rec in r.records() {
        let v: Vec<f64> = rec.unwrap().iter().map(|f| f.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() <= 1e-12 * v[1].abs().max(v[2].abs()));
        assert_eq!(v[3], 0.0);
    }
}

#[test]
fn channel_weights_must_be_normalized() {
    let o = dkp(&["current", "--spin", "1", "--c-plus", "1", "--c-minus", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "invalid_parameter");
}

#[test]
fn oracle_table_columns() {
    let o = dkp(&["oracle", "--g1", "0.3", "--g2", "0.2", "--n-max", "3"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(
        r.headers().unwrap(),
        vec!["n", "E_analytic", "E_oracle", "abs_diff", "node_count", "iterations"]
    );
    for (n, rec) in r.records().enumerate() {
        let rec = rec.unwrap();
        assert_eq!(rec[0].parse::<usize>().unwrap(), n);
        assert!(rec[3].parse::<f64>().unwrap() < 1e-7);
        assert_eq!(rec[4].parse::<usize>().unwrap(), n);
    }
}

#[test]
fn oracle_scan_without_bound_states() {
    let o = dkp(&["oracle", "scan", "--g1", "0", "--g2", "0.3", "--points", "50"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let signs: Vec<f64> = r
        .records()
        .map(|rec| rec.unwrap()[1].parse::<f64>().unwrap().signum())
        .collect();
    assert_eq!(signs.len(), 50);
    assert!(signs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn verify_algebra_report() {
    for spin in ["0", "1"] {
        let o = dkp(&["verify", "algebra", "--spin", spin]);
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["max_residual"], 0);
        assert_eq!(v["projector_ok"], true);
        assert_eq!(v["conjugation_ok"], true);
    }
}

#[test]
fn verify_all_aggregates_every_suite() {
    let o = dkp(&["verify", "--suite", "all"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["algebra", "spectrum", "parity", "orthogonality", "oracle", "current"]);
    assert_eq!(v["pass"], true, "{v:#}");
    for s in v["suites"].as_array().unwrap() {
        for c in s["checks"].as_array().unwrap() {
            assert!(c.get("measured").is_some() && c.get("threshold").is_some());
        }
    }
}

#[test]
fn dump_betas_shapes() {
    for (spin, dim) in [("0", 5), ("1", 10)] {
        let o = dkp(&["dump", "betas", "--spin", spin]);
        let v: Vec<Vec<Vec<i64>>> = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|m| m.len() == dim && m.iter().all(|r| r.len() == dim)));
    }
}

#[test]
fn check_parity_table() {
    let o = dkp(&["check", "parity", "--n", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert!(r["r_odd"].as_f64().unwrap().abs() < 1e-9);
    }
    let fit = v["report"]["fitted_slope"].as_f64().unwrap();
    let expected = v["report"]["expected_slope"].as_f64().unwrap();
    assert!((fit - expected).abs() < 0.05);
}

#[test]
fn output_dir_env_resolves_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dkp"))
        .args(["spectrum", "--n-max", "1", "--output", "sub/levels.csv"])
        .env("DKP_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("sub/levels.csv")).unwrap();
    assert!(written.starts_with("n,energy,"));
}

#[test]
fn seed_is_accepted_and_ignored() {
    let a = dkp(&["spectrum", "--seed", "7"]);
    let b = dkp(&["spectrum"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hidden_debug_evaluators() {
    let o = dkp(&["debug", "kummer", "--a", "-2", "--b", "1.5", "--z", "0.7"]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().parse().unwrap();
    // M(−2, b, z) = 1 − 2z/b + z²/(b(b+1))
    let want = 1.0 - 2.0 * 0.7 / 1.5 + 0.49 / (1.5 * 2.5);
    assert!((v - want).abs() < 1e-15);

    let o = dkp(&["debug", "laguerre", "--n", "2", "--a", "-1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "domain");
}
