use std::fs;
use std::process::{Command, Output};

use casimir::cli::output::ForceRow;
use serde_json::Value;

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_rows(o: &Output) -> Vec<Value> {
    serde_json::from_str::<Value>(&stdout(o)).unwrap().as_array().unwrap().clone()
}

#[test]
fn ideal_force_at_100_nm() {
    let o = casimir(&["force", "--model", "ideal", "--gap-um", "0.1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = json_rows(&o);
    assert_eq!(rows.len(), 1);
    let integral = rows[0]["force_pN_integral"].as_f64().unwrap();
    assert!((integral - 272.2977).abs() < 1e-3, "{integral}");
    let sum = rows[0]["force_pN_sum"].as_f64().unwrap();
    assert!(sum > integral);
}

#[test]
fn sweep_rows_in_order_with_decreasing_force() {
    let o = casimir(&["force", "--gap-sweep", "0.1:1.0:10", "--jobs", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = json_rows(&o);
    assert_eq!(rows.len(), 10);
    let gaps: Vec<f64> = rows.iter().map(|r| r["gap_um"].as_f64().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] > w[0]));
    assert!((gaps[0] - 0.1).abs() < 1e-12 && (gaps[9] - 1.0).abs() < 1e-12);
    let forces: Vec<f64> = rows.iter().map(|r| r["force_pN_sum"].as_f64().unwrap()).collect();
    assert!(forces.windows(2).all(|w| w[1] < w[0]), "{forces:?}");
}

#[test]
fn sweep_output_does_not_depend_on_thread_count() {
    let one = casimir(&["force", "--gap-sweep", "0.1:0.5:5:log", "--jobs", "1"]);
    let four = casimir(&["force", "--gap-sweep", "0.1:0.5:5:log", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn csv_layout() {
    let o = casimir(&["correction", "--model", "drude"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "gap_um,delta_numeric_pN,delta_closed_pN,delta_expansion_pN,alpha,relative_to_force");
    assert_eq!(lines.len(), 2);
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[0], "1.000000000e-1");
    // No closed form or expansion for Drude; α is still reported.
    assert_eq!(&cells[2..4], &["", ""]);
    assert_eq!(cells[4], "7.494811450e-2");
    let delta: f64 = cells[1].parse().unwrap();
    assert!((delta - 3.303).abs() < 1e-3, "{delta}");
}

#[test]
fn plasma_correction_reports_every_route() {
    let o = casimir(&["correction", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let row = &json_rows(&o)[0];
    let closed = row["delta_closed_pN"].as_f64().unwrap();
    let expansion = row["delta_expansion_pN"].as_f64().unwrap();
    let alpha = row["alpha"].as_f64().unwrap();
    assert!((closed - 2.5303).abs() < 1e-3);
    assert!((expansion - 2.8925).abs() < 1e-3);
    assert!((alpha - 0.0749481145).abs() < 1e-9);
}

#[test]
fn json_is_stable_under_round_trip() {
    let o = casimir(&["force", "--model", "plasma", "--gap-um", "0.2", "--format", "json"]);
    let text = stdout(&o);
    let rows: Vec<ForceRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rows).unwrap() + "\n", text);
}

#[test]
fn invalid_relaxation_frequency_is_a_config_error() {
    for args in [
        vec!["force", "--model", "drude", "--omega-tau", "none"],
        vec!["force", "--model", "drude", "--omega-tau=-1"],
        vec!["force", "--model", "drude", "--omega-tau", "0"],
    ] {
        let o = casimir(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains("omega_tau"), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn config_errors_name_the_field() {
    for (args, field) in [
        (vec!["force", "--gap-um", "200"], "gap_um"),
        (vec!["force", "--temperature-K", "0"], "temperature_K"),
        (vec!["force", "--rel-tol", "0.5"], "rel_tol"),
        (vec!["force", "--omega-p=-2e16"], "omega_p"),
        (vec!["force", "--radius-um", "nan"], "radius_um"),
    ] {
        let o = casimir(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(field), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn unknown_flags_exit_1_and_help_exits_0() {
    assert_eq!(casimir(&["force", "--bogus"]).status.code(), Some(1));
    assert_eq!(casimir(&["frobnicate"]).status.code(), Some(1));
    let help = casimir(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("correction"));
}

#[test]
fn flags_override_config_file_which_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# shared settings\nmodel = ideal\ngap_um = 0.5\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = json_rows(&casimir(&["force", "--config", cfg]));
    assert!((from_file[0]["gap_um"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    let ideal_integral = from_file[0]["force_pN_integral"].as_f64().unwrap();
    // Bare force scales as a^-3.
    assert!((ideal_integral - 272.2977 / 125.0).abs() < 1e-4, "{ideal_integral}");

    let flagged = json_rows(&casimir(&["force", "--config", cfg, "--gap-um", "0.25"]));
    assert!((flagged[0]["gap_um"].as_f64().unwrap() - 0.25).abs() < 1e-15);

    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "colour = blue\n").unwrap();
    let o = casimir(&["force", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn output_file_receives_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = casimir(&["force", "--model", "ideal", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("gap_um,force_pN_sum,force_pN_integral,n_terms,abs_err_pN\n"));
}

#[test]
fn validate_flags_a_perturbed_reference() {
    let o = casimir(&["validate", "--zeta3-reference", "1.3"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    let first = text.lines().find(|l| l.starts_with("1 ")).unwrap();
    assert!(first.contains("FAIL"), "{first}");
}

#[test]
fn validate_lists_every_check() {
    let o = casimir(&["validate"]);
    let text = stdout(&o);
    for id in ["1 ", "2 ", "3a", "3b", "4a", "4b", "5 ", "6a", "6b", "7 ", "8a", "9 ", "10a", "10b", "11a"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "missing {id}");
    }
    // Exit status mirrors the table.
    let any_fail = text.lines().any(|l| l.contains(" FAIL "));
    assert_eq!(o.status.code(), Some(if any_fail { 3 } else { 0 }));
}
