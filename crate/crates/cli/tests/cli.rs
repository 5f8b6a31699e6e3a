use std::process::{Command, Output};

use serde_json::Value;

fn pbt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbt"))
        .args(args)
        .env_remove("PBT_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn minimal_success_column_matches_closed_form() {
    let o = pbt(&["merits", "--variant", "mpbt", "--d", "2", "--N", "2..8"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 7);
    for row in rows {
        let n: u32 = row[1].parse().unwrap();
        let den = 1u64 << (n + 1);
        let num = den - (n as u64 + 2);
        assert_eq!(row[4], format!("{}/{}", num / gcd(num, den), den / gcd(num, den)));
        let p: f64 = row[3].parse().unwrap();
        assert!((p - num as f64 / den as f64).abs() < 1e-15);
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn optimal_probabilistic_qutrit() {
    let o = pbt(&["merits", "--variant", "ppbt-opt", "--d", "3", "--N", "5"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][4], "5/13");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["merits", "--N", "5..2"][..],
        &["merits", "--variant", "teleport"],
        &["figure", "fig7"],
        &["compare", "--tol", "nonsense=1"],
        &["merits", "--d", "1"],
        &["sdc", "--variant", "ppbt"],
    ] {
        assert_eq!(pbt(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn compare_passes_and_breaches() {
    let o = pbt(&["compare", "--d", "2", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("breach"));
    let o = pbt(&[
        "compare",
        "--d",
        "2",
        "--N",
        "3",
        "--variant",
        "dpbt",
        "--tol",
        "fidelity=0",
        "--tol",
        "det_fidelity=0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn compare_reports_conversion_fidelity() {
    let o = pbt(&["compare", "--d", "3", "--N", "2", "--variant", "conv-ppbt-opt"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().find(|l| l.contains(",fidelity,")).unwrap();
    assert!(row.contains(",0.2,1/5,"), "{row}");
}

#[test]
fn resource_cap_exits_four() {
    let o = Command::new(env!("CARGO_BIN_EXE_pbt"))
        .args(["compare", "--N", "5", "--variant", "dpbt"])
        .env("PBT_MAX_DIM", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn json_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("merits.json", vec!["merits", "--N", "2..4", "--d", "2"]),
        ("fig5.json", vec!["figure", "fig5"]),
        ("sdc.json", vec!["sdc", "--N", "2..6"]),
        ("overlaps.json", vec!["overlaps", "--N", "2..5"]),
    ] {
        let path = dir.path().join(name);
        let mut full = args.clone();
        full.extend(["--format", "json", "--out", path.to_str().unwrap()]);
        assert!(pbt(&full).status.success());
        let text = std::fs::read_to_string(&path).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{name}");
        assert!(v["records"].as_array().is_some_and(|r| !r.is_empty()));
    }
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&pbt(&["merits", "--N", "2..5", "--simulate"]));
    let b = stdout(&pbt(&["merits", "--N", "2..5", "--simulate"]));
    assert_eq!(a, b);
}

#[test]
fn figure_series() {
    let text = stdout(&pbt(&["figure", "fig2_right"]));
    let rows = csv_rows(&text);
    let series = |name: &str| -> Vec<f64> {
        rows.iter()
            .filter(|r| r[0] == name)
            .map(|r| r[2].parse().unwrap())
            .collect()
    };
    let (m, p) = (series("mPBT_p_succ"), series("pPBT_opt_p_succ"));
    assert_eq!(m.len(), 29);
    assert!(m.iter().zip(&p).all(|(a, b)| a > b));

    let rows = csv_rows(&stdout(&pbt(&["figure", "fig4_left"])));
    let last: f64 = rows.last().unwrap()[2].parse().unwrap();
    assert!((last - 0.778).abs() < 0.002);

    let rows = csv_rows(&stdout(&pbt(&["figure", "fig5", "--N", "2..20"])));
    let printed: Vec<f64> = rows
        .iter()
        .filter(|r| r[0] == "nonopt_vs_optP_as_printed")
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert!(printed.last().unwrap() < &1e-6);

    assert_eq!(pbt(&["figure", "fig4_right", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn sdc_simulated_rows() {
    let o = pbt(&["sdc", "--N", "2..3", "--simulate"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "sim_row_sum_dev").unwrap();
    for row in text.lines().skip(1) {
        // the caveat column is quoted and holds one comma
        let fields: Vec<&str> = row.split(',').collect();
        let dev: f64 = fields[col + 1].parse().unwrap();
        assert!(dev < 1e-9);
    }
    let o = pbt(&["sdc", "--optimal", "--d", "2"]);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",2,true"));
}

#[test]
fn operator_dump_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ops.json");
    let o = pbt(&[
        "compare",
        "--N",
        "2",
        "--variant",
        "mpbt",
        "--dump-operators",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let ops = v.as_array().unwrap();
    assert_eq!(ops.len(), 3);
    assert_eq!(ops[0]["n"], 3);
    assert_eq!(ops[0]["d"], 2);
    assert_eq!(ops[0]["entries"].as_array().unwrap().len(), 64);
}

#[test]
fn opt_vector_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let v = pbt_core::figures::qubit_optimal_eigenvector(3);
    std::fs::write(&path, v.to_json_string()).unwrap();
    let o = pbt(&[
        "merits",
        "--variant",
        "mpbt-opt",
        "--N",
        "3",
        "--opt-vector",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    std::fs::write(&path, "{\"N\": 3}").unwrap();
    let o = pbt(&[
        "merits",
        "--variant",
        "mpbt-opt",
        "--N",
        "3",
        "--opt-vector",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
