use std::path::Path;
use std::process::{Command, Output};

fn growthlab(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn simulate_is_reproducible_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["simulate", "--model", "lpp", "--M", "1", "--N", "1", "--q", "0.5", "--samples", "4", "--seed", "7"];
    assert_eq!(code(&growthlab(dir.path(), &args)), 0);
    let first = std::fs::read_to_string(dir.path().join("simulate_lpp.csv")).unwrap();
    assert_eq!(code(&growthlab(dir.path(), &args)), 0);
    let second = std::fs::read_to_string(dir.path().join("simulate_lpp.csv")).unwrap();
    assert_eq!(first, second);
    assert!(first.starts_with("sample_index,value\n") && first.ends_with('\n'));
    assert_eq!(first.lines().count(), 5);
}

#[test]
fn png_rows_carry_matching_g() {
    let dir = tempfile::tempdir().unwrap();
    let o = growthlab(dir.path(), &["simulate", "--model", "png", "--M", "6", "--N", "4", "--q", "0.5", "--samples", "20", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("simulate_png.csv")).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[1], f[2], "{line}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["simulate", "--model", "lpp", "--M", "2", "--N", "2", "--q", "0.5", "--samples", "3"],
        &["simulate", "--model", "cube", "--samples", "3", "--seed", "1"],
        &["simulate", "--model", "lpp", "--M", "2", "--N", "2", "--q", "1.5", "--samples", "3", "--seed", "1"],
        &["exact", "--method", "nope"],
        &["tw-table", "--xi-min", "-11"],
        &["experiment", "--experiment", "thm99", "--seed", "1", "--samples", "2"],
        &["verify", "--inject-fault", "other"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(code(&growthlab(dir.path(), args)), 2, "{args:?}");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# bessel table\nmethod = bessel\nalpha = 1\nn = 3\n").unwrap();
    let o = growthlab(dir.path(), &["exact", "--config", cfg.to_str().unwrap(), "--n", "5"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("exact_bessel.csv")).unwrap();
    assert_eq!(text.lines().count(), 7);
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&growthlab(dir.path(), &["exact", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn bessel_and_toeplitz_tables_agree() {
    let dir = tempfile::tempdir().unwrap();
    for m in ["bessel", "toeplitz"] {
        assert_eq!(code(&growthlab(dir.path(), &["exact", "--method", m, "--alpha", "1", "--n", "6"])), 0);
    }
    let col = |name: &str| -> Vec<f64> {
        std::fs::read_to_string(dir.path().join(name))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let (b, t) = (col("exact_bessel.csv"), col("exact_toeplitz.csv"));
    assert_eq!(b.len(), 7);
    assert!(b.iter().zip(&t).all(|(x, y)| (x - y).abs() < 1e-9));
}

#[test]
fn verify_report_and_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let o = growthlab(dir.path(), &["verify"]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    let records = report.as_array().unwrap();
    assert!(records.len() > 100);
    for r in records {
        let obj = r.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["abs_diff", "identity", "lhs", "params", "pass", "rhs"]);
        assert!(obj["params"].is_object() && obj["lhs"].is_string() && obj["pass"].is_boolean());
    }

    let o = growthlab(dir.path(), &["verify", "--inject-fault", "kernel-sign"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("kernel_projection"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert!(report.as_array().unwrap().iter().any(|r| r["identity"] == "kernel_projection" && r["pass"] == false));
}

#[test]
fn missed_threshold_exits_4_with_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let o = growthlab(
        dir.path(),
        &["experiment", "--experiment", "lpp_edge", "--N", "10", "--samples", "100", "--seed", "1", "--threshold", "0"],
    );
    assert_eq!(code(&o), 4);
    for f in ["lpp_edge_samples.csv", "lpp_edge_curve.csv", "lpp_edge.svg", "lpp_edge_summary.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let svg = std::fs::read_to_string(dir.path().join("lpp_edge.svg")).unwrap();
    assert!(svg.contains("width=\"800\"") && svg.contains("height=\"600\""));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("lpp_edge_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["pass"], false);
    assert_eq!(summary["seed"], 1);
}

#[test]
fn tw_table_both_reports_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let o = growthlab(dir.path(), &["tw-table", "--method", "both", "--xi-min", "-4", "--xi-max", "2", "--step", "0.5"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("tw2_table.csv")).unwrap();
    assert!(text.starts_with("xi,f2,method,est_error,discrepancy\n"));
    assert_eq!(text.lines().count(), 14);
    let o = growthlab(dir.path(), &["tw-table", "--method", "both", "--tolerance", "0"]);
    assert_eq!(code(&o), 3);
}
