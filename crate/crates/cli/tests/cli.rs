use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qclass"))
        .args(args)
        .output()
        .expect("failed to launch qclass")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, split into fields.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn hs_regular_curve_hits_minimum() {
    let out = qclass(&["curve", "--ensemble", "hs", "--method", "closed"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let provenance = lines.next().unwrap();
    assert!(
        provenance.starts_with("# qclass ") && provenance.contains("seed=0"),
        "{provenance}"
    );
    assert_eq!(
        lines.next().unwrap(),
        "zeta,q,method,error_estimate,ensemble,stratum,seed"
    );
    let data = rows(&text);
    assert_eq!(data.len(), 61);
    let mid = &data[30];
    let zeta: f64 = mid[0].parse().unwrap();
    let q: f64 = mid[1].parse().unwrap();
    assert!((zeta - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    assert!((q - 6.7515e-4).abs() < 1e-8, "{q}");
    // 17 significant digits, lowercase exponent
    let (mantissa, exponent) = mid[1].split_once('e').unwrap();
    assert_eq!(mantissa.len(), "6.".len() + 16);
    assert_eq!(exponent, "-4");
}

#[test]
fn reversed_grid_is_a_config_error() {
    let out = qclass(&["curve", "--ensemble", "hs", "--zeta-grid", "pi/3:0:61"]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn argument_errors_exit_one_and_help_exits_zero() {
    assert_eq!(code(&qclass(&["curve", "--bogus"])), 1);
    assert_eq!(code(&qclass(&["curve", "--ensemble", "qq"])), 1);
    assert_eq!(code(&qclass(&["--help"])), 0);
    assert_eq!(
        code(&qclass(&["curve", "--method", "closed", "--ensemble", "bures"])),
        1
    );
}

#[test]
fn bkm_degenerate_curve_is_in_range() {
    let out = qclass(&[
        "curve",
        "--ensemble",
        "bkm",
        "--stratum",
        "degenerate",
        "--zeta-grid",
        "0:pi/3:7",
    ]);
    assert_eq!(code(&out), 0);
    let data = rows(&stdout(&out));
    assert_eq!(data.len(), 7);
    for row in data {
        let q: f64 = row[1].parse().unwrap();
        assert!((0.0..=1.0).contains(&q), "{q}");
        assert_eq!(row[2], "quad");
        assert_eq!(row[5], "degenerate");
    }
}

#[test]
fn table1_reproduces_reference_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table1.csv");
    let out = qclass(&["table1", "--out", path_str(&path)]);
    assert_eq!(code(&out), 0);
    let comparison = String::from_utf8(out.stderr).unwrap();
    assert!(comparison.contains("q_min") && comparison.contains("bures"));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().nth(1).unwrap() == "ensemble,q_min,zeta_min,asymmetry");
    let table = rows(&text);
    let reference = [
        ("hs", 0.0006751, std::f64::consts::FRAC_PI_6, 0.0),
        ("bures", 0.0000891011, 0.525096, 0.0000472609),
        ("bkm", 0.0000121609, 0.527798, 0.0000216102),
    ];
    for (row, (name, q_ref, z_ref, a_ref)) in table.iter().zip(reference) {
        assert_eq!(row[0], name);
        let (q, z, a): (f64, f64, f64) = (
            row[1].parse().unwrap(),
            row[2].parse().unwrap(),
            row[3].parse().unwrap(),
        );
        assert!(((q - q_ref) / q_ref).abs() < 1e-3, "{name} q {q}");
        assert!((z - z_ref).abs() < 2e-3, "{name} ζ {z}");
        if a_ref == 0.0 {
            assert!(a.abs() < 1e-17);
        } else {
            assert!(((a - a_ref) / a_ref).abs() < 1e-2, "{name} asymmetry {a}");
        }
    }
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = qclass(&[
        "curve",
        "--ensemble",
        "hs",
        "--method",
        "closed",
        "--out",
        path_str(&path),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("cannot write"));
}

#[test]
fn computation_failure_exits_three() {
    let out = qclass(&["qubit", "--ensemble", "hs", "--method", "quad", "--tol", "1e-300"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn monte_carlo_output_is_byte_identical_for_fixed_seed() {
    let args = [
        "curve",
        "--ensemble",
        "bures",
        "--method",
        "mc",
        "--samples",
        "20000",
        "--seed",
        "11",
        "--workers",
        "3",
        "--zeta-grid",
        "0:pi/3:3",
    ];
    let a = qclass(&args);
    let b = qclass(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().next().unwrap().contains("workers=3"));
    assert!(rows(&text).iter().all(|r| r[6] == "11"));
}

#[test]
fn csv_and_svg_share_the_output_stem() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("hs");
    let out = qclass(&[
        "curve",
        "--ensemble",
        "hs",
        "--stratum",
        "degenerate",
        "--method",
        "closed",
        "--format",
        "both",
        "--out",
        path_str(&stem),
    ]);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(dir.path().join("hs.csv")).unwrap();
    let svg = fs::read_to_string(dir.path().join("hs.svg")).unwrap();
    assert_eq!(rows(&csv).len(), 61);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<!-- qclass ") && svg.contains("<path d=\"M"));
    assert!(!svg.contains(path_str(dir.path())));
}

#[test]
fn svg_without_path_is_a_config_error() {
    assert_eq!(code(&qclass(&["curve", "--format", "svg"])), 1);
}

#[test]
fn ratio_of_hs_is_at_least_one() {
    let out = qclass(&["ratio", "--ensemble", "hs", "--method", "closed"]);
    assert_eq!(code(&out), 0);
    let data = rows(&stdout(&out));
    let values: Vec<f64> = data.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(values.iter().all(|&r| r >= 1.0));
    assert!((values[0] - 8.0).abs() < 1e-12);
    assert!((values[30] - 5.758).abs() < 1e-3);
}

#[test]
fn qubit_closed_forms() {
    let out = qclass(&["qubit"]);
    assert_eq!(code(&out), 0);
    let data = rows(&stdout(&out));
    let q: Vec<f64> = data.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!((q[0] - 0.19245).abs() < 1e-5);
    assert!((q[1] - 0.0917211).abs() < 1e-7);
    assert!((q[2] - 0.0495506).abs() < 1e-7);
}

#[test]
fn sample_writes_requested_spectra() {
    let out = qclass(&[
        "sample",
        "--ensemble",
        "bures",
        "--stratum",
        "degenerate",
        "--samples",
        "25",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let data = rows(&stdout(&out));
    assert_eq!(data.len(), 25);
    for row in data {
        let r: Vec<f64> = row.iter().map(|x| x.parse().unwrap()).collect();
        assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(r[0] == r[1] || r[1] == r[2]);
    }
    assert_eq!(code(&qclass(&["sample", "--ensemble", "all"])), 1);
}

#[test]
fn verify_with_defaults_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qclass(&["verify", "--out", path_str(&path)]);
    let report = fs::read_to_string(&path).unwrap_or_default();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(report.contains("\"failed\": 0"));
}

#[test]
fn verify_fails_honestly_at_unreachable_precision() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qclass(&[
        "verify",
        "--tol",
        "1e-15",
        "--samples",
        "20000",
        "--out",
        path_str(&path),
    ]);
    assert_eq!(code(&out), 4);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert!(
        failing.iter().any(|c| c.contains("closed vs quadrature")),
        "{failing:?}"
    );
    for c in checks {
        for field in ["check", "expected", "actual", "tolerance", "pass"] {
            assert!(c.get(field).is_some(), "missing {field}");
        }
    }
}

#[test]
fn verify_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        qclass(&[
            "verify",
            "--seed",
            "5",
            "--samples",
            "20000",
            "--workers",
            "2",
            "--out",
            path_str(p),
        ]);
    }
    let (ra, rb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
}
