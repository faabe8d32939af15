use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hadamard-ineq"));
    cmd.env_remove("HADAMARD_INEQ_OUT");
    cmd
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Data rows of a CSV file, header comment and column line skipped.
fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn model_smoke_and_header() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "model",
            "--profile",
            "hyperbolic",
            "--k",
            "1",
            "--n",
            "3",
            "--rmax",
            "20",
        ],
    );
    let csv = fs::read_to_string(tmp.path().join("model.csv")).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(
        header.starts_with("# hadamard-ineq ")
            && header.contains(" config=")
            && header.contains(" quantity=")
    );
    assert_eq!(lines.next(), Some("r,psi,dpsi"));
    // 17 significant digits in scientific notation.
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        first[0]
            .split('e')
            .next()
            .unwrap()
            .replace(['.', '-'], "")
            .len(),
        17
    );
    for name in [
        "model_report.json",
        "psi.gnuplot.dat",
        "curvature.gnuplot.dat",
    ] {
        assert!(tmp.path().join(name).exists(), "{name}");
    }
}

#[test]
fn power_model_carries_comparison_certificate() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "model",
            "--profile",
            "power",
            "--c0",
            "1",
            "--beta",
            "1",
            "--r0",
            "1",
            "--n",
            "3",
            "--rmax",
            "200",
        ],
    );
    let report = json(&tmp.path().join("model_report.json"));
    let cert = &report["result"]["laplacian_comparison"];
    assert!(cert["c"].as_f64().unwrap() > 0.0);
    assert_eq!(report["result"]["cartan_hadamard"]["holds"], true);
}

#[test]
fn invalid_beta_exits_two() {
    let tmp = TempDir::new().unwrap();
    let out = run(tmp.path(), &["model", "--profile", "power", "--beta", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(tmp.path(), &["model", "--profile", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_one() {
    let tmp = TempDir::new().unwrap();
    // Fitting the tail over [0.4, 4] straddles the flat core.
    let out = run(tmp.path(), &["pme", "--profile", "power", "--rdomain", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--rmax"));
}

#[test]
fn power_sweep_slope() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "sweep",
            "--profile",
            "power",
            "--beta",
            "1",
            "--p-min",
            "2.02",
            "--p-max",
            "2.2",
            "--p-count",
            "10",
        ],
    );
    let summary = json(&tmp.path().join("sweep_summary.json"));
    let slope = summary["result"]["fitted_slope"].as_f64().unwrap();
    assert!((slope + 1.0).abs() < 0.15, "{slope}");
    assert_eq!(summary["result"]["predicted_slope"].as_f64(), Some(-1.0));
    let table = rows(&tmp.path().join("sweep.csv"));
    assert_eq!(table.len(), 10);
    // The comparison bound dominates B on every row.
    assert!(table.iter().all(|r| num(&r[4]) >= num(&r[1])));
}

#[test]
fn quasi_sweep_divergent_rows() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "sweep",
            "--profile",
            "quasi",
            "--c1",
            "2",
            "--p-min",
            "3",
            "--p-max",
            "4",
            "--p-count",
            "6",
        ],
    );
    for r in rows(&tmp.path().join("sweep.csv")) {
        let divergent = r[5] == "true";
        assert_eq!(divergent, num(&r[0]) < 10.0 / 3.0, "{r:?}");
        assert_eq!(divergent, r[1] == "inf");
    }
    let summary = json(&tmp.path().join("sweep_summary.json"));
    assert!((summary["result"]["critical_exponent"].as_f64().unwrap() - 10.0 / 3.0).abs() < 1e-12);
}

#[test]
fn hyperbolic_single_point() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &["sweep", "--profile", "hyperbolic", "--k", "1", "--p", "2"],
    );
    let table = rows(&tmp.path().join("sweep.csv"));
    assert_eq!(table.len(), 1);
    assert!((num(&table[0][1]) - 0.5).abs() < 1e-3);
    assert!((num(&table[0][4]) - 0.5).abs() < 1e-12);
}

#[test]
fn poincare_constant_near_one() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "poincare",
            "--profile",
            "hyperbolic",
            "--k",
            "1",
            "--n",
            "3",
            "--rdomain",
            "10,20",
        ],
    );
    let table = rows(&tmp.path().join("poincare.csv"));
    assert_eq!(table.len(), 2);
    let c = num(&table[1][2]);
    assert!((0.95..=1.001).contains(&c), "{c}");
    assert!(num(&table[0][2]) < c);
    let summary = json(&tmp.path().join("poincare_summary.json"));
    assert_eq!(
        summary["result"]["curvature_bound"]["poincare_constant"].as_f64(),
        Some(1.0)
    );
}

#[test]
fn certificate_grows() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "certificate",
            "--profile",
            "power",
            "--beta",
            "1",
            "--p",
            "2",
            "--r",
            "200,50,100",
        ],
    );
    let table = rows(&tmp.path().join("certificate.csv"));
    let radii: Vec<f64> = table.iter().map(|r| num(&r[0])).collect();
    assert_eq!(radii, [50.0, 100.0, 200.0]);
    assert!(table.windows(2).all(|w| num(&w[1][3]) > num(&w[0][3])));
    let summary = json(&tmp.path().join("certificate_summary.json"));
    assert_eq!(summary["result"]["conclusion"], "grows");
}

#[test]
fn pme_quasi_slope() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "pme",
            "--profile",
            "quasi",
            "--c1",
            "2",
            "--m",
            "2",
            "--t-end",
            "3e6",
            "--window",
            "3e4,3e6",
        ],
    );
    let fit = json(&tmp.path().join("pme_fit.json"));
    let slope = fit["result"]["fitted_slope"].as_f64().unwrap();
    assert!((slope / (-5.0 / 7.0) - 1.0).abs() < 0.1, "{slope}");
    assert!(fit["result"]["mass_drift"].as_f64().unwrap() < 1e-6);
    let table = rows(&tmp.path().join("pme.csv"));
    assert_eq!(num(&table.last().unwrap()[0]), 3e6);
}

#[test]
fn pme_boundary_is_a_result() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "pme",
            "--profile",
            "euclidean",
            "--rdomain",
            "4",
            "--cells",
            "80",
        ],
    );
    let fit = json(&tmp.path().join("pme_fit.json"));
    assert!(fit["result"]["boundary_reached"].as_f64().is_some());
}

#[test]
fn rayleigh_inside_enclosure() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "rayleigh",
            "--profile",
            "hyperbolic",
            "--p",
            "4",
            "--init",
            "random",
            "--seed",
            "11",
        ],
    );
    let r = json(&tmp.path().join("rayleigh.json"))["result"].clone();
    let ratio = r["ratio"].as_f64().unwrap();
    let lo = r["enclosure"][0].as_f64().unwrap();
    let hi = r["enclosure"][1].as_f64().unwrap();
    assert!(
        ratio >= lo && ratio <= hi * (1.0 + 1e-6),
        "{ratio} not in [{lo}, {hi}]"
    );
}

#[test]
fn json_tables() {
    let tmp = TempDir::new().unwrap();
    ok(
        tmp.path(),
        &[
            "sweep",
            "--profile",
            "quasi",
            "--p",
            "3,4",
            "--format",
            "json",
        ],
    );
    let doc = json(&tmp.path().join("sweep.json"));
    assert_eq!(doc["columns"][0], "p");
    assert_eq!(doc["rows"][0][1], "inf");
    assert_eq!(doc["meta"]["tool"], "hadamard-ineq");
    assert!(!tmp.path().join("sweep.csv").exists());
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn output_independent_of_thread_count() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let args = [
        "sweep",
        "--profile",
        "power",
        "--beta",
        "0.5",
        "--p-min",
        "2.1",
        "--p-max",
        "3",
        "--p-count",
        "8",
    ];
    ok(a.path(), &[&args[..], &["--threads", "1"]].concat());
    ok(b.path(), &[&args[..], &["--threads", "4"]].concat());
    assert_eq!(read_all(a.path()), read_all(b.path()));
}

#[test]
fn seed_reproduces_and_changes_hash() {
    let dirs: Vec<TempDir> = (0..3).map(|_| TempDir::new().unwrap()).collect();
    for (dir, seed) in dirs.iter().zip(["5", "5", "6"]) {
        ok(
            dir.path(),
            &[
                "rayleigh",
                "--profile",
                "euclidean",
                "--p",
                "3",
                "--rdomain",
                "5",
                "--init",
                "random",
                "--seed",
                seed,
            ],
        );
    }
    let files: Vec<_> = dirs.iter().map(|d| read_all(d.path())).collect();
    assert_eq!(files[0], files[1]);
    assert_ne!(files[0], files[2]);
}

#[test]
fn config_file_precedence() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("run.conf");
    fs::write(
        &cfg,
        "# sweep settings\nprofile = power\nbeta = 0.5\np = 2.5, 3\n",
    )
    .unwrap();
    let from_file = tmp.path().join("file");
    ok(&from_file, &["sweep", "--config", cfg.to_str().unwrap()]);
    let summary = json(&from_file.join("sweep_summary.json"));
    assert_eq!(summary["result"]["profile"], "power c0=1 beta=0.5 r0=1");
    assert_eq!(rows(&from_file.join("sweep.csv")).len(), 2);

    let flagged = tmp.path().join("flag");
    ok(
        &flagged,
        &["sweep", "--config", cfg.to_str().unwrap(), "--beta", "1"],
    );
    let summary = json(&flagged.join("sweep_summary.json"));
    assert_eq!(summary["result"]["profile"], "power c0=1 beta=1 r0=1");

    fs::write(&cfg, "profile = power\nbogus = 1\n").unwrap();
    let out = run(
        tmp.path(),
        &["sweep", "--config", cfg.to_str().unwrap(), "--p", "3"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_directory_from_environment() {
    let tmp = TempDir::new().unwrap();
    let target = tmp.path().join("env-out");
    let out = bin()
        .env("HADAMARD_INEQ_OUT", &target)
        .args(["model", "--profile", "euclidean", "--rmax", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(target.join("model.csv").exists());
}
