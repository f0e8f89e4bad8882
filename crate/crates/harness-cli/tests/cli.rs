use std::path::PathBuf;
use std::process::{Command, Output};

use harness_cli::{
    exact_rows, predict_rows, ExperimentConfig, HarnessError, Method, CSV_HEADER,
};

fn negham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negham"))
        .args(args)
        .env_remove("NEGHAM_THREADS")
        .output()
        .expect("spawn negham")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("negham-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn small() -> ExperimentConfig {
    ExperimentConfig {
        l1: 12,
        l2: 12,
        d: 8,
        t_min: 0.0,
        t_max: 20.0,
        steps: 4,
        kgrid: 512,
        ..ExperimentConfig::default()
    }
}

#[test]
fn serial_and_parallel_output_match() {
    let base = [
        "predict", "--l", "30", "--d", "20", "--tmax", "40", "--steps", "8", "--alpha", "1,2,3",
        "--lambda", "-1.5,0.5",
    ];
    let serial = negham(&[&base[..], &["--workers", "1"]].concat());
    let parallel = negham(&[&base[..], &["--workers", "4"]].concat());
    assert!(serial.status.success(), "{}", String::from_utf8_lossy(&serial.stderr));
    assert!(parallel.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
    let text = String::from_utf8(serial.stdout).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
}

#[test]
fn exact_rows_do_not_depend_on_worker_count() {
    let mut cfg = small();
    cfg.workers = 1;
    let serial = exact_rows(&cfg).unwrap();
    cfg.workers = 3;
    assert_eq!(serial, exact_rows(&cfg).unwrap());
}

#[test]
fn predictions_vanish_at_time_zero() {
    let mut cfg = small();
    cfg.steps = 0;
    cfg.lambdas = vec![0.7];
    let rows = predict_rows(&cfg).unwrap();
    assert!(!rows.is_empty());
    for r in rows.iter().filter(|r| r.quantity != "renyi_entropy") {
        assert!(r.value_re.abs() < 1e-12 && r.value_im.abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn second_log_ratio_prediction_is_zero() {
    let mut cfg = small();
    cfg.alphas = vec![2];
    let rows = predict_rows(&cfg).unwrap();
    let ratios: Vec<_> = rows.iter().filter(|r| r.quantity == "log_ratio").collect();
    assert_eq!(ratios.len(), cfg.times().len());
    assert!(ratios.iter().all(|r| r.method == Method::Qp && r.value_re.abs() < 1e-12));
}

#[test]
fn compare_passes_at_defaults_and_fails_with_a_corrupted_cutoff() {
    let base = [
        "compare", "--l", "40", "--d", "40", "--tmax", "80", "--steps", "8", "--exact-method",
        "spectrum",
    ];
    let good = negham(&base);
    assert_eq!(good.status.code(), Some(0), "{}", String::from_utf8_lossy(&good.stderr));
    let bad = negham(&[&base[..], &["--cutoff", "0.4"]].concat());
    assert_eq!(bad.status.code(), Some(3), "{}", String::from_utf8_lossy(&bad.stderr));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(negham(&["predict", "--l", "ten"]).status.code(), Some(1));
    assert_eq!(negham(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(negham(&["predict", "--l", "0"]).status.code(), Some(1));
    assert_eq!(negham(&["--help"]).status.code(), Some(0));
}

#[test]
fn unequal_intervals_are_rejected_for_prediction() {
    let out = negham(&["predict", "--l1", "10", "--l2", "12", "--d", "4", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_text_round_trips() {
    let mut cfg = small();
    cfg.alphas = vec![1, 3];
    cfg.lambdas = vec![-0.25, 2.0];
    cfg.dump_dir = Some("dumps".into());
    cfg.workers = 2;
    assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let path = scratch("run.toml");
    let mut cfg = small();
    cfg.steps = 2;
    std::fs::write(&path, cfg.to_text()).unwrap();
    let out = negham(&["predict", "--config", path.to_str().unwrap(), "--alpha", "2", "--workers", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let alphas: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert!(alphas.iter().all(|a| *a == "1" || *a == "2"), "{alphas:?}");
    assert!(text.lines().skip(1).any(|l| l.starts_with("qp,log_ratio,") && l.contains(",2,")));
}

#[test]
fn malformed_config_reports_the_line() {
    let err = ExperimentConfig::parse("[geometry]\nl1 = 4\nbogus\n").unwrap_err();
    assert!(matches!(err, HarnessError::Config { line: 3, .. }), "{err}");
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn matrix_ceiling_is_enforced() {
    let mut cfg = small();
    cfg.ceiling = 40;
    let err = exact_rows(&cfg).unwrap_err();
    assert!(matches!(err, HarnessError::Resource { dim: 48, ceiling: 40 }), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn dump_directory_receives_operator_files() {
    let dir = scratch("dumps");
    let _ = std::fs::remove_dir_all(&dir);
    let out = negham(&[
        "exact", "--l", "8", "--d", "4", "--tmin", "3", "--tmax", "3", "--steps", "0",
        "--dump-dir", dir.to_str().unwrap(), "-o", scratch("exact.csv").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    for prefix in ["K_", "ndiag_profile_", "nimag_eigenvalues_", "nimag_histogram_", "offdiag_profile_"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "missing {prefix} in {names:?}");
    }
}
