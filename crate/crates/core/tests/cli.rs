use std::path::Path;
use std::process::{Command, Output};

use ivw_agreement::io::{format_replicated, parse_report};
use ivw_agreement::synthesis::{generate_replicated, ReplicateConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ivw-agreement"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

const PAIRS: &str = "subject,a,b\n1,120,124\n2,110,113\n3,100,99\n4,135,131\n5,128,133\n6,142,150\n";

#[test]
fn analyze_weighted_writes_report_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", PAIRS);
    let report = dir.path().join("r.json");
    let plot = dir.path().join("p.svg");
    let out = run(&[
        "analyze", "--input", &input, "--swa", "37.4", "--swb", "83.1",
        "--report", report.to_str().unwrap(), "--plot", plot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    for key in ["bias", "loa", "r ", "p ", "k "] {
        assert!(stdout.contains(key), "{stdout}");
    }
    let res = parse_report(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(res.n(), 6);
    // first subject: (83.1·120 + 37.4·124) / 120.5
    let expected = (83.1 * 120.0 + 37.4 * 124.0) / 120.5;
    assert!((res.points[0].axis - expected).abs() < 1e-12);
    assert_eq!(res.points[0].difference, 4.0);
    assert!(std::fs::read_to_string(&plot).unwrap().starts_with("<?xml"));
}

#[test]
fn analyze_with_replicates() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", PAIRS);
    let reps = write(
        dir.path(),
        "reps.csv",
        "subject,method,replicate,value\n1,A,1,10\n1,A,2,12\n1,B,1,20\n1,B,2,26\n",
    );
    let out = run(&["analyze", "--input", &input, "--replicates", &reps]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    // s_wa² = 2, s_wb² = 18 → alpha = 18, beta = 2
    assert!(text(&out.stdout).contains("alpha = 18, beta = 2"), "{}", text(&out.stdout));
}

#[test]
fn degenerate_weights_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", PAIRS);
    let out = run(&["analyze", "--input", &input, "--swa", "0", "--swb", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("degenerate weights"), "{}", text(&out.stderr));
}

#[test]
fn conflicting_variance_sources_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", PAIRS);
    let reps = write(dir.path(), "reps.csv", "subject,method,replicate,value\n");
    let out = run(&["analyze", "--input", &input, "--replicates", &reps, "--swa", "1", "--swb", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("--replicates"), "{}", text(&out.stderr));

    let out = run(&["analyze", "--input", &input, "--swa", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weighted_mode_without_variances_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", PAIRS);
    let out = run(&["analyze", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("--swa"), "{}", text(&out.stderr));
}

#[test]
fn classic_ignores_variances_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", PAIRS);
    let out = run(&["analyze", "--input", &input, "--classic", "--swa", "1", "--swb", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stderr).contains("warning"));
    assert!(text(&out.stdout).contains("axis       mean"));
}

#[test]
fn bad_row_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", "subject,a,b\nx,abc,1\n2,1,2\n3,4,5\n");
    let out = run(&["analyze", "--input", &input, "--classic"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("line 2"), "{}", text(&out.stderr));
}

#[test]
fn constant_axis_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pairs.csv", "subject,a,b\n1,1,3\n2,2,2\n3,3,1\n");
    let out = run(&["analyze", "--input", &input, "--classic"]);
    assert_eq!(out.status.code(), Some(3), "{}", text(&out.stderr));
}

#[test]
fn missing_input_file_exit_2() {
    let out = run(&["analyze", "--input", "/nonexistent/pairs.csv", "--classic"]);
    assert_eq!(out.status.code(), Some(2));
}

fn simulate(dir: &Path, args: &[&str]) {
    let mut full = vec!["simulate", "--out", dir.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
}

fn report(dir: &Path, name: &str) -> ivw_agreement::AgreementResult {
    parse_report(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn simulate_case_a_weighted_has_no_trend() {
    let dir = tempfile::tempdir().unwrap();
    simulate(dir.path(), &["--case", "a"]);
    let w = report(dir.path(), "weighted.json");
    assert!(w.fit.r.abs() < 0.005);
    assert!((w.fit.p_value - 1.0).abs() < 0.005);
    for f in ["pairs.csv", "classic.json", "weighted.json", "classic.svg", "weighted.svg"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn simulate_case_b_axes_agree() {
    let dir = tempfile::tempdir().unwrap();
    simulate(dir.path(), &["--case", "b"]);
    let c = report(dir.path(), "classic.json");
    let w = report(dir.path(), "weighted.json");
    for (x, y) in [
        (c.fit.r, w.fit.r),
        (c.fit.p_value, w.fit.p_value),
        (c.fit.slope, w.fit.slope),
        (c.fit.ci_low, w.fit.ci_low),
        (c.fit.ci_high, w.fit.ci_high),
        (c.bias, w.bias),
    ] {
        assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
    }
}

#[test]
fn exact_moment_statistics_do_not_depend_on_seed() {
    let d7 = tempfile::tempdir().unwrap();
    let d8 = tempfile::tempdir().unwrap();
    simulate(d7.path(), &["--case", "d", "--seed", "7", "--exact-moments", "true"]);
    simulate(d8.path(), &["--case", "d", "--seed", "8", "--exact-moments", "true"]);
    assert_ne!(
        std::fs::read(d7.path().join("pairs.csv")).unwrap(),
        std::fs::read(d8.path().join("pairs.csv")).unwrap()
    );
    for name in ["classic.json", "weighted.json"] {
        let (a, b) = (report(d7.path(), name), report(d8.path(), name));
        for (x, y) in [(a.fit.r, b.fit.r), (a.fit.p_value, b.fit.p_value), (a.fit.slope, b.fit.slope)] {
            assert!((x - y).abs() <= 1e-9, "{name}: {x} vs {y}");
        }
    }
}

#[test]
fn simulate_rejects_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["simulate", "--case", "e", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["simulate", "--case", "a", "--n", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn predict_cov_prints_equation_value() {
    let out = run(&["predict-cov", "--alpha", "1", "--beta", "1", "--swa", "0.25", "--swb", "20.25"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stdout).contains("cov(A - B, axis) = -10\n"));
    assert!(text(&out.stdout).contains("cov(B - A, axis) = 10\n"));
}

fn parse_variance(stdout: &str, method: &str) -> f64 {
    let prefix = format!("s_w^2({method}) = ");
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {prefix} in {stdout}"))
        .parse()
        .unwrap()
}

#[test]
fn replicate_variance_recovers_true_variance() {
    // 30 subjects × 3 replicates, within-subject variance 4 for method A
    let dir = tempfile::tempdir().unwrap();
    let mut estimates = Vec::new();
    for seed in 0..50 {
        let reps = generate_replicated(&ReplicateConfig {
            subjects: 30,
            replicates: 3,
            center: 120.0,
            spread: 15.0,
            sd_a: 2.0,
            sd_b: 5.0,
            seed,
        })
        .unwrap();
        let path = write(dir.path(), &format!("reps{seed}.csv"), &format_replicated(&reps));
        let out = run(&["replicate-variance", "--input", &path]);
        assert_eq!(out.status.code(), Some(0));
        estimates.push(parse_variance(&text(&out.stdout), "A"));
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let sd = (estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let se = sd / n.sqrt();
    assert!((mean - 4.0).abs() < 3.0 * se, "mean {mean}, se {se}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    simulate(d1.path(), &["--case", "c", "--seed", "3"]);
    simulate(d2.path(), &["--case", "c", "--seed", "3"]);
    for f in ["pairs.csv", "classic.json", "weighted.json", "classic.svg", "weighted.svg"] {
        assert_eq!(
            std::fs::read(d1.path().join(f)).unwrap(),
            std::fs::read(d2.path().join(f)).unwrap(),
            "{f}"
        );
    }
}
