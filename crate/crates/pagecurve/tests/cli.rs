//! End-to-end tests of the compiled binary: every subcommand, the output
//! file formats with their global invariants, and the exit-code contract.

use std::collections::{BTreeSet, HashMap};
use std::process::{Command, Output};

use pagecurve::moments::{page_von_neumann, renyi_tilde, RenyiOrder, SystemDims};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pagecurve"))
        .args(args)
        .output()
        .expect("the binary should spawn")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn assert_success(output: &Output) {
    assert_eq!(
        output.status.code(),
        Some(0),
        "expected success, got {:?} with stderr: {}",
        output.status.code(),
        stderr(output)
    );
}

fn grab(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|line| line.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing `{key} = ` line in: {text}"))
        .trim()
        .parse()
        .expect("value should parse as f64")
}

// ---------------------------------------------------------------------------
// single-point subcommands
// ---------------------------------------------------------------------------

#[test]
fn entropy_reports_the_exact_two_by_five_values() {
    let out = run(&["entropy", "--m", "2", "--n", "5", "--alpha", "2"]);
    assert_success(&out);
    let text = stdout(&out);
    assert!(text.contains("entropy = 0.45199"), "stdout: {text}");
    assert!(text.contains("info = 0.24116"), "stdout: {text}");
    assert!(text.contains("method = exact_int_sum"), "stdout: {text}");
}

#[test]
fn entropy_swaps_oversized_subsystems_but_keeps_their_information() {
    // A 5-dimensional subsystem of a 5×2 split carries the 2×5 entropy but
    // its own ln 5 information baseline.
    let out = run(&["entropy", "--m", "5", "--n", "2", "--alpha", "2"]);
    assert_success(&out);
    let text = stdout(&out);
    assert!(text.contains("entropy = 0.45199"), "stdout: {text}");
    assert!(text.contains("info = 1.1575"), "stdout: {text}");
}

#[test]
fn entropy_alpha_inf_shorthand_gives_the_closed_limit() {
    let out = run(&["entropy", "--m", "4", "--n", "9", "--alpha-inf"]);
    assert_success(&out);
    let text = stdout(&out);
    assert!(text.contains("entropy = 0"), "stdout: {text}");
    assert!(text.contains("method = infinite_limit"), "stdout: {text}");
    let info = grab(&text, "info");
    assert!((info - 4.0f64.ln()).abs() < 1e-4, "info = {info}");
}

#[test]
fn entropy_asymptotic_warns_only_when_the_environment_is_small() {
    let warned = run(&[
        "entropy",
        "--m",
        "2",
        "--n",
        "15",
        "--alpha",
        "2",
        "--asymptotic",
    ]);
    assert_success(&warned);
    assert!(stdout(&warned).contains("method = asymptotic"));
    assert!(
        stderr(&warned).contains("warning:"),
        "stderr: {}",
        stderr(&warned)
    );

    let quiet = run(&[
        "entropy",
        "--m",
        "2",
        "--n",
        "200",
        "--alpha",
        "2",
        "--asymptotic",
    ]);
    assert_success(&quiet);
    assert!(
        !stderr(&quiet).contains("warning"),
        "stderr: {}",
        stderr(&quiet)
    );
}

#[test]
fn zalpha_prints_log_and_linear_moments() {
    let out = run(&["zalpha", "--m", "2", "--n", "5", "--alpha", "2"]);
    assert_success(&out);
    let text = stdout(&out);
    // ln(7/11) = -0.45198512374305724…
    assert!(text.contains("ln_Z = -0.451985123743057"), "stdout: {text}");
    // Z₂(2,5) = 7/11.
    assert!(text.contains("Z = 0.63636363636363"), "stdout: {text}");
}

#[test]
fn exact2_prints_the_ordered_entropy_triple() {
    let out = run(&["exact2", "--n", "5"]);
    assert_success(&out);
    let text = stdout(&out);
    assert!(text.contains("S2 = 0.46103"), "stdout: {text}");
    let tilde = grab(&text, "S2_tilde");
    let exact = grab(&text, "S2");
    let von = grab(&text, "S_von");
    assert!(
        tilde <= exact && exact <= von,
        "ordering broken: {tilde} / {exact} / {von}"
    );
}

#[test]
fn fmn_matches_the_closed_form_anchor() {
    let out = run(&["fmn", "--mx", "2", "--ny", "3"]);
    assert_success(&out);
    let text = stdout(&out);
    // −24γ + 21π − 14 = 38.120269767748875…
    assert!(text.contains("F = 38.1202697677"), "stdout: {text}");
}

#[test]
fn mstar_reproduces_the_threshold_table() {
    for (alpha, expected) in [
        ("1", "243"),
        ("10", "90"),
        ("100", "40"),
        ("1000", "27"),
        ("inf", "2"),
    ] {
        let out = run(&["mstar", "--mn", "291600", "--alpha", alpha]);
        assert_success(&out);
        assert_eq!(
            stdout(&out).trim(),
            expected,
            "m_* mismatch at alpha = {alpha}"
        );
    }
}

// ---------------------------------------------------------------------------
// sweep output files
// ---------------------------------------------------------------------------

struct Row {
    ln_m: f64,
    entropy: f64,
    info: f64,
    method: String,
}

fn sweep_to_csv(dir: &std::path::Path) -> HashMap<(String, u64), Row> {
    let path = dir.join("curve.csv");
    let out = run(&[
        "page-curve",
        "--mn",
        "291600",
        "--alphas",
        "1,10,100,1000,inf",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_success(&out);
    assert!(
        stdout(&out).contains("wrote 525 points to"),
        "stdout: {}",
        stdout(&out)
    );

    let content = std::fs::read_to_string(&path).unwrap();
    let mut lines = content.lines();
    assert_eq!(
        lines.next(),
        Some("alpha,m,ln_m,entropy,info,method"),
        "unexpected CSV header"
    );

    let mut rows = HashMap::new();
    let mut file_order = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6, "malformed CSV row: {line}");
        let key = (fields[0].to_string(), fields[1].parse::<u64>().unwrap());
        file_order.push(key.clone());
        rows.insert(
            key,
            Row {
                ln_m: fields[2].parse().unwrap(),
                entropy: fields[3].parse().unwrap(),
                info: fields[4].parse().unwrap(),
                method: fields[5].to_string(),
            },
        );
    }
    assert_eq!(rows.len(), 525, "expected 105 divisors × 5 orders");

    let mut sorted = file_order.clone();
    sorted.sort();
    assert_eq!(file_order, sorted, "rows must be sorted by (alpha, m)");
    rows
}

#[test]
fn page_curve_csv_satisfies_the_curve_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let rows = sweep_to_csv(dir.path());

    let divisors: Vec<u64> = (1..=291_600).filter(|d| 291_600 % d == 0).collect();
    assert_eq!(divisors.len(), 105);
    let labels = ["1", "10", "100", "1000", "inf"];

    // Every (order, divisor) pair appears exactly once.
    for label in labels {
        let ms: BTreeSet<u64> = rows
            .keys()
            .filter(|(l, _)| l == label)
            .map(|&(_, m)| m)
            .collect();
        assert_eq!(ms, divisors.iter().copied().collect::<BTreeSet<u64>>());
    }

    for (&(ref label, m), row) in &rows {
        // The subsystem-size column is exact.
        assert_eq!(row.ln_m.to_bits(), (m as f64).ln().to_bits());
        // Entropy plus information deficit is the subsystem capacity.
        assert!(
            (row.info - (row.ln_m - row.entropy)).abs() <= 1e-12,
            "entropy/info split broken at ({label}, {m})"
        );
        assert!(row.info >= -1e-12, "negative information at ({label}, {m})");
        // Evaluation routes are what the orders dictate.
        let expected_method = match label.as_str() {
            "1" => "page_limit",
            "inf" => "infinite_limit",
            _ => "exact_int_sum",
        };
        assert_eq!(row.method, expected_method, "at ({label}, {m})");
    }

    // The entropy is non-increasing in the order α at every fixed m.
    for &m in &divisors {
        for pair in labels.windows(2) {
            let hi = rows[&(pair[0].to_string(), m)].entropy;
            let lo = rows[&(pair[1].to_string(), m)].entropy;
            assert!(
                lo <= hi + 1e-12,
                "entropy increased from α = {} to α = {} at m = {m}: {hi} → {lo}",
                pair[0],
                pair[1]
            );
        }
    }

    // Subsystem/environment swap symmetry of the entropy, bit for bit.
    for &m in &divisors {
        let partner = 291_600 / m;
        for label in labels {
            let a = rows[&(label.to_string(), m)].entropy;
            let b = rows[&(label.to_string(), partner)].entropy;
            assert_eq!(
                a.to_bits(),
                b.to_bits(),
                "swap symmetry broken at ({label}, {m})"
            );
        }
    }

    // At the symmetric point the α → 1 column is the exact von Neumann value.
    let balanced = rows[&("1".to_string(), 540)].entropy;
    let exact = page_von_neumann(SystemDims::new(540, 540).unwrap());
    assert_eq!(balanced.to_bits(), exact.to_bits());

    // The α = ∞ column collapses onto the information baseline.
    for &m in &divisors {
        let row = &rows[&("inf".to_string(), m)];
        assert_eq!(row.entropy.to_bits(), 0.0f64.to_bits());
        assert_eq!(row.info.to_bits(), row.ln_m.to_bits());
    }
}

#[test]
fn page_curve_json_matches_the_csv_bits() {
    let dir = tempfile::tempdir().unwrap();
    let csv_rows = sweep_to_csv(dir.path());

    let path = dir.path().join("curve.json");
    let out = run(&[
        "page-curve",
        "--mn",
        "291600",
        "--alphas",
        "1,10,100,1000,inf",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_success(&out);

    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let array = parsed.as_array().expect("top-level JSON array");
    assert_eq!(array.len(), 525);

    for item in array {
        let label = item["alpha"].as_str().expect("alpha is a string");
        let m = item["m"].as_u64().expect("m is an integer");
        let row = &csv_rows[&(label.to_string(), m)];
        for (key, want) in [
            ("ln_m", row.ln_m),
            ("entropy", row.entropy),
            ("info", row.info),
        ] {
            let got = item[key].as_f64().unwrap();
            assert_eq!(
                got.to_bits(),
                want.to_bits(),
                "CSV/JSON disagree on {key} at ({label}, {m})"
            );
        }
        assert_eq!(item["method"].as_str().unwrap(), row.method);
    }
}

// ---------------------------------------------------------------------------
// Monte Carlo subcommand
// ---------------------------------------------------------------------------

#[test]
fn montecarlo_moment_estimate_brackets_the_closed_form() {
    let out = run(&[
        "montecarlo",
        "--m",
        "2",
        "--n",
        "5",
        "--alpha",
        "2",
        "--samples",
        "2000",
        "--seed",
        "42",
    ]);
    assert_success(&out);
    let text = stdout(&out);
    let mean = grab(&text, "mean");
    let se = grab(&text, "std_error");
    assert!(se > 0.0 && se < 0.01, "implausible standard error {se}");
    let exact = 7.0 / 11.0;
    assert!(
        (mean - exact).abs() <= 6.0 * se,
        "moment estimate {mean} ± {se} too far from {exact}"
    );
    assert!(text.contains("samples = 2000"), "stdout: {text}");
    assert!(text.contains("seed = 42"), "stdout: {text}");
}

#[test]
fn montecarlo_entropy_estimators_bracket_their_exact_curves() {
    let renyi = run(&[
        "montecarlo",
        "--m",
        "2",
        "--n",
        "5",
        "--alpha",
        "2",
        "--samples",
        "2000",
        "--seed",
        "7",
        "--estimator",
        "renyi",
    ]);
    assert_success(&renyi);
    let text = stdout(&renyi);
    let mean = grab(&text, "mean");
    let se = grab(&text, "std_error");
    let exact = renyi_tilde(
        SystemDims::new(2, 5).unwrap(),
        RenyiOrder::finite(2.0).unwrap(),
    );
    // The quenched average sits slightly above S̃₂ = 0.452; at 2000 samples
    // both are bracketed by a loose 8·SE band around the annealed value.
    assert!(
        (mean - exact.entropy).abs() <= 8.0 * se,
        "Rényi estimate {mean} ± {se} too far from {}",
        exact.entropy
    );

    let von = run(&[
        "montecarlo",
        "--m",
        "2",
        "--n",
        "5",
        "--samples",
        "2000",
        "--seed",
        "7",
        "--estimator",
        "von-neumann",
    ]);
    assert_success(&von);
    let text = stdout(&von);
    let mean = grab(&text, "mean");
    let se = grab(&text, "std_error");
    let exact = page_von_neumann(SystemDims::new(2, 5).unwrap());
    assert!(
        (mean - exact).abs() <= 6.0 * se,
        "von Neumann estimate {mean} ± {se} too far from {exact}"
    );
}

// ---------------------------------------------------------------------------
// exit-code contract
// ---------------------------------------------------------------------------

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn usage_errors_exit_with_code_two() {
    // Missing required argument.
    let out = run(&["entropy", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    // Unknown subcommand.
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Unparseable order.
    let out = run(&["entropy", "--m", "2", "--n", "5", "--alpha", "banana"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_code_three() {
    let cases: &[&[&str]] = &[
        &["entropy", "--m", "0", "--n", "5", "--alpha", "2"],
        &["zalpha", "--m", "2", "--n", "5", "--alpha", "inf"],
        &["exact2", "--n", "1"],
        &["mstar", "--mn", "291600", "--alpha", "10", "--threshold=-1"],
        &[
            "montecarlo",
            "--m",
            "2",
            "--n",
            "5",
            "--alpha",
            "2",
            "--samples",
            "1",
            "--seed",
            "1",
        ],
        &[
            "montecarlo",
            "--m",
            "2",
            "--n",
            "5",
            "--samples",
            "100",
            "--seed",
            "1",
        ],
        &[
            "page-curve",
            "--mn",
            "291600",
            "--alphas",
            "1,banana",
            "--format",
            "csv",
            "--out",
            "x.csv",
        ],
        // No divisor of 36 carries 100 nats of information.
        &["mstar", "--mn", "36", "--alpha", "10", "--threshold", "100"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(3),
            "args {args:?}, stderr: {}",
            stderr(&out)
        );
        assert!(stderr(&out).starts_with("error:"), "args {args:?}");
    }
}

#[test]
fn io_errors_exit_with_code_two() {
    let out = run(&[
        "page-curve",
        "--mn",
        "36",
        "--alphas",
        "1",
        "--format",
        "csv",
        "--out",
        "/nonexistent-dir/never/curve.csv",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn numeric_failures_exit_with_code_four() {
    // The integrand overflows double precision long before the quadrature
    // can stabilize, so this reports a convergence failure.
    let out = run(&["fmn", "--mx", "170", "--ny", "170"]);
    assert_eq!(out.status.code(), Some(4), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("error:"));
}
