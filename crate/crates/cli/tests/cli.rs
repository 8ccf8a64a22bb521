use std::process::{Command, Output};

use serde_json::Value;

fn kondo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kondo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = kondo(args);
    assert!(out.status.success());
    serde_json::from_str(&stdout(&out)).unwrap()
}

/// Value after `key: ` on a text report line.
fn field(text: &str, key: &str) -> String {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` line"))
        .to_string()
}

/// Parse `a + bi` / `a - bi`.
fn parse_complex(s: &str) -> (f64, f64) {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let re: f64 = parts[0].parse().unwrap();
    let im: f64 = parts[2].trim_end_matches('i').parse().unwrap();
    (re, if parts[1] == "-" { -im } else { im })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

#[test]
fn scatter_amplitudes_at_unit_coupling() {
    let v = json(&["scatter", "--j", "1", "--json"]);
    let amps = &v["components"][0]["amplitudes"];
    let s = 10f64.sqrt();
    let a = |i: usize, k: usize| amps[i][k].as_f64().unwrap();
    // |↑↑↓⟩ = index 1, |↑↓↑⟩ = 2, |↓↑↑⟩ = 4
    assert!((a(1, 0) - 1.0 / s).abs() < 1e-12 && (a(1, 1) - 1.0 / s).abs() < 1e-12);
    for i in [2, 4] {
        assert!(a(i, 0).abs() < 1e-12 && (a(i, 1) + 2.0 / s).abs() < 1e-12);
    }
    assert!((v["flip_probability"].as_f64().unwrap() - 0.8).abs() < 1e-12);
}

#[test]
fn scatter_at_zero_echoes_input() {
    let v = json(&["scatter", "--j", "0", "--json"]);
    let amps = v["components"][0]["amplitudes"].as_array().unwrap();
    for (i, a) in amps.iter().enumerate() {
        let expected = if i == 1 { 1.0 } else { 0.0 };
        assert_eq!(a[0].as_f64().unwrap(), expected);
        assert_eq!(a[1].as_f64().unwrap(), 0.0);
    }
    assert_eq!(v["concurrence"].as_f64().unwrap(), 0.0);
    assert_eq!(v["eof"].as_f64().unwrap(), 0.0);
}

#[test]
fn random_impurity_weights() {
    let v = json(&["scatter", "--j", "1", "--impurity", "random", "--json"]);
    let rho = &v["electron_density"];
    let re = |r: usize, c: usize| rho[r][c][0].as_f64().unwrap();
    assert!((re(0, 0) - 0.6).abs() < 1e-12);
    // ψ⁺ weight = ⟨ψ⁺|ρ|ψ⁺⟩ = (ρ11 + ρ12 + ρ21 + ρ22)/2
    let psi_plus = (re(1, 1) + re(1, 2) + re(2, 1) + re(2, 2)) / 2.0;
    assert!((psi_plus - 0.4).abs() < 1e-12);
    assert!(v["flip_probability"].is_null());
}

#[test]
fn json_and_text_agree() {
    for (j, imp) in [
        ("0.37", "down"),
        ("1", "random"),
        ("3", "up"),
        ("2.5", "down"),
    ] {
        let args = ["scatter", "--j", j, "--impurity", imp];
        let text = stdout(&kondo(&args));
        let v = json(&[&args[..], &["--json"]].concat());
        assert!(close(
            field(&text, "concurrence").parse().unwrap(),
            v["concurrence"].as_f64().unwrap(),
            1e-11
        ));
        assert!(close(
            field(&text, "eof").parse().unwrap(),
            v["eof"].as_f64().unwrap(),
            1e-11
        ));
        match v["flip_probability"].as_f64() {
            Some(p) => assert!(close(
                field(&text, "flip_probability").parse().unwrap(),
                p,
                1e-11
            )),
            None => assert_eq!(field(&text, "flip_probability"), "undefined"),
        }
        let amp_lines: Vec<&str> = text.lines().filter(|l| l.starts_with("  |")).collect();
        let comps = v["components"].as_array().unwrap();
        assert_eq!(amp_lines.len(), 8 * comps.len());
        for (k, comp) in comps.iter().enumerate() {
            for i in 0..8 {
                let line = amp_lines[8 * k + i];
                let (_, value) = line.split_once('⟩').unwrap();
                let (re, im) = parse_complex(value.trim());
                let a = &comp["amplitudes"][i];
                assert!(close(re, a[0].as_f64().unwrap(), 1e-11), "{line}");
                assert!(close(im, a[1].as_f64().unwrap(), 1e-11), "{line}");
            }
        }
        let rows: Vec<&str> = text
            .lines()
            .skip_while(|l| !l.starts_with("electron density"))
            .skip(1)
            .take(4)
            .collect();
        for (r, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.trim().splitn(2, ' ').collect();
            let nums: Vec<&str> = cells[1].split_whitespace().collect();
            for c in 0..4 {
                let (re, im) = parse_complex(&nums[3 * c..3 * c + 3].join(" "));
                let e = &v["electron_density"][r][c];
                assert!(close(re, e[0].as_f64().unwrap(), 1e-11));
                assert!(close(im, e[1].as_f64().unwrap(), 1e-11));
            }
        }
    }
}

#[test]
fn detect_reports_witness() {
    let v = json(&["detect", "--j", "1", "--json"]);
    assert!(v["bunching"].as_f64().unwrap() <= 1e-12);
    assert!((v["sz_correlation"].as_f64().unwrap() + 0.6).abs() < 1e-12);
    assert_eq!(v["verdict"], "entanglement-witnessed");
    let text = stdout(&kondo(&["detect", "--j", "1"]));
    assert_eq!(field(&text, "verdict"), "entanglement-witnessed");
    assert_eq!(field(&text, "sz_correlation"), "-0.6");

    let v = json(&["detect", "--j", "0", "--json"]);
    assert_eq!(v["verdict"], "consistent-with-separable-noiseless");
}

#[test]
fn sweep_is_byte_deterministic() {
    let a = kondo(&["sweep"]);
    let b = kondo(&["sweep"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 102);
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_writes_file_matching_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = kondo(&["sweep", "--steps", "11", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let piped = kondo(&["sweep", "--steps", "11", "--output", "-"]);
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}

#[test]
fn sweep_columns_satisfy_closed_forms() {
    let text = stdout(&kondo(&["sweep"]));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "jbold,concurrence_definite,eof_definite,concurrence_random,eof_random,flip_probability,bunching,sz_correlation"
    );
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let j2 = v[0] * v[0];
        let d = 1.0 + 9.0 * j2;
        assert!((v[1] - 8.0 * j2 / d).abs() < 1e-10, "{line}");
        assert!((v[3] - 4.0 * j2 / d).abs() < 1e-10, "{line}");
        assert!((v[5] - 8.0 * j2 / d).abs() < 1e-10, "{line}");
        assert!(v[6].abs() < 1e-10, "{line}");
        assert!((v[7] - (1.0 - 7.0 * j2) / d).abs() < 1e-10, "{line}");
    }
}

#[test]
fn sweep_landmark_rows() {
    let text = stdout(&kondo(&["sweep"]));
    let row = |j: &str| {
        text.lines()
            .find(|l| l.split(',').next() == Some(j))
            .unwrap_or_else(|| panic!("no row {j}"))
            .split(',')
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    let r0 = row("0");
    assert_eq!(
        (r0[1].as_str(), r0[5].as_str(), r0[7].as_str()),
        ("0", "0", "1")
    );
    let r1 = row("1");
    assert_eq!(
        (r1[5].as_str(), r1[6].as_str(), r1[7].as_str()),
        ("0.8", "0", "-0.6")
    );
    let eof3: f64 = row("3")[2].parse().unwrap();
    assert!(eof3 > 0.8);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["scatter", "--j", "-1"][..],
        &["scatter", "--j=-0.5"],
        &["scatter"],
        &["scatter", "--j", "1", "--impurity", "sideways"],
        &["detect", "--j", "abc"],
        &["sweep", "--steps", "1"],
        &["sweep", "--j-min", "3", "--j-max", "1"],
        &["sweep", "--j-min", "-1"],
        &["bogus"],
    ] {
        let out = kondo(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = kondo(&["sweep", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn verify_passes_and_perturbation_fails() {
    let ok = kondo(&["verify"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("0 failed"));
    let bad = kondo(&["verify", "--perturb-kernel", "1e-3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}
