use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use sawtooth_cli::csv_io::{parse_csv, write_series};
use sawtooth_core::TimeSeries;
use serde_json::Value;
use tempfile::TempDir;

fn sawtooth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sawtooth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = sawtooth(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn write_csv(path: &Path, rows: &[(f64, f64)]) {
    let mut text = String::from("t,x\n");
    for (t, x) in rows {
        text.push_str(&format!("{t:?},{x:?}\n"));
    }
    fs::write(path, text).unwrap();
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn column(path: &Path, k: usize) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(k).unwrap().parse().unwrap())
        .collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sine_has_one_dominant_mode() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("sine.csv");
    let n = 1000;
    let rows: Vec<_> = (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            (t, (2.0 * std::f64::consts::PI * 10.0 * t).sin())
        })
        .collect();
    write_csv(&input, &rows);
    let out = dir.path().join("out");
    ok(&["decompose", "--input", s(&input), "--out", s(&out)]);

    let summary = read_json(&out.join("summary.json"));
    let modes = summary["modes"].as_array().unwrap();
    assert!(!modes.is_empty());
    assert_eq!(summary["dominant_mode"], 1);
    let rms: Vec<f64> = modes.iter().map(|m| m["rms"].as_f64().unwrap()).collect();
    // end effects of the even extension cost a little energy in the first and last quarter period
    assert!((rms[0] - 0.5f64.sqrt()).abs() < 0.03, "{rms:?}");
    assert!(rms[1..].iter().all(|&r| r < 0.05 * rms[0]), "{rms:?}");
    assert!(summary["reconstruction_error"].as_f64().unwrap() < 1e-12);

    let t = column(&out.join("mode1.csv"), 0);
    assert_eq!(t.len(), n);
    assert_eq!(t[17], rows[17].0);
    let header = fs::read_to_string(out.join("mode1.csv")).unwrap();
    assert!(header.starts_with("t,imf,residue,upper,lower\n"));
}

#[test]
fn monotone_input_has_no_modes() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("m.csv");
    let rows = [(0.0, 1.0), (1.0, 2.0), (2.5, 4.0)];
    write_csv(&input, &rows);
    let out = dir.path().join("out");
    ok(&["decompose", "--input", s(&input), "--out", s(&out)]);
    let summary = read_json(&out.join("summary.json"));
    assert_eq!(summary["mode_count"], 0);
    assert!(!out.join("mode1.csv").exists());
    assert_eq!(column(&out.join("residue.csv"), 1), vec![1.0, 2.0, 4.0]);
    assert_eq!(column(&out.join("residue.csv"), 0), vec![0.0, 1.0, 2.5]);
}

#[test]
fn extrema_counts_strictly_decrease() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("walk.csv");
    ok(&[
        "generate",
        "--kind",
        "mixed",
        "--n",
        "3000",
        "--seed",
        "5",
        "--out",
        s(&input),
    ]);
    let out = dir.path().join("out");
    ok(&["decompose", "--input", s(&input), "--out", s(&out), "--svg"]);
    let summary = read_json(&out.join("summary.json"));
    let counts: Vec<u64> = summary["modes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["input_extrema"].as_u64().unwrap())
        .collect();
    assert!(counts.len() > 2);
    assert!(counts.windows(2).all(|w| w[1] < w[0]), "{counts:?}");
    for k in 1..=counts.len() {
        let svg = fs::read_to_string(out.join(format!("mean{k}.svg"))).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(out.join(format!("mode{k}.svg")).exists());
    }
    assert!(out.join("overview.svg").exists());
}

#[test]
fn expansion_meets_epsilon() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("tt.csv");
    ok(&[
        "generate",
        "--kind",
        "two-tone",
        "--n",
        "2000",
        "--out",
        s(&input),
    ]);
    let out = dir.path().join("out");
    ok(&[
        "decompose",
        "--input",
        s(&input),
        "--out",
        s(&out),
        "--method",
        "expansion",
        "--epsilon",
        "1e-4",
    ]);
    let summary = read_json(&out.join("summary.json"));
    let e = &summary["expansion"];
    assert_eq!(e["converged"], true);
    assert!(e["achieved_error"].as_f64().unwrap() < 1e-4);
    assert_eq!(e["components"], summary["mode_count"]);
    assert!(summary["reconstruction_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn epsilon_is_tied_to_expansion() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.csv");
    write_csv(&input, &[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]);
    let out = dir.path().join("out");
    let with = sawtooth(&[
        "decompose",
        "--input",
        s(&input),
        "--out",
        s(&out),
        "--epsilon",
        "0.1",
    ]);
    assert!(!with.status.success());
    assert!(String::from_utf8_lossy(&with.stderr).contains("--epsilon"));
    let without = sawtooth(&[
        "decompose",
        "--input",
        s(&input),
        "--out",
        s(&out),
        "--method",
        "expansion",
    ]);
    assert!(!without.status.success());
    assert!(!out.join("summary.json").exists());
}

#[test]
fn bad_input_reports_line() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "t,x\n0,1\n1,2\n1,3\n").unwrap();
    let out = sawtooth(&[
        "decompose",
        "--input",
        s(&input),
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let missing = sawtooth(&["decompose", "--input", "/nonexistent.csv", "--out", "o"]);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent.csv"));
}

#[test]
fn emd_method_records_sift_settings() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("tt.csv");
    ok(&[
        "generate",
        "--kind",
        "two-tone",
        "--n",
        "1000",
        "--out",
        s(&input),
    ]);
    let out = dir.path().join("out");
    ok(&[
        "decompose",
        "--input",
        s(&input),
        "--out",
        s(&out),
        "--method",
        "emd",
    ]);
    let summary = read_json(&out.join("summary.json"));
    assert_eq!(summary["method"], "emd");
    assert!(summary["sift"]["max_sifts"].as_u64().unwrap() > 0);
    assert!(summary["reconstruction_error"].as_f64().unwrap() < 1e-10);
}

#[test]
fn bench_reports_scaling() {
    let dir = TempDir::new().unwrap();
    ok(&[
        "bench",
        "--sizes",
        "2000,20000",
        "--repeats",
        "1",
        "--emd-max-size",
        "2000",
        "--out",
        s(dir.path()),
    ]);
    let report = read_json(&dir.path().join("bench.json"));
    let sizes = report["sizes"].as_array().unwrap();
    assert_eq!(sizes.len(), 2);
    assert!(sizes[0]["emd"].is_object());
    assert!(sizes[1]["emd"].is_null());
    assert!(sizes[0]["speedup"].as_f64().unwrap() > 1.0);
    let check = &report["linear_scaling"][0];
    assert_eq!(check["from"], 2000);
    assert_eq!(check["to"], 20000);
    assert_eq!(check["accepted"][0].as_f64().unwrap(), 7.0);
    assert_eq!(check["accepted"][1].as_f64().unwrap(), 13.0);
    assert!(check["time_ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn generate_is_deterministic() {
    let a = ok(&[
        "generate",
        "--kind",
        "randomwalk",
        "--n",
        "500",
        "--seed",
        "9",
    ]);
    let b = ok(&[
        "generate",
        "--kind",
        "randomwalk",
        "--n",
        "500",
        "--seed",
        "9",
    ]);
    let c = ok(&[
        "generate",
        "--kind",
        "randomwalk",
        "--n",
        "500",
        "--seed",
        "10",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let series = parse_csv(&a.stdout[..]).unwrap();
    assert_eq!(series.len(), 500);
}

proptest! {
    #[test]
    fn csv_round_trip(
        steps in prop::collection::vec((1e-6f64..10.0, -1e6f64..1e6), 1..200),
        t0 in -1e3f64..1e3,
    ) {
        let mut t = t0;
        let (mut times, mut values) = (Vec::new(), Vec::new());
        for (dt, x) in steps {
            times.push(t);
            values.push(x);
            t += dt;
        }
        let series = TimeSeries::new(times, values).unwrap();
        let mut buf = Vec::new();
        write_series(&mut buf, &series).unwrap();
        let back = parse_csv(&buf[..]).unwrap();
        prop_assert_eq!(back.times(), series.times());
        prop_assert_eq!(back.values(), series.values());
    }
}
