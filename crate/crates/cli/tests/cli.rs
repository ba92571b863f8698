use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anisoribbon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("anisoribbon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["bands", "--bogus"]).status.code(), Some(2));
}

#[test]
fn invalid_configurations_exit_2() {
    let cases: [&[&str]; 6] = [
        &["bands", "--model", "nope", "--N", "3"],
        &["bands", "--model", "square-zigzag"],
        &["bands", "--model", "square-zigzag", "--N", "3", "--t1", "1"],
        &["bands", "--model", "square-lr", "--N", "3", "--tl", "1", "--tr", "2"],
        &["edges", "--model", "square-general", "--N", "3"],
        &["wavefunction", "--model", "square-lr", "--N", "3", "--band", "6"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn validation_outcome_sets_exit_code() {
    let pass = run(&["validate", "--model", "square-lr", "--N", "5", "--tu", "0.7", "--td", "1.3", "--k-points", "32"]);
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
    // A zero tolerance cannot be met by floating-point eigenvalues.
    let fail = run(&["validate", "--model", "square-zigzag", "--N", "5", "--k-points", "32", "--tol", "0"]);
    assert_eq!(fail.status.code(), Some(1));
    let json = run(&["validate", "--model", "triangle-linear", "--N", "4", "--k-points", "16", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["models"][0]["model"], "triangle-linear");
}

#[test]
fn band_table_layout() {
    let o = run(&["bands", "--model", "triangle-zigzag1", "--N", "5", "--t1", "0.9", "--t2", "0.1", "--t3", "1", "--k-points", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,band,energy,class,u,ipr,source"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8 * 5);
    for r in &rows {
        assert_eq!(r.len(), 7);
        r[0].parse::<f64>().unwrap();
        r[2].parse::<f64>().unwrap();
        assert_eq!(r[4].is_empty(), !r[3].starts_with("edge"), "{r:?}");
    }
    assert!(rows.iter().any(|r| r[3] == "edge-left"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let base = ["bands", "--model", "square-zigzag", "--N", "13", "--k-points", "64"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let four = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let again = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn config_file_with_flag_override() {
    let config = scratch("config.json");
    std::fs::write(
        &config,
        r#"{"model": "triangle-zigzag2", "N": 5, "t1": 1.5, "t2": 0.1, "t3": 1.0, "k_points": 4}"#,
    )
    .unwrap();
    let out = scratch("bands.json");
    let o = run(&[
        "bands",
        "--config",
        config.to_str().unwrap(),
        "--N",
        "4",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["width"], 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4 * 4);

    std::fs::write(&config, r#"{"model": "square-zigzag", "N": 3, "colour": 1}"#).unwrap();
    assert_eq!(run(&["bands", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn edges_and_zero_mode_reports() {
    let o = run(&["edges", "--model", "triangle-zigzag2", "--N", "5", "--t1", "1.5", "--t2", "0.1", "--t3", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let families = v["families"].as_array().unwrap();
    for f in families {
        assert_eq!(f["exists"], f["family"] == "A", "{f}");
    }

    let o = run(&["edges", "--model", "square-zigzag", "--N", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["regime"]["verdict"], "edge-bulk-transition");

    let o = run(&["zeromodes", "--model", "square-general", "--N", "3", "--tu", "1", "--td", "1", "--tl", "1", "--tr", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["modes"].as_array().unwrap().len(), 3);

    let o = run(&["zeromodes", "--model", "square-general", "--N", "2", "--tl", "1", "--tr", "1", "--solve-j", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["solve"]["tu_plus_td"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn wavefunction_profiles() {
    let o = run(&["wavefunction", "--model", "square-zigzag", "--N", "30", "--u", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let abs: Vec<f64> = text
        .lines()
        .skip(1)
        .filter(|l| l.contains(",circ,"))
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(abs.len(), 30);
    assert!(abs.windows(2).all(|w| w[1] < w[0]));

    let o = run(&["wavefunction", "--model", "triangle-zigzag2", "--N", "6", "--u", "0.8", "--family", "b"]);
    let abs: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    for i in 0..6 {
        assert!((abs[i] - abs[5 - i]).abs() < 1e-12);
    }

    let o = run(&["wavefunction", "--model", "triangle-linear", "--N", "4", "--band", "0", "--k", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}
