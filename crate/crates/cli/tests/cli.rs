use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfwalsh"))
        .args(args)
        .env_remove("BFWALSH_MAX_N")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bfwalsh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn reproduce_all_examples() {
    for id in ["1", "2", "3", "4", "5"] {
        let out = run(&["reproduce", id]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "example {id}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn reproduce_two_distribution() {
    let v = json(&run(&["reproduce", "2"]));
    let d = &v["measured"]["distribution"];
    for (k, n) in [("0", 96), ("16", 72), ("-16", 56), ("32", 16), ("-32", 16)] {
        assert_eq!(d[k], n);
    }
    assert_eq!(v["seed"], 0);
}

#[test]
fn reproduce_out_of_range_is_usage_error() {
    assert_eq!(run(&["reproduce", "9"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "0"]).status.code(), Some(2));
}

#[test]
fn reproduce_csv() {
    let out = run(&["reproduce", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("example,seed,check,expected,measured,ok\n"));
    assert!(text.contains("case2_distribution,32:20;16:64;0:96;-16:64;-32:12,32:20;16:64;0:96;-16:64;-32:12,true"));
}

#[test]
fn analyze_example_one() {
    let out = run(&[
        "analyze",
        "--field",
        "gf2^6",
        "--construction",
        "kasami-triple",
        "--lambda",
        "1",
        "--u",
        "g",
        "--v",
        "g^9",
        "--r",
        "g^27",
        "--seed",
        "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["conditions"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["measured"]["class"], "Bent");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["params"]["u"], "g^1");
}

#[test]
fn analyze_parameter_errors() {
    let base = [
        "analyze",
        "--m",
        "3",
        "--construction",
        "kasami-triple",
        "--v",
        "g^9",
        "--r",
        "g^27",
    ];
    let out = run(&[&base[..], &["--u", "0"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonzero"));
    let out = run(&[
        "analyze",
        "--m",
        "3",
        "--construction",
        "kasami-triple",
        "--u",
        "g",
        "--v",
        "g^2",
        "--r",
        "0x6",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("u + v + r = 0"));
    assert_eq!(
        run(&["analyze", "--m", "3", "--construction", "bent"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "--construction", "kasami-triple"]).status.code(),
        Some(2)
    );
}

#[test]
fn analyze_field_file_and_csv() {
    let path = scratch("field8.json");
    std::fs::write(&path, r#"{"n": 8, "poly_hex": "0x11d"}"#).unwrap();
    let out = run(&[
        "analyze",
        "--field",
        path.to_str().unwrap(),
        "--construction",
        "kasami-triple",
        "--lambda",
        "g^17",
        "--u",
        "g^10",
        "--v",
        "g^9",
        "--r",
        "g^3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert_eq!(
        row,
        "kasami-triple,0,100,FiveValued,FiveValued,32:16;16:72;0:96;-16:56;-32:16,3,false,true"
    );
}

#[test]
fn analyze_bivariate() {
    let out = run(&[
        "analyze",
        "--field",
        "gf2^9",
        "--construction",
        "mm-niho-power",
        "--s",
        "3",
        "--u1",
        "g^146",
        "--u2",
        "g^73",
        "--v1",
        "g^73",
        "--v2",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["measured"]["class"], "SemiBent");
}

#[test]
fn sweep_semi_bent_count() {
    let out = run(&[
        "sweep",
        "--m",
        "3",
        "--construction",
        "kasami-double",
        "--sweep",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["semibent"], 2016);
    assert_eq!(v["predicted_semibent_pairs"], 2016);
}

#[test]
fn sweep_kasami_random() {
    let out = run(&[
        "sweep",
        "--m",
        "4",
        "--construction",
        "kasami-triple",
        "--sweep",
        "random:500",
        "--seed",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["samples"], 500);
    assert_eq!(v["seed"], 9);
}

#[test]
fn sweep_gold_lambda_scan() {
    let v = json(&run(&[
        "sweep",
        "--m",
        "4",
        "--construction",
        "gold-triple",
        "--sweep",
        "random:20",
    ]));
    assert_eq!(v["lambda_scan"]["valid"], 4);
    assert_eq!(v["lambda_scan"]["permutations"], 4);
}

#[test]
fn sweep_is_deterministic() {
    let args = [
        "sweep",
        "--m",
        "4",
        "--construction",
        "kasami-triple",
        "--sweep",
        "random:80",
        "--seed",
        "3",
    ];
    let a = run(&[&args[..], &["--jobs", "1"]].concat());
    let b = run(&[&args[..], &["--jobs", "4"]].concat());
    let c = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn sweep_caps_and_modes() {
    let out = Command::new(env!("CARGO_BIN_EXE_bfwalsh"))
        .args([
            "sweep",
            "--m",
            "4",
            "--construction",
            "kasami-triple",
            "--sweep",
            "random:5",
        ])
        .env("BFWALSH_MAX_N", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sweep",
        "--m",
        "6",
        "--construction",
        "kasami-triple",
        "--sweep",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sweep",
        "--m",
        "3",
        "--construction",
        "kasami-triple",
        "--sweep",
        "sometimes",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_csv_file() {
    let path = scratch("sweep.csv");
    let out = run(&[
        "sweep",
        "--m",
        "2",
        "--construction",
        "kasami-triple",
        "--sweep",
        "exhaustive",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("kasami-triple,exhaustive,0,total,samples,420"));
}
