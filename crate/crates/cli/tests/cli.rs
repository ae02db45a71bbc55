use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfpow"))
        .args(args)
        .output()
        .expect("selfpow runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn golden_outputs() {
    let cases: [(&str, &[&str]); 6] = [
        ("period_10.json", &["--format", "json", "period", "10"]),
        (
            "digit_20_10_lnz.json",
            &[
                "--format",
                "json",
                "digit",
                "20",
                "10",
                "--last-nonzero",
                "--verify",
            ],
        ),
        ("period_8.csv", &["--format", "csv", "period", "8"]),
        ("period_12.txt", &["period", "12"]),
        (
            "scan_2_20.jsonl",
            &[
                "--format", "json", "scan", "--bmax", "20", "--tmax", "20", "--nmax", "1000",
            ],
        ),
        (
            "scan_15_17.csv",
            &[
                "--format", "csv", "scan", "--bmin", "15", "--bmax", "17", "--tmax", "5", "--nmax",
                "1000",
            ],
        ),
    ];
    for (file, args) in cases {
        assert_eq!(stdout(args), golden(file), "{file}");
    }
}

#[test]
fn json_records_carry_schema_fields() {
    for args in [
        &["--format", "json", "digit", "5", "3"][..],
        &["--format", "json", "period", "6"],
        &[
            "--format",
            "json",
            "verify",
            "--suite",
            "oracle",
            "--oracle-nmax",
            "50",
            "--oracle-bmax",
            "20",
        ],
    ] {
        for line in stdout(args).lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
            assert_eq!(keys, ["schema_version", "subcommand", "inputs", "results"]);
            assert_eq!(v["schema_version"], 1);
        }
    }
}

#[test]
fn digit_values() {
    assert_eq!(stdout(&["digit", "5", "3"]).trim(), "2");
    assert_eq!(stdout(&["digit", "20", "10", "--last-nonzero"]).trim(), "6");
    assert_eq!(stdout(&["digit", "1", "7", "--last-nonzero"]).trim(), "1");
    assert_eq!(stdout(&["digit", "10", "10"]).trim(), "0");
}

#[test]
fn emitted_sequence_matches_digit_command() {
    let out = stdout(&[
        "--format",
        "csv",
        "period",
        "18",
        "--emit-sequence",
        "40",
        "60",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("b,n,last,last_nonzero"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(stdout(&["digit", f[1], "18"]).trim(), f[2]);
        assert_eq!(
            stdout(&["digit", f[1], "18", "--last-nonzero"]).trim(),
            f[3]
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["digit", "7", "10"]), 0);
    assert_eq!(code(&["digit", "0", "10"]), 2);
    assert_eq!(code(&["digit", "7", "1"]), 2);
    assert_eq!(code(&["digit", "7"]), 2);
    assert_eq!(code(&["--threads", "0", "digit", "7", "10"]), 2);
    assert_eq!(code(&["scan", "--bmin", "9", "--bmax", "3"]), 2);
    assert_eq!(code(&["period", "10", "--window", "30"]), 4);
    assert_eq!(
        code(&[
            "verify",
            "--suite",
            "oracle",
            "--oracle-nmax",
            "40",
            "--oracle-bmax",
            "12"
        ]),
        0
    );
    // The prime-power fractality cases fail at n = 1.
    assert_eq!(code(&["verify", "--suite", "lemmas"]), 1);
}

#[test]
fn verify_above_oracle_bound_is_skipped_not_failed() {
    let out = run(&["digit", "5000", "10", "--verify", "--oracle-bound", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = [
        "--format", "json", "scan", "--bmax", "70", "--tmax", "40", "--nmax", "5000",
    ];
    let one = stdout(&[&["--threads", "1"][..], &args].concat());
    let four = stdout(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one, four);
    let period: [&str; 4] = ["--format", "json", "period", "360"];
    assert_eq!(
        stdout(&[&["--threads", "1"][..], &period].concat()),
        stdout(&[&["--threads", "3"][..], &period].concat())
    );
}
