//! Command-line tests against the built binary. Golden files live in
//! `tests/golden/`; set `LGW_UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

use lgw::lambert_w::lambert_w;
use lgw::quadratic_fields::fundamental_unit;
use lgw::survey::FLAT_COLUMNS;
use lgw::ComplexValue;
use serde_json::Value;

const FLOAT_TOL: f64 = 1e-12;

fn lgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgw"))
        .args(args)
        .env_remove("LGW_JOBS")
        .output()
        .expect("run lgw")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn floats_match(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= FLOAT_TOL * (1.0 + a.abs().max(b.abs()))
}

/// Same keys and shapes everywhere; floats within tolerance, everything else exact.
fn same_document(actual: &Value, expected: &Value, path: &str) -> Result<(), String> {
    match (actual, expected) {
        (Value::Object(a), Value::Object(e)) => {
            let ak: Vec<_> = a.keys().collect();
            let ek: Vec<_> = e.keys().collect();
            if ak != ek {
                return Err(format!("{path}: keys {ak:?} != {ek:?}"));
            }
            for (k, v) in a {
                same_document(v, &e[k], &format!("{path}.{k}"))?;
            }
            Ok(())
        }
        (Value::Array(a), Value::Array(e)) => {
            if a.len() != e.len() {
                return Err(format!("{path}: length {} != {}", a.len(), e.len()));
            }
            for (n, (x, y)) in a.iter().zip(e).enumerate() {
                same_document(x, y, &format!("{path}[{n}]"))?;
            }
            Ok(())
        }
        (Value::Number(a), Value::Number(e)) if a.is_f64() || e.is_f64() => {
            let (x, y) = (a.as_f64().unwrap(), e.as_f64().unwrap());
            if floats_match(x, y) {
                Ok(())
            } else {
                Err(format!("{path}: {x} != {y}"))
            }
        }
        _ if actual == expected => Ok(()),
        _ => Err(format!("{path}: {actual} != {expected}")),
    }
}

fn same_csv(actual: &str, expected: &str) -> Result<(), String> {
    let a: Vec<&str> = actual.lines().collect();
    let e: Vec<&str> = expected.lines().collect();
    if a.len() != e.len() {
        return Err(format!("{} lines != {}", a.len(), e.len()));
    }
    for (n, (la, le)) in a.iter().zip(&e).enumerate() {
        let fa: Vec<&str> = la.split(',').collect();
        let fe: Vec<&str> = le.split(',').collect();
        if fa.len() != fe.len() {
            return Err(format!("line {n}: field count"));
        }
        for (x, y) in fa.iter().zip(&fe) {
            let ok = x == y
                || matches!((x.parse::<f64>(), y.parse::<f64>()), (Ok(p), Ok(q)) if floats_match(p, q));
            if !ok {
                return Err(format!("line {n}: {x} != {y}"));
            }
        }
    }
    Ok(())
}

fn check_golden(name: &str, args: &[&str]) {
    let out = lgw(args);
    assert!(
        out.status.success(),
        "lgw {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.ends_with('\n'),
        "{name}: output not newline-terminated"
    );
    let path = golden_path(name);
    if std::env::var_os("LGW_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    let result = if name.ends_with(".csv") {
        same_csv(&text, &expected)
    } else {
        let actual: Value = serde_json::from_str(&text).unwrap();
        let expected: Value = serde_json::from_str(&expected).unwrap();
        same_document(&actual, &expected, "$")
    };
    if let Err(e) = result {
        panic!("{name}: {e}");
    }
}

#[test]
fn golden_outputs() {
    let cases: [(&str, &[&str]); 14] = [
        (
            "w_omega.json",
            &["w", "--branch", "0", "--re", "1", "--im", "0"],
        ),
        (
            "w_real_lower.json",
            &["w", "--branch", "-1", "--re", "-0.1", "--real"],
        ),
        (
            "w_derivative.json",
            &[
                "w",
                "--branch",
                "1",
                "--re",
                "2",
                "--im",
                "-1",
                "--derivative",
            ],
        ),
        (
            "w_series.json",
            &["w", "--re", "0.1", "--im", "0.05", "--series", "20"],
        ),
        (
            "solve.json",
            &["solve", "--a-re", "-1", "--b-re", "0.1", "--c-re", "1"],
        ),
        ("alpha_i.json", &["alpha", "--eps-re", "0", "--eps-im", "1"]),
        (
            "alpha_real.json",
            &[
                "alpha",
                "--case",
                "real",
                "--regulator",
                "0.881373587019543",
            ],
        ),
        (
            "verify_real.json",
            &[
                "verify",
                "--alpha-re",
                "0",
                "--eps-re",
                "2.718281828459045",
                "--case",
                "real",
            ],
        ),
        ("classno_163.json", &["classno", "--discriminant", "-163"]),
        (
            "classno_d10.json",
            &["classno", "--d", "10", "--narrow", "--analytic"],
        ),
        ("unit_d94.json", &["unit", "--d", "94"]),
        (
            "unit_degree4.json",
            &["unit", "--degree", "4", "--totally-real"],
        ),
        (
            "scan_imaginary_10.json",
            &["scan", "--imaginary", "--limit", "10"],
        ),
        (
            "scan_real_13.csv",
            &["scan", "--real", "--limit", "13", "--format", "csv"],
        ),
    ];
    for (name, args) in cases {
        check_golden(name, args);
    }
    check_golden(
        "table_imaginary_4.json",
        &["table", "--imaginary", "--limit", "4"],
    );
}

#[test]
fn classno_example() {
    let out = lgw(&["classno", "--discriminant", "-163"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["D"], -163);
    assert_eq!(v["h"], 1);
}

#[test]
fn empty_real_scan_is_header_only() {
    let out = lgw(&["scan", "--real", "--limit", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        format!("{}\n", FLAT_COLUMNS.join(","))
    );
}

#[test]
fn values_equal_library_values() {
    let out = lgw(&["w", "--branch", "2", "--re", "-3.5", "--im", "0.25"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let w = lambert_w(2, ComplexValue::new(-3.5, 0.25)).unwrap().value;
    assert_eq!(v["re"].as_f64().unwrap(), w.re);
    assert_eq!(v["im"].as_f64().unwrap(), w.im);

    let out = lgw(&["unit", "--discriminant", "76"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let u = fundamental_unit(19).unwrap();
    assert_eq!(v["unit"]["x"], u.x.to_string());
    assert_eq!(v["unit"]["regulator"].as_f64().unwrap(), u.regulator);
}

#[test]
fn conventions_are_echoed() {
    let out = lgw(&[
        "alpha",
        "--eps-re",
        "-1",
        "--branch",
        "-2",
        "--log-branch",
        "1",
        "--tolerance",
        "1e-12",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &v["conventions"];
    assert_eq!(c["branch"], -2);
    assert_eq!(c["log_branch"], 1);
    assert_eq!(c["pairing"], "ConjugateBranch");
    assert_eq!(c["tolerance"].as_f64(), Some(1e-12));
}

#[test]
fn exit_codes_and_streams() {
    for (args, code) in [
        (&["classno", "--d", "12"][..], 2),
        (&["unit", "--d", "1"][..], 2),
        (&["w", "--branch", "1", "--re", "0"][..], 2),
        (&["w", "--re", "-1", "--real"][..], 2),
        (
            &["solve", "--a-re", "1", "--b-re", "1", "--c-re", "0"][..],
            2,
        ),
        (&["alpha", "--eps-re", "1"][..], 2),
        (
            &[
                "classno",
                "--discriminant",
                "-23",
                "--analytic",
                "--precision-terms",
                "5",
            ][..],
            3,
        ),
        (&["classno", "--d", "5", "--discriminant", "5"][..], 64),
        (&["scan", "--limit", "10"][..], 64),
        (&["w"][..], 64),
        (&["w", "--re", "x"][..], 64),
        (&["w", "--re", "1", "--tolerance", "1e-16"][..], 64),
        (&[][..], 64),
    ] {
        let out = lgw(args);
        assert_eq!(out.status.code(), Some(code), "lgw {args:?}");
        assert!(out.stdout.is_empty(), "lgw {args:?} wrote to stdout");
        assert!(!out.stderr.is_empty(), "lgw {args:?} wrote no diagnostic");
    }
}

#[test]
fn help_prints_defaults_to_stdout() {
    let out = lgw(&["alpha", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in [
        "--branch",
        "[default: 0]",
        "--log-branch",
        "[default: conjugate]",
        "--tolerance",
    ] {
        assert!(text.contains(needle), "help lacks {needle}");
    }
    assert!(text.contains("1e-10"));
}

#[test]
fn jobs_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_lgw"))
        .args(["scan", "--imaginary", "--limit", "500"])
        .env("LGW_JOBS", "3")
        .output()
        .unwrap();
    let without = lgw(&["scan", "--imaginary", "--limit", "500"]);
    assert!(with_env.status.success());
    assert_eq!(with_env.stdout, without.stdout);
}
