//! Golden-file harness shared by the golden and acceptance test targets.
//!
//! Each case in `tests/golden/cases.json` runs the `llc` binary from inside
//! `tests/golden` (so relative registry paths resolve) and compares standard
//! output byte-for-byte with `tests/golden/<name>.out`. Setting
//! `LLC_BLESS=1` rewrites the expected files instead.

#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub stdin: Option<String>,
    #[serde(default)]
    pub exit: i32,
}

pub struct Outcome {
    pub name: String,
    pub subcommand: String,
    pub ok: bool,
    pub detail: String,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn load_cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json is readable");
    serde_json::from_str(&text).expect("cases.json is well formed")
}

/// Runs `llc` with the given arguments and standard input; returns
/// `(exit code, stdout, stderr)`.
pub fn run_llc(args: &[String], stdin: Option<&str>) -> (i32, Vec<u8>, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_llc"))
        .args(args)
        .current_dir(golden_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("llc starts");
    {
        let mut pipe = child.stdin.take().expect("stdin is piped");
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).expect("stdin accepts the payload");
        }
    }
    let out = child.wait_with_output().expect("llc finishes");
    (out.status.code().unwrap_or(-1), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

pub fn check_case(case: &Case, bless: bool) -> Outcome {
    let (code, stdout, stderr) = run_llc(&case.args, case.stdin.as_deref());
    let (_, again, _) = run_llc(&case.args, case.stdin.as_deref());
    let path = golden_dir().join(format!("{}.out", case.name));
    let subcommand = case.args.first().cloned().unwrap_or_default();
    let fail = |detail: String| Outcome { name: case.name.clone(), subcommand: subcommand.clone(), ok: false, detail };
    if code != case.exit {
        return fail(format!("exit {code}, expected {}; stdout {}", case.exit, String::from_utf8_lossy(&stdout)));
    }
    if !stderr.is_empty() {
        return fail(format!("unexpected stderr: {stderr}"));
    }
    if stdout != again {
        return fail("two runs differ".into());
    }
    if serde_json::from_slice::<serde_json::Value>(&stdout).is_err() {
        return fail("stdout is not a JSON document".into());
    }
    if bless {
        std::fs::write(&path, &stdout).expect("golden file is writable");
    }
    match std::fs::read(&path) {
        Ok(expected) if expected == stdout => {
            Outcome { name: case.name.clone(), subcommand, ok: true, detail: String::new() }
        }
        Ok(_) => fail(format!("output differs from {}", path.display())),
        Err(_) => fail(format!("missing {}; rerun with LLC_BLESS=1", path.display())),
    }
}

pub fn bless_requested() -> bool {
    std::env::var_os("LLC_BLESS").is_some_and(|v| v == "1")
}
