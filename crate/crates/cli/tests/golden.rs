mod common;

use common::{bless_requested, check_case, load_cases, run_llc};

#[test]
fn golden_outputs_match() {
    let bless = bless_requested();
    let failures: Vec<String> = load_cases()
        .iter()
        .map(|c| check_case(c, bless))
        .filter(|o| !o.ok)
        .map(|o| format!("{}: {}", o.name, o.detail))
        .collect();
    assert!(failures.is_empty(), "golden mismatches:\n{}", failures.join("\n"));
}

#[test]
fn golden_cases_cover_every_subcommand() {
    let cases = load_cases();
    for sub in [
        "rec",
        "rec-inverse",
        "satake",
        "lfactor",
        "lfactor-pair",
        "eps",
        "conductor",
        "dictionary",
        "involution",
        "dual",
        "classify-predicates",
        "verify",
        "witt",
        "skewfield",
        "dieudonne",
    ] {
        assert!(cases.iter().any(|c| c.args[0] == sub && c.exit == 0), "no successful golden case for `{sub}`");
    }
    assert!(cases.len() >= 20);
}

#[test]
fn missing_p_is_a_usage_error() {
    let (code, out, _) = run_llc(&["lfactor".into()], Some(r#"{"blocks":[]}"#));
    assert_eq!(code, 2);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["error"], "usage");
}

#[test]
fn unknown_flag_reports_json() {
    let (code, out, _) = run_llc(&["rec".into(), "--frobnicate".into()], None);
    assert_eq!(code, 2);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["error"], "usage");
    assert!(doc["detail"].as_str().unwrap().contains("frobnicate"));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("llc-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("out.json");
    let args: Vec<String> = ["dieudonne", "--p", "2", "--rank", "2", "--etale-height", "1", "--output"]
        .iter()
        .map(|s| s.to_string())
        .chain([target.display().to_string()])
        .collect();
    let (code, stdout, _) = run_llc(&args, None);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert_eq!(doc["etaleHeight"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
