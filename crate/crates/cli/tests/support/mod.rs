//! Golden-file runner shared by the golden and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde::Deserialize;

/// Set to regenerate the expected files instead of comparing.
pub const UPDATE_VAR: &str = "BAIRECF_UPDATE_GOLDEN";

#[derive(Debug, Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub env: BTreeMap<String, String>,
    /// File fed to stdin, relative to the golden directory.
    #[serde(default)]
    pub stdin: Option<String>,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn load_cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&text).expect("cases.json is valid")
}

/// Runs the binary once and renders stdout, stderr and the exit code.
pub fn run_case(case: &Case) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bairecf"));
    cmd.args(&case.args)
        .current_dir(golden_dir())
        .env_remove("BAIRECF_MAX_DEPTH")
        .envs(&case.env)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn bairecf");
    let input = case
        .stdin
        .as_ref()
        .map(|p| std::fs::read(golden_dir().join(p)).expect("stdin file"))
        .unwrap_or_default();
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let out = child.wait_with_output().expect("bairecf runs");

    let env: String = case.env.iter().map(|(k, v)| format!("{k}={v} ")).collect();
    let mut text = format!("$ {env}bairecf {}\n", shell_words(&case.args));
    text.push_str(&String::from_utf8(out.stdout).expect("utf-8 stdout"));
    let stderr = String::from_utf8(out.stderr).expect("utf-8 stderr");
    if !stderr.is_empty() {
        text.push_str("--- stderr\n");
        text.push_str(&stderr);
    }
    text.push_str(&format!("--- exit {}\n", out.status.code().unwrap_or(-1)));
    text
}

fn shell_words(args: &[String]) -> String {
    args.iter()
        .map(|a| {
            if a.chars().all(|c| c.is_ascii_alphanumeric() || "-_/.=".contains(c)) {
                a.clone()
            } else {
                format!("'{a}'")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs every case twice and compares both runs with the expected file.
/// Returns one entry per case that misbehaved.
pub fn check_all() -> Vec<String> {
    let update = std::env::var_os(UPDATE_VAR).is_some();
    let mut failures = Vec::new();
    for case in load_cases() {
        let path = golden_dir().join("expected").join(format!("{}.txt", case.name));
        let first = run_case(&case);
        let second = run_case(&case);
        if first != second {
            failures.push(format!("{}: output differs between runs", case.name));
            continue;
        }
        if update {
            std::fs::write(&path, &first).expect("write golden");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == first => {}
            Ok(expected) => failures.push(format!(
                "{}: mismatch\n--- expected\n{expected}--- actual\n{first}",
                case.name
            )),
            Err(_) => failures.push(format!("{}: missing {}", case.name, path.display())),
        }
    }
    failures
}
