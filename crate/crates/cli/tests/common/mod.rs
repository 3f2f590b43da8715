#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    data("golden").join(name)
}

pub fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_operad-forge"));
    cmd.current_dir(data("")).args(args).env_remove("OPERAD_FORGE_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

pub fn diagnostic(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON diagnostic")
}

/// Compares against a stored golden file. `OPERAD_FORGE_BLESS=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) -> bool {
    let path = golden_path(name);
    if std::env::var_os("OPERAD_FORGE_BLESS").is_some() {
        std::fs::write(&path, actual).expect("golden written");
        return true;
    }
    std::fs::read_to_string(&path).map(|g| g == actual).unwrap_or(false)
}
