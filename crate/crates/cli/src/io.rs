//! Reading inputs, writing canonical outputs, and the exit-code contract.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde_json::{json, Map, Value};

/// A failure that ends the process with a specific exit code and a JSON
/// diagnostic on stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub diagnostic: Value,
}

impl Failure {
    /// Exit 2: unreadable, unparsable, invalid or unsupported input.
    pub fn input(kind: &str, file: Option<&Path>, message: impl fmt::Display) -> Self {
        Failure { code: 2, diagnostic: diagnostic(kind, file, message.to_string()) }
    }

    /// Exit 3: inputs that are fine alone but do not fit together.
    pub fn mismatch(message: impl fmt::Display) -> Self {
        Failure { code: 3, diagnostic: diagnostic("mismatch", None, message.to_string()) }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        if let Value::Object(m) = &mut self.diagnostic {
            m.insert(key.into(), value);
        }
        self
    }
}

fn diagnostic(kind: &str, file: Option<&Path>, message: String) -> Value {
    let mut v = json!({ "error": kind, "message": message });
    if let Some(f) = file {
        v["file"] = Value::String(f.display().to_string());
    }
    v
}

pub type CliResult<T> = Result<T, Failure>;

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| Failure::input("io", Some(path), format!("{e:#}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::input("parse", Some(path), e))
}

/// Deserializes a typed value, reporting serde errors (including bad
/// rationals such as `"1/0"`) as parse failures.
pub fn parse_as<T: serde::de::DeserializeOwned>(path: &Path, v: &Value) -> CliResult<T> {
    serde_json::from_value(v.clone()).map_err(|e| Failure::input("parse", Some(path), e))
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), sorted(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(xs) => Value::Array(xs.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

/// Pretty JSON with object keys sorted at every level and a final newline.
/// Rationals are already reduced `p/q` strings when they reach this point.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Failure::input("io", Some(path), format!("{e:#}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
