use std::fmt::Write;

use serde_json::{json, Value};

/// A command's result in both output formats.
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub data: Value,
}

impl Report {
    pub fn new(passed: bool, text: String, data: Value) -> Self {
        Report { passed, text, data }
    }

    pub fn error(e: &racg::Error) -> Self {
        let kind = match e {
            racg::Error::Input(_) => "input",
            racg::Error::Parse { .. } => "parse",
            racg::Error::Capacity { .. } => "capacity",
            racg::Error::Domain(_) => "domain",
            racg::Error::Precondition(_) => "precondition",
            racg::Error::Unsupported(_) => "unsupported",
            racg::Error::Internal(_) => "internal",
        };
        let mut data = json!({ "kind": kind, "message": e.to_string() });
        if let racg::Error::Parse { line, column, .. } = e {
            data["line"] = json!(line);
            data["column"] = json!(column);
        }
        Report {
            passed: false,
            text: String::new(),
            data: json!({ "error": data }),
        }
    }

    pub fn to_json(&self, command: &str) -> String {
        let mut out = json!({ "schema": 1, "command": command, "passed": self.passed });
        if let (Value::Object(target), Value::Object(extra)) = (&mut out, &self.data) {
            for (k, v) in extra {
                target.insert(k.clone(), v.clone());
            }
        } else {
            out["result"] = self.data.clone();
        }
        serde_json::to_string_pretty(&out).expect("JSON values serialize")
    }
}

/// Accumulates `key: value` lines.
#[derive(Default)]
pub struct Text(String);

impl Text {
    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        writeln!(self.0, "{key}: {value}").expect("writing to a String");
        self
    }

    pub fn raw(&mut self, line: impl std::fmt::Display) -> &mut Self {
        writeln!(self.0, "{line}").expect("writing to a String");
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.0)
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
