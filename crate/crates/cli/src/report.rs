use std::fmt::Write as _;

use dirac_core::report::CheckReport;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    #[serde(serialize_with = "check_list")]
    pub checks: CheckReport,
    pub outputs: Vec<String>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

fn check_list<S: serde::Serializer>(c: &CheckReport, s: S) -> Result<S::Ok, S::Error> {
    c.checks.serialize(s)
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            checks: CheckReport::new(),
            outputs: Vec::new(),
            data: Value::Object(Default::default()),
            error: None,
            exit_code: 0,
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).expect("report data serializes");
        if let Value::Object(m) = &mut self.data {
            m.insert(key.to_string(), v);
        }
    }

    pub fn finish(&mut self) {
        self.exit_code = if self.error.is_some() {
            2
        } else if self.checks.all_pass() {
            0
        } else {
            1
        };
    }

    pub fn to_json(&self) -> String {
        // Going through Value sorts every object's keys.
        let v = serde_json::to_value(self).expect("report serializes");
        dirac_core::format::to_pretty(&v)
    }

    pub fn to_text(&self, color: bool) -> String {
        let paint = |code: &str, s: &str| {
            if color {
                format!("\x1b[{code}m{s}\x1b[0m")
            } else {
                s.to_string()
            }
        };
        let failed = self.checks.failures().count();
        let mut out = format!(
            "dirac {}: {} checks, {} failed, exit {}\n",
            self.command,
            self.checks.checks.len(),
            failed,
            self.exit_code
        );
        if let Some(e) = &self.error {
            let _ = writeln!(out, "{} {e}", paint("31", "ERROR"));
        }
        for c in &self.checks.checks {
            if c.pass {
                let _ = writeln!(out, "{} {}", paint("32", "PASS"), c.name);
            } else {
                let w = c.witness.as_deref().unwrap_or("");
                let _ = writeln!(out, "{} {}: {w}", paint("31", "FAIL"), c.name);
            }
        }
        if let Value::Object(m) = &self.data {
            for (k, v) in m {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        for o in &self.outputs {
            let _ = writeln!(out, "  wrote {o}");
        }
        out
    }
}
