//! Run reports: named checks with residuals or dimension tables, a digest
//! of the inputs, and deterministic JSON.

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn residual(name: &str, residual: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::from_bool(residual <= tolerance),
            residual: Some(residual),
            tolerance: Some(tolerance),
            dims: None,
            expected: None,
            detail: None,
        }
    }

    pub fn dims(name: &str, dims: Vec<usize>, expected: Vec<usize>) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::from_bool(dims == expected),
            residual: None,
            tolerance: None,
            dims: Some(dims),
            expected: Some(expected),
            detail: None,
        }
    }

    pub fn flag(name: &str, ok: bool, detail: &str) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::from_bool(ok),
            residual: None,
            tolerance: None,
            dims: None,
            expected: None,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub data: Value,
    /// Shown in text output only, so that JSON stays byte-identical across runs.
    #[serde(skip)]
    pub wall_clock: Duration,
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for part in inputs {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    hex::encode(h.finalize())
}

/// Rounds every float to 15 significant digits.
fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
            serde_json::Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

pub fn to_canonical_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map(canonicalize).map_err(|e| Error::Invalid(e.to_string()))
}

impl RunReport {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        RunReport {
            command: command.into(),
            inputs_digest: digest(inputs),
            status: Status::Pass,
            checks: Vec::new(),
            data: Value::Object(Default::default()),
            wall_clock: Duration::ZERO,
        }
    }

    pub fn push(&mut self, check: CheckRecord) -> Result<()> {
        if self.checks.iter().any(|c| c.name == check.name) {
            return Err(Error::Invalid(format!("duplicate check name {}", check.name)));
        }
        if check.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.checks.push(check);
        Ok(())
    }

    /// Adds `value` under `key` in the data section.
    pub fn put<T: Serialize>(&mut self, key: &str, value: &T) -> Result<()> {
        let v = to_canonical_value(value)?;
        if let Value::Object(o) = &mut self.data {
            o.insert(key.into(), v);
        }
        Ok(())
    }

    /// Merges another report's checks under `prefix/` and its data under `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: RunReport) -> Result<()> {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.push(c)?;
        }
        self.put(prefix, &other.data)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Sorted keys, floats at 15 significant digits, trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let v = to_canonical_value(self)?;
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Invalid(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn render_text(&self) -> String {
        let fmt_opt = |x: Option<f64>| x.map(|v| format!("{v:.3e}")).unwrap_or_default();
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                let detail = match (&c.dims, &c.expected) {
                    (Some(d), Some(e)) if d != e => format!("{d:?} expected {e:?}"),
                    (Some(d), _) => format!("{d:?}"),
                    _ => c.detail.clone().unwrap_or_default(),
                };
                [c.name.clone(), c.status.label().into(), fmt_opt(c.residual), fmt_opt(c.tolerance), detail]
            })
            .collect();
        let header = ["check", "status", "residual", "tol", "detail"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |r: &[String; 5]| {
            let cells: Vec<String> = r.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            cells.join("  ").trim_end().to_string()
        };
        let mut out = format!("{}  (inputs {})\n", self.command, &self.inputs_digest[..12]);
        out.push_str(&line(&header));
        out.push('\n');
        for r in &rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} checks in {:.2}s\n",
            self.status.label(),
            self.checks.len(),
            self.wall_clock.as_secs_f64()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected_and_failure_propagates() {
        let mut r = RunReport::new("t", &[b"x"]);
        r.push(CheckRecord::residual("a", 1e-12, 1e-9)).unwrap();
        assert!(r.passed());
        assert!(r.push(CheckRecord::residual("a", 0.0, 1.0)).is_err());
        r.push(CheckRecord::dims("b", vec![1, 2], vec![1, 3])).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn json_is_stable_and_rounded() {
        let mut r = RunReport::new("t", &[b"x"]);
        r.put("z", &0.1_f64).unwrap();
        r.put("a", &(1.0 / 3.0)).unwrap();
        let s = r.to_json().unwrap();
        assert!(s.contains("0.333333333333333"));
        assert!(!s.contains("0.3333333333333333"));
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert_eq!(s, r.to_json().unwrap());
    }
}
