use std::fmt::Write as _;

use enumera_core::kernel::BigInt;
use enumera_core::ComponentLedger;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// What every subcommand prints. `status` is derived from `violations`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub seed: u64,
    pub tables: Vec<ComponentLedger>,
    pub data: Value,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            seed,
            tables: Vec::new(),
            data: Value::Object(Map::new()),
            violations: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.as_object_mut().expect("data is an object").insert(key.to_string(), v);
    }

    pub fn set_big(&mut self, key: &str, value: &BigInt) {
        self.set(key, big_value(value));
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.violations.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    pub fn expect(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.violations.push(what.into());
        }
    }

    pub fn finish(mut self) -> Self {
        self.status = if self.violations.is_empty() { Status::Pass } else { Status::Fail };
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One record per line, tab separated, first field naming the record.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let status = if self.status == Status::Pass { "pass" } else { "fail" };
        writeln!(out, "command\t{}", self.command).unwrap();
        writeln!(out, "status\t{status}").unwrap();
        writeln!(out, "seed\t{}", self.seed).unwrap();
        for t in &self.tables {
            writeln!(out, "table\t{}\t{}", clean(&t.target_name), t.target_degree).unwrap();
            for e in &t.entries {
                writeln!(out, "entry\t{}\t{}\t{}\t{}", clean(&e.label), e.count, e.multiplicity, clean(&e.provenance)).unwrap();
            }
        }
        let mut flat = Vec::new();
        flatten("", &self.data, &mut flat);
        for (k, v) in flat {
            writeln!(out, "data\t{k}\t{}", clean(&v)).unwrap();
        }
        for v in &self.violations {
            writeln!(out, "violation\t{}", clean(v)).unwrap();
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "timing_ms\t{ms}").unwrap();
        }
        out
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) if a.is_empty() => out.push((prefix.to_string(), String::new())),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), "null".into())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Big integers go out as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise.
pub fn big_value(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| Value::String(b.to_string()), Value::from)
}
