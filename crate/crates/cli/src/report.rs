//! Output records and their text, JSON and CSV renderings.

use std::fmt::Write as _;
use std::time::Duration;

use nilprob::fraction::format_significant;
use nilprob::nu::{Estimate, NuReport, NuValue};
use nilprob::ExactFraction;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One result line: a group, how its value was obtained, and the value.
#[derive(Clone, Debug)]
pub struct Record {
    pub group: String,
    pub order: Option<u64>,
    pub method: String,
    /// Exact value, or the observed frequency for Monte Carlo rows.
    pub value: Option<ExactFraction>,
    pub estimate: Option<Estimate>,
    pub elapsed: Option<Duration>,
    pub witness: Option<String>,
    pub status: String,
    /// Verb-specific fields, emitted after the common ones.
    pub extra: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new(group: impl Into<String>, method: impl Into<String>, value: ExactFraction) -> Self {
        Self {
            group: group.into(),
            order: None,
            method: method.into(),
            value: Some(value),
            estimate: None,
            elapsed: None,
            witness: None,
            status: "ok".into(),
            extra: Vec::new(),
        }
    }

    pub fn from_nu(report: &NuReport) -> Self {
        let mut r = match &report.value {
            NuValue::Exact(v) => Self::new(&report.group, report.method.to_string(), v.clone()),
            NuValue::Estimated(e) => {
                let mut r = Self::new(
                    &report.group,
                    report.method.to_string(),
                    ExactFraction::ratio(report.favorable, report.total),
                );
                r.estimate = Some(e.clone());
                r.status = "estimate".into();
                r
            }
        };
        r.order = Some(report.order);
        r.elapsed = Some(report.elapsed);
        r.witness = report.witness.clone();
        r
    }

    pub fn with(mut self, key: &'static str, value: Value) -> Self {
        self.extra.push((key, value));
        self
    }

    fn to_json(&self, deterministic: bool) -> Value {
        let mut m = Map::new();
        m.insert("group".into(), json!(self.group));
        if let Some(o) = self.order {
            m.insert("order".into(), json!(o));
        }
        m.insert("method".into(), json!(self.method));
        m.insert("value".into(), self.value.as_ref().map_or(Value::Null, fraction_json));
        m.insert(
            "decimal".into(),
            self.value.as_ref().map_or(Value::Null, |v| json!(v.decimal())),
        );
        if let Some(e) = &self.estimate {
            m.insert("ci".into(), json!({"lo": e.lo, "hi": e.hi, "confidence": e.confidence}));
            m.insert("samples".into(), json!(e.samples));
        }
        if let (Some(t), false) = (self.elapsed, deterministic) {
            m.insert("elapsed_ms".into(), json!(t.as_millis() as u64));
        }
        if let Some(w) = &self.witness {
            m.insert("witness".into(), json!(w));
        }
        m.insert("status".into(), json!(self.status));
        for (k, v) in &self.extra {
            m.insert((*k).into(), v.clone());
        }
        Value::Object(m)
    }

    fn to_text(&self, deterministic: bool) -> String {
        let mut s = self.group.clone();
        if let Some(o) = self.order {
            let _ = write!(s, " (order {o})");
        }
        let _ = write!(s, " [{}]: ", self.method);
        match &self.value {
            Some(v) => {
                let _ = write!(s, "{v} ≈ {}", v.decimal());
            }
            None => s.push_str("n/a"),
        }
        if let Some(e) = &self.estimate {
            let _ = write!(
                s,
                "\n  {}% interval [{}, {}] from {} samples",
                e.confidence * 100.0,
                format_significant(e.lo, 4),
                format_significant(e.hi, 4),
                e.samples
            );
        }
        if self.status != "ok" && self.status != "estimate" {
            let _ = write!(s, "\n  status: {}", self.status);
        }
        if let Some(w) = &self.witness {
            let _ = write!(s, "\n  witness: {w}");
        }
        for (k, v) in &self.extra {
            let shown = match v {
                Value::String(t) => t.clone(),
                Value::Object(o) if o.contains_key("num") && o.contains_key("den") => {
                    format!("{}/{}", o["num"], o["den"])
                }
                other => other.to_string(),
            };
            let _ = write!(s, "\n  {k}: {shown}");
        }
        if let (Some(t), false) = (self.elapsed, deterministic) {
            let _ = write!(s, "\n  elapsed: {} ms", t.as_millis());
        }
        s
    }
}

/// `{num, den}`, with numbers that do not fit in 64 bits written as strings.
pub fn fraction_json(v: &ExactFraction) -> Value {
    let part = |x: String| x.parse::<i64>().map_or_else(|_| json!(x), |n| json!(n));
    json!({"num": part(v.numer().to_string()), "den": part(v.denom().to_string())})
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders records. A `table` renders as a JSON document `{rows, notes}`;
/// otherwise the single record is the document. Notes become trailing lines
/// in text and are dropped from CSV.
pub fn render(records: &[Record], notes: &[String], table: bool, format: Format, deterministic: bool) -> String {
    match format {
        Format::Text => {
            let mut out: Vec<String> = records.iter().map(|r| r.to_text(deterministic)).collect();
            out.extend(notes.iter().map(|n| format!("note: {n}")));
            out.join("\n") + "\n"
        }
        Format::Json => {
            let rows: Vec<Value> = records.iter().map(|r| r.to_json(deterministic)).collect();
            let doc = match rows.as_slice() {
                [single] if !table => single.clone(),
                _ => json!({"rows": rows, "notes": notes}),
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("group,method,num,den,decimal,status\n");
            for r in records {
                let (num, den, dec) = match &r.value {
                    Some(v) => (v.numer().to_string(), v.denom().to_string(), v.decimal()),
                    None => Default::default(),
                };
                let _ = writeln!(
                    out,
                    "{},{},{num},{den},{dec},{}",
                    csv_field(&r.group),
                    csv_field(&r.method),
                    csv_field(&r.status)
                );
            }
            out
        }
    }
}
