//! Versioned JSON reports and their Markdown rendering.
//!
//! Markdown is produced from the JSON value alone, so the two formats can
//! never disagree.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: Value,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, input: Value, result: impl Serialize) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            result: serde_json::to_value(result).map_err(intensity_core::Error::from)?,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(intensity_core::Error::from)?;
                s.push('\n');
                Ok(s)
            }
            Format::Markdown => Ok(self.markdown()),
        }
    }

    pub fn markdown(&self) -> String {
        let mut out = format!("# intensity-lab {}\n\nSchema version {}.\n", self.command, self.schema_version);
        if !self.input.is_null() {
            section(&mut out, 2, "Input", &self.input);
        }
        section(&mut out, 2, "Result", &self.result);
        out
    }
}

fn section(out: &mut String, level: usize, title: &str, value: &Value) {
    let _ = write!(out, "\n{} {}\n\n", "#".repeat(level.min(6)), title);
    match value {
        Value::Object(map) => object(out, level, map),
        Value::Array(items) => array(out, items),
        v => {
            let _ = writeln!(out, "{}", scalar(v));
        }
    }
}

/// Scalar and short-list fields go into one key/value table; nested objects
/// and lists of records get their own subsections.
fn object(out: &mut String, level: usize, map: &Map<String, Value>) {
    let (flat, nested): (Vec<_>, Vec<_>) = map.iter().partition(|(_, v)| is_inline(v));
    if !flat.is_empty() {
        out.push_str("| field | value |\n|---|---|\n");
        for (k, v) in flat {
            let _ = writeln!(out, "| {k} | {} |", cell(&scalar(v)));
        }
    }
    for (k, v) in nested {
        section(out, level + 1, k, v);
    }
}

fn array(out: &mut String, items: &[Value]) {
    if items.is_empty() {
        out.push_str("(none)\n");
        return;
    }
    if !items.iter().all(Value::is_object) {
        for v in items {
            let _ = writeln!(out, "- {}", scalar(v));
        }
        return;
    }
    let mut columns: Vec<&str> = Vec::new();
    for v in items {
        for k in v.as_object().into_iter().flat_map(|m| m.keys()) {
            if !columns.contains(&k.as_str()) {
                columns.push(k);
            }
        }
    }
    let _ = writeln!(out, "| {} |", columns.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(columns.len()));
    for v in items {
        let row: Vec<String> = columns.iter().map(|c| cell(&v.get(*c).map(scalar).unwrap_or_default())).collect();
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object()),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => serde_json::to_string(v).unwrap_or_default(),
        v => v.to_string(),
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn markdown_lists_every_scalar() {
        let r = Report::new(
            "analyze",
            json!({"kind": "yo"}),
            json!({"order": 729, "widths": [2, 1, 2, 1], "predicates": {"abelian": false}, "rows": [{"a": 1}, {"b": "x|y"}]}),
        )
        .unwrap();
        let md = r.render(Format::Markdown).unwrap();
        assert!(md.contains("| order | 729 |"));
        assert!(md.contains("| widths | [2, 1, 2, 1] |"));
        assert!(md.contains("### predicates"));
        assert!(md.contains("| abelian | false |"));
        assert!(md.contains("| a | b |"));
        assert!(md.contains("x\\|y"));
        let js = r.render(Format::Json).unwrap();
        assert!(js.contains("\"schemaVersion\": 1"));
    }
}
