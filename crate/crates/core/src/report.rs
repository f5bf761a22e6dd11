//! Report documents and their text and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "ghostlength/1";

/// One command's output. Everything but `timing_ms` is a deterministic
/// function of the arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub timing_ms: f64,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, parameters: Value, results: Value) -> Self {
        ReportDocument {
            schema: SCHEMA.to_string(),
            command: command.into(),
            parameters,
            results,
            timing_ms: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn emit_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(doc),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

/// Columns right-aligned to their widest cell.
fn aligned(rows: &[Vec<String>], out: &mut String) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
}

/// An array of flat objects as a table with one row per element.
fn object_table(items: &[Value], out: &mut String) {
    let keys: Vec<String> = match items.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => return,
    };
    let mut rows = vec![keys.clone()];
    for it in items {
        rows.push(keys.iter().map(|k| scalar(&it[k])).collect());
    }
    aligned(&rows, out);
}

fn render_value(key: Option<&str>, v: &Value, out: &mut String) {
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            if let Some(k) = key {
                let _ = writeln!(out, "{k}:");
            }
            object_table(items, out);
        }
        Value::Object(m) => {
            let flat: Vec<Vec<String>> = m
                .iter()
                .filter(|(_, x)| !is_nested(x))
                .map(|(k, x)| vec![format!("{k}:"), scalar(x)])
                .collect();
            left_aligned(&flat, out);
            for (k, x) in m.iter().filter(|(_, x)| is_nested(x)) {
                render_value(Some(k), x, out);
            }
        }
        other => {
            let _ = writeln!(out, "{}{}", key.map(|k| format!("{k}: ")).unwrap_or_default(), scalar(other));
        }
    }
}

fn is_nested(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(|x| x.is_object() || x.is_array()),
        _ => false,
    }
}

fn left_aligned(rows: &[Vec<String>], out: &mut String) {
    let w = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
    for r in rows {
        let _ = writeln!(out, "{:<w$} {}", r[0], r[1]);
    }
}

/// `rpn table` is printed as two rows, cell dimension over length.
fn stl_rows(results: &Value) -> Option<String> {
    let items = results.as_array()?;
    let mut top = vec!["n".to_string()];
    let mut bottom = vec!["Stl".to_string()];
    for it in items {
        top.push(it.get("n")?.to_string());
        bottom.push(it.get("stl")?.to_string());
    }
    let mut out = String::new();
    aligned(&[top, bottom], &mut out);
    Some(out)
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", doc.command);
    if doc.command == "rpn table" {
        if let Some(t) = stl_rows(&doc.results) {
            out.push_str(&t);
            return out;
        }
    }
    match &doc.results {
        Value::Array(a) if a.is_empty() => out.push_str("(no results)\n"),
        Value::Null => out.push_str("(no results)\n"),
        v => render_value(None, v, &mut out),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trip() {
        let mut doc = ReportDocument::new("rpn bounds", json!({"n": 56}), json!({"steenrod": 10}));
        doc.timing_ms = 1.5;
        let text = emit_report(&doc, Format::Json);
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.schema, "ghostlength/1");
    }

    #[test]
    fn empty_results() {
        let doc = ReportDocument::new("rpn table", json!({}), json!([]));
        let text = emit_report(&doc, Format::Json);
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.results, json!([]));
        assert!(emit_report(&doc, Format::Text).contains("# rpn table"));
    }

    #[test]
    fn stl_table_layout() {
        let rows: Vec<Value> = [(-1, 0), (0, 1), (10, 4)]
            .iter()
            .map(|(n, s)| json!({"n": n, "stl": s}))
            .collect();
        let doc = ReportDocument::new("rpn table", json!({}), Value::Array(rows));
        let text = render_text(&doc);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "  n  -1  0  10");
        assert_eq!(lines[2], "Stl   0  1   4");
    }

    #[test]
    fn nested_objects() {
        let doc = ReportDocument::new(
            "complex homology",
            json!({}),
            json!({"acyclic": false, "groups": [{"degree": 0, "group": "Z/2"}]}),
        );
        let text = render_text(&doc);
        assert!(text.contains("acyclic: false"));
        assert!(text.contains("degree  group"));
        assert!(text.contains("Z/2"));
    }
}
