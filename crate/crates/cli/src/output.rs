//! Text rendering of command results.
//!
//! Every command builds one serializable value. JSON mode prints it as is;
//! text mode flattens the same value into `key=value` lines, so both modes
//! carry the same data.

use serde_json::Value;
use std::fmt::Write;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{prefix}={s}");
        return;
    }
    match v {
        Value::Array(items) => {
            let words: Option<Vec<String>> = items.iter().map(scalar).collect();
            match words {
                Some(words) => {
                    let _ = writeln!(out, "{prefix}={}", words.join(" "));
                }
                None => {
                    for (i, item) in items.iter().enumerate() {
                        flatten(&format!("{prefix}[{i}]"), item, out);
                    }
                }
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, item, out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// `key=value` lines for a JSON value.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}
