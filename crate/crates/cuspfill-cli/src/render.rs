//! Plain-text rendering of the JSON results.

use serde_json::Value;

/// Indented `key: value` lines. Arrays of scalars stay on one line, other
/// arrays get one item per line.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, x, indent + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(out, x, indent + 1);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
