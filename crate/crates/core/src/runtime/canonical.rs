use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Significant digits kept for every float.
pub const FLOAT_DIGITS: usize = 9;

/// Formats a finite float like C's `%.9g`: fixed notation for decimal
/// exponents in [-4, 9), scientific otherwise, trailing zeros removed.
pub fn format_float(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::Serialization(format!("non-finite float {x}")));
    }
    if x == 0.0 {
        return Ok(if x.is_sign_negative() { "-0".into() } else { "0".into() });
    }
    let sci = format!("{:.*e}", FLOAT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..FLOAT_DIGITS as i32).contains(&exp) {
        let decimals = (FLOAT_DIGITS as i32 - 1 - exp) as usize;
        Ok(trim_zeros(&format!("{x:.decimals$}")))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        Ok(format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs()))
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn write_value(v: &Value, indent: usize, out: &mut String) -> Result<()> {
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => {
            out.push_str(&serde_json::to_string(v).map_err(|e| Error::Serialization(e.to_string()))?)
        }
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => out.push_str(&i.to_string()),
            (_, Some(u)) => out.push_str(&u.to_string()),
            _ => out.push_str(&format_float(n.as_f64().expect("number is a float"))?),
        },
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(item, indent, out)?;
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                push_indent(out, indent + 1);
                write_value(item, indent + 1, out)?;
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            push_indent(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                push_indent(out, indent + 1);
                out.push_str(&serde_json::to_string(k).map_err(|e| Error::Serialization(e.to_string()))?);
                out.push_str(": ");
                write_value(&map[k.as_str()], indent + 1, out)?;
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            push_indent(out, indent);
            out.push('}');
        }
    }
    Ok(())
}

fn push_indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

/// Canonical JSON text: sorted keys, two-space indentation, scalar arrays on
/// one line, floats with nine significant digits, trailing newline.
pub fn to_canonical_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Serialization(e.to_string()))?;
    let mut out = String::new();
    write_value(&v, 0, &mut out)?;
    out.push('\n');
    Ok(out)
}

pub fn to_canonical_bytes<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    to_canonical_string(value).map(String::into_bytes)
}

pub fn from_canonical_slice<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Serialization(e.to_string()))
}
