//! Structured command output: a JSON envelope echoing the parsed inputs next
//! to the results, plus a flat CSV projection of the same numbers.

use serde::Serialize;
use serde_json::{Map, Value};

/// Everything a command run produces. Replaying `inputs` with `meta.seed`
/// reproduces `results` exactly.
#[derive(Debug, Clone, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub meta: Meta,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl OutputEnvelope {
    /// Build an envelope, rounding every float in `inputs` and `results` to
    /// 10 significant digits.
    pub fn new(command: &str, mut inputs: Value, mut results: Value, seed: Option<u64>) -> Self {
        round_floats(&mut inputs);
        round_floats(&mut results);
        OutputEnvelope {
            command: command.to_string(),
            inputs,
            results,
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    /// Flat `key,value` projection carrying the same numbers as the JSON.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.clone())];
        flatten("inputs", &self.inputs, &mut rows);
        flatten("results", &self.results, &mut rows);
        rows.push(("meta.version".into(), self.meta.version.clone()));
        if let Some(seed) = self.meta.seed {
            rows.push(("meta.seed".into(), seed.to_string()));
        }
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&k);
            out.push(',');
            out.push_str(&csv_escape(&v));
            out.push('\n');
        }
        out
    }
}

fn csv_escape(v: &str) -> String {
    if v.contains(',') || v.contains('"') || v.contains('\n') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => rows.push((prefix.to_string(), n.to_string())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
    }
}

/// Round to 10 significant digits.
pub fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Object(map) => {
            for (_, v) in map.iter_mut() {
                round_floats(v);
            }
        }
        Value::Array(items) => {
            for v in items.iter_mut() {
                round_floats(v);
            }
        }
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if !n.is_i64() && !n.is_u64() {
                    if let Some(rounded) = serde_json::Number::from_f64(sig10(f)) {
                        *n = rounded;
                    }
                }
            }
        }
        _ => {}
    }
}

/// Serialize any `Serialize` into a JSON value, rounding floats on the way.
pub fn to_rounded_value<T: Serialize>(t: &T) -> Value {
    let mut v = serde_json::to_value(t).expect("value serializes");
    round_floats(&mut v);
    v
}

/// Convenience builder for `inputs` maps.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_are_rounded_to_ten_digits() {
        assert_eq!(sig10(2.0686868686868687), 2.068686869);
        assert_eq!(sig10(0.0), 0.0);
        assert_eq!(sig10(-1.2345678901234e-7), -1.23456789e-7);
    }

    #[test]
    fn csv_is_a_flat_projection_of_the_json() {
        let env = OutputEnvelope::new(
            "demo",
            json!({"x": 1.5}),
            json!({"a": {"b": [1.0, 2.0]}, "note": "hi"}),
            Some(7),
        );
        let csv = env.to_csv();
        assert!(csv.contains("inputs.x,1.5"));
        assert!(csv.contains("results.a.b[0],1"));
        assert!(csv.contains("results.a.b[1],2"));
        assert!(csv.contains("results.note,hi"));
        assert!(csv.contains("meta.seed,7"));
        let parsed: Value = serde_json::from_str(&env.to_json()).unwrap();
        assert_eq!(parsed["results"]["a"]["b"][0], json!(1.0));
    }

    #[test]
    fn integers_survive_rounding() {
        let env = OutputEnvelope::new("demo", json!({}), json!({"n": 12345678901u64}), None);
        assert_eq!(env.results["n"], json!(12345678901u64));
    }
}
