use serde::Serialize;
use serde_json::Value;

use super::CliResult;

/// What a command prints: JSON (numbers as strings) or DOT text.
pub(crate) enum Output {
    Json(Value),
    Dot(String),
}

impl Output {
    pub fn json<T: Serialize + ?Sized>(v: &T) -> CliResult<Output> {
        Ok(Output::Json(serde_json::to_value(v)?))
    }

    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(&stringify_numbers(v.clone()))
                    .expect("a Value always serializes");
                s.push('\n');
                s
            }
            Output::Dot(d) => {
                let mut s = d.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Replaces every JSON number by its decimal string, so consumers never
/// round large integers.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(xs) => Value::Array(xs.into_iter().map(stringify_numbers).collect()),
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, v)| (k, stringify_numbers(v)))
                .collect(),
        ),
        other => other,
    }
}
