use std::fmt;

use serde_json::{json, Map, Value};
use submeasure_core::rational::{format_decimal, format_rational};
use submeasure_core::{Error, Limits, Rational, RationalX};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_resource_guard() => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Environment limits with an optional `--max-ground` override.
pub fn limits(max_ground: Option<usize>) -> CliResult<Limits> {
    let mut l = Limits::from_env()?;
    if let Some(m) = max_ground {
        l.max_ground = m;
    }
    Ok(l)
}

pub fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn ratx(r: &RationalX) -> Value {
    Value::String(r.to_string())
}

/// Adds `<key>_decimal` next to every `"p/q"` string field of an object
/// when `digits` is set. Display only.
pub fn with_decimals(value: Value, digits: Option<usize>) -> Value {
    let Some(d) = digits else { return value };
    match value {
        Value::Object(obj) => {
            let mut out = Map::new();
            for (k, v) in obj {
                let dec = decimal_of(&v, d);
                out.insert(k.clone(), with_decimals(v, digits));
                if let Some(dec) = dec {
                    out.insert(format!("{k}_decimal"), dec);
                }
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(|v| with_decimals(v, digits)).collect()),
        v => v,
    }
}

fn decimal_of(v: &Value, digits: usize) -> Option<Value> {
    match v {
        Value::String(s) if s.contains('/') => {
            let r = submeasure_core::rational::parse_rational(s).ok()?;
            Some(Value::String(format_decimal(&r, digits)))
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(|i| matches!(i, Value::String(s) if s.contains('/'))) => {
            Some(Value::Array(items.iter().map(|i| decimal_of(i, digits).unwrap_or(Value::Null)).collect()))
        }
        _ => None,
    }
}

pub fn compact(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn points(v: &[usize]) -> Value {
    json!(v)
}
