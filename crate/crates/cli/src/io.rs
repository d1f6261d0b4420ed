//! JSON parsing for spectrum partitions and number formatting. Numbers may
//! arrive as plain doubles or as decimal strings (which survive the CLI
//! boundary beyond 17 digits).

use airytau_core::kontsevich::SpectrumPartition;
use airytau_core::num::{bits_for_digits, parse_float, XComplex};
use airytau_core::Error;
use rug::Float;
use serde_json::Value;

fn schema_err(pointer: &str, message: impl Into<String>) -> Error {
    Error::SchemaError {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn parse_number(v: &Value, prec: u32, pointer: &str) -> Result<Float, Error> {
    match v {
        Value::Number(n) => {
            let f = n
                .as_f64()
                .ok_or_else(|| schema_err(pointer, "number out of f64 range"))?;
            Ok(Float::with_val(prec, f))
        }
        Value::String(s) => parse_float(prec, s)
            .map_err(|e| schema_err(pointer, format!("bad decimal string: {e}"))),
        other => Err(schema_err(
            pointer,
            format!("expected number or decimal string, got {other}"),
        )),
    }
}

fn parse_complex(v: &Value, prec: u32, pointer: &str) -> Result<XComplex, Error> {
    let pair = v
        .as_array()
        .ok_or_else(|| schema_err(pointer, "expected [re, im] pair"))?;
    if pair.len() != 2 {
        return Err(schema_err(pointer, "expected exactly two entries"));
    }
    let re = parse_number(&pair[0], prec, &format!("{pointer}/0"))?;
    let im = parse_number(&pair[1], prec, &format!("{pointer}/1"))?;
    Ok(XComplex::new(re, im))
}

fn parse_complex_list(v: &Value, prec: u32, pointer: &str) -> Result<Vec<XComplex>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema_err(pointer, "expected a list of [re, im] pairs"))?;
    arr.iter()
        .enumerate()
        .map(|(i, e)| parse_complex(e, prec, &format!("{pointer}/{i}")))
        .collect()
}

/// Parse and validate a partition file:
/// {"digits": 32, "x": [re,im], "y0": [[re,im],...], "y1": [...], "y2": [...]}.
pub fn load_partition(json: &str, default_digits: u32) -> Result<SpectrumPartition, Error> {
    let root: Value = serde_json::from_str(json)
        .map_err(|e| schema_err("", format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema_err("", "top level must be an object"))?;

    let digits = match obj.get("digits") {
        None => default_digits,
        Some(Value::Number(n)) => n
            .as_u64()
            .ok_or_else(|| schema_err("/digits", "must be 32 or 64"))?
            as u32,
        Some(other) => {
            return Err(schema_err("/digits", format!("must be 32 or 64, got {other}")))
        }
    };
    let prec = bits_for_digits(digits)
        .map_err(|_| schema_err("/digits", "must be 32 or 64"))?;

    let x = match obj.get("x") {
        Some(v) => parse_complex(v, prec, "/x")?,
        None => XComplex::zero(prec),
    };
    let mut blocks = Vec::new();
    for key in ["y0", "y1", "y2"] {
        let v = obj
            .get(key)
            .ok_or_else(|| schema_err(&format!("/{key}"), "missing eigenvalue list"))?;
        blocks.push(parse_complex_list(v, prec, &format!("/{key}"))?);
    }
    let y2 = blocks.pop().unwrap();
    let y1 = blocks.pop().unwrap();
    let y0 = blocks.pop().unwrap();

    SpectrumPartition::new(x, y0, y1, y2, digits).map_err(|e| match e {
        Error::InvalidPartition(msg) => schema_err("", msg),
        other => other,
    })
}

/// Number rendering: JSON doubles by default, decimal strings on request.
#[derive(Clone, Copy, Debug)]
pub struct NumberFormat {
    pub strings: bool,
    pub digits: u32,
}

impl NumberFormat {
    pub fn real(&self, v: &Float) -> Value {
        if self.strings {
            Value::String(format_float(v, self.digits))
        } else {
            serde_json::json!(v.to_f64())
        }
    }

    pub fn complex(&self, v: &XComplex) -> Value {
        Value::Array(vec![self.real(&v.re), self.real(&v.im)])
    }
}

/// Fixed significant-digit decimal rendering of a Float.
pub fn format_float(v: &Float, digits: u32) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let s = v.to_string_radix(10, Some(digits as usize + 2));
    s
}

/// Parse "start:end:step" into an inclusive grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "grid must be start:end:step, got {spec:?}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad grid start {:?}", parts[0])))?;
    let end: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad grid end {:?}", parts[1])))?;
    let step: f64 = parts[2]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad grid step {:?}", parts[2])))?;
    if !(step > 0.0) || end < start {
        return Err(Error::InvalidInput("grid needs step > 0 and end >= start".into()));
    }
    let mut out = Vec::new();
    let mut x = start;
    while x <= end + step * 1e-9 {
        out.push(x);
        x += step;
    }
    Ok(out)
}

/// Parse "a,b,c" into a k-triple.
pub fn parse_triple(spec: &str) -> Result<(i32, i32, i32), Error> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "k-triple must be k_plus,k_zero,k_minus, got {spec:?}"
        )));
    }
    let mut vals = [0i32; 3];
    for (i, p) in parts.iter().enumerate() {
        vals[i] = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad integer {p:?} in k-triple")))?;
    }
    Ok((vals[0], vals[1], vals[2]))
}
