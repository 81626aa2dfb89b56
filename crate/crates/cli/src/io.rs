//! Input parsing and output serialization.

use std::io;

use prony_core::{Band, Complex64};
use serde::Deserialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Imaginary parts below this are dropped when values leave the library.
pub const REAL_CUTOFF: f64 = 1e-10;

/// Samples from a CSV file with header `n,value` or `k,re,im`.
pub fn parse_samples_csv(text: &str) -> Result<Vec<Complex64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(1, "header", e.to_string()))?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    let complex = match names.as_slice() {
        ["n", "value"] => false,
        ["k", "re", "im"] => true,
        other => {
            return Err(CliError::input(
                1,
                "header",
                format!("expected `n,value` or `k,re,im`, found `{}`", other.join(",")),
            ))
        }
    };

    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            CliError::input(line, "record", e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let field = |i: usize| -> Result<&str, CliError> {
            record
                .get(i)
                .ok_or_else(|| CliError::input(line, names[i], "missing field"))
        };
        let index: usize = field(0)?
            .parse()
            .map_err(|_| CliError::input(line, names[0], format!("not an index: `{}`", &record[0])))?;
        if index != out.len() {
            return Err(CliError::input(
                line,
                names[0],
                format!("expected index {}, found {index}", out.len()),
            ));
        }
        let number = |i: usize| -> Result<f64, CliError> {
            let raw = field(i)?;
            let v: f64 = raw
                .parse()
                .map_err(|_| CliError::input(line, names[i], format!("not a number: `{raw}`")))?;
            if !v.is_finite() {
                return Err(CliError::input(line, names[i], "value must be finite"));
            }
            Ok(v)
        };
        let value = if complex {
            Complex64::new(number(1)?, number(2)?)
        } else {
            Complex64::new(number(1)?, 0.0)
        };
        out.push(value);
    }
    if out.is_empty() {
        return Err(CliError::input(2, "record", "no samples"));
    }
    Ok(out)
}

/// Piecewise-constant magnitude shorthand for a frequency specification.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSpec {
    #[serde(default)]
    pub schema: Option<u32>,
    /// Number of grid samples, `L+1`.
    pub length: usize,
    pub bands: Vec<BandEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandEntry {
    pub edge: f64,
    pub magnitude: f64,
}

impl BandSpec {
    pub fn bands(&self) -> Vec<Band> {
        self.bands
            .iter()
            .map(|b| Band {
                edge: b.edge,
                magnitude: b.magnitude,
            })
            .collect()
    }
}

pub fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn parse_band_spec(text: &str) -> Result<BandSpec, CliError> {
    let spec: BandSpec = serde_json::from_str(text)
        .map_err(|e| CliError::input(e.line(), "bands", e.to_string()))?;
    if let Some(v) = spec.schema {
        if v != 1 {
            return Err(CliError::input(1, "schema", format!("unsupported schema {v}")));
        }
    }
    Ok(spec)
}

/// `(b, a)` from a filter document: either `{"filter": {"b", "a"}}` or a bare
/// `{"b", "a"}`. Coefficients may be numbers or `{"re", "im"}` objects.
pub fn parse_filter_json(text: &str) -> Result<(Vec<Complex64>, Vec<Complex64>), CliError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| CliError::input(e.line(), "filter", e.to_string()))?;
    let filter = doc.get("filter").unwrap_or(&doc);
    let coeffs = |key: &str| -> Result<Vec<Complex64>, CliError> {
        let arr = filter
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::input(0, key, "missing coefficient array"))?;
        arr.iter()
            .enumerate()
            .map(|(i, v)| {
                complex_from_value(v).ok_or_else(|| {
                    CliError::input(0, &format!("{key}[{i}]"), "expected a number or {re, im}")
                })
            })
            .collect()
    };
    Ok((coeffs("b")?, coeffs("a")?))
}

fn complex_from_value(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)),
        Value::Object(o) => {
            let re = o.get("re")?.as_f64()?;
            let im = o.get("im").map_or(Some(0.0), Value::as_f64)?;
            Some(Complex64::new(re, im))
        }
        _ => None,
    }
}

/// Comma-separated real list, as given to `--den`.
pub fn parse_real_list(raw: &str) -> Result<Vec<f64>, String> {
    raw.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .map_err(|_| format!("not a number: `{s}`"))
                .and_then(|v| {
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(format!("not finite: `{s}`"))
                    }
                })
        })
        .collect()
}

pub fn clean(z: Complex64) -> Complex64 {
    if z.im.abs() < REAL_CUTOFF {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

pub fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// A complex value: a bare number when real, otherwise `{"re", "im"}`.
pub fn complex_value(z: Complex64) -> Value {
    let z = clean(z);
    if z.im == 0.0 {
        number(z.re)
    } else {
        json!({ "re": number(z.re), "im": number(z.im) })
    }
}

pub fn complex_object(z: Complex64) -> Value {
    let z = clean(z);
    json!({ "re": number(z.re), "im": number(z.im) })
}

pub fn complex_array(v: &[Complex64]) -> Value {
    Value::Array(v.iter().copied().map(complex_value).collect())
}

pub fn pole_array(poles: &[Complex64]) -> Value {
    Value::Array(
        poles
            .iter()
            .map(|&p| {
                let mut o = Map::new();
                let p = clean(p);
                o.insert("re".into(), number(p.re));
                o.insert("im".into(), number(p.im));
                o.insert("modulus".into(), number(p.norm()));
                Value::Object(o)
            })
            .collect(),
    )
}

/// Writes every float with 17 significant digits.
struct FixedPrecision;

impl Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn to_json_bytes(doc: &Value) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedPrecision);
    serde::Serialize::serialize(doc, &mut ser).expect("serializing a Value into memory cannot fail");
    out.push(b'\n');
    out
}
