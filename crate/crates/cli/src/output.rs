//! Deterministic machine output: JSON with 17-significant-digit floats and
//! small CSV writers.

use std::io::Write;

use serde_json::ser::Formatter;
use serde_json::Value;

/// 17 significant digits, enough to round-trip any f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{}", fmt_f64(value))
    }
}

/// Serialize a JSON value with the fixed float format; byte-identical for
/// identical inputs.
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    serde::Serialize::serialize(value, &mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

pub fn complex_json(z: num_complex::Complex64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

/// One CSV line from already-formatted fields.
pub fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}
