//! Output helpers: JSON with 17-significant-digit floats so every number
//! round-trips exactly.

use serde_json::ser::Formatter;
use serde_json::Value;
use std::io::{self, Write};

struct SigDigits17;

impl Formatter for SigDigits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", fmt_f64(value))
    }
}

/// 17 significant digits in scientific notation; parses back bit-exact.
pub fn fmt_f64(value: f64) -> String {
    format!("{:.16e}", value)
}

pub fn to_json(value: &Value) -> String {
    use serde::Serialize;
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits17);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("json is utf-8")
}
