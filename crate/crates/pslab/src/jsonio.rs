//! JSON output with full-precision floats.
//!
//! Every writer in the crate serializes `f64` values with 17 significant
//! digits so that written reports and golden files round-trip bit-exactly.

use std::io;

use serde::Serialize;

use crate::error::Result;

struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a value compactly with 17-significant-digit floats.
pub fn to_string_full<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}
