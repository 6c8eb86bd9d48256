//! Deterministic rendering of reports.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

/// Nesting depth up to which JSON containers are broken over lines.
const PRETTY_DEPTH: usize = 2;

/// Floats in scientific notation with 12 significant digits; `-0` prints as `0`.
pub fn format_f64(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.11e}")
}

/// JSON formatter: outer containers one entry per line, inner ones compact.
#[derive(Default)]
pub struct ReportFormatter {
    depth: usize,
    has_value: bool,
}

impl ReportFormatter {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W, depth: usize) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    fn begin<W: ?Sized + io::Write>(&mut self, w: &mut W, open: &[u8]) -> io::Result<()> {
        self.depth += 1;
        self.has_value = false;
        w.write_all(open)
    }

    fn end<W: ?Sized + io::Write>(&mut self, w: &mut W, close: &[u8]) -> io::Result<()> {
        self.depth -= 1;
        if self.has_value && self.depth < PRETTY_DEPTH {
            self.newline(w, self.depth)?;
        }
        w.write_all(close)
    }

    fn entry<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if self.depth <= PRETTY_DEPTH {
            self.newline(w, self.depth)
        } else if !first {
            w.write_all(b" ")
        } else {
            Ok(())
        }
    }
}

impl Formatter for ReportFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.begin(w, b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.end(w, b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.entry(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.begin(w, b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.end(w, b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.entry(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

/// Compact formatter with the same float rendering.
struct CompactFixed;

impl Formatter for CompactFixed {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

fn write_with<F: Formatter, T: Serialize + ?Sized>(value: &T, formatter: F) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, formatter);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Report JSON text.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, ReportFormatter::default())
}

/// Single-line rendering used by the text format.
pub fn to_compact<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, CompactFixed)
}

/// Human-readable `key: value` rendering of a JSON object.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    render_text(value, 0, &mut out);
    out
}

/// Strings unquoted, everything else compact JSON.
pub fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => to_compact(other),
    }
}

fn render_text(value: &Value, depth: usize, out: &mut String) {
    let Value::Object(map) = value else {
        out.push_str(&to_compact(value));
        out.push('\n');
        return;
    };
    for (key, v) in map {
        out.push_str(&"  ".repeat(depth));
        out.push_str(key);
        out.push(':');
        match v {
            Value::Object(inner) if !inner.is_empty() => {
                out.push('\n');
                render_text(v, depth + 1, out);
            }
            _ => {
                out.push(' ');
                out.push_str(&scalar_text(v));
                out.push('\n');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_have_twelve_significant_digits() {
        assert_eq!(format_f64(1.0), "1.00000000000e0");
        assert_eq!(format_f64(-2.5e-7), "-2.50000000000e-7");
        assert_eq!(format_f64(-0.0), format_f64(0.0));
    }

    #[test]
    fn outer_levels_are_pretty_inner_compact() {
        let v = json!({"a": {"m": [[1.0, 2.0], [3.0, 4.0]]}, "b": 3});
        let s = to_json(&v);
        assert_eq!(
            s,
            "{\n  \"a\": {\n    \"m\": [[1.00000000000e0, 2.00000000000e0], [3.00000000000e0, 4.00000000000e0]]\n  },\n  \"b\": 3\n}"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn text_rendering_nests_objects() {
        let v = json!({"status": "ok", "diagnostics": {"dim": 3}, "empty": {}});
        assert_eq!(
            to_text(&v),
            "diagnostics:\n  dim: 3\nempty: {}\nstatus: ok\n"
        );
    }
}
