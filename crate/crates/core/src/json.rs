//! Minimal deterministic JSON emission.
//!
//! Keys are written in insertion order with `": "` and `", "` separators.
//! Numbers use 17 significant digits so every `f64` round-trips; non-finite
//! values become `null`.

use std::fmt::Write;

pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Builds a flat JSON object field by field.
#[derive(Debug, Default)]
pub struct JsonObject {
    fields: Vec<String>,
}

impl JsonObject {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn raw(&mut self, key: &str, json: String) -> &mut Self {
        self.fields.push(format!("{}: {}", string(key), json));
        self
    }

    pub fn number(&mut self, key: &str, x: f64) -> &mut Self {
        self.raw(key, number(x))
    }

    pub fn optional_number(&mut self, key: &str, x: Option<f64>) -> &mut Self {
        self.raw(key, x.map(number).unwrap_or_else(|| "null".into()))
    }

    pub fn numbers(&mut self, key: &str, xs: &[f64]) -> &mut Self {
        self.raw(key, array(xs.iter().map(|x| number(*x))))
    }

    pub fn string(&mut self, key: &str, s: &str) -> &mut Self {
        self.raw(key, string(s))
    }

    pub fn boolean(&mut self, key: &str, b: bool) -> &mut Self {
        self.raw(key, b.to_string())
    }

    pub fn finish(&self) -> String {
        format!("{{{}}}", self.fields.join(", "))
    }
}

pub fn array<I: IntoIterator<Item = String>>(items: I) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 4.56e-27, -1.676_956_674_215_576, 0.0, f64::MIN_POSITIVE] {
            let s = number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let v: serde_json::Value = serde_json::from_str(&s).unwrap();
            assert_eq!(v.as_f64().unwrap(), x);
        }
        assert_eq!(number(f64::NAN), "null");
    }

    #[test]
    fn object_layout() {
        let mut o = JsonObject::new();
        o.numbers("checks", &[]).boolean("overall", true);
        assert_eq!(o.finish(), r#"{"checks": [], "overall": true}"#);
        assert_eq!(string("a\"b\n"), r#""a\"b\n""#);
    }
}
