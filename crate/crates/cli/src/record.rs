use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's output: the inputs it ran with, named real results and
/// solver diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: BTreeMap<String, f64>,
    pub diagnostics: BTreeMap<String, Value>,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: f64) -> &mut Self {
        self.results.insert(key.to_owned(), value);
        self
    }

    pub fn diag(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(key.to_owned(), value.into());
        self
    }

    /// Name of the first non-finite real, if any. Non-finite floats become
    /// `null` on their way into a JSON value.
    pub fn non_finite(&self) -> Option<&str> {
        self.results
            .iter()
            .find(|(_, v)| !v.is_finite())
            .map(|(k, _)| k.as_str())
            .or_else(|| null_key(&self.parameters))
            .or_else(|| null_key(&self.diagnostics))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("record serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let width = self
            .parameters
            .keys()
            .chain(self.results.keys())
            .chain(self.diagnostics.keys())
            .map(String::len)
            .max()
            .unwrap_or(0);
        let mut out = format!("{}\n", self.command);
        let mut section = |title: &str, rows: Vec<(&String, String)>| {
            if rows.is_empty() {
                return;
            }
            let _ = writeln!(out, "{title}:");
            for (k, v) in rows {
                let _ = writeln!(out, "  {k:<width$}  {v}");
            }
        };
        section("parameters", self.parameters.iter().map(|(k, v)| (k, text_value(v))).collect());
        section("results", self.results.iter().map(|(k, &v)| (k, significant(v, 10))).collect());
        section("diagnostics", self.diagnostics.iter().map(|(k, v)| (k, text_value(v))).collect());
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("section,key,value\n");
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "parameters,{k},{}", csv_value(v));
        }
        for (k, &v) in &self.results {
            let _ = writeln!(out, "results,{k},{}", real(v));
        }
        for (k, v) in &self.diagnostics {
            let _ = writeln!(out, "diagnostics,{k},{}", csv_value(v));
        }
        out
    }
}

fn null_key(m: &BTreeMap<String, Value>) -> Option<&str> {
    m.iter().find(|(_, v)| v.is_null()).map(|(k, _)| k.as_str())
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => significant(n.as_f64().unwrap_or(f64::NAN), 10),
        other => other.to_string(),
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => real(n.as_f64().unwrap_or(f64::NAN)),
        other => other.to_string(),
    }
}

/// Shortest representation that parses back to the same double.
pub fn real(x: f64) -> String {
    format!("{x:?}")
}

/// `x` rounded to `digits` significant digits, positional notation for
/// moderate magnitudes.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit.
    let carried = s.trim_start_matches('-').split('.').next().map_or(0, |int| {
        int.trim_start_matches('0').len() as i32
    }) > exp + 1;
    if carried && decimals > 0 {
        format!("{x:.*}", decimals - 1)
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(significant(13.811135179462, 10), "13.81113518");
        assert_eq!(significant(0.21246955941, 10), "0.2124695594");
        assert_eq!(significant(9.0, 10), "9.000000000");
        assert_eq!(significant(9.99999999999, 10), "10.00000000");
        assert_eq!(significant(-2.5e-9, 3), "-2.50e-9");
        assert_eq!(significant(0.0, 10), "0");
    }

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -7.032185786516] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut r = OutputRecord::new("spiral minmax");
        r.param("R", 2.5)
            .param("seed", 7u64)
            .result("kappa", 0.212_469_559_415_6)
            .result("tiny", 4.2e-300)
            .diag("converged", true);
        let text = r.render(Format::Json);
        let back: OutputRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn detects_non_finite() {
        let mut r = OutputRecord::new("x");
        r.result("a", 1.0);
        assert_eq!(r.non_finite(), None);
        r.result("b", f64::INFINITY);
        assert_eq!(r.non_finite(), Some("b"));
    }
}
