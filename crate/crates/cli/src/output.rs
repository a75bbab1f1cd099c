//! CSV emission: `#` metadata lines, one header row, LF endings.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

/// `x` with 12 significant digits, in plain notation when that is short.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let rounded: f64 = sci.parse().expect("formatted float parses");
    if (1e-5..1e15).contains(&rounded.abs()) {
        return rounded.to_string();
    }
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    format!("{mantissa}e{exp}")
}

#[derive(Debug, Default)]
pub struct Csv {
    meta: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(title: &str, timestamp: bool) -> Self {
        let mut csv = Self::default();
        csv.meta(title);
        if timestamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            csv.meta(&format!("generated_unix = {secs}"));
        }
        csv
    }

    pub fn meta(&mut self, line: &str) {
        self.meta.push(line.to_string());
    }

    /// Each line of a multi-line block as its own metadata line.
    pub fn meta_block(&mut self, block: &str) {
        for line in block.lines() {
            self.meta(line);
        }
    }

    pub fn header(&mut self, cols: &[&str]) {
        self.header = cols.iter().map(|c| c.to_string()).collect();
    }

    pub fn header_owned(&mut self, cols: Vec<String>) {
        self.header = cols;
    }

    pub fn row(&mut self, fields: Vec<String>) {
        debug_assert_eq!(fields.len(), self.header.len());
        self.rows.push(fields);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.meta {
            let _ = writeln!(out, "# {m}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}
