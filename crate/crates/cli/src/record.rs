//! One-line key-value records.
//!
//! Grammar: a record is a line of `key=value` tokens separated by single
//! spaces. Keys are `[A-Za-z0-9_.]+`. Values are arbitrary text with `%`,
//! space, `=`, tab and newline written as `%25`, `%20`, `%3D`, `%09`, `%0A`.
//! Blank lines and lines starting with `#` are ignored by readers.

use std::fmt;

use anyhow::{bail, Context, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn escape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '%' => out.push_str("%25"),
            ' ' => out.push_str("%20"),
            '=' => out.push_str("%3D"),
            '\t' => out.push_str("%09"),
            '\n' => out.push_str("%0A"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(value: &str) -> Result<String> {
    let mut out = String::with_capacity(value.len());
    let mut rest = value;
    while let Some(i) = rest.find('%') {
        out.push_str(&rest[..i]);
        let code = rest
            .get(i + 1..i + 3)
            .with_context(|| format!("truncated escape in {value:?}"))?;
        let byte = u8::from_str_radix(code, 16)
            .with_context(|| format!("bad escape %{code} in {value:?}"))?;
        out.push(byte as char);
        rest = &rest[i + 3..];
    }
    out.push_str(rest);
    Ok(out)
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a field, replacing an existing one with the same key.
    pub fn set(&mut self, key: &str, value: impl ToString) {
        assert!(valid_key(key), "invalid record key {key:?}");
        let value = value.to_string();
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_string(), value)),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(|v| v.parse().ok())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }

    pub fn parse(line: &str) -> Result<Self> {
        let mut record = Record::new();
        for token in line.split(' ').filter(|t| !t.is_empty()) {
            let Some((key, value)) = token.split_once('=') else {
                bail!("token {token:?} is not key=value");
            };
            if !valid_key(key) {
                bail!("invalid key {key:?}");
            }
            if record.get(key).is_some() {
                bail!("duplicate key {key:?}");
            }
            record.fields.push((key.to_string(), unescape(value)?));
        }
        Ok(record)
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={}", escape(v))?;
        }
        Ok(())
    }
}

/// Parses every record in a file body, skipping blanks and comments.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| Record::parse(l).with_context(|| format!("record line {}", i + 1)))
        .collect()
}
