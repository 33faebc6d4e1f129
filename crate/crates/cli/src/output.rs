//! Rendering of command reports as aligned tables, CSV or JSON.

use std::io::{self, Write};

use affmult::prelude::*;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// What every command hands back: structured data for JSON and a flat
/// table for the other formats.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub formula: &'static str,
    /// Lines printed above the table in table mode.
    pub summary: Vec<String>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "params": self.params,
                    "result": self.result,
                    "provenance": { "formula": self.formula },
                });
                let text = serde_json::to_string_pretty(&doc).map_err(io::Error::other)?;
                writeln!(out, "{text}")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Table => {
                for line in &self.summary {
                    writeln!(out, "{line}")?;
                }
                if self.rows.is_empty() {
                    return Ok(());
                }
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
                    cells
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(&mut self.headers.iter().copied()))?;
                writeln!(out, "{}", line(&mut widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str)))?;
                for row in &self.rows {
                    writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
                }
                Ok(())
            }
        }
    }
}

pub fn rational(r: Rational) -> String {
    r.to_string()
}

pub fn affine(w: &AffineWeight) -> Value {
    json!({
        "cvals": w.cvals(),
        "degree": rational(w.degree),
        "display": w.to_string(),
    })
}

pub fn finite(w: &FiniteWeight) -> Value {
    json!(w.coords())
}

pub fn list<T: std::fmt::Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}
