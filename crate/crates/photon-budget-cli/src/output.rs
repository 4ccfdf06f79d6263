//! Table/CSV/JSON rendering shared by every subcommand.
//!
//! CSV carries `#`-prefixed provenance comment lines above the header; the
//! header uses snake-case column names and every float is printed with
//! Rust's shortest round-trip formatting, so parsing a produced file and
//! recomputing a row reproduces the bits. JSON is a single object
//! `{params, rows, provenance}`.

use std::fmt;
use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => write!(f, "{v}"),
        }
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

/// A rendered result: provenance notes, echoed parameters, and value rows.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub provenance: Vec<String>,
    pub params: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Output {
    pub fn provenance(&mut self, line: impl Into<String>) -> &mut Self {
        self.provenance.push(line.into());
        self
    }

    pub fn param(&mut self, key: impl Into<String>, value: Cell) -> &mut Self {
        self.params.push((key.into(), value));
        self
    }

    pub fn columns(&mut self, names: &[&str]) -> &mut Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) -> &mut Self {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
        self
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.render_table(out),
            Format::Csv => self.render_csv(out),
            Format::Json => self.render_json(out),
        }
    }

    fn render_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for line in &self.provenance {
            writeln!(out, "# {line}")?;
        }
        if !self.params.is_empty() {
            let rendered: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect();
            writeln!(out, "# {}", rendered.join(", "))?;
        }
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect();
        for row in &rendered {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", header.join("  "))?;
        for row in &rendered {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end())?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for line in &self.provenance {
            writeln!(out, "# {line}")?;
        }
        for (k, v) in &self.params {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn render_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let params: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "params": params,
            "rows": rows,
            "provenance": self.provenance,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
    }
}
