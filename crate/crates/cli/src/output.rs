use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// A report ready to print in any [`Format`]: the JSON document plus a flat
/// tabular view used for the text table and CSV.
pub struct Report {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Free-form lines printed after the text table only.
    pub notes: Vec<String>,
}

impl Report {
    /// A `field, value` report.
    pub fn fields(json: &impl Serialize, fields: Vec<(String, String)>) -> Result<Self> {
        Ok(Report {
            json: serde_json::to_value(json)?,
            headers: vec!["field".into(), "value".into()],
            rows: fields.into_iter().map(|(k, v)| vec![k, v]).collect(),
            notes: Vec::new(),
        })
    }

    pub fn rows(
        json: &impl Serialize,
        headers: Vec<String>,
        rows: Vec<Vec<String>>,
    ) -> Result<Self> {
        Ok(Report {
            json: serde_json::to_value(json)?,
            headers,
            rows,
            notes: Vec::new(),
        })
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Table => {
                let mut out = aligned(&self.headers, &self.rows);
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
                Ok(out)
            }
        }
    }
}

fn aligned(headers: &[String], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for row in rows {
        out += &line(row);
    }
    out
}

/// `"true"`, `"false"`, or empty for unknown.
pub fn tri(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
