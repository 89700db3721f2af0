//! Command results and their csv/json/pretty renderings.

use std::time::{SystemTime, UNIX_EPOCH};

use bookcross::bounds::Provenance;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// One table entry. `n` is `None` for limits as `n -> infinity`.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub k: usize,
    pub n: Option<usize>,
    pub quantity: &'static str,
    pub value: Value,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    #[serde(skip)]
    pub runtime_s: f64,
}

impl Cell {
    pub fn new(k: usize, n: Option<usize>, quantity: &'static str, value: impl Into<Value>, provenance: Provenance) -> Self {
        Cell { k, n, quantity, value: value.into(), provenance, detail: Value::Null, runtime_s: 0.0 }
    }

    pub fn detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn runtime(mut self, secs: f64) -> Self {
        self.runtime_s = secs;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub cells: Vec<Cell>,
    /// Command-specific payload for json output.
    pub data: Value,
    pub pretty: String,
    /// Replaces the cell table in csv output (edge lists).
    pub csv_override: Option<String>,
    /// Some budget ran out; cells flagged `budget-exceeded` hold bounds only.
    pub partial: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, cells: Vec<Cell>, pretty: String) -> Self {
        Report { command: command.into(), cells, data: Value::Null, pretty, csv_override: None, partial: false }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Pretty => Ok(self.pretty.clone()),
            Format::Csv => match &self.csv_override {
                Some(s) => Ok(s.clone()),
                None => self.csv(),
            },
            Format::Json => {
                let generated_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                let mut doc = json!({
                    "command": self.command,
                    "partial": self.partial,
                    "cells": self.cells,
                    "metadata": {
                        "version": env!("CARGO_PKG_VERSION"),
                        "generated_at": generated_at,
                        "runtime_s": self.cells.iter().map(|c| c.runtime_s).collect::<Vec<_>>(),
                    },
                });
                if !self.data.is_null() {
                    doc["data"] = self.data.clone();
                }
                serde_json::to_string_pretty(&doc).map(|s| s + "\n").map_err(|e| e.to_string())
            }
        }
    }

    fn csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| e.to_string();
        w.write_record(["k", "n", "value", "provenance", "runtime_s"]).map_err(err)?;
        for c in &self.cells {
            let n = c.n.map(|n| n.to_string()).unwrap_or_default();
            let value = match &c.value {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            w.write_record([c.k.to_string(), n, value, c.provenance.as_str().to_string(), format!("{:.3}", c.runtime_s)])
                .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }
}

/// Fixed-width text grid with row labels `k` and the given column labels.
pub fn grid(corner: &str, columns: &[String], rows: &[(String, Vec<String>)]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    let mut label_w = corner.len();
    for (label, cells) in rows {
        label_w = label_w.max(label.len());
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let line = |label: &str, cells: &[String]| {
        let mut s = format!("{label:>label_w$}");
        for (w, c) in widths.iter().zip(cells) {
            s.push_str(&format!("  {c:>w$}"));
        }
        s.push('\n');
        s
    };
    let mut out = line(corner, columns);
    for (label, cells) in rows {
        out.push_str(&line(label, cells));
    }
    out
}
