//! Flat output records and their table, CSV and JSON-lines renderings.

use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Analytic,
    MonteCarlo,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Analytic => "analytic",
            Provenance::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub quantity: String,
    pub value: f64,
    pub units: String,
    pub config_fingerprint: String,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter_value: Option<f64>,
}

/// Builds records that share a fingerprint and provenance.
pub struct Recorder {
    fingerprint: String,
    provenance: Provenance,
    records: Vec<OutputRecord>,
}

impl Recorder {
    pub fn new(fingerprint: String, provenance: Provenance) -> Self {
        Recorder {
            fingerprint,
            provenance,
            records: Vec::new(),
        }
    }

    pub fn provenance(&mut self, provenance: Provenance) -> &mut Self {
        self.provenance = provenance;
        self
    }

    pub fn push(&mut self, quantity: impl Into<String>, value: f64, units: &str) -> &mut Self {
        self.records.push(OutputRecord {
            quantity: quantity.into(),
            value,
            units: units.to_owned(),
            config_fingerprint: self.fingerprint.clone(),
            provenance: self.provenance,
            parameter: None,
            parameter_value: None,
        });
        self
    }

    pub fn finish(self) -> Vec<OutputRecord> {
        self.records
    }
}

/// CSV row with fixed columns; empty cells for absent sweep parameters.
#[derive(Serialize)]
struct CsvRow<'a> {
    quantity: &'a str,
    value: String,
    units: &'a str,
    config_fingerprint: &'a str,
    provenance: &'a str,
    parameter: &'a str,
    parameter_value: String,
}

fn check_finite(records: &[OutputRecord]) -> Result<(), CliError> {
    for r in records {
        if !r.value.is_finite() || r.parameter_value.is_some_and(|v| !v.is_finite()) {
            return Err(CliError::Numerical(format!(
                "`{}` evaluated to {}",
                r.quantity, r.value
            )));
        }
    }
    Ok(())
}

pub fn render(records: &[OutputRecord], format: Format, out: &mut impl Write) -> Result<(), CliError> {
    check_finite(records)?;
    match format {
        Format::Json => {
            for r in records {
                let line = serde_json::to_string(r).map_err(|e| CliError::Output(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in records {
                w.serialize(CsvRow {
                    quantity: &r.quantity,
                    value: format!("{:e}", r.value),
                    units: &r.units,
                    config_fingerprint: &r.config_fingerprint,
                    provenance: r.provenance.as_str(),
                    parameter: r.parameter.as_deref().unwrap_or(""),
                    parameter_value: r.parameter_value.map(|v| format!("{v:e}")).unwrap_or_default(),
                })?;
            }
            w.flush()?;
        }
        Format::Table => write_table(records, out)?,
    }
    Ok(())
}

fn write_table(records: &[OutputRecord], out: &mut impl Write) -> std::io::Result<()> {
    let swept = records.iter().any(|r| r.parameter.is_some());
    let rows: Vec<[String; 4]> = records
        .iter()
        .map(|r| {
            let param = match (&r.parameter, r.parameter_value) {
                (Some(p), Some(v)) => format!("{p} = {v:.6e}"),
                _ => String::new(),
            };
            [param, r.quantity.clone(), format!("{:.6e}", r.value), r.units.clone()]
        })
        .collect();
    let width = |i: usize| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0);
    let (w0, w1, w2) = (width(0), width(1), width(2));
    for (row, r) in rows.iter().zip(records) {
        if swept {
            write!(out, "{:<w0$}  ", row[0])?;
        }
        writeln!(
            out,
            "{:<w1$}  {:>w2$}  {:<10}  {}",
            row[1],
            row[2],
            row[3],
            r.provenance.as_str()
        )?;
    }
    let mut prints: Vec<&str> = records.iter().map(|r| r.config_fingerprint.as_str()).collect();
    prints.dedup();
    if prints.len() == 1 {
        writeln!(out, "config {}", prints[0])?;
    }
    Ok(())
}
