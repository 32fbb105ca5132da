use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Status {
    Ok,
    AssertionFailed(String),
    Uncertified(String),
}

/// Tabular result of one command plus free-form JSON detail.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<String>,
    pub status: Status,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
            status: Status::Ok,
            data: json!(null),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        if self.status == Status::Ok || matches!(self.status, Status::Uncertified(_)) {
            self.status = Status::AssertionFailed(msg.into());
        }
    }

    pub fn uncertified(&mut self, msg: impl Into<String>) {
        if self.status == Status::Ok {
            self.status = Status::Uncertified(msg.into());
        }
    }

    pub fn with_data<T: Serialize>(mut self, data: &T) -> Result<Self> {
        self.data = serde_json::to_value(data)?;
        Ok(self)
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(w.into_inner().context("flushing csv")?)
            }
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(self)?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }

    /// Writes the rendered table to `out`, or to stdout; the summary goes to
    /// stdout after a file write and to stderr otherwise.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let bytes = self.render(format)?;
        match out {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                }
                std::fs::write(p, &bytes).with_context(|| format!("writing {}", p.display()))?;
                for s in &self.summary {
                    println!("{s}");
                }
                println!("wrote {}", p.display());
            }
            None => {
                std::io::stdout().write_all(&bytes)?;
                for s in &self.summary {
                    eprintln!("{s}");
                }
            }
        }
        Ok(())
    }

    pub fn exit_code(&self, require_certified: bool) -> i32 {
        match &self.status {
            Status::Ok => 0,
            Status::AssertionFailed(_) => 2,
            Status::Uncertified(_) if require_certified => 3,
            Status::Uncertified(_) => 0,
        }
    }
}

pub fn fmt_f(x: f64) -> String {
    format!("{x:.6}")
}
