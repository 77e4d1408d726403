//! Command output in the four formats.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::doc::ElementDoc;
use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Markdown,
    Csv,
    Json,
}

/// What a command produced: text lines, the same content as a table, a JSON
/// document, and whether every check in it passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub lines: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Json,
    pub passed: bool,
}

impl Report {
    pub fn element(doc: &ElementDoc) -> Result<Report> {
        let rows = doc
            .terms
            .iter()
            .map(|t| {
                vec![
                    t.degree().to_string(),
                    t.render(),
                    t.c.to_string(),
                ]
            })
            .collect();
        Ok(Report {
            lines: vec![doc.render()],
            headers: vec!["degree".into(), "term".into(), "coefficient".into()],
            rows,
            json: serde_json::to_value(doc)?,
            passed: true,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Text => self.lines.join("\n"),
            Format::Json => serde_json::to_string(&self.json)?,
            Format::Markdown => {
                let escape = |s: &String| s.replace('|', "\\|");
                let mut out = vec![
                    format!("| {} |", self.headers.iter().map(escape).collect::<Vec<_>>().join(" | ")),
                    format!("|{}", "---|".repeat(self.headers.len())),
                ];
                for row in &self.rows {
                    out.push(format!("| {} |", row.iter().map(escape).collect::<Vec<_>>().join(" | ")));
                }
                out.join("\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
                String::from_utf8_lossy(&bytes).trim_end().to_string()
            }
        })
    }
}
