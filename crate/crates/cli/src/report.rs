//! Tabular reports rendered as CSV, markdown or JSON.
//!
//! Every rendering starts with the provenance header: tool version, config
//! hash and the checksum of each input file. CSV and markdown carry it as
//! comments; JSON as a `header` object.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Format;
use crate::data::InputFile;

pub const NA: &str = "NA";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// Value and number of decimals to print.
    Num(f64, usize),
    Missing,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Num(v, d) => {
                let s = format!("{v:.d$}");
                // no "-0.0"
                if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
                    s.trim_start_matches('-').to_string()
                } else {
                    s
                }
            }
            Cell::Missing => NA.to_string(),
        }
    }

    fn is_numeric(&self) -> bool {
        matches!(self, Cell::Int(_) | Cell::Num(..) | Cell::Missing)
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => s.clone().into(),
            Cell::Int(v) => (*v).into(),
            Cell::Num(..) => self.render().parse::<f64>().map_or(serde_json::Value::Null, Into::into),
            Cell::Missing => NA.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    pub tool: String,
    pub command: String,
    pub config_sha256: String,
    pub inputs: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str, config_sha256: String, inputs: &[InputFile]) -> Self {
        Header {
            tool: format!("cep-cli {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            config_sha256,
            inputs: inputs.iter().map(|i| (i.name.clone(), i.sha256.clone())).collect(),
        }
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("{} {}", self.tool, self.command),
            format!("config sha256 {}", self.config_sha256),
        ];
        out.extend(self.inputs.iter().map(|(n, h)| format!("input {n} sha256 {h}")));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub header: Header,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    title: &'a str,
    header: &'a Header,
    columns: &'a [String],
    rows: Vec<Vec<serde_json::Value>>,
}

impl Report {
    pub fn new(title: &str, header: Header, columns: &[&str]) -> Self {
        Report {
            title: title.to_string(),
            header,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Markdown => self.to_markdown(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(self.title.clone()).chain(self.header.lines()) {
            let _ = writeln!(out, "# {line}");
        }
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
        out
    }

    fn to_markdown(&self) -> String {
        let mut out = String::new();
        for line in self.header.lines() {
            let _ = writeln!(out, "<!-- {line} -->");
        }
        let _ = writeln!(out, "\n### {}\n", self.title);
        let _ = writeln!(out, "| {} |", self.columns.join(" | "));
        let numeric: Vec<bool> = (0..self.columns.len())
            .map(|j| !self.rows.is_empty() && self.rows.iter().all(|r| r[j].is_numeric()))
            .collect();
        let rule: Vec<&str> = numeric.iter().map(|&n| if n { "---:" } else { "---" }).collect();
        let _ = writeln!(out, "| {} |", rule.join(" | "));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.render().replace('|', "\\|")).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }

    fn to_json(&self) -> String {
        let doc = JsonReport {
            title: &self.title,
            header: &self.header,
            columns: &self.columns,
            rows: self.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let header = Header::new(
            "spreads",
            "ab".repeat(32),
            &[InputFile {
                name: "x.csv".into(),
                sha256: "cd".repeat(32),
            }],
        );
        let mut r = Report::new("Spreads", header, &["technology", "10y", "All"]);
        r.push(vec![Cell::text("Coal, USC"), Cell::Int(120), Cell::Missing]);
        r.push(vec![Cell::text("Wind"), Cell::Num(-0.01, 1), Cell::Num(2.25, 1)]);
        r
    }

    #[test]
    fn csv_has_commented_header_and_quotes() {
        let s = sample().render(Format::Csv);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# Spreads");
        assert!(lines[2].starts_with("# config sha256 abab"));
        assert!(lines[3].starts_with("# input x.csv sha256 cdcd"));
        assert_eq!(lines[4], "technology,10y,All");
        assert_eq!(lines[5], "\"Coal, USC\",120,NA");
        assert_eq!(lines[6], "Wind,0.0,2.2");
    }

    #[test]
    fn markdown_right_aligns_numbers() {
        let s = sample().render(Format::Markdown);
        assert!(s.contains("| --- | ---: | ---: |"));
        assert!(s.contains("<!-- config sha256"));
    }

    #[test]
    fn json_keeps_numbers_numeric() {
        let s = sample().render(Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"][0][1], 120);
        assert_eq!(v["rows"][0][2], "NA");
        assert_eq!(v["header"]["inputs"][0][0], "x.csv");
    }
}
