//! Result records and deterministic emission.
//!
//! Stored values are pre-rounded through a 12-significant-digit decimal,
//! so the shortest-round-trip JSON representation never exceeds 12
//! digits and `parse(serialize(record)) == record` holds exactly.

use serde::{Deserialize, Serialize};

use crate::args::{OutputFormat, RunConfig};

/// Round through the nearest 12-significant-digit decimal.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Fixed significant-digit scientific form for CSV cells.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    format!("{x:.*e}", sig.saturating_sub(1))
}

/// Six-significant-digit human form: plain decimal in a moderate range,
/// scientific outside it.
pub fn fmt_human(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..9).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.*}", decimals);
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        format!("{x:.5e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => fmt_sig(*v, 12),
            Cell::Text(t) => csv_quote(t),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => fmt_human(*v),
            Cell::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// One finished run: the configuration echo, named scalar results,
/// free-form notes (provenance), an optional table, and the wall-clock
/// duration. The duration is reported in text output only, so identical
/// configurations give byte-identical structured output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub config: RunConfig,
    pub scalars: Vec<NamedValue>,
    pub notes: Vec<String>,
    pub table: Option<Table>,
    pub duration_ms: Option<u64>,
}

impl ResultRecord {
    pub fn new(config: RunConfig) -> Self {
        Self { config, scalars: Vec::new(), notes: Vec::new(), table: None, duration_ms: None }
    }

    pub fn push_scalar(&mut self, name: impl Into<String>, value: f64) {
        self.scalars.push(NamedValue { name: name.into(), value: round_sig12(value) });
    }

    pub fn push_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.scalars.iter().find(|s| s.name == name).map(|s| s.value)
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn emit_csv(record: &ResultRecord) -> String {
    let mut out = String::new();
    match &record.table {
        Some(table) => {
            out.push_str(&table.headers.iter().map(|h| csv_quote(h)).collect::<Vec<_>>().join(","));
            out.push_str("\r\n");
            for row in &table.rows {
                out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
                out.push_str("\r\n");
            }
        }
        None => {
            out.push_str("name,value\r\n");
            for s in &record.scalars {
                out.push_str(&format!("{},{}\r\n", csv_quote(&s.name), fmt_sig(s.value, 12)));
            }
        }
    }
    out
}

fn emit_json(record: &ResultRecord) -> String {
    let mut stripped = record.clone();
    stripped.duration_ms = None;
    let mut text = serde_json::to_string_pretty(&stripped).expect("record serializes");
    text.push('\n');
    text
}

fn emit_text(record: &ResultRecord) -> String {
    let mut out = String::new();
    for note in &record.notes {
        out.push_str(note);
        out.push('\n');
    }
    let width = record.scalars.iter().map(|s| s.name.len()).max().unwrap_or(0);
    for s in &record.scalars {
        out.push_str(&format!("{:width$}  {}\n", s.name, fmt_human(s.value), width = width));
    }
    if let Some(table) = &record.table {
        let mut cols: Vec<usize> = table.headers.iter().map(|h| h.len()).collect();
        let rendered: Vec<Vec<String>> =
            table.rows.iter().map(|r| r.iter().map(Cell::human).collect()).collect();
        for row in &rendered {
            for (i, cell) in row.iter().enumerate() {
                cols[i] = cols[i].max(cell.len());
            }
        }
        let fmt_row = |cells: Vec<String>| {
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:>width$}", c, width = cols[i]))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&fmt_row(table.headers.clone()));
        out.push('\n');
        for row in rendered {
            out.push_str(&fmt_row(row));
            out.push('\n');
        }
    }
    if let Some(ms) = record.duration_ms {
        out.push_str(&format!("completed in {ms} ms\n"));
    }
    out
}

/// Render a record in the configured format. Structured formats (csv,
/// json) are deterministic functions of the configuration and results.
pub fn emit(record: &ResultRecord, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => emit_text(record),
        OutputFormat::Csv => emit_csv(record),
        OutputFormat::Json => emit_json(record),
    }
}
