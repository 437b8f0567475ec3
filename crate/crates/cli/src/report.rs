use charsum_core::ExactRational;
use serde::{Deserialize, Serialize};

use crate::config::OutputFormat;

/// One verified instance: a count (or value) computed two independent ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub suite: String,
    pub p: u64,
    pub model_parameters: String,
    pub brute_total: i64,
    pub formula_total: ExactRational,
    #[serde(rename = "match")]
    pub matches: bool,
    pub hypergeometric_value: Option<ExactRational>,
}

impl VerificationRecord {
    pub fn new(
        suite: &str,
        p: u64,
        model_parameters: impl Into<String>,
        brute_total: i64,
        formula_total: ExactRational,
        hypergeometric_value: Option<ExactRational>,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            p,
            model_parameters: model_parameters.into(),
            brute_total,
            formula_total,
            matches: ExactRational::from_integer(brute_total) == formula_total,
            hypergeometric_value,
        }
    }
}

const HEADERS: [&str; 7] =
    ["suite", "p", "model_parameters", "brute_total", "formula_total", "match", "hypergeometric_value"];

pub fn emit_report(records: &[VerificationRecord], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => json_array(records),
        OutputFormat::Csv => {
            let mut w = csv_writer();
            w.write_record(HEADERS).expect("in-memory write");
            for r in records {
                w.serialize(r).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
        OutputFormat::Table => {
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        r.suite.clone(),
                        r.p.to_string(),
                        r.model_parameters.clone(),
                        r.brute_total.to_string(),
                        r.formula_total.to_string(),
                        if r.matches { "yes" } else { "NO" }.to_string(),
                        r.hypergeometric_value.map_or_else(|| "-".to_string(), |v| v.to_string()),
                    ]
                })
                .collect::<Vec<_>>();
            render_table(&HEADERS, &rows).into_bytes()
        }
    }
}

pub(crate) fn json_array<T: Serialize>(items: &[T]) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(items).expect("records serialize");
    out.push(b'\n');
    out
}

pub(crate) fn json_value<T: Serialize>(item: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(item).expect("value serializes");
    out.push(b'\n');
    out
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new())
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&mut headers.iter().copied());
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    out
}
