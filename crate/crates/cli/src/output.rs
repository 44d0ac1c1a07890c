use crate::Failure;
use clap::ValueEnum;
use serde::Serialize;
use sieved_jacobi::{CheckReport, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn encode_failure(e: impl std::fmt::Display) -> Failure {
    Failure(crate::EXIT_DATA, format!("cannot encode output: {e}"))
}

fn json(value: &impl Serialize) -> Result<Vec<u8>, Failure> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(encode_failure)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// One CSV row per detail.
#[derive(Serialize)]
struct DetailRow<'a> {
    suite: &'a str,
    alpha: f64,
    beta: f64,
    #[serde(rename = "N")]
    order: usize,
    nmax: usize,
    detail: &'a str,
    residual: f64,
    tolerance: f64,
    pass: bool,
    asserted: bool,
}

/// A single report is written as an object, several as an array.
pub fn reports(reports: &[CheckReport], format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json if reports.len() == 1 => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in reports {
                for d in &r.details {
                    w.serialize(DetailRow {
                        suite: &r.suite,
                        alpha: r.params.alpha,
                        beta: r.params.beta,
                        order: r.params.order,
                        nmax: r.params.nmax,
                        detail: &d.name,
                        residual: d.residual,
                        tolerance: d.tolerance,
                        pass: d.pass,
                        asserted: d.asserted,
                    })
                    .map_err(encode_failure)?;
                }
            }
            w.into_inner().map_err(encode_failure)
        }
        Format::Text => Ok(reports.iter().map(|r| r.to_string()).collect::<String>().into_bytes()),
    }
}

pub fn table(table: &Table, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => json(table),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.columns).map_err(encode_failure)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|c| c.to_string())).map_err(encode_failure)?;
            }
            w.into_inner().map_err(encode_failure)
        }
        Format::Text => {
            let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|i| cells.iter().map(|r| r[i].len()).chain([table.columns[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                let mut s = items
                    .iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ");
                s.push('\n');
                s
            };
            let mut out = line(table.columns.clone());
            for r in &cells {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            Ok(out.into_bytes())
        }
    }
}
