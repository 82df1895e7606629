//! JSON, CSV and text renderings of a report.
//!
//! CSV output starts with a `# config: {...}` comment line holding the same
//! config object as the JSON form.

use std::collections::BTreeMap;

use anyhow::Result;
use serde::Serialize;

use crate::{CellStatus, CompareReport, DimsReport, Format, Report, RunConfig, TableReport};

fn json<R: Serialize, S: Serialize>(report: &Report<R, S>) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

fn csv<R: Serialize>(config: &RunConfig, rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = String::from_utf8(w.into_inner()?)?;
    Ok(format!("# config: {}\n{body}", serde_json::to_string(config)?))
}

fn header(config: &RunConfig) -> String {
    let mut s = format!("# lcsq {}", config.command);
    if let Some(p) = &config.preset {
        s += &format!(" {p}");
    }
    s += &format!("\n# n = {}, relation = {}, mode = {:?}, seed = {}", config.n, config.relation, config.mode, config.seed);
    if let Some(t) = config.max_truncation {
        s += &format!(", max truncation = {t}");
    }
    s + "\n"
}

/// Rows `B_i`, columns degrees.
fn grid(labels: &[usize], degrees: usize, cell: impl Fn(usize, usize) -> String) -> String {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("".to_string()).chain((1..=degrees).map(|m| m.to_string())).collect()];
    for &i in labels {
        rows.push(std::iter::once(format!("B_{i}")).chain((1..=degrees).map(|m| cell(i, m))).collect());
    }
    let widths: Vec<usize> = (0..=degrees).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}

pub fn dims(report: &DimsReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => csv(&report.config, &report.results),
        Format::Text => {
            let cells: BTreeMap<(usize, usize), (usize, bool)> = report.results.iter().map(|r| ((r.i, r.degree), (r.dim, r.certified))).collect();
            let body = grid(&report.config.series, report.config.max_degree, |i, m| match cells.get(&(i, m)) {
                Some((d, true)) => d.to_string(),
                Some((d, false)) => format!("{d}?"),
                None => "-".into(),
            });
            let note = if cells.values().any(|c| !c.1) { "# ? = truncation did not stabilize\n" } else { "" };
            Ok(header(&report.config) + &body + note)
        }
    }
}

pub fn table(report: &TableReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => csv(&report.config, &report.results),
        Format::Text => {
            let body = grid(&report.config.series, report.config.max_degree, |i, m| {
                let Some(r) = report.results.iter().find(|r| r.i == i && r.degree == m) else { return "-".into() };
                match (r.status, r.dim, r.printed) {
                    (CellStatus::Mismatch, Some(d), Some(p)) => format!("{d} (printed {p})"),
                    (CellStatus::BeyondTable, Some(d), _) => format!("{d}+"),
                    (_, Some(d), _) => d.to_string(),
                    _ => "n/a".into(),
                }
            });
            let mut out = header(&report.config) + &format!("# {}\n", report.summary.as_ref().map_or("", |s| s.caption.as_str())) + &body;
            if let Some(s) = &report.summary {
                out += &format!("# {} match, {} mismatch, {} beyond table (+), {} uncomputed\n", s.matches, s.mismatches, s.beyond_table, s.uncomputed);
            }
            Ok(out)
        }
    }
}

pub fn compare(report: &CompareReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json(report),
        Format::Csv => csv(&report.config, &report.results),
        Format::Text => {
            let mut out = header(&report.config);
            out += "degree  B_2  omega  equal\n";
            for r in &report.results {
                out += &format!("{:>6}  {:>3}  {:>5}  {}\n", r.degree, r.b2, r.omega, if r.equal { "yes" } else { "no" });
            }
            match report.summary.as_ref().and_then(|s| s.first_mismatch) {
                Some(m) => out += &format!("# first mismatch at degree {m}\n"),
                None => out += "# equal in every degree\n",
            }
            Ok(out)
        }
    }
}
