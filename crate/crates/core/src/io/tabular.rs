use std::collections::HashMap;

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use crate::agreement::{Method, PairedSample, ReplicateRecord, ReplicatedSample};
use crate::error::{Error, Result};

const PAIRED_HEADER: [&str; 3] = ["subject", "a", "b"];
const REPLICATED_HEADER: [&str; 4] = ["subject", "method", "replicate", "value"];

/// Parses `subject,a,b` CSV text.
pub fn parse_paired(text: &str) -> Result<PairedSample> {
    let mut ids = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for_each_row(text, &PAIRED_HEADER, |line, row| {
        let subject = row[0].to_string();
        if subject.is_empty() {
            return Err(parse_error(line, "empty subject id"));
        }
        if let Some(first) = seen.insert(subject.clone(), line) {
            return Err(parse_error(
                line,
                format!("duplicate subject {subject:?} (first seen on line {first})"),
            ));
        }
        a.push(number(line, "a", &row[1])?);
        b.push(number(line, "b", &row[2])?);
        ids.push(subject);
        Ok(())
    })?;
    PairedSample::new(ids, a, b)
}

/// Parses long-format `subject,method,replicate,value` CSV text.
pub fn parse_replicated(text: &str) -> Result<ReplicatedSample> {
    let mut records = Vec::new();
    for_each_row(text, &REPLICATED_HEADER, |line, row| {
        let method: Method = row[1]
            .parse()
            .map_err(|e: String| parse_error(line, format!("column method: {e}")))?;
        let replicate: u32 = row[2].parse().map_err(|_| {
            parse_error(
                line,
                format!("column replicate: {:?} is not a non-negative integer", &row[2]),
            )
        })?;
        records.push(ReplicateRecord {
            subject: row[0].to_string(),
            method,
            replicate,
            value: number(line, "value", &row[3])?,
        });
        Ok(())
    })?;
    ReplicatedSample::new(records)
}

fn for_each_row(
    text: &str,
    header: &[&str],
    mut f: impl FnMut(u64, &StringRecord) -> Result<()>,
) -> Result<()> {
    let mut reader = ReaderBuilder::new()
        .has_headers(true)
        .trim(Trim::All)
        .from_reader(text.as_bytes());
    let found = reader.headers().map_err(|e| csv_error(1, e))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(parse_error(
            1,
            format!(
                "expected header {:?}, found {:?}",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(line, e)
        })?;
        let line = row.position().map_or(0, |p| p.line());
        f(line, &row)?;
    }
    Ok(())
}

fn number(line: u64, column: &str, s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse_error(
            line,
            format!("column {column}: {s:?} is not a finite number"),
        )),
    }
}

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn csv_error(line: u64, e: csv::Error) -> Error {
    parse_error(line, e.to_string())
}

fn write_rows(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    // Writing to a Vec cannot fail.
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

/// `subject,a,b` CSV with shortest round-trip number formatting.
pub fn format_paired(sample: &PairedSample) -> String {
    let rows = sample
        .subject_ids()
        .iter()
        .zip(sample.a().iter().zip(sample.b()))
        .map(|(id, (a, b))| vec![id.clone(), a.to_string(), b.to_string()]);
    write_rows(&PAIRED_HEADER, rows)
}

pub fn format_replicated(sample: &ReplicatedSample) -> String {
    let rows = sample.records().into_iter().map(|r| {
        vec![
            r.subject,
            r.method.to_string(),
            r.replicate.to_string(),
            r.value.to_string(),
        ]
    });
    write_rows(&REPLICATED_HEADER, rows)
}
