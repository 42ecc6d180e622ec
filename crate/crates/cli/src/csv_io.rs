//! Two-column `t,value` CSV input and numeric CSV output.

use std::io::{Read, Write};

use sawtooth_core::TimeSeries;

use crate::error::CliError;

/// Parse `t,value` rows. A first row in which no cell is a number is taken
/// as a header; blank lines are skipped. Line numbers in errors are 1-based.
pub fn parse_csv(input: impl Read) -> Result<TimeSeries, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if first && record.iter().all(|c| c.parse::<f64>().is_err()) {
            first = false;
            continue;
        }
        first = false;
        if record.len() != 2 {
            return Err(CliError::Csv {
                line,
                message: format!("expected 2 columns, found {}", record.len()),
            });
        }
        let cell = |i: usize| -> Result<f64, CliError> {
            let text = &record[i];
            match text.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::Parse {
                    line,
                    cell: text.to_string(),
                }),
            }
        };
        let (t, x) = (cell(0)?, cell(1)?);
        if let Some(&previous) = times.last() {
            if t <= previous {
                return Err(CliError::Ordering { line, previous, t });
            }
        }
        times.push(t);
        values.push(x);
    }
    if times.is_empty() {
        return Err(CliError::EmptyInput);
    }
    Ok(TimeSeries::new(times, values)?)
}

/// Shortest decimal text that parses back to the same double.
pub fn fmt(v: f64) -> String {
    format!("{v:?}")
}

/// Write a header and equal-length numeric columns.
pub fn write_columns(out: impl Write, header: &[&str], columns: &[&[f64]]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    let rows = columns.first().map_or(0, |c| c.len());
    for i in 0..rows {
        w.write_record(columns.iter().map(|c| fmt(c[i])))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_series(out: impl Write, series: &TimeSeries) -> Result<(), CliError> {
    write_columns(out, &["t", "x"], &[series.times(), series.values()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows() {
        let s = parse_csv("t,x\n0,1.5\n1,2.5".as_bytes()).unwrap();
        assert_eq!(s.times(), &[0.0, 1.0]);
        assert_eq!(s.values(), &[1.5, 2.5]);
    }

    #[test]
    fn blank_lines_skipped() {
        let s = parse_csv("\n0,1\n\n1,2\n\n".as_bytes()).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn ordering_error_line() {
        match parse_csv("0,1\n0,2".as_bytes()) {
            Err(CliError::Ordering { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_error_line() {
        match parse_csv("0,abc".as_bytes()) {
            Err(CliError::Parse { line, cell }) => {
                assert_eq!(line, 1);
                assert_eq!(cell, "abc");
            }
            other => panic!("{other:?}"),
        }
        match parse_csv("t,x\n0,1\n1,nan".as_bytes()) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_input() {
        assert!(matches!(
            parse_csv("".as_bytes()),
            Err(CliError::EmptyInput)
        ));
        assert!(matches!(
            parse_csv("t,x\n".as_bytes()),
            Err(CliError::EmptyInput)
        ));
    }

    #[test]
    fn column_count() {
        assert!(matches!(
            parse_csv("0,1,2".as_bytes()),
            Err(CliError::Csv { line: 1, .. })
        ));
    }
}
