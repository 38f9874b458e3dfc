//! CSV ingestion and emission.
//!
//! Input files may or may not carry a header: if any field of the first row
//! fails to parse as a number, that row is treated as a header. Columns are
//! addressed by header name or by zero-based index. Output CSV uses a comma
//! delimiter, '.' decimals, a header row, and LF line endings.

use crate::CliError;
use std::path::Path;

/// Read one numeric column. Blank lines are skipped; parse failures are
/// reported with their 1-based line number.
pub fn ingest_csv(path: &Path, column: &str) -> Result<Vec<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("cannot open {}: {e}", path.display())))?;

    let mut records = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let blank = record.iter().all(|f| f.trim().is_empty());
        if !blank {
            records.push(record);
        }
    }
    if records.is_empty() {
        return Err(CliError::Data(format!("{}: no data rows", path.display())));
    }

    let first_is_header = records[0].iter().any(|f| f.trim().parse::<f64>().is_err());
    let col_index = if first_is_header {
        let header = &records[0];
        match header.iter().position(|name| name.trim() == column) {
            Some(idx) => idx,
            None => column.parse::<usize>().map_err(|_| {
                CliError::Data(format!(
                    "column '{column}' not found; header has [{}]",
                    header.iter().map(str::trim).collect::<Vec<_>>().join(", ")
                ))
            })?,
        }
    } else {
        column.parse::<usize>().map_err(|_| {
            CliError::Data(format!(
                "file has no header row, so the column must be a zero-based index, got '{column}'"
            ))
        })?
    };

    let data_rows = if first_is_header { &records[1..] } else { &records[..] };
    let mut values = Vec::with_capacity(data_rows.len());
    for record in data_rows {
        let line = record.position().map_or(0, |p| p.line());
        let field = record.get(col_index).ok_or_else(|| {
            CliError::Data(format!("line {line}: row has no column {col_index}"))
        })?;
        let value: f64 = field.trim().parse().map_err(|_| {
            CliError::Data(format!(
                "line {line}: cannot parse '{}' as a number (column '{column}')",
                field.trim()
            ))
        })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(CliError::Data(format!("{}: column '{column}' has no values", path.display())));
    }
    Ok(values)
}

/// One column of values under a `value` header.
pub fn values_csv(values: &[f64]) -> String {
    let mut out = String::from("value\n");
    for v in values {
        out.push_str(&format!("{v}\n"));
    }
    out
}

/// Chart rows: 1-based index, value, alarm flag.
pub fn chart_csv(values: &[f64], alarm_indices: &[usize]) -> String {
    let mut out = String::from("index,value,alarm\n");
    let mut alarms = alarm_indices.iter().peekable();
    for (i, v) in values.iter().enumerate() {
        let index = i + 1;
        let alarm = matches!(alarms.peek(), Some(&&a) if a == index);
        if alarm {
            alarms.next();
        }
        out.push_str(&format!("{index},{v},{}\n", u8::from(alarm)));
    }
    out
}

/// Study cells, one row per (alpha, n, estimator).
pub fn study_csv(cells: &[alpha_unit::simulation::SimCellResult]) -> String {
    let mut out = String::from("alpha,n,method,avg_estimate,bias,mse,ci_length\n");
    for c in cells {
        let method = match c.method {
            alpha_unit::estimation::EstimatorMethod::Mle => "MLE",
            alpha_unit::estimation::EstimatorMethod::Umvue => "UMVUE",
        };
        let ci = c.ci_length.map_or(String::new(), |l| l.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c.alpha, c.n, method, c.avg_estimate, c.bias, c.mse, ci
        ));
    }
    out
}
