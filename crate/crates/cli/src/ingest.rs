//! Two-column CSV ingestion.

use std::path::Path;

use corrtest_core::{summarize, BivariateData};

use crate::error::{CliError, Result};

/// Reads paired `x,y` observations from a comma-separated UTF-8 file.
///
/// Row numbers in diagnostics are 1-based file lines, counting the header
/// line when `has_header` is set.
pub fn ingest_csv(path: &Path, has_header: bool) -> Result<BivariateData> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Csv {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(CliError::Ragged {
                path: path.to_path_buf(),
                row,
                found: record.len(),
            });
        }
        let parse = |column: usize| -> Result<f64> {
            let raw = &record[column];
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::NonNumeric {
                    path: path.to_path_buf(),
                    row,
                    column: column + 1,
                    value: raw.to_string(),
                })
        };
        let (x, y) = (parse(0)?, parse(1)?);
        xs.push(x);
        ys.push(y);
    }

    let invalid = |source| CliError::InvalidData {
        path: path.to_path_buf(),
        source,
    };
    let data = BivariateData::new(xs, ys).map_err(invalid)?;
    summarize(&data).map_err(invalid)?;
    Ok(data)
}
