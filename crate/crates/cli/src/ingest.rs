//! `time,status` CSV files.

use crate::error::CliError;
use censwave::simulation::format_sig17;
use censwave::CensoredSample;
use std::path::Path;

pub fn ingest_csv(path: impl AsRef<Path>) -> Result<CensoredSample<f64>, CliError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_csv(&text)
}

/// Parses `time,status` rows. A first row whose fields are both non-numeric
/// is taken as a header. Rows are numbered from 1 including any header.
pub fn parse_csv(text: &str) -> Result<CensoredSample<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut times = Vec::new();
    let mut events = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Parse {
            row: i + 1,
            message: e.to_string(),
        })?;
        let row = record.position().map(|p| p.line() as usize).unwrap_or(i + 1);
        if record.len() != 2 {
            return Err(CliError::Parse {
                row,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let (t, s) = (&record[0], &record[1]);
        if i == 0 && t.parse::<f64>().is_err() && s.parse::<f64>().is_err() {
            continue;
        }
        let time: f64 = t.parse().map_err(|_| CliError::Parse {
            row,
            message: format!("time {t:?} is not a number"),
        })?;
        if !time.is_finite() {
            return Err(CliError::Parse {
                row,
                message: format!("time {t:?} is not finite"),
            });
        }
        if time < 0.0 {
            return Err(CliError::NegativeTime { row, value: time });
        }
        let event = match s {
            "1" => true,
            "0" => false,
            other => {
                return Err(CliError::BadStatus {
                    row,
                    value: other.to_string(),
                })
            }
        };
        times.push(time);
        events.push(event);
    }
    Ok(CensoredSample::new(times, events)?)
}

/// Writes the sample with a `time,status` header and 17 significant digits.
pub fn write_csv(sample: &CensoredSample<f64>, path: impl AsRef<Path>) -> Result<(), CliError> {
    let path = path.as_ref();
    let mut out = String::from("time,status\n");
    for (&t, &d) in sample.times().iter().zip(sample.events()) {
        out.push_str(&format_sig17(t));
        out.push_str(if d { ",1\n" } else { ",0\n" });
    }
    std::fs::write(path, out).map_err(|e| CliError::io(path, e))
}
