//! LIBSVM sparse text format: `<label> <index>:<value> ...` per line.

use pasmo_core::{Dataset, Error as CoreError, Label, SparseVector};

use crate::error::{BenchError, Result};

fn parse_error(line: usize, message: impl Into<String>) -> BenchError {
    BenchError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a dataset. Blank lines are skipped; line numbers in errors are 1-based.
pub fn parse_libsvm(text: &str) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let number = number + 1;
        let mut fields = line.split_whitespace();
        let Some(label) = fields.next() else {
            continue;
        };
        let value: f64 = label
            .parse()
            .map_err(|_| parse_error(number, format!("malformed label {label:?}")))?;
        labels.push(Label::from_value(value)?);

        let mut entries = Vec::new();
        for field in fields {
            let (index, value) = field.split_once(':').ok_or_else(|| {
                parse_error(number, format!("expected index:value, got {field:?}"))
            })?;
            let index: u32 =
                index.parse().ok().filter(|&i| i >= 1).ok_or_else(|| {
                    parse_error(number, format!("invalid feature index {index:?}"))
                })?;
            let value: f64 = value
                .parse()
                .map_err(|_| parse_error(number, format!("invalid feature value {value:?}")))?;
            entries.push((index, value));
        }
        let point = SparseVector::new(entries).map_err(|e| match e {
            CoreError::NonIncreasingIndex { previous, index } => parse_error(
                number,
                format!("feature index {index} does not increase (previous {previous})"),
            ),
            other => other.into(),
        })?;
        points.push(point);
    }
    Ok(Dataset::new(points, labels)?)
}

/// Writes a dataset so that [`parse_libsvm`] reads back identical values.
pub fn write_libsvm(dataset: &Dataset) -> String {
    let mut out = String::new();
    for (point, label) in dataset.points().iter().zip(dataset.labels()) {
        out.push_str(match label {
            Label::Positive => "+1",
            Label::Negative => "-1",
        });
        for (index, value) in point.entries() {
            out.push_str(&format!(" {index}:{value}"));
        }
        out.push('\n');
    }
    out
}
