//! Text file formats: CSV datasets, model files, and prediction output.
//!
//! Everything is plain text so runs can be inspected and diffed. Floats
//! are printed with 17 significant digits, which round-trips `f64` values
//! bit-exactly through parse-after-print.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Label, LabeledSample, PolyhedralModel};

/// Render a float with 17 significant digits (lossless for `f64`).
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_field<T: std::str::FromStr>(field: &str, line: usize, what: &str) -> Result<T> {
    field.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what}: {field:?}"),
    })
}

/// Load a dataset CSV: one sample per row, feature columns then a label
/// column holding `-1` or `+1`.
///
/// # Errors
/// Ragged rows, non-numeric fields, non-finite features, or labels other
/// than plus/minus one produce a parse error naming the 1-based line.
pub fn load_csv(path: &Path, has_header: bool) -> Result<Vec<LabeledSample>> {
    let text = fs::read_to_string(path)?;
    let skip = usize::from(has_header);
    let mut samples = Vec::new();
    let mut width = None;
    for (i, row) in text.lines().enumerate().skip(skip) {
        let line = i + 1;
        if row.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() < 2 {
            return Err(Error::Parse {
                line,
                message: "a row needs at least one feature and a label".into(),
            });
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::Parse {
                    line,
                    message: format!("ragged row: expected {w} columns, found {}", fields.len()),
                })
            }
            _ => {}
        }
        let (label_field, feature_fields) = fields.split_last().unwrap();
        let features = feature_fields
            .iter()
            .map(|f| parse_field::<f64>(f, line, "feature"))
            .collect::<Result<Vec<f64>>>()?;
        let label_value: f64 = parse_field(label_field, line, "label")?;
        let label = if label_value == 1.0 {
            Label::Positive
        } else if label_value == -1.0 {
            Label::Negative
        } else {
            return Err(Error::Parse {
                line,
                message: format!("invalid label {label_field:?}: must be -1 or +1"),
            });
        };
        samples.push(
            LabeledSample::new(features, label).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?,
        );
    }
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(samples)
}

/// Load a dataset CSV, detecting an optional single header row: if any
/// field of the first line fails to parse as a number, that line is
/// treated as a header.
pub fn load_csv_auto(path: &Path) -> Result<Vec<LabeledSample>> {
    let text = fs::read_to_string(path)?;
    let has_header = text
        .lines()
        .next()
        .map(|row| {
            row.split(',')
                .any(|field| field.trim().parse::<f64>().is_err())
        })
        .unwrap_or(false);
    load_csv(path, has_header)
}

/// Save samples as CSV (no header): features, then the label as `1`/`-1`.
pub fn save_csv(path: &Path, data: &[LabeledSample]) -> Result<()> {
    let mut out = String::new();
    for s in data {
        for x in &s.features {
            out.push_str(&fmt_f64(*x));
            out.push(',');
        }
        out.push_str(&s.label.to_int().to_string());
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

const MODEL_FORMAT: &str = "polyceptron-model v1";

/// Save a model: a three-line header (format version, dimension, facet
/// count) followed by one row per facet holding `w_1 ... w_d b`.
pub fn save_model(path: &Path, model: &PolyhedralModel) -> Result<()> {
    let mut out = format!("{MODEL_FORMAT}\ndim {}\nk {}\n", model.dim(), model.k());
    for row in model.weights() {
        let rendered: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

fn header_value(line_text: Option<&str>, line: usize, key: &str) -> Result<usize> {
    let text = line_text.ok_or(Error::Parse {
        line,
        message: format!("missing `{key}` header line"),
    })?;
    match text.split_once(' ') {
        Some((k, v)) if k == key => parse_field(v, line, key),
        _ => Err(Error::Parse {
            line,
            message: format!("expected `{key} <integer>`, found {text:?}"),
        }),
    }
}

/// Load a model saved by [`save_model`], rejecting version or shape
/// mismatches rather than returning a silently partial model.
pub fn load_model(path: &Path) -> Result<PolyhedralModel> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let version = lines.next().unwrap_or_default();
    if version != MODEL_FORMAT {
        return Err(Error::Parse {
            line: 1,
            message: format!("unsupported model format {version:?} (expected {MODEL_FORMAT:?})"),
        });
    }
    let dim = header_value(lines.next(), 2, "dim")?;
    let k = header_value(lines.next(), 3, "k")?;
    let mut weights = Vec::with_capacity(k);
    for (i, row) in lines.by_ref().take(k).enumerate() {
        let line = 4 + i;
        let values = row
            .split_whitespace()
            .map(|f| parse_field::<f64>(f, line, "weight"))
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != dim + 1 {
            return Err(Error::Parse {
                line,
                message: format!(
                    "facet row has {} values, expected dim + 1 = {}",
                    values.len(),
                    dim + 1
                ),
            });
        }
        weights.push(values);
    }
    if weights.len() != k {
        return Err(Error::Parse {
            line: 3 + weights.len(),
            message: format!("truncated model: found {} of {k} facet rows", weights.len()),
        });
    }
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(Error::Parse {
            line: 0,
            message: format!("unexpected trailing content {extra:?}"),
        });
    }
    PolyhedralModel::from_weights(weights).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

/// Save per-sample predictions: CSV rows `label,h` where `label` is the
/// predicted sign and `h` the decision value.
pub fn save_predictions(path: &Path, rows: &[(Label, f64)]) -> Result<()> {
    let mut out = String::new();
    for (label, h) in rows {
        out.push_str(&format!("{},{}\n", label.to_int(), fmt_f64(*h)));
    }
    fs::write(path, out)?;
    Ok(())
}
