//! CSV readers and writers: coordinate data with an optional header and an
//! optional trailing truth-label column, condensed or square distance
//! matrices, and label output.

use std::fs;
use std::path::Path;

use hosil_core::distance::{DataMatrix, DistanceMatrix};
use hosil_core::silhouette::Labeling;

use crate::error::{AppError, Result};

/// Parses a numeric CSV into rows. A single leading header row is skipped
/// when its first field is not numeric; every data row must be numeric and
/// all rows must have the same width.
fn read_numeric_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::data(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(values) => {
                if rows.is_empty() {
                    width = values.len();
                } else if values.len() != width {
                    return Err(AppError::data(format!(
                        "{}: line {} has {} fields, expected {}",
                        path.display(),
                        lineno + 1,
                        values.len(),
                        width
                    )));
                }
                rows.push(values);
            }
            Err(_) if rows.is_empty() && lineno == 0 => {
                // Header row; skipped.
            }
            Err(_) => {
                return Err(AppError::data(format!(
                    "{}: line {} contains a non-numeric field",
                    path.display(),
                    lineno + 1
                )));
            }
        }
    }
    if rows.is_empty() {
        return Err(AppError::data(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

/// Loads coordinate data. With `truth_in_last_column` the final column is
/// split off as integer ground-truth labels.
pub fn load_data(path: &Path, truth_in_last_column: bool) -> Result<(DataMatrix, Option<Labeling>)> {
    let rows = read_numeric_rows(path)?;
    let width = rows[0].len();
    let p = if truth_in_last_column {
        if width < 2 {
            return Err(AppError::data(format!(
                "{}: need at least one feature column besides the label column",
                path.display()
            )));
        }
        width - 1
    } else {
        width
    };
    let n = rows.len();
    let mut values = Vec::with_capacity(n * p);
    let mut raw_labels = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        values.extend_from_slice(&row[..p]);
        if truth_in_last_column {
            let v = row[width - 1];
            if v.fract() != 0.0 || !v.is_finite() {
                return Err(AppError::data(format!(
                    "{}: row {} label column is not an integer",
                    path.display(),
                    i + 1
                )));
            }
            raw_labels.push(v as i64);
        }
    }
    let data = DataMatrix::new(n, p, values)?;
    let truth = if truth_in_last_column {
        Some(Labeling::from_raw(&raw_labels)?)
    } else {
        None
    };
    Ok((data, truth))
}

/// Loads a distance matrix, detecting the layout: one value per line is the
/// condensed pair order (0,1),(0,2),...; an r x r grid is a full square
/// matrix checked for symmetry and a zero diagonal.
pub fn load_distances(path: &Path) -> Result<DistanceMatrix> {
    let rows = read_numeric_rows(path)?;
    let r = rows.len();
    let width = rows[0].len();
    if width == 1 && r != 1 {
        let condensed: Vec<f64> = rows.into_iter().map(|row| row[0]).collect();
        return Ok(DistanceMatrix::from_condensed(condensed)?);
    }
    if width != r {
        return Err(AppError::data(format!(
            "{}: {} rows of {} values form neither a condensed list nor a square matrix",
            path.display(),
            r,
            width
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row[i].abs() > 1e-12 {
            return Err(AppError::data(format!(
                "{}: nonzero diagonal {} at ({i}, {i})",
                path.display(),
                row[i]
            )));
        }
        for (h, &v) in row.iter().enumerate().skip(i + 1) {
            let w = rows[h][i];
            let tol = 1e-9 * (1.0f64).max(v.abs()).max(w.abs());
            if (v - w).abs() > tol {
                return Err(AppError::data(format!(
                    "{}: asymmetry at ({i}, {h}): {v} vs {w}",
                    path.display()
                )));
            }
        }
    }
    let mut condensed = Vec::with_capacity(r * (r - 1) / 2);
    for i in 0..r {
        for h in (i + 1)..r {
            condensed.push(rows[i][h]);
        }
    }
    Ok(DistanceMatrix::from_condensed(condensed)?)
}

/// Writes coordinate rows with a trailing 1-based integer truth label.
pub fn write_dataset_csv(path: &Path, data: &DataMatrix, truth: &Labeling) -> Result<()> {
    let mut out = String::new();
    for i in 0..data.n() {
        for v in data.row(i) {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{}\n", truth.label(i) + 1));
    }
    fs::write(path, out).map_err(|e| AppError::data(format!("{}: {e}", path.display())))
}

/// Writes one 1-based cluster label per line.
pub fn write_labels_csv(path: &Path, labels: &Labeling) -> Result<()> {
    let mut out = String::new();
    for i in 0..labels.n() {
        out.push_str(&format!("{}\n", labels.label(i) + 1));
    }
    fs::write(path, out).map_err(|e| AppError::data(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn header_row_skipped_and_truth_split() {
        let f = tmp("x,y,label\n0,0,1\n1,0,1\n9,9,2\n");
        let (data, truth) = load_data(f.path(), true).unwrap();
        assert_eq!((data.n(), data.p()), (3, 2));
        assert_eq!(truth.unwrap().labels(), &[0, 0, 1]);
    }

    #[test]
    fn ragged_rows_rejected_with_line() {
        let f = tmp("0,0\n1\n");
        let err = load_data(f.path(), false).unwrap_err();
        assert!(err.message.contains("line 2"), "{}", err.message);
    }

    #[test]
    fn condensed_length_infers_n() {
        let f = tmp("1\n2\n3\n4\n5\n6\n");
        let d = load_distances(f.path()).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.lookup(1, 3), 5.0);
    }

    #[test]
    fn square_diagonal_and_symmetry_checked() {
        let bad_diag = tmp("0.5,1\n1,0\n");
        assert!(load_distances(bad_diag.path()).unwrap_err().message.contains("diagonal"));
        let asym = tmp("0,1,2\n1,0,3\n2,3.1,0\n");
        assert!(load_distances(asym.path()).unwrap_err().message.contains("(1, 2)"));
    }

    #[test]
    fn non_integer_truth_rejected() {
        let f = tmp("0,1.5\n1,1\n");
        assert!(load_data(f.path(), true).is_err());
    }
}
