//! CSV tables and `key = value` text files.
//!
//! Feature matrices: header `row,col,f1,...,fd`, one point per line.
//! Partitions: header `cluster,point,membership,typicality`, ordered by
//! cluster then point. Numbers are written in their shortest round-trip form.

use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::clustering::{PartitionState, RunDiagnostics};
use crate::data::FeatureMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superpixels::SuperpixelMap;

fn csv_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Csv { path: path.into(), message: message.into() }
}

fn open_reader(path: &Path) -> Result<csv::Reader<fs::File>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(file))
}

fn open_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn write_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => csv_error(path, format!("{other:?}")),
    }
}

fn parse_number(path: &Path, line: u64, column: &str, field: &str) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| csv_error(path, format!("line {line}: column {column}: '{field}' is not a number")))?;
    if !v.is_finite() {
        return Err(csv_error(path, format!("line {line}: column {column}: value is not finite")));
    }
    Ok(v)
}

/// Reads a feature matrix.
pub fn read_feature_csv<T: Scalar>(path: &Path) -> Result<FeatureMatrix<T>> {
    let mut reader = open_reader(path)?;
    let headers = reader.headers().map_err(|e| csv_error(path, format!("header: {e}")))?.clone();
    let names: Vec<&str> = headers.iter().collect();
    if names.len() < 3 || names[0] != "row" || names[1] != "col" {
        return Err(csv_error(
            path,
            format!("line 1: header must start with row,col and name at least one feature, got {}", names.join(",")),
        ));
    }
    let dim = names.len() - 2;
    let mut values = Vec::new();
    let mut coords = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(path, format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != names.len() {
            return Err(csv_error(
                path,
                format!("line {line}: expected {} fields, found {}", names.len(), record.len()),
            ));
        }
        let row = parse_number(path, line, names[0], &record[0])?;
        let col = parse_number(path, line, names[1], &record[1])?;
        coords.push((row, col));
        for (j, field) in record.iter().enumerate().skip(2) {
            values.push(T::lit(parse_number(path, line, names[j], field)?));
        }
    }
    if coords.is_empty() {
        return Err(csv_error(path, "no data rows"));
    }
    let points = Array2::from_shape_vec((coords.len(), dim), values).expect("row lengths checked");
    FeatureMatrix::new(points, coords)
}

/// Writes a feature matrix with feature columns `f1..fd`.
pub fn write_feature_csv<T: Scalar>(path: &Path, matrix: &FeatureMatrix<T>) -> Result<()> {
    let mut w = open_writer(path)?;
    let mut header = vec!["row".to_string(), "col".to_string()];
    header.extend((1..=matrix.dim()).map(|j| format!("f{j}")));
    w.write_record(&header).map_err(|e| write_err(path, e))?;
    for (n, &(r, c)) in matrix.coords().iter().enumerate() {
        let mut rec = vec![r.to_string(), c.to_string()];
        rec.extend(matrix.point(n).iter().map(|v| v.to_string()));
        w.write_record(&rec).map_err(|e| write_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes memberships and typicalities, one line per (cluster, point).
pub fn write_partition_csv<T: Scalar>(path: &Path, state: &PartitionState<T>) -> Result<()> {
    let mut w = open_writer(path)?;
    w.write_record(["cluster", "point", "membership", "typicality"]).map_err(|e| write_err(path, e))?;
    for c in 0..state.n_clusters() {
        for n in 0..state.n_points() {
            w.write_record([
                c.to_string(),
                n.to_string(),
                state.u[[c, n]].to_string(),
                state.t[[c, n]].to_string(),
            ])
            .map_err(|e| write_err(path, e))?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Memberships and typicalities (both clusters x points) from a partition CSV.
pub fn read_partition_csv(path: &Path) -> Result<(Array2<f64>, Array2<f64>)> {
    let mut reader = open_reader(path)?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 4 {
            return Err(csv_error(path, format!("line {line}: expected 4 fields")));
        }
        let idx = |i: usize| {
            record[i]
                .parse::<usize>()
                .map_err(|_| csv_error(path, format!("line {line}: bad index '{}'", &record[i])))
        };
        rows.push((idx(0)?, idx(1)?, parse_number(path, line, "membership", &record[2])?, parse_number(path, line, "typicality", &record[3])?));
    }
    let c = rows.iter().map(|r| r.0 + 1).max().unwrap_or(0);
    let n = rows.iter().map(|r| r.1 + 1).max().unwrap_or(0);
    if rows.len() != c * n {
        return Err(csv_error(path, format!("{} rows cannot fill {c} clusters x {n} points", rows.len())));
    }
    let mut u = Array2::zeros((c, n));
    let mut t = Array2::zeros((c, n));
    for (ci, ni, uv, tv) in rows {
        u[[ci, ni]] = uv;
        t[[ci, ni]] = tv;
    }
    Ok((u, t))
}

/// Writes cluster centers with feature columns `f1..fd`.
pub fn write_centers_csv<T: Scalar>(path: &Path, centers: &Array2<T>) -> Result<()> {
    let mut w = open_writer(path)?;
    let mut header = vec!["cluster".to_string()];
    header.extend((1..=centers.ncols()).map(|j| format!("f{j}")));
    w.write_record(&header).map_err(|e| write_err(path, e))?;
    for (c, row) in centers.rows().into_iter().enumerate() {
        let mut rec = vec![c.to_string()];
        rec.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&rec).map_err(|e| write_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a table written by [`write_centers_csv`].
pub fn read_centers_csv(path: &Path) -> Result<Array2<f64>> {
    let mut reader = open_reader(path)?;
    let width = reader.headers().map_err(|e| csv_error(path, format!("header: {e}")))?.len();
    if width < 2 {
        return Err(csv_error(path, "line 1: header must name the cluster and at least one feature"));
    }
    let mut values = Vec::new();
    let mut rows = 0;
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(csv_error(path, format!("line {line}: expected {width} fields, found {}", record.len())));
        }
        for field in record.iter().skip(1) {
            values.push(parse_number(path, line, "center", field)?);
        }
        rows += 1;
    }
    Ok(Array2::from_shape_vec((rows, width - 1), values).expect("row lengths checked"))
}

/// Writes one hard cluster label per point.
pub fn write_labels_csv(path: &Path, labels: &[usize]) -> Result<()> {
    let mut w = open_writer(path)?;
    w.write_record(["point", "label"]).map_err(|e| write_err(path, e))?;
    for (n, l) in labels.iter().enumerate() {
        w.write_record([n.to_string(), l.to_string()]).map_err(|e| write_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the superpixel centroid and size table.
pub fn write_superpixel_csv(path: &Path, sp: &SuperpixelMap) -> Result<()> {
    let mut w = open_writer(path)?;
    w.write_record(["superpixel", "row", "col", "size"]).map_err(|e| write_err(path, e))?;
    for (s, (&(r, c), &size)) in sp.centroids().iter().zip(sp.sizes()).enumerate() {
        w.write_record([s.to_string(), r.to_string(), c.to_string(), size.to_string()])
            .map_err(|e| write_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Renders `key = value` lines.
pub fn format_key_values<'a>(pairs: impl IntoIterator<Item = (&'a str, String)>) -> String {
    pairs.into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; a later duplicate key replaces an earlier one.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::config(format!("line {}: expected key = value, got '{line}'", i + 1)))?;
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        if k.is_empty() {
            return Err(Error::config(format!("line {}: empty key", i + 1)));
        }
        out.retain(|(existing, _)| *existing != k);
        out.push((k, v));
    }
    Ok(out)
}

/// Diagnostics as `key = value` text.
pub fn format_diagnostics(diag: &RunDiagnostics) -> String {
    let reseeds: Vec<String> = diag.reseeds.iter().map(|(i, c)| format!("{i}:{c}")).collect();
    format_key_values([
        ("iterations", diag.iterations.to_string()),
        ("converged", diag.converged.to_string()),
        ("final_objective", diag.final_objective().map_or("nan".into(), |v| v.to_string())),
        ("final_max_delta", diag.final_max_delta().map_or("nan".into(), |v| v.to_string())),
        ("reseeds", reseeds.join(",")),
    ])
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;

    #[test]
    fn feature_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let m = FeatureMatrix::new(array![[0.1f64, -2.5], [1e-7, 3.0]], vec![(0.0, 1.5), (2.0, 3.0)]).unwrap();
        write_feature_csv(&path, &m).unwrap();
        assert!(fs::read_to_string(&path).unwrap().starts_with("row,col,f1,f2\n"));
        assert_eq!(read_feature_csv::<f64>(&path).unwrap(), m);
    }

    #[test]
    fn bad_feature_rows_are_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        fs::write(&path, "row,col,f1\n0,0,1.0\n0,1,abc\n").unwrap();
        let err = read_feature_csv::<f64>(&path).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        fs::write(&path, "row,col,f1\n0,0,1.0\n0,1\n").unwrap();
        let err = read_feature_csv::<f64>(&path).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        fs::write(&path, "x,y,f1\n0,0,1.0\n").unwrap();
        assert!(read_feature_csv::<f64>(&path).is_err());
        fs::write(&path, "row,col,f1\n").unwrap();
        assert!(read_feature_csv::<f64>(&path).is_err());
    }

    #[test]
    fn key_values() {
        let kv = parse_key_values("# c\na = 1\n\nb=two words\na = 3\n").unwrap();
        assert_eq!(kv, vec![("b".into(), "two words".into()), ("a".into(), "3".into())]);
        assert!(parse_key_values("novalue\n").is_err());
    }

    proptest! {
        #[test]
        fn partition_csv_round_trips_exactly(vals in prop::collection::vec(0.0f64..=1.0, 6)) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("p.csv");
            let u = Array2::from_shape_vec((2, 3), vals.clone()).unwrap();
            let t = u.mapv(|v| 1.0 - v / 2.0);
            let state = PartitionState { u: u.clone(), t: t.clone(), centers: array![[0.0], [1.0]], gamma: vec![1.0, 1.0] };
            write_partition_csv(&path, &state).unwrap();
            let (u2, t2) = read_partition_csv(&path).unwrap();
            prop_assert_eq!(u2, u);
            prop_assert_eq!(t2, t);
        }
    }
}
