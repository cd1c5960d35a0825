//! Numeric file formats.
//!
//! - Series sets: wide CSV, one column per series, ids in the header row.
//!   An optional first column named `t` is ignored. Missing cells are
//!   rejected. Alternatively a directory of single-column CSV files, where
//!   the file stem is the series id and lexicographic filename order defines
//!   the series order.
//! - Event sets: the same wide CSV carrying only 0/1 indicator values.
//! - Distance matrices: CSV with a `label` header column, labels down the
//!   first column, and full-precision decimal distances.
//! - Partition slices: `part_<index>_of_<total>.csv` with header `i,j,dist`,
//!   1-based upper-triangle indices.
//!
//! Floats are written in Rust's shortest-roundtrip decimal form, so reading
//! a file back recovers exactly the bits that were written and merged
//! matrices can be compared byte for byte against single-shot runs.

use std::fs;
use std::io::{BufWriter, Write as _};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::matrix::{DistanceMatrix, DistancePart};
use crate::series::{EventSeries, TimeSeries};

/// Canonical float formatting for every file this crate writes: shortest
/// decimal string that parses back to the identical f64. Negative zero is
/// folded into plain zero.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn open_reader(path: &Path) -> Result<csv::Reader<fs::File>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new().has_headers(true).flexible(false).from_reader(file))
}

fn parse_cell(cell: &str, path: &Path, row: usize, col: &str) -> Result<f64> {
    let trimmed = cell.trim();
    if trimmed.is_empty() {
        return Err(Error::data_in(
            path,
            format!("missing cell in column '{col}', data row {row}"),
        ));
    }
    trimmed.parse::<f64>().map_err(|_| {
        Error::data_in(
            path,
            format!("cannot parse '{trimmed}' in column '{col}', data row {row}"),
        )
    })
}

/// Read a wide CSV of aligned series. Column order is preserved.
pub fn read_series_csv(path: &Path) -> Result<Vec<TimeSeries>> {
    let mut reader = open_reader(path)?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::data_in(path, format!("bad header row: {e}")))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.is_empty() {
        return Err(Error::data_in(path, "empty header row"));
    }
    let skip_time = headers[0] == "t";
    let ids: Vec<String> = headers.iter().skip(usize::from(skip_time)).cloned().collect();
    if ids.is_empty() {
        return Err(Error::data_in(path, "no series columns (only a 't' column)"));
    }

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); ids.len()];
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::data_in(path, format!("row {}: {e}", row_idx + 1)))?;
        let cells = record.iter().skip(usize::from(skip_time));
        for (col, cell) in cells.enumerate() {
            columns[col].push(parse_cell(cell, path, row_idx + 1, &ids[col])?);
        }
    }

    ids.into_iter()
        .zip(columns)
        .map(|(id, values)| {
            if values.is_empty() {
                Err(Error::data_in(path, format!("series '{id}' has no data rows")))
            } else {
                TimeSeries::new(id, values)
            }
        })
        .collect()
}

/// Write aligned series as wide CSV. All series must share one length.
pub fn write_series_csv(path: &Path, series: &[TimeSeries]) -> Result<()> {
    if series.is_empty() {
        return Err(Error::invalid("nothing to write: no series"));
    }
    let len = series[0].len();
    if series.iter().any(|s| s.len() != len) {
        return Err(Error::invalid("wide CSV needs equal-length series"));
    }
    let mut out = String::new();
    out.push_str(&series.iter().map(TimeSeries::id).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in 0..len {
        let line: Vec<String> = series.iter().map(|s| fmt_f64(s.values()[row])).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    write_file(path, out.as_bytes())
}

/// Read a wide CSV of 0/1 indicators as event series.
pub fn read_events_csv(path: &Path) -> Result<Vec<EventSeries>> {
    read_series_csv(path)?
        .into_iter()
        .map(|s| {
            let indicator: Result<Vec<bool>> = s
                .values()
                .iter()
                .map(|&v| {
                    if v == 0.0 {
                        Ok(false)
                    } else if v == 1.0 {
                        Ok(true)
                    } else {
                        Err(Error::data_in(
                            path,
                            format!("series '{}' is not a 0/1 event indicator (found {v})", s.id()),
                        ))
                    }
                })
                .collect();
            EventSeries::from_indicator(s.id(), &indicator?)
        })
        .collect()
}

/// Write event series as a wide 0/1 indicator CSV. All horizons must match.
pub fn write_events_csv(path: &Path, events: &[EventSeries]) -> Result<()> {
    if events.is_empty() {
        return Err(Error::invalid("nothing to write: no event series"));
    }
    let horizon = events[0].horizon();
    if events.iter().any(|e| e.horizon() != horizon) {
        return Err(Error::invalid("wide event CSV needs equal horizons"));
    }
    let mut out = String::new();
    out.push_str(&events.iter().map(EventSeries::id).collect::<Vec<_>>().join(","));
    out.push('\n');
    let indicators: Vec<Vec<bool>> = events.iter().map(EventSeries::indicator).collect();
    for row in 0..horizon {
        let line: Vec<&str> =
            indicators.iter().map(|ind| if ind[row] { "1" } else { "0" }).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    write_file(path, out.as_bytes())
}

/// List the `.csv` files of a directory as `(series id, path)` in
/// lexicographic filename order; the stem is the id.
pub fn list_series_dir(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) == Some("csv") && path.is_file() {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or_else(|| Error::data_in(&path, "file stem is not valid UTF-8"))?
                .to_string();
            files.push((stem, path));
        }
    }
    if files.is_empty() {
        return Err(Error::invalid(format!("no .csv files in {}", dir.display())));
    }
    files.sort_by(|a, b| a.1.file_name().cmp(&b.1.file_name()));
    Ok(files)
}

/// Read one file of [`list_series_dir`]: a single-column CSV (optionally
/// with a leading `t` column), with the id taken from the file stem.
pub fn read_single_series_file(path: &Path, id: &str) -> Result<TimeSeries> {
    let series = read_series_csv(path)?;
    if series.len() != 1 {
        return Err(Error::data_in(
            path,
            format!("expected exactly one series column, found {}", series.len()),
        ));
    }
    TimeSeries::new(id, series.into_iter().next().expect("len checked").values().to_vec())
}

/// Read every series of a directory into memory (the eager counterpart of
/// the streaming partition path).
pub fn read_series_dir(dir: &Path) -> Result<Vec<TimeSeries>> {
    list_series_dir(dir)?
        .into_iter()
        .map(|(id, path)| read_single_series_file(&path, &id))
        .collect()
}

/// Write a distance matrix: `label` column first, then one column per
/// series, full precision.
pub fn write_matrix_csv(path: &Path, matrix: &DistanceMatrix) -> Result<()> {
    let mut out = String::from("label");
    for l in matrix.labels() {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for i in 0..matrix.n() {
        out.push_str(&matrix.labels()[i]);
        for j in 0..matrix.n() {
            out.push(',');
            out.push_str(&fmt_f64(matrix.get(i, j)));
        }
        out.push('\n');
    }
    write_file(path, out.as_bytes())
}

/// Read a matrix written by [`write_matrix_csv`], re-validating symmetry,
/// the zero diagonal and entry ranges.
pub fn read_matrix_csv(path: &Path) -> Result<DistanceMatrix> {
    let mut reader = open_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| Error::data_in(path, format!("bad header row: {e}")))?
        .clone();
    let mut header_iter = headers.iter();
    if header_iter.next() != Some("label") {
        return Err(Error::data_in(path, "matrix header must start with 'label'"));
    }
    let labels: Vec<String> = header_iter.map(|h| h.to_string()).collect();
    let n = labels.len();
    let mut values = Vec::with_capacity(n * n);
    let mut rows = 0usize;
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::data_in(path, format!("row {}: {e}", row_idx + 1)))?;
        let mut cells = record.iter();
        let row_label = cells.next().unwrap_or_default();
        if row_idx >= n {
            return Err(Error::data_in(path, format!("more rows than header labels ({n})")));
        }
        if row_label != labels[row_idx] {
            return Err(Error::data_in(
                path,
                format!(
                    "row {} is labeled '{row_label}' but the header says '{}'",
                    row_idx + 1,
                    labels[row_idx]
                ),
            ));
        }
        for cell in cells {
            values.push(parse_cell(cell, path, row_idx + 1, "matrix")?);
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::data_in(path, format!("expected {n} rows, found {rows}")));
    }
    DistanceMatrix::new(labels, values)
}

/// The canonical file name of a partition slice.
pub fn part_file_name(part_index: usize, total_parts: usize) -> String {
    format!("part_{part_index}_of_{total_parts}.csv")
}

/// Write one partition slice into `dir` under its canonical name.
pub fn write_part_csv(dir: &Path, part: &DistancePart) -> Result<PathBuf> {
    let path = dir.join(part_file_name(part.part_index, part.total_parts));
    let mut out = String::from("i,j,dist\n");
    for &(i, j, d) in &part.triples {
        out.push_str(&format!("{i},{j},{}\n", fmt_f64(d)));
    }
    write_file(&path, out.as_bytes())?;
    Ok(path)
}

fn parse_part_name(path: &Path) -> Option<(usize, usize)> {
    let stem = path.file_stem()?.to_str()?;
    let rest = stem.strip_prefix("part_")?;
    let (index, total) = rest.split_once("_of_")?;
    Some((index.parse().ok()?, total.parse().ok()?))
}

/// Read one `part_<i>_of_<k>.csv` file.
pub fn read_part_csv(path: &Path) -> Result<DistancePart> {
    let (part_index, total_parts) = parse_part_name(path).ok_or_else(|| {
        Error::data_in(path, "part files must be named part_<index>_of_<total>.csv")
    })?;
    let mut reader = open_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| Error::data_in(path, format!("bad header row: {e}")))?;
    if headers.iter().collect::<Vec<_>>() != ["i", "j", "dist"] {
        return Err(Error::data_in(path, "part header must be exactly 'i,j,dist'"));
    }
    let mut triples = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::data_in(path, format!("row {}: {e}", row_idx + 1)))?;
        let parse_idx = |cell: &str, name: &str| -> Result<usize> {
            cell.trim().parse::<usize>().map_err(|_| {
                Error::data_in(path, format!("bad {name} index '{cell}' in row {}", row_idx + 1))
            })
        };
        let i = parse_idx(&record[0], "i")?;
        let j = parse_idx(&record[1], "j")?;
        let d = parse_cell(&record[2], path, row_idx + 1, "dist")?;
        triples.push((i, j, d));
    }
    Ok(DistancePart { part_index, total_parts, triples })
}

/// Read every part file in a directory, sorted by part index.
pub fn read_parts_dir(dir: &Path) -> Result<Vec<DistancePart>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && parse_part_name(&path).is_some() {
            paths.push(path);
        }
    }
    if paths.is_empty() {
        return Err(Error::invalid(format!("no part_*_of_*.csv files in {}", dir.display())));
    }
    paths.sort_by_key(|p| parse_part_name(p).expect("filtered above"));
    paths.iter().map(|p| read_part_csv(p)).collect()
}

/// Write through a buffered writer and surface the target path on failure.
fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = BufWriter::new(file);
    writer.write_all(bytes).map_err(|e| Error::io(path, e))?;
    writer.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{dist_cor, CorrelationMode};
    use crate::matrix::ts_dist;

    fn tmp() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn float_format_round_trips_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let v: f64 = rng.gen_range(-1e6..1e6) * rng.gen_range(1e-12..1e12f64);
            let back: f64 = fmt_f64(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v}");
        }
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(1.0), "1");
    }

    #[test]
    fn wide_csv_round_trip() {
        let dir = tmp();
        let path = dir.path().join("series.csv");
        let a = TimeSeries::new("a", vec![1.0, 2.5, -3.0]).unwrap();
        let b = TimeSeries::new("b", vec![0.1, 0.2, 0.30000000000000004]).unwrap();
        write_series_csv(&path, &[a.clone(), b.clone()]).unwrap();
        let back = read_series_csv(&path).unwrap();
        assert_eq!(back, vec![a, b]);
    }

    #[test]
    fn wide_csv_ignores_leading_time_column() {
        let dir = tmp();
        let path = dir.path().join("series.csv");
        fs::write(&path, "t,x,y\n1,10,0.5\n2,20,0.25\n").unwrap();
        let series = read_series_csv(&path).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[0].id(), "x");
        assert_eq!(series[0].values(), &[10.0, 20.0]);
        assert_eq!(series[1].values(), &[0.5, 0.25]);
    }

    #[test]
    fn wide_csv_rejects_missing_and_garbage_cells() {
        let dir = tmp();
        let path = dir.path().join("series.csv");
        fs::write(&path, "x,y\n1,\n2,3\n").unwrap();
        assert!(matches!(read_series_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "x,y\n1,2\nfoo,3\n").unwrap();
        assert!(matches!(read_series_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "x,y\n1,2\n3\n").unwrap(); // ragged row
        assert!(matches!(read_series_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "x,y\n").unwrap(); // no data rows
        assert!(read_series_csv(&path).is_err());
    }

    #[test]
    fn events_csv_round_trip_and_validation() {
        let dir = tmp();
        let path = dir.path().join("events.csv");
        let e1 = EventSeries::new("e1", 5, vec![1, 4]).unwrap();
        let e2 = EventSeries::new("e2", 5, vec![2, 3, 5]).unwrap();
        write_events_csv(&path, &[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(read_events_csv(&path).unwrap(), vec![e1, e2]);
        fs::write(&path, "e\n0\n0.5\n").unwrap();
        assert!(matches!(read_events_csv(&path), Err(Error::Data { .. })));
    }

    #[test]
    fn series_directory_orders_lexicographically() {
        let dir = tmp();
        fs::write(dir.path().join("b.csv"), "v\n4\n5\n6\n").unwrap();
        fs::write(dir.path().join("a.csv"), "v\n1\n2\n3\n").unwrap();
        fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let series = read_series_dir(dir.path()).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[0].id(), "a");
        assert_eq!(series[1].id(), "b");
        assert_eq!(series[1].values(), &[4.0, 5.0, 6.0]);
    }

    #[test]
    fn empty_directory_is_invalid() {
        let dir = tmp();
        assert!(matches!(read_series_dir(dir.path()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn matrix_csv_round_trip_is_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let items: Vec<TimeSeries> = (0..6)
            .map(|k| {
                let v: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
                TimeSeries::new(format!("s{k}"), v).unwrap()
            })
            .collect();
        let m = ts_dist(&items, |a, b| dist_cor(a, b, CorrelationMode::Abs, None), 1).unwrap();
        let dir = tmp();
        let path = dir.path().join("dist.csv");
        write_matrix_csv(&path, &m).unwrap();
        let back = read_matrix_csv(&path).unwrap();
        assert_eq!(back, m);
        // writing the reread matrix reproduces the identical bytes
        let path2 = dir.path().join("dist2.csv");
        write_matrix_csv(&path2, &back).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&path2).unwrap());
    }

    #[test]
    fn matrix_csv_validates_structure() {
        let dir = tmp();
        let path = dir.path().join("m.csv");
        fs::write(&path, "a,b\n0,1\n1,0\n").unwrap(); // header misses 'label'
        assert!(matches!(read_matrix_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "label,a,b\nb,0,1\na,1,0\n").unwrap(); // labels out of order
        assert!(matches!(read_matrix_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "label,a,b\na,0,1\n").unwrap(); // missing row
        assert!(matches!(read_matrix_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "label,a,b\na,0,1\nb,2,0\n").unwrap(); // asymmetric
        assert!(matches!(read_matrix_csv(&path), Err(Error::Data { .. })));
    }

    #[test]
    fn part_file_round_trip() {
        let dir = tmp();
        let part = DistancePart {
            part_index: 2,
            total_parts: 5,
            triples: vec![(1, 3, 0.25), (1, 4, 1.75)],
        };
        let path = write_part_csv(dir.path(), &part).unwrap();
        assert_eq!(path.file_name().unwrap(), "part_2_of_5.csv");
        assert_eq!(read_part_csv(&path).unwrap(), part);
        let all = read_parts_dir(dir.path()).unwrap();
        assert_eq!(all, vec![part]);
    }

    #[test]
    fn part_files_sort_by_index_not_name() {
        let dir = tmp();
        for k in [10usize, 2, 1] {
            let part = DistancePart { part_index: k, total_parts: 10, triples: vec![] };
            write_part_csv(dir.path(), &part).unwrap();
        }
        let parts = read_parts_dir(dir.path()).unwrap();
        let order: Vec<usize> = parts.iter().map(|p| p.part_index).collect();
        assert_eq!(order, vec![1, 2, 10]); // lexicographic would give 1, 10, 2
    }

    #[test]
    fn bad_part_files_are_data_errors() {
        let dir = tmp();
        let path = dir.path().join("part_1_of_2.csv");
        fs::write(&path, "i,j\n1,2\n").unwrap();
        assert!(matches!(read_part_csv(&path), Err(Error::Data { .. })));
        fs::write(&path, "i,j,dist\nx,2,0.5\n").unwrap();
        assert!(matches!(read_part_csv(&path), Err(Error::Data { .. })));
        let odd = dir.path().join("slice.csv");
        fs::write(&odd, "i,j,dist\n1,2,0.5\n").unwrap();
        assert!(matches!(read_part_csv(&odd), Err(Error::Data { .. })));
    }
}
