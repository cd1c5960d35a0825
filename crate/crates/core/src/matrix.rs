//! Symmetric distance matrices over labeled items, computed whole, in
//! partition slices (for job arrays), or streamed from files.
//!
//! The canonical pair order is the upper triangle `(i, j)` with `i < j`,
//! sorted by `(i, j)`. Partitioning splits that list into `total_parts`
//! contiguous chunks whose sizes differ by at most one: with `P` pairs,
//! every part gets `floor(P / total_parts)` and the first `P mod
//! total_parts` parts get one extra.

use std::path::Path;

use crate::dist::EventMetric;
use crate::error::{Error, Result};
use crate::io;
use crate::par;
use crate::series::{EventSeries, TimeSeries};
use crate::stats;

/// Anything that can name itself in a distance matrix.
pub trait Labeled {
    fn label(&self) -> &str;
}

impl Labeled for TimeSeries {
    fn label(&self) -> &str {
        self.id()
    }
}

impl Labeled for EventSeries {
    fn label(&self) -> &str {
        self.id()
    }
}

/// A labeled, symmetric, zero-diagonal matrix of non-negative finite
/// distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<f64>, // row-major n*n
}

impl DistanceMatrix {
    /// Validate and wrap a full row-major value buffer.
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if values.len() != n * n {
            return Err(Error::invalid(format!(
                "matrix buffer has {} entries, expected {n}x{n}",
                values.len()
            )));
        }
        check_unique_labels(&labels)?;
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::data(format!(
                    "distance matrix diagonal must be zero (row {})",
                    i + 1
                )));
            }
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::data(format!(
                        "distance matrix entry ({}, {}) is {v}, expected finite and >= 0",
                        i + 1,
                        j + 1
                    )));
                }
                if values[j * n + i] != v {
                    return Err(Error::data(format!(
                        "distance matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { labels, values })
    }

    /// An all-zero matrix over `labels`, ready to be filled with
    /// [`DistanceMatrix::set_sym`].
    pub fn zero(labels: Vec<String>) -> Result<Self> {
        check_unique_labels(&labels)?;
        let n = labels.len();
        Ok(Self { labels, values: vec![0.0; n * n] })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }

    /// Set one off-diagonal entry and its mirror.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n || i == j {
            return Err(Error::invalid(format!(
                "set_sym needs two distinct indices below {n}, got ({i}, {j})"
            )));
        }
        if !v.is_finite() || v < 0.0 {
            return Err(Error::invalid(format!("distances must be finite and >= 0, got {v}")));
        }
        self.set_sym_raw(i, j, v);
        Ok(())
    }

    fn set_sym_raw(&mut self, i: usize, j: usize, v: f64) {
        let n = self.n();
        self.values[i * n + j] = v;
        self.values[j * n + i] = v;
    }

    /// Upper-triangle entries in canonical order: `(i, j, d)` with `i < j`,
    /// 0-based.
    pub fn upper_triangle(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Min-max normalize the off-diagonal entries into [0, 1].
    ///
    /// When all off-diagonal entries are equal there is no scale to recover;
    /// the result is all-zeros off the diagonal and the `degenerate` flag is
    /// set so callers can warn.
    pub fn normalize(&self) -> (DistanceMatrix, bool) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (_, _, d) in self.upper_triangle() {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        let mut out = DistanceMatrix::zero(self.labels.clone()).expect("labels already validated");
        if hi <= lo {
            return (out, true);
        }
        let scale = hi - lo;
        for i in 0..n {
            for j in i + 1..n {
                out.set_sym_raw(i, j, (self.get(i, j) - lo) / scale);
            }
        }
        (out, false)
    }
}

fn check_unique_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::invalid(format!("duplicate series id '{l}'")));
        }
    }
    Ok(())
}

/// The interpolated `p`-quantile (0 < p < 1) of the off-diagonal distances.
/// Useful for turning a density target into an epsilon threshold.
pub fn dist_percentile(matrix: &DistanceMatrix, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("percentile must lie strictly in (0, 1), got {p}")));
    }
    let mut values: Vec<f64> = matrix.upper_triangle().map(|(_, _, d)| d).collect();
    if values.is_empty() {
        return Err(Error::invalid("matrix has no off-diagonal entries"));
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(stats::quantile_sorted(&values, p))
}

/// Min-max normalization as a free function, mirroring [`DistanceMatrix::normalize`].
pub fn dist_matrix_normalize(matrix: &DistanceMatrix) -> (DistanceMatrix, bool) {
    matrix.normalize()
}

/// One partition slice of a pairwise computation: the canonical pairs of
/// `(part_index, total_parts)` with their distances. Indices are 1-based,
/// matching the part file format.
#[derive(Debug, Clone, PartialEq)]
pub struct DistancePart {
    pub part_index: usize,
    pub total_parts: usize,
    pub triples: Vec<(usize, usize, f64)>,
}

/// 0-based canonical pair list for `n` items.
pub(crate) fn canonical_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Offsets `[start, end)` into the canonical pair list for one part.
/// The half-open canonical-pair range `[start, end)` covered by one part.
pub fn part_bounds(total_pairs: usize, part_index: usize, total_parts: usize) -> Result<(usize, usize)> {
    if total_parts == 0 {
        return Err(Error::invalid("total_parts must be >= 1"));
    }
    if part_index == 0 || part_index > total_parts {
        return Err(Error::invalid(format!(
            "part_index must lie in [1, {total_parts}], got {part_index}"
        )));
    }
    let base = total_pairs / total_parts;
    let rem = total_pairs % total_parts;
    let k = part_index - 1; // 0-based
    let start = k * base + k.min(rem);
    let size = base + usize::from(k < rem);
    Ok((start, start + size))
}

fn check_item_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("pairwise distances need at least 2 series, got {n}")));
    }
    Ok(())
}

fn checked_distance(d: Result<f64>, i: usize, j: usize) -> Result<f64> {
    let wrap = |source: Error| Error::KernelFailure { i: i + 1, j: j + 1, source: Box::new(source) };
    let d = d.map_err(wrap)?;
    if !d.is_finite() || d < 0.0 {
        return Err(wrap(Error::data(format!("kernel produced invalid distance {d}"))));
    }
    Ok(d)
}

/// Compute the full distance matrix of `items` under the kernel `f`,
/// fanning the canonical pair list out over `workers` threads.
///
/// Results are bit-identical for every worker count: each pair is computed
/// independently and written to its own slot, and error reporting scans
/// pairs in canonical order so the first failing pair wins deterministically.
pub fn ts_dist<T, F>(items: &[T], f: F, workers: usize) -> Result<DistanceMatrix>
where
    T: Labeled + Sync,
    F: Fn(&T, &T) -> Result<f64> + Sync,
{
    check_item_count(items.len())?;
    let labels: Vec<String> = items.iter().map(|s| s.label().to_string()).collect();
    let mut matrix = DistanceMatrix::zero(labels)?;
    let pairs = canonical_pairs(items.len());
    let results = par::map_indexed(pairs.len(), workers, |p| {
        let (i, j) = pairs[p];
        f(&items[i], &items[j])
    });
    for ((i, j), d) in pairs.into_iter().zip(results) {
        matrix.set_sym_raw(i, j, checked_distance(d, i, j)?);
    }
    Ok(matrix)
}

/// Compute one partition slice of the canonical pair list (single-threaded;
/// meant to run as one job of a batch array).
pub fn ts_dist_part<T, F>(items: &[T], f: F, part_index: usize, total_parts: usize) -> Result<DistancePart>
where
    T: Labeled,
    F: Fn(&T, &T) -> Result<f64>,
{
    check_item_count(items.len())?;
    let pairs = canonical_pairs(items.len());
    let (start, end) = part_bounds(pairs.len(), part_index, total_parts)?;
    let mut triples = Vec::with_capacity(end - start);
    for &(i, j) in &pairs[start..end] {
        let d = checked_distance(f(&items[i], &items[j]), i, j)?;
        triples.push((i + 1, j + 1, d));
    }
    Ok(DistancePart { part_index, total_parts, triples })
}

/// Like [`ts_dist_part`] but reading series lazily from a directory of
/// single-series CSV files (lexicographic filename order defines the
/// indices). At most two series are resident at a time, so arbitrarily
/// many series fit in constant memory.
pub fn ts_dist_part_file<F>(
    dir: &Path,
    f: F,
    part_index: usize,
    total_parts: usize,
) -> Result<DistancePart>
where
    F: Fn(&TimeSeries, &TimeSeries) -> Result<f64>,
{
    let files = io::list_series_dir(dir)?;
    check_item_count(files.len())?;
    let pairs = canonical_pairs(files.len());
    let (start, end) = part_bounds(pairs.len(), part_index, total_parts)?;
    let mut triples = Vec::with_capacity(end - start);
    let mut cached: Option<(usize, TimeSeries)> = None;
    for &(i, j) in &pairs[start..end] {
        if cached.as_ref().map(|(k, _)| *k) != Some(i) {
            cached = Some((i, io::read_single_series_file(&files[i].1, &files[i].0)?));
        }
        let left = &cached.as_ref().expect("just cached").1;
        let right = io::read_single_series_file(&files[j].1, &files[j].0)?;
        let d = checked_distance(f(left, &right), i, j)?;
        triples.push((i + 1, j + 1, d));
    }
    Ok(DistancePart { part_index, total_parts, triples })
}

/// Reassemble a full matrix from partition slices.
///
/// Every canonical pair must be covered exactly once; duplicates carrying
/// the identical value are tolerated (a rerun of the same part), diverging
/// duplicates are a conflict, and uncovered pairs abort with the sorted gap
/// list.
pub fn dist_parts_merge(parts: &[DistancePart], labels: Vec<String>) -> Result<DistanceMatrix> {
    let n = labels.len();
    check_item_count(n)?;
    let mut matrix = DistanceMatrix::zero(labels)?;
    let mut seen = vec![false; n * n];
    for part in parts {
        for &(i, j, d) in &part.triples {
            if i == 0 || j == 0 || i >= j || j > n {
                return Err(Error::data(format!(
                    "part {} holds pair ({i}, {j}) outside the upper triangle of a {n}x{n} matrix",
                    part.part_index
                )));
            }
            if !d.is_finite() || d < 0.0 {
                return Err(Error::data(format!(
                    "part {} holds invalid distance {d} for pair ({i}, {j})",
                    part.part_index
                )));
            }
            let (a, b) = (i - 1, j - 1);
            if seen[a * n + b] {
                let existing = matrix.get(a, b);
                if existing != d {
                    return Err(Error::MergeConflict { i, j, a: existing, b: d });
                }
            } else {
                seen[a * n + b] = true;
                matrix.set_sym_raw(a, b, d);
            }
        }
    }
    let missing: Vec<(usize, usize)> = canonical_pairs(n)
        .into_iter()
        .filter(|&(i, j)| !seen[i * n + j])
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteMerge { missing });
    }
    Ok(matrix)
}

/// Distance matrix over event series. Unlike the generic [`ts_dist`] this
/// front door can see the metric's parameters, so it rejects asymmetric
/// event synchronization, which cannot fill a symmetric matrix.
pub fn event_dist(items: &[EventSeries], metric: &EventMetric, workers: usize) -> Result<DistanceMatrix> {
    if !metric.is_symmetric() {
        return Err(Error::AsymmetricKernel);
    }
    ts_dist(items, |a, b| metric.eval(a, b), workers)
}
