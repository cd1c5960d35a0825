//! Validated time-series containers and the elementary transforms on them:
//! sliding windows, percentile-based event extraction and discretization.
//!
//! All user-visible indices (event times, window starts, bin ids) are
//! 1-based; internal vector offsets stay 0-based.

use crate::error::{Error, Result};
use crate::stats;

/// An identified, finite, non-empty sequence of observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    id: String,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Build a series after validating that it is non-empty and every value
    /// is finite. The id must be printable in CSV/TSV/XML output, so commas,
    /// quotes, tabs and newlines are rejected.
    pub fn new(id: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let id = id.into();
        validate_label(&id)?;
        if values.is_empty() {
            return Err(Error::invalid(format!("series '{id}' has no values")));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::data(format!(
                "series '{id}' has a non-finite value at position {}",
                pos + 1
            )));
        }
        Ok(Self { id, values })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // `new` rejects empty value vectors
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// A point process on a discrete time axis: strictly increasing event times
/// in `[1, horizon]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSeries {
    id: String,
    horizon: usize,
    times: Vec<usize>,
}

impl EventSeries {
    pub fn new(id: impl Into<String>, horizon: usize, times: Vec<usize>) -> Result<Self> {
        let id = id.into();
        validate_label(&id)?;
        if horizon == 0 {
            return Err(Error::invalid(format!("event series '{id}': horizon must be >= 1")));
        }
        for pair in times.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::invalid(format!(
                    "event series '{id}': times must be strictly increasing ({} then {})",
                    pair[0], pair[1]
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (times.first(), times.last()) {
            if first < 1 || last > horizon {
                return Err(Error::invalid(format!(
                    "event series '{id}': times must lie in [1, {horizon}]"
                )));
            }
        }
        Ok(Self { id, horizon, times })
    }

    /// Interpret a 0/1 indicator vector: events sit where the flag is set,
    /// the horizon is the vector length.
    pub fn from_indicator(id: impl Into<String>, indicator: &[bool]) -> Result<Self> {
        let times = indicator
            .iter()
            .enumerate()
            .filter_map(|(i, &on)| on.then_some(i + 1))
            .collect();
        Self::new(id, indicator.len(), times)
    }

    /// The dual binary view: a vector of length `horizon` with ones at event
    /// times.
    pub fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.horizon];
        for &t in &self.times {
            v[t - 1] = true;
        }
        v
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Event times, 1-based, strictly increasing.
    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub fn count(&self) -> usize {
        self.times.len()
    }
}

/// The windows cut from one series, each carrying its 1-based start index as
/// its id.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSet {
    source_id: String,
    width: usize,
    step: usize,
    windows: Vec<TimeSeries>,
}

impl WindowSet {
    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn windows(&self) -> &[TimeSeries] {
        &self.windows
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }
}

/// Cut `series` into overlapping windows of `width` values advancing by
/// `step`. Produces `floor((T - width) / step) + 1` windows; a window count
/// of zero (width > T) is an error so downstream matrix code never sees an
/// empty set.
pub fn ts_to_windows(series: &TimeSeries, width: usize, step: usize) -> Result<WindowSet> {
    if width == 0 || step == 0 {
        return Err(Error::invalid("window width and step must be >= 1"));
    }
    let t = series.len();
    if width > t {
        return Err(Error::EmptyWindowSet { width, len: t });
    }
    let count = (t - width) / step + 1;
    let mut windows = Vec::with_capacity(count);
    for k in 0..count {
        let start = k * step; // 0-based offset
        let values = series.values()[start..start + width].to_vec();
        windows.push(TimeSeries::new((start + 1).to_string(), values)?);
    }
    Ok(WindowSet { source_id: series.id().to_string(), width, step, windows })
}

/// Which tail of the value distribution becomes events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventDirection {
    Highest,
    Lowest,
}

/// Mark the most extreme fraction `percentile` of observations as events.
///
/// The threshold is the k-th largest (or smallest) value with
/// `k = ceil(percentile * T)`, and every observation tied with the threshold
/// is included. On distinct values this yields exactly `k` events; ties can
/// only add more. Returned times are sorted and 1-based.
pub fn events_from_ts(
    series: &TimeSeries,
    percentile: f64,
    direction: EventDirection,
) -> Result<EventSeries> {
    if !(percentile > 0.0 && percentile < 1.0) {
        return Err(Error::invalid(format!(
            "event percentile must lie strictly between 0 and 1, got {percentile}"
        )));
    }
    let t = series.len();
    let k = stats::ceil_fraction(percentile, t);
    let mut sorted = series.values().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let times: Vec<usize> = match direction {
        EventDirection::Highest => {
            let threshold = sorted[t - k];
            series
                .values()
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (v >= threshold).then_some(i + 1))
                .collect()
        }
        EventDirection::Lowest => {
            let threshold = sorted[k - 1];
            series
                .values()
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (v <= threshold).then_some(i + 1))
                .collect()
        }
    };
    EventSeries::new(series.id(), t, times)
}

/// Bin-count rules for discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinRule {
    /// `ceil(log2 T) + 1` bins.
    Sturges,
    /// Bin width `3.49 * sd * T^(-1/3)`.
    Scott,
    /// Bin width `2 * IQR * T^(-1/3)` (Freedman-Diaconis).
    FreedmanDiaconis,
    Fixed(usize),
}

/// Discretization result: 1-based bin ids per observation plus the number of
/// bins actually used to span the range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discretized {
    pub symbols: Vec<usize>,
    pub bins: usize,
}

/// Map each observation to an equal-width bin spanning `[min, max]`.
///
/// The maximum value falls in the last bin. A zero range (constant series)
/// collapses to a single bin whatever the rule; the width-based rules also
/// fall back to one bin when their formula yields a zero width.
pub fn discretize(series: &TimeSeries, rule: BinRule) -> Result<Discretized> {
    let t = series.len();
    let values = series.values();
    if t < 2 && !matches!(rule, BinRule::Fixed(_)) {
        return Err(Error::invalid("data-driven bin rules need at least 2 observations"));
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;

    let bins = match rule {
        BinRule::Fixed(b) => {
            if b == 0 {
                return Err(Error::invalid("fixed bin count must be >= 1"));
            }
            b
        }
        BinRule::Sturges => (t as f64).log2().ceil() as usize + 1,
        BinRule::Scott => {
            let h = 3.49 * stats::sample_sd(values) * (t as f64).powf(-1.0 / 3.0);
            width_to_bins(range, h)
        }
        BinRule::FreedmanDiaconis => {
            let mut sorted = values.to_vec();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let iqr = stats::quantile_sorted(&sorted, 0.75) - stats::quantile_sorted(&sorted, 0.25);
            let h = 2.0 * iqr * (t as f64).powf(-1.0 / 3.0);
            width_to_bins(range, h)
        }
    };

    if range == 0.0 {
        return Ok(Discretized { symbols: vec![1; t], bins: 1 });
    }

    let bin_width = range / bins as f64;
    let symbols = values
        .iter()
        .map(|&v| {
            let idx = ((v - min) / bin_width).floor() as usize + 1;
            idx.min(bins) // the max value (and float edge cases) land in the last bin
        })
        .collect();
    Ok(Discretized { symbols, bins })
}

fn width_to_bins(range: f64, h: f64) -> usize {
    if h <= 0.0 || range == 0.0 {
        1
    } else {
        ((range / h).ceil() as usize).max(1)
    }
}

pub(crate) fn validate_label(id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::invalid("series id must not be empty"));
    }
    if id.chars().any(|c| c == ',' || c == '"' || c == '\t' || c == '\n' || c == '\r') {
        return Err(Error::invalid(format!(
            "series id '{id}' contains characters reserved by the file formats"
        )));
    }
    Ok(())
}
