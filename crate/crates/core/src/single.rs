//! Networks from a single time series: bin-transition graphs, visibility
//! graphs (natural and horizontal), recurrence networks over delay
//! embeddings, and proximity networks of sliding windows.

use std::collections::{BTreeMap, BTreeSet};

use crate::dist::SeriesMetric;
use crate::error::{Error, Result};
use crate::matrix::ts_dist;
use crate::net::{NetBuilder, Network};
use crate::series::{discretize, ts_to_windows, BinRule, TimeSeries};

/// Bin-transition network: discretize into `breaks` equal-width bins over
/// `[min, max]` and link bin u → v with weight = number of consecutive
/// transitions u → v. Nodes are the bins that actually occur, labeled by bin
/// index; self-loops count.
///
/// The returned flag is `true` for a constant series, which collapses to a
/// single bin: the result is one node with no edges and the total-weight
/// bookkeeping (sum = T − 1) does not apply.
pub fn tsnet_qn(series: &TimeSeries, breaks: usize) -> Result<(Network, bool)> {
    if breaks < 2 {
        return Err(Error::invalid(format!("breaks must be at least 2, got {breaks}")));
    }
    if series.len() < 2 {
        return Err(Error::invalid("transition networks need at least 2 observations"));
    }
    let coded = discretize(series, BinRule::Fixed(breaks))?;
    if coded.bins == 1 {
        let net = Network::new(vec!["1".to_string()], true, true)?;
        return Ok((net, true));
    }

    let occurring: Vec<usize> = coded.symbols.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index_of: BTreeMap<usize, usize> =
        occurring.iter().enumerate().map(|(idx, &sym)| (sym, idx)).collect();
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for pair in coded.symbols.windows(2) {
        *counts.entry((index_of[&pair[0]], index_of[&pair[1]])).or_insert(0) += 1;
    }

    let labels = occurring.iter().map(|sym| sym.to_string()).collect();
    let mut net = Network::new(labels, true, true)?;
    for ((u, v), c) in counts {
        net.add_edge(u, v, Some(c as f64))?;
    }
    Ok((net, false))
}

/// Which visibility criterion to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VgKind {
    /// Line-of-sight over the bars: (i, j) see each other iff every bar
    /// between them stays strictly below the straight line joining them.
    Natural,
    /// Horizontal line of sight: every bar between them stays strictly
    /// below both endpoint values.
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VgAlgorithm {
    /// Check every pair against every interior point.
    Naive,
    /// Recurse on the running maximum; equal output, near-linearithmic on
    /// typical data.
    DivideConquer,
}

/// Can `i` and `j` (i < j) see each other over the interior bars?
fn visible(values: &[f64], i: usize, j: usize, kind: VgKind) -> bool {
    match kind {
        VgKind::Natural => {
            let slope = (values[j] - values[i]) / (j - i) as f64;
            (i + 1..j).all(|k| values[k] < values[i] + slope * (k - i) as f64)
        }
        VgKind::Horizontal => {
            let cap = values[i].min(values[j]);
            (i + 1..j).all(|k| values[k] < cap)
        }
    }
}

fn vg_naive(values: &[f64], kind: VgKind, limit: usize, workers: usize) -> Vec<(usize, usize)> {
    let n = values.len();
    let per_source: Vec<Vec<(usize, usize)>> = crate::par::map_indexed(n - 1, workers, |i| {
        let hi = (i + limit).min(n - 1);
        (i + 1..=hi).filter(|&j| visible(values, i, j, kind)).map(|j| (i, j)).collect()
    });
    per_source.into_iter().flatten().collect()
}

/// Divide and conquer on the maximum: no line of sight, natural or
/// horizontal, can cross a range maximum (the interpolated line at the
/// maximum's position never exceeds the larger endpoint, and the horizontal
/// cap never exceeds either endpoint), so every edge either touches the
/// maximum — found here with two linear sweeps — or lies entirely on one
/// side — found recursively.
fn vg_divide_conquer(values: &[f64], kind: VgKind, limit: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, values.len() - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if lo >= hi {
            continue;
        }
        let m = (lo..=hi)
            .max_by(|&a, &b| values[a].total_cmp(&values[b]).then(b.cmp(&a)))
            .expect("non-empty range");

        // sweep right of the maximum: the running steepest slope (natural)
        // or running maximum (horizontal) decides visibility in O(1) per
        // candidate.
        match kind {
            VgKind::Natural => {
                let mut steepest = f64::NEG_INFINITY;
                for j in m + 1..=hi {
                    let slope = (values[j] - values[m]) / (j - m) as f64;
                    if slope > steepest {
                        if j - m <= limit {
                            edges.push((m, j));
                        }
                        steepest = slope;
                    }
                }
                let mut steepest = f64::NEG_INFINITY;
                for j in (lo..m).rev() {
                    let slope = (values[j] - values[m]) / (m - j) as f64;
                    if slope > steepest {
                        if m - j <= limit {
                            edges.push((j, m));
                        }
                        steepest = slope;
                    }
                }
            }
            VgKind::Horizontal => {
                let mut tallest = f64::NEG_INFINITY;
                for j in m + 1..=hi {
                    if tallest < values[j].min(values[m]) && j - m <= limit {
                        edges.push((m, j));
                    }
                    tallest = tallest.max(values[j]);
                }
                let mut tallest = f64::NEG_INFINITY;
                for j in (lo..m).rev() {
                    if tallest < values[j].min(values[m]) && m - j <= limit {
                        edges.push((j, m));
                    }
                    tallest = tallest.max(values[j]);
                }
            }
        }

        if m > lo {
            stack.push((lo, m - 1));
        }
        if m < hi {
            stack.push((m + 1, hi));
        }
    }
    edges
}

/// Visibility graph of a series. Nodes are the time indices (1-based
/// labels); `directed` orients every edge from the earlier to the later
/// index; `limit` drops edges spanning more than that many steps. Both
/// algorithms produce the identical edge set.
pub fn tsnet_vg(
    series: &TimeSeries,
    kind: VgKind,
    directed: bool,
    limit: Option<usize>,
    algorithm: VgAlgorithm,
    workers: usize,
) -> Result<Network> {
    if series.len() < 2 {
        return Err(Error::invalid("visibility graphs need at least 2 observations"));
    }
    if limit == Some(0) {
        return Err(Error::invalid("limit must be at least 1"));
    }
    let values = series.values();
    let span_cap = limit.unwrap_or(values.len());
    let mut edges = match algorithm {
        VgAlgorithm::Naive => vg_naive(values, kind, span_cap, workers),
        VgAlgorithm::DivideConquer => vg_divide_conquer(values, kind, span_cap),
    };
    edges.sort_unstable();

    let labels = (1..=values.len()).map(|t| t.to_string()).collect();
    let mut net = Network::new(labels, directed, false)?;
    for (u, v) in edges {
        net.add_edge(u, v, None)?;
    }
    Ok(net)
}

/// Distance used between delay-embedded state vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedMetric {
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl EmbedMetric {
    fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            EmbedMetric::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            EmbedMetric::Manhattan => diffs.sum(),
            EmbedMetric::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// Delay-embedding parameters for recurrence networks: dimension `m`, delay
/// `tau_embed`, the state-space metric, and the recurrence radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingSpec {
    pub m: usize,
    pub tau_embed: usize,
    pub metric: EmbedMetric,
    pub radius: f64,
}

/// Recurrence network: delay-embed the series into state vectors
/// `(x_t, x_{t+τ}, …, x_{t+(m−1)τ})`, link states at metric distance ≤
/// radius, and drop self-loops. Nodes are labeled by the 1-based start index
/// of their state vector.
pub fn tsnet_rn(series: &TimeSeries, spec: &EmbeddingSpec) -> Result<Network> {
    if spec.m < 1 || spec.tau_embed < 1 {
        return Err(Error::invalid("embedding dimension and delay must be at least 1"));
    }
    if spec.radius <= 0.0 || !spec.radius.is_finite() {
        return Err(Error::invalid(format!(
            "recurrence radius must be finite and > 0, got {}",
            spec.radius
        )));
    }
    let t = series.len();
    let span = (spec.m - 1) * spec.tau_embed;
    let needed = span + 2;
    if t < needed {
        return Err(Error::invalid(format!(
            "series of length {t} is too short for m = {}, delay = {}: need at least {needed} \
             observations for 2 state vectors",
            spec.m, spec.tau_embed
        )));
    }
    let count = t - span;
    let values = series.values();
    let states: Vec<Vec<f64>> = (0..count)
        .map(|s| (0..spec.m).map(|d| values[s + d * spec.tau_embed]).collect())
        .collect();

    let labels = (1..=count).map(|s| s.to_string()).collect();
    let mut net = Network::new(labels, false, false)?;
    for i in 0..count {
        for j in i + 1..count {
            if spec.metric.eval(&states[i], &states[j]) <= spec.radius {
                net.add_edge(i, j, None)?;
            }
        }
    }
    Ok(net)
}

/// Proximity network of sliding windows: split the series into windows,
/// compute the pairwise window distances, and apply a network builder.
/// Nodes are labeled by 1-based window start index. A single window (width
/// = length) yields a one-node empty network without invoking the builder,
/// since there are no pairs to compare.
pub fn tsnet_windows(
    series: &TimeSeries,
    width: usize,
    step: usize,
    metric: &SeriesMetric,
    builder: &NetBuilder,
    workers: usize,
) -> Result<Network> {
    let windows = ts_to_windows(series, width, step)?;
    if windows.len() == 1 {
        return Network::new(vec![windows.windows()[0].id().to_string()], false, false);
    }
    let d = ts_dist(windows.windows(), |x, y| metric.eval(x, y), workers)?;
    builder.build(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::CorrelationMode;
    use rand::{Rng, SeedableRng};

    fn ts(values: &[f64]) -> TimeSeries {
        TimeSeries::new("x", values.to_vec()).unwrap()
    }

    fn edge_set(net: &Network) -> Vec<(usize, usize)> {
        net.edges().map(|(u, v, _)| (u, v)).collect()
    }

    // -- transition networks ------------------------------------------------

    #[test]
    fn qn_counts_the_five_transitions_of_a_cycle() {
        let (net, degenerate) = tsnet_qn(&ts(&[1.0, 2.0, 3.0, 1.0, 2.0, 3.0]), 3).unwrap();
        assert!(!degenerate);
        assert!(net.is_directed() && net.is_weighted());
        assert_eq!(net.labels(), ["1", "2", "3"]);
        assert_eq!(net.weight(0, 1), Some(2.0)); // 1 -> 2 twice
        assert_eq!(net.weight(1, 2), Some(2.0)); // 2 -> 3 twice
        assert_eq!(net.weight(2, 0), Some(1.0)); // 3 -> 1 once
        assert_eq!(net.edge_count(), 3);
        let p = net.out_probabilities().unwrap();
        let mut row_sums: BTreeMap<usize, f64> = BTreeMap::new();
        for ((u, _), prob) in p {
            *row_sums.entry(u).or_insert(0.0) += prob;
        }
        for (_, sum) in row_sums {
            approx::assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn qn_strictly_increasing_series_is_a_path() {
        let values: Vec<f64> = (1..=6).map(|v| v as f64).collect();
        let (net, degenerate) = tsnet_qn(&ts(&values), 6).unwrap();
        assert!(!degenerate);
        assert_eq!(net.edge_count(), 5);
        for u in 0..5 {
            assert_eq!(net.weight(u, u + 1), Some(1.0));
        }
    }

    #[test]
    fn qn_constant_series_collapses_with_a_warning() {
        let (net, degenerate) = tsnet_qn(&ts(&[4.0; 10]), 5).unwrap();
        assert!(degenerate);
        assert_eq!(net.n(), 1);
        assert_eq!(net.edge_count(), 0);
    }

    #[test]
    fn qn_total_weight_is_transition_count() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = rng.gen_range(2..200);
            let values: Vec<f64> = (0..t).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let (net, degenerate) = tsnet_qn(&ts(&values), rng.gen_range(2..30)).unwrap();
            assert!(!degenerate);
            let total: f64 = net.edges().map(|(_, _, w)| w.unwrap()).sum();
            assert_eq!(total, (t - 1) as f64);
        }
    }

    #[test]
    fn qn_skips_empty_bins_in_the_node_set() {
        // values land in bins 1 and 10 only
        let (net, _) = tsnet_qn(&ts(&[0.0, 10.0, 0.0]), 10).unwrap();
        assert_eq!(net.labels(), ["1", "10"]);
        assert_eq!(net.weight(0, 1), Some(1.0));
        assert_eq!(net.weight(1, 0), Some(1.0));
    }

    #[test]
    fn qn_validates_parameters() {
        assert!(tsnet_qn(&ts(&[1.0, 2.0]), 1).is_err());
        assert!(tsnet_qn(&ts(&[1.0]), 3).is_err());
    }

    // -- visibility graphs --------------------------------------------------

    #[test]
    fn nvg_collinear_points_see_only_neighbors() {
        let net =
            tsnet_vg(&ts(&[1.0, 2.0, 3.0]), VgKind::Natural, false, None, VgAlgorithm::Naive, 1)
                .unwrap();
        assert_eq!(edge_set(&net), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn nvg_dip_creates_the_triangle() {
        let net =
            tsnet_vg(&ts(&[3.0, 1.0, 2.0]), VgKind::Natural, false, None, VgAlgorithm::Naive, 1)
                .unwrap();
        assert_eq!(edge_set(&net), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn hvg_worked_example() {
        let net = tsnet_vg(
            &ts(&[1.0, 3.0, 2.0, 4.0]),
            VgKind::Horizontal,
            false,
            None,
            VgAlgorithm::Naive,
            1,
        )
        .unwrap();
        assert_eq!(edge_set(&net), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn monotone_series_hvg_is_the_path_graph() {
        let values: Vec<f64> = (0..50).map(|v| (v as f64).exp().min(1e300)).collect();
        let net =
            tsnet_vg(&ts(&values), VgKind::Horizontal, false, None, VgAlgorithm::Naive, 1).unwrap();
        let expected: Vec<(usize, usize)> = (0..49).map(|i| (i, i + 1)).collect();
        assert_eq!(edge_set(&net), expected);
    }

    #[test]
    fn consecutive_indices_always_linked() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for kind in [VgKind::Natural, VgKind::Horizontal] {
            let values: Vec<f64> = (0..100).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let net = tsnet_vg(&ts(&values), kind, false, None, VgAlgorithm::DivideConquer, 1)
                .unwrap();
            for i in 0..99 {
                assert!(net.has_edge(i, i + 1));
            }
        }
    }

    #[test]
    fn divide_conquer_matches_naive_and_hvg_nests_in_nvg() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for round in 0..200 {
            let t = rng.gen_range(2..=256);
            let values: Vec<f64> = (0..t)
                .map(|_| {
                    // ties included deliberately: discrete levels half the time
                    if rng.gen_bool(0.5) {
                        rng.gen_range(0..6) as f64
                    } else {
                        rng.gen_range(-1.0..1.0)
                    }
                })
                .collect();
            let series = ts(&values);
            let nvg_naive =
                tsnet_vg(&series, VgKind::Natural, false, None, VgAlgorithm::Naive, 1).unwrap();
            let nvg_dc =
                tsnet_vg(&series, VgKind::Natural, false, None, VgAlgorithm::DivideConquer, 1)
                    .unwrap();
            assert_eq!(nvg_naive, nvg_dc, "NVG mismatch in round {round}");
            let hvg_naive =
                tsnet_vg(&series, VgKind::Horizontal, false, None, VgAlgorithm::Naive, 1).unwrap();
            let hvg_dc =
                tsnet_vg(&series, VgKind::Horizontal, false, None, VgAlgorithm::DivideConquer, 1)
                    .unwrap();
            assert_eq!(hvg_naive, hvg_dc, "HVG mismatch in round {round}");
            for (u, v, _) in hvg_naive.edges() {
                assert!(nvg_naive.has_edge(u, v), "HVG edge ({u},{v}) missing from NVG");
            }
        }
    }

    #[test]
    fn limit_filters_by_span() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
        let values: Vec<f64> = (0..120).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let series = ts(&values);
        for kind in [VgKind::Natural, VgKind::Horizontal] {
            for algorithm in [VgAlgorithm::Naive, VgAlgorithm::DivideConquer] {
                let full = tsnet_vg(&series, kind, false, None, algorithm, 1).unwrap();
                let limited = tsnet_vg(&series, kind, false, Some(5), algorithm, 1).unwrap();
                let expected: Vec<(usize, usize)> =
                    edge_set(&full).into_iter().filter(|&(u, v)| v - u <= 5).collect();
                assert_eq!(edge_set(&limited), expected);
                assert!(edge_set(&limited).iter().all(|&(u, v)| v - u <= 5));
            }
        }
        assert!(tsnet_vg(&series, VgKind::Natural, false, Some(0), VgAlgorithm::Naive, 1).is_err());
    }

    #[test]
    fn directed_vg_orients_earlier_to_later() {
        let net =
            tsnet_vg(&ts(&[3.0, 1.0, 2.0]), VgKind::Natural, true, None, VgAlgorithm::Naive, 1)
                .unwrap();
        assert!(net.is_directed());
        assert!(net.has_edge(0, 2) && !net.has_edge(2, 0));
    }

    #[test]
    fn vg_is_worker_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        let values: Vec<f64> = (0..300).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let series = ts(&values);
        let one = tsnet_vg(&series, VgKind::Natural, false, None, VgAlgorithm::Naive, 1).unwrap();
        let eight = tsnet_vg(&series, VgKind::Natural, false, None, VgAlgorithm::Naive, 8).unwrap();
        assert_eq!(one, eight);
    }

    // -- recurrence networks ------------------------------------------------

    #[test]
    fn rn_constant_series_is_complete() {
        let spec =
            EmbeddingSpec { m: 1, tau_embed: 1, metric: EmbedMetric::Euclidean, radius: 0.5 };
        let net = tsnet_rn(&ts(&[2.0; 5]), &spec).unwrap();
        assert_eq!(net.n(), 5);
        assert_eq!(net.edge_count(), 10);
    }

    #[test]
    fn rn_square_wave_pairs_equal_phases() {
        let spec =
            EmbeddingSpec { m: 1, tau_embed: 1, metric: EmbedMetric::Euclidean, radius: 1.0 };
        let net = tsnet_rn(&ts(&[0.0, 10.0, 0.0, 10.0]), &spec).unwrap();
        assert_eq!(edge_set(&net), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn rn_tiny_radius_gives_empty_graph() {
        let spec =
            EmbeddingSpec { m: 2, tau_embed: 1, metric: EmbedMetric::Manhattan, radius: 1e-6 };
        let net = tsnet_rn(&ts(&[1.0, 5.0, 2.0, 8.0, 3.0]), &spec).unwrap();
        assert_eq!(net.edge_count(), 0);
        assert_eq!(net.n(), 4, "T - (m-1)*tau states");
    }

    #[test]
    fn rn_edge_count_is_monotone_in_radius() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let values: Vec<f64> = (0..60).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for metric in [EmbedMetric::Euclidean, EmbedMetric::Manhattan, EmbedMetric::Chebyshev] {
            let mut last = 0usize;
            for radius in [0.5, 1.0, 2.0] {
                let spec = EmbeddingSpec { m: 3, tau_embed: 2, metric, radius };
                let net = tsnet_rn(&ts(&values), &spec).unwrap();
                assert!(net.edge_count() >= last);
                last = net.edge_count();
            }
        }
    }

    #[test]
    fn rn_metrics_order_on_a_known_pair() {
        // states (0,0) and (3,4): euclidean 5, manhattan 7, chebyshev 4
        let series = ts(&[0.0, 3.0, 0.0, 4.0]);
        let base = EmbeddingSpec {
            m: 2,
            tau_embed: 2,
            metric: EmbedMetric::Euclidean,
            radius: 4.5,
        };
        // two states: (x1, x3) = (0, 0) and (x2, x4) = (3, 4)
        let eucl = tsnet_rn(&series, &base).unwrap();
        assert_eq!(eucl.edge_count(), 0, "euclidean 5 > 4.5");
        let manh = tsnet_rn(&series, &EmbeddingSpec { metric: EmbedMetric::Manhattan, ..base })
            .unwrap();
        assert_eq!(manh.edge_count(), 0, "manhattan 7 > 4.5");
        let cheb = tsnet_rn(&series, &EmbeddingSpec { metric: EmbedMetric::Chebyshev, ..base })
            .unwrap();
        assert_eq!(cheb.edge_count(), 1, "chebyshev 4 <= 4.5");
    }

    #[test]
    fn rn_too_short_series_reports_the_required_minimum() {
        let spec =
            EmbeddingSpec { m: 4, tau_embed: 3, metric: EmbedMetric::Euclidean, radius: 1.0 };
        let err = tsnet_rn(&ts(&[1.0, 2.0, 3.0, 4.0, 5.0]), &spec).unwrap_err();
        assert!(err.to_string().contains("11"), "need (m-1)*tau + 2 = 11: {err}");
        assert!(tsnet_rn(
            &ts(&[1.0, 2.0]),
            &EmbeddingSpec { m: 0, tau_embed: 1, metric: EmbedMetric::Euclidean, radius: 1.0 }
        )
        .is_err());
        assert!(tsnet_rn(
            &ts(&[1.0, 2.0]),
            &EmbeddingSpec { m: 1, tau_embed: 1, metric: EmbedMetric::Euclidean, radius: 0.0 }
        )
        .is_err());
    }

    // -- window proximity networks -------------------------------------------

    #[test]
    fn windows_full_width_is_a_single_isolated_node() {
        let series = ts(&[1.0, 2.0, 3.0, 4.0]);
        let metric = SeriesMetric::Dtw;
        let builder = NetBuilder::Enn { eps: 1.0 };
        let net = tsnet_windows(&series, 4, 1, &metric, &builder, 1).unwrap();
        assert_eq!(net.n(), 1);
        assert_eq!(net.labels(), ["1"]);
        assert_eq!(net.edge_count(), 0);
    }

    #[test]
    fn windows_same_phase_windows_cluster() {
        // period-4 series; non-overlapping windows of one period each are
        // identical, so their pairwise correlation distance is 0.
        let t = 24;
        let values: Vec<f64> =
            (0..t).map(|k| [0.0, 1.0, 0.5, -1.0][k % 4]).collect();
        let metric = SeriesMetric::Cor { mode: CorrelationMode::Pos, fisher: None };
        let builder = NetBuilder::Enn { eps: 1e-9 };
        let net = tsnet_windows(&ts(&values), 4, 4, &metric, &builder, 1).unwrap();
        assert_eq!(net.n(), 6);
        assert_eq!(net.labels(), ["1", "5", "9", "13", "17", "21"]);
        assert_eq!(net.edge_count(), 15, "all windows mutually linked");
    }

    #[test]
    fn windows_step_controls_node_count() {
        let values: Vec<f64> = (0..10).map(|k| (k as f64).sin()).collect();
        let metric = SeriesMetric::Dtw;
        let builder = NetBuilder::Enn { eps: 1e9 };
        let by_one = tsnet_windows(&ts(&values), 4, 1, &metric, &builder, 1).unwrap();
        assert_eq!(by_one.n(), 7);
        let by_three = tsnet_windows(&ts(&values), 4, 3, &metric, &builder, 1).unwrap();
        assert_eq!(by_three.n(), 3);
    }

    #[test]
    fn windows_propagate_kernel_errors() {
        // one window is constant -> correlation kernel failure
        let values = vec![1.0, 2.0, 3.0, 5.0, 5.0, 5.0];
        let metric = SeriesMetric::Cor { mode: CorrelationMode::Abs, fisher: None };
        let builder = NetBuilder::Enn { eps: 0.5 };
        let err = tsnet_windows(&ts(&values), 3, 3, &metric, &builder, 1).unwrap_err();
        assert!(matches!(err, Error::KernelFailure { .. }));
    }
}
