//! Network construction from distance matrices.
//!
//! Four builders cover the proximity-network family: k-nearest-neighbor
//! graphs, fixed-radius (ε) graphs, fully weighted complements of a
//! normalized matrix, and binary significance graphs. [`temporal_net`]
//! lifts any of them over a sliding window, one network layer per window.

use std::collections::{BTreeMap, BTreeSet};

use crate::dist::SeriesMetric;
use crate::error::{Error, Result};
use crate::matrix::{ts_dist, DistanceMatrix};
use crate::series::{validate_label, TimeSeries};

/// A graph over labeled nodes. Undirected edges are stored canonically as
/// `(min, max)`; directed edges as `(source, target)`. Self-loops are only
/// representable in directed networks (transition networks need them).
/// Either every edge carries a weight or none does.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    labels: Vec<String>,
    directed: bool,
    weighted: bool,
    edges: BTreeMap<(usize, usize), f64>,
}

impl Network {
    /// An empty network over `labels`. Labels must be unique, non-empty and
    /// free of separator characters.
    pub fn new(
        labels: Vec<String>,
        directed: bool,
        weighted: bool,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            validate_label(l)?;
            if !seen.insert(l.clone()) {
                return Err(Error::invalid(format!("duplicate node label '{l}'")));
            }
        }
        Ok(Network { labels, directed, weighted, edges: BTreeMap::new() })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn key(&self, u: usize, v: usize) -> (usize, usize) {
        if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    fn check_node(&self, u: usize) -> Result<()> {
        if u >= self.n() {
            return Err(Error::invalid(format!(
                "node index {u} out of range for {} nodes",
                self.n()
            )));
        }
        Ok(())
    }

    /// Insert an edge. `weight` must be `Some` exactly when the network is
    /// weighted. Re-inserting an existing edge is rejected — builders are
    /// expected to aggregate before inserting.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Option<f64>) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v && !self.directed {
            return Err(Error::invalid("self-loops are only allowed in directed networks"));
        }
        match (self.weighted, weight) {
            (true, Some(w)) if w.is_finite() => {}
            (false, None) => {}
            (true, _) => return Err(Error::invalid("weighted network needs a finite edge weight")),
            (false, Some(_)) => {
                return Err(Error::invalid("unweighted network cannot carry edge weights"))
            }
        }
        let key = self.key(u, v);
        if self.edges.insert(key, weight.unwrap_or(1.0)).is_some() {
            return Err(Error::invalid(format!(
                "edge ({}, {}) inserted twice",
                self.labels[key.0], self.labels[key.1]
            )));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.edges.contains_key(&self.key(u, v))
    }

    /// The weight of an edge, `None` if absent. Unweighted edges read as 1.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        self.edges.get(&self.key(u, v)).copied()
    }

    /// Edges in deterministic (sorted-key) order as `(u, v, weight)`, with
    /// `weight = None` on unweighted networks.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Option<f64>)> + '_ {
        self.edges
            .iter()
            .map(move |(&(u, v), &w)| (u, v, self.weighted.then_some(w)))
    }

    /// Per-edge transition probabilities: each directed edge weight divided
    /// by the total outgoing weight of its source node. Only meaningful for
    /// directed weighted networks.
    pub fn out_probabilities(&self) -> Result<BTreeMap<(usize, usize), f64>> {
        if !self.directed || !self.weighted {
            return Err(Error::invalid(
                "transition probabilities need a directed weighted network",
            ));
        }
        let mut out_sum = vec![0.0f64; self.n()];
        for (&(u, _), &w) in &self.edges {
            out_sum[u] += w;
        }
        Ok(self
            .edges
            .iter()
            .map(|(&(u, v), &w)| ((u, v), w / out_sum[u]))
            .collect())
    }
}

/// Link every node to its `k` nearest others; ties broken toward the lower
/// node index. The result is the undirected union of the per-node
/// selections, so degrees may exceed `k`.
pub fn net_knn(d: &DistanceMatrix, k: usize) -> Result<Network> {
    let n = d.n();
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k >= n {
        return Err(Error::invalid(format!(
            "k = {k} needs at least k + 1 = {} nodes, matrix has {n}",
            k + 1
        )));
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..n {
        let mut others: Vec<(f64, usize)> =
            (0..n).filter(|&j| j != i).map(|j| (d.get(i, j), j)).collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in others.iter().take(k) {
            pairs.insert((i.min(j), i.max(j)));
        }
    }
    let mut net = Network::new(d.labels().to_vec(), false, false)?;
    for (u, v) in pairs {
        net.add_edge(u, v, None)?;
    }
    Ok(net)
}

/// Link every pair at distance ≤ `eps` (inclusive, so radii taken from
/// [`DistanceMatrix::dist_percentile`] hit predictable edge counts).
pub fn net_enn(d: &DistanceMatrix, eps: f64) -> Result<Network> {
    if !eps.is_finite() || eps < 0.0 {
        return Err(Error::invalid(format!("eps must be finite and >= 0, got {eps}")));
    }
    let mut net = Network::new(d.labels().to_vec(), false, false)?;
    for (i, j, dist) in d.upper_triangle() {
        if dist <= eps {
            net.add_edge(i, j, None)?;
        }
    }
    Ok(net)
}

/// Complement a normalized matrix into a weighted complete graph,
/// w = 1 − d, dropping zero-weight edges. Requires all entries in [0, 1].
pub fn net_weighted(d_norm: &DistanceMatrix) -> Result<Network> {
    for (i, j, dist) in d_norm.upper_triangle() {
        if !(0.0..=1.0).contains(&dist) {
            return Err(Error::invalid(format!(
                "weighted builder needs distances in [0, 1], found {dist} at pair ({}, {}); \
                 min-max normalize the matrix first",
                i + 1,
                j + 1
            )));
        }
    }
    let mut net = Network::new(d_norm.labels().to_vec(), false, true)?;
    for (i, j, dist) in d_norm.upper_triangle() {
        let w = 1.0 - dist;
        if w != 0.0 {
            net.add_edge(i, j, Some(w))?;
        }
    }
    Ok(net)
}

/// Link every pair flagged 1 in a binary significance matrix.
pub fn net_significant(s: &DistanceMatrix) -> Result<Network> {
    for (i, j, v) in s.upper_triangle() {
        if v != 0.0 && v != 1.0 {
            return Err(Error::invalid(format!(
                "significance matrix must be binary, found {v} at pair ({}, {})",
                i + 1,
                j + 1
            )));
        }
    }
    let mut net = Network::new(s.labels().to_vec(), false, false)?;
    for (i, j, v) in s.upper_triangle() {
        if v == 1.0 {
            net.add_edge(i, j, None)?;
        }
    }
    Ok(net)
}

/// Flip a binary distance matrix (0 = linked, 1 = unlinked, the form the
/// significance-gated correlation kernel produces) into the significance
/// matrix [`net_significant`] expects (1 = linked).
pub fn significance_from_binary_distance(d: &DistanceMatrix) -> Result<DistanceMatrix> {
    let n = d.n();
    let mut values = vec![0.0f64; n * n];
    for (i, j, v) in d.upper_triangle() {
        if v != 0.0 && v != 1.0 {
            return Err(Error::invalid(format!(
                "expected a binary distance matrix, found {v} at pair ({}, {})",
                i + 1,
                j + 1
            )));
        }
        values[i * n + j] = 1.0 - v;
        values[j * n + i] = 1.0 - v;
    }
    DistanceMatrix::new(d.labels().to_vec(), values)
}

/// How to turn a distance matrix into a network.
#[derive(Debug, Clone, PartialEq)]
pub enum NetBuilder {
    Knn { k: usize },
    Enn { eps: f64 },
    Weighted,
    Significant,
}

impl NetBuilder {
    pub fn build(&self, d: &DistanceMatrix) -> Result<Network> {
        match *self {
            NetBuilder::Knn { k } => net_knn(d, k),
            NetBuilder::Enn { eps } => net_enn(d, eps),
            NetBuilder::Weighted => net_weighted(d),
            NetBuilder::Significant => net_significant(d),
        }
    }
}

/// An ordered stack of network layers, one per sliding window. All layers
/// share the node set.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalNetwork {
    pub width: usize,
    pub step: usize,
    pub layers: Vec<Network>,
}

/// Slide an aligned window across all series, compute one distance matrix
/// per window position, and apply `builder` to each. Layer count is
/// `floor((T − width) / step) + 1`; layers are independent and computed
/// across `workers` threads. Failures carry the 1-based layer index.
pub fn temporal_net(
    series: &[TimeSeries],
    width: usize,
    step: usize,
    metric: &SeriesMetric,
    builder: &NetBuilder,
    workers: usize,
) -> Result<TemporalNetwork> {
    if series.len() < 2 {
        return Err(Error::invalid(format!(
            "temporal networks need at least 2 series, got {}",
            series.len()
        )));
    }
    let t = series[0].len();
    if series.iter().any(|s| s.len() != t) {
        return Err(Error::invalid("temporal networks need equal-length series"));
    }
    if width == 0 || step == 0 {
        return Err(Error::invalid("window width and step must be at least 1"));
    }
    if width > t {
        return Err(Error::EmptyWindowSet { width, len: t });
    }
    let layer_count = (t - width) / step + 1;
    let layers: Vec<Result<Network>> = crate::par::map_indexed(layer_count, workers, |l| {
        let start = l * step;
        let windows: Vec<TimeSeries> = series
            .iter()
            .map(|s| TimeSeries::new(s.id(), s.values()[start..start + width].to_vec()))
            .collect::<Result<_>>()
            .map_err(|e| Error::InLayer { layer: l + 1, source: Box::new(e) })?;
        let d = ts_dist(&windows, |x, y| metric.eval(x, y), 1)
            .map_err(|e| Error::InLayer { layer: l + 1, source: Box::new(e) })?;
        builder
            .build(&d)
            .map_err(|e| Error::InLayer { layer: l + 1, source: Box::new(e) })
    });
    let layers: Vec<Network> = layers.into_iter().collect::<Result<_>>()?;
    Ok(TemporalNetwork { width, step, layers })
}
