//! Graph summary statistics and edge-betweenness community detection.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::net::Network;

/// Basic size/shape summary of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Fraction of possible node pairs that are linked, self-loops excluded:
    /// `2m / (n(n−1))` undirected, `m / (n(n−1))` directed.
    pub density: f64,
    /// Per-node degree in node order. Directed nodes report in + out, so a
    /// self-loop adds 2.
    pub degrees: Vec<usize>,
    pub component_count: usize,
    /// Weakly-connected component sizes, largest first.
    pub component_sizes: Vec<usize>,
}

/// Undirected adjacency (direction ignored, self-loops dropped), neighbors
/// sorted. The backbone of the traversals below.
fn undirected_adjacency(net: &Network) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); net.n()];
    for (u, v, _) in net.edges() {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Component id per node, ids numbered by smallest contained node.
fn component_assignment(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0usize;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn graph_stats(net: &Network) -> GraphStats {
    let n = net.n();
    let m = net.edge_count();
    let mut degrees = vec![0usize; n];
    let mut m_simple = 0usize;
    for (u, v, _) in net.edges() {
        if u == v {
            degrees[u] += 2;
            continue;
        }
        m_simple += 1;
        degrees[u] += 1;
        degrees[v] += 1;
    }
    let pairs = (n * n.saturating_sub(1)) as f64;
    let density = if n < 2 {
        0.0
    } else if net.is_directed() {
        m_simple as f64 / pairs
    } else {
        2.0 * m_simple as f64 / pairs
    };
    let comp = component_assignment(&undirected_adjacency(net));
    let component_count = comp.iter().max().map_or(0, |&c| c + 1);
    let mut component_sizes = vec![0usize; component_count];
    for &c in &comp {
        component_sizes[c] += 1;
    }
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    GraphStats { n, m, density, degrees, component_count, component_sizes }
}

/// Unweighted shortest-path betweenness of every edge (Brandes
/// accumulation), counting each unordered node pair once. Sources are
/// processed in index order and neighbor lists are sorted, so the result is
/// bit-deterministic.
pub fn edge_betweenness(net: &Network) -> Result<BTreeMap<(usize, usize), f64>> {
    if net.is_directed() {
        return Err(Error::invalid("edge betweenness is implemented for undirected networks"));
    }
    let adj = undirected_adjacency(net);
    Ok(betweenness_on_adjacency(&adj))
}

fn betweenness_on_adjacency(adj: &[Vec<usize>]) -> BTreeMap<(usize, usize), f64> {
    let n = adj.len();
    let mut scores: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (u, neighbors) in adj.iter().enumerate() {
        for &v in neighbors {
            if u < v {
                scores.insert((u, v), 0.0);
            }
        }
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for s in 0..n {
        // BFS counting shortest paths
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![usize::MAX; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        sigma[s] = 1.0;
        dist[s] = 0;
        order.clear();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if dist[v] == dist[u] + 1 {
                    sigma[v] += sigma[u];
                    preds[v].push(u);
                }
            }
        }
        // dependency accumulation, farthest first
        let mut delta = vec![0.0f64; n];
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                let credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                *scores.get_mut(&(v.min(w), v.max(w))).expect("edge present") += credit;
                delta[v] += credit;
            }
        }
    }
    // each unordered pair was counted from both endpoints
    for score in scores.values_mut() {
        *score /= 2.0;
    }
    scores
}

/// A disjoint community assignment with its modularity score. Community ids
/// are 0-based, numbered in order of first appearance along the node order.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityPartition {
    pub assignment: Vec<usize>,
    pub modularity: f64,
}

impl CommunityPartition {
    pub fn group_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&c| c + 1)
    }

    /// Node indices per community, communities in id order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.group_count()];
        for (node, &c) in self.assignment.iter().enumerate() {
            groups[c].push(node);
        }
        groups
    }
}

fn canonical_assignment(raw: &[usize]) -> Vec<usize> {
    let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next = 0usize;
    raw.iter()
        .map(|&c| {
            *remap.entry(c).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}

/// Newman modularity of a node partition over an undirected network,
/// treating every edge as weight 1: the fraction of edges inside
/// communities minus the expectation under a degree-preserving random
/// rewiring. Zero when the network has no edges.
pub fn modularity(net: &Network, assignment: &[usize]) -> Result<f64> {
    if net.is_directed() {
        return Err(Error::invalid("modularity is implemented for undirected networks"));
    }
    if assignment.len() != net.n() {
        return Err(Error::invalid(format!(
            "assignment covers {} nodes, network has {}",
            assignment.len(),
            net.n()
        )));
    }
    let m = net.edge_count() as f64;
    if m == 0.0 {
        return Ok(0.0);
    }
    let communities = assignment.iter().max().map_or(0, |&c| c + 1);
    let mut internal = vec![0.0f64; communities];
    let mut degree_sum = vec![0.0f64; communities];
    for (u, v, _) in net.edges() {
        if assignment[u] == assignment[v] {
            internal[assignment[u]] += 1.0;
        }
        degree_sum[assignment[u]] += 1.0;
        degree_sum[assignment[v]] += 1.0;
    }
    Ok((0..communities)
        .map(|c| internal[c] / m - (degree_sum[c] / (2.0 * m)).powi(2))
        .sum())
}

/// Divisive community detection: repeatedly remove the edge with the
/// highest betweenness (ties broken toward the lexicographically smallest
/// node pair) and return the connected-components partition with the
/// highest modularity seen along the way, the initial partition included.
/// Earlier partitions win modularity ties.
pub fn girvan_newman(net: &Network) -> Result<CommunityPartition> {
    Ok(girvan_newman_traced(net)?.0)
}

/// As [`girvan_newman`], also reporting the edge-removal sequence.
pub(crate) fn girvan_newman_traced(
    net: &Network,
) -> Result<(CommunityPartition, Vec<(usize, usize)>)> {
    if net.is_directed() {
        return Err(Error::invalid("community detection is implemented for undirected networks"));
    }
    if net.n() == 0 {
        return Ok((CommunityPartition { assignment: Vec::new(), modularity: 0.0 }, Vec::new()));
    }
    let mut adj = undirected_adjacency(net);
    let mut removals = Vec::new();

    let assignment = canonical_assignment(&component_assignment(&adj));
    let mut best = CommunityPartition {
        modularity: modularity(net, &assignment)?,
        assignment,
    };

    let mut remaining = net.edge_count();
    while remaining > 0 {
        let scores = betweenness_on_adjacency(&adj);
        let (&(u, v), _) = scores
            .iter()
            .max_by(|a, b| a.1.total_cmp(b.1).then_with(|| b.0.cmp(a.0)))
            .expect("edges remain");
        adj[u].retain(|&x| x != v);
        adj[v].retain(|&x| x != u);
        removals.push((u, v));
        remaining -= 1;

        let assignment = canonical_assignment(&component_assignment(&adj));
        let q = modularity(net, &assignment)?;
        if q > best.modularity {
            best = CommunityPartition { assignment, modularity: q };
        }
    }
    Ok((best, removals))
}
