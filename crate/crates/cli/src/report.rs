//! Text and JSON rendering for the stats and communities reports.

use serde_json::json;

use tsgraph::analysis::{CommunityPartition, GraphStats};
use tsgraph::io::fmt_f64;
use tsgraph::net::Network;

pub fn render_stats(stats: &GraphStats, json: bool) -> String {
    if json {
        let value = json!({
            "nodes": stats.n,
            "edges": stats.m,
            "density": stats.density,
            "degrees": stats.degrees,
            "components": {
                "count": stats.component_count,
                "sizes": stats.component_sizes,
            },
        });
        return value.to_string();
    }
    let (dmin, dmax) = stats
        .degrees
        .iter()
        .fold((usize::MAX, 0), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    let degree_line = if stats.n == 0 {
        "degrees: none".to_string()
    } else {
        let mean = stats.degrees.iter().sum::<usize>() as f64 / stats.n as f64;
        format!("degrees: min {dmin}, max {dmax}, mean {}", fmt_f64(mean))
    };
    let sizes = stats
        .component_sizes
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!(
        "nodes: {}\nedges: {}\ndensity: {}\n{degree_line}\ncomponents: {} (sizes: {sizes})",
        stats.n,
        stats.m,
        fmt_f64(stats.density),
        stats.component_count,
    )
}

pub fn render_communities(net: &Network, partition: &CommunityPartition, json: bool) -> String {
    let groups: Vec<Vec<&str>> = partition
        .groups()
        .into_iter()
        .map(|members| {
            let mut labels: Vec<&str> =
                members.into_iter().map(|i| net.labels()[i].as_str()).collect();
            labels.sort_unstable();
            labels
        })
        .collect();
    if json {
        let value = json!({
            "groups": groups,
            "modularity": partition.modularity,
        });
        return value.to_string();
    }
    let mut lines = vec![
        format!("groups: {}", groups.len()),
        format!("modularity: {}", fmt_f64(partition.modularity)),
    ];
    for (gi, members) in groups.iter().enumerate() {
        lines.push(format!(
            "group {} ({}): {}",
            gi + 1,
            members.len(),
            members.join(", ")
        ));
    }
    lines.join("\n")
}
