//! Network serialization: edge-list TSV (read/write) and GraphML (write).
//!
//! Edge lists carry `source`/`target` label columns plus a `weight` column
//! exactly when the network is weighted, rows in canonical edge order, so a
//! fixed graph always serializes to the same bytes. Directedness is a
//! property of the whole file and is supplied by the caller on import.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::net::Network;

/// Write a network as TSV: header `source\ttarget[\tweight]`, one row per
/// edge in canonical order.
pub fn export_edgelist(net: &Network, path: &Path) -> Result<()> {
    let mut out = String::from(if net.is_weighted() {
        "source\ttarget\tweight\n"
    } else {
        "source\ttarget\n"
    });
    for (u, v, w) in net.edges() {
        out.push_str(&net.labels()[u]);
        out.push('\t');
        out.push_str(&net.labels()[v]);
        if let Some(w) = w {
            out.push('\t');
            out.push_str(&fmt_f64(w));
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Read an edge-list TSV back into a network. Nodes are the labels in order
/// of first appearance (isolated nodes cannot be represented in this
/// format); weighted-ness follows the header; directedness is declared by
/// the caller because the format does not record it.
pub fn import_edgelist(path: &Path, directed: bool) -> Result<Network> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    let weighted = match lines.next() {
        Some("source\ttarget") => false,
        Some("source\ttarget\tweight") => true,
        other => {
            return Err(Error::data_in(
                path,
                format!("expected an edge-list header, found {:?}", other.unwrap_or("")),
            ))
        }
    };

    let mut labels: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize, Option<f64>)> = Vec::new();
    for (row, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let expected = if weighted { 3 } else { 2 };
        if fields.len() != expected {
            return Err(Error::data_in(
                path,
                format!("row {}: expected {expected} fields, found {}", row + 1, fields.len()),
            ));
        }
        let mut node = |label: &str| -> usize {
            *index.entry(label.to_string()).or_insert_with(|| {
                labels.push(label.to_string());
                labels.len() - 1
            })
        };
        let u = node(fields[0]);
        let v = node(fields[1]);
        let w = if weighted {
            Some(fields[2].parse::<f64>().map_err(|_| {
                Error::data_in(path, format!("row {}: bad weight '{}'", row + 1, fields[2]))
            })?)
        } else {
            None
        };
        edges.push((u, v, w));
    }

    let mut net = Network::new(labels, directed, weighted)?;
    for (u, v, w) in edges {
        net.add_edge(u, v, w).map_err(|e| Error::data_in(path, e.to_string()))?;
    }
    Ok(net)
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Write a network as minimal GraphML: every node declared, edgedefault
/// from the directedness flag, and a single `weight` key when weighted.
pub fn export_graphml(net: &Network, path: &Path) -> Result<()> {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    if net.is_weighted() {
        out.push_str(
            "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n",
        );
    }
    out.push_str(&format!(
        "  <graph edgedefault=\"{}\">\n",
        if net.is_directed() { "directed" } else { "undirected" }
    ));
    for label in net.labels() {
        out.push_str(&format!("    <node id=\"{}\"/>\n", xml_escape(label)));
    }
    for (u, v, w) in net.edges() {
        let source = xml_escape(&net.labels()[u]);
        let target = xml_escape(&net.labels()[v]);
        match w {
            Some(w) => out.push_str(&format!(
                "    <edge source=\"{source}\" target=\"{target}\">\n      <data key=\"w\">{}</data>\n    </edge>\n",
                fmt_f64(w)
            )),
            None => {
                out.push_str(&format!("    <edge source=\"{source}\" target=\"{target}\"/>\n"))
            }
        }
    }
    out.push_str("  </graph>\n</graphml>\n");
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
