//! Centrality and network-level indicators.

mod centrality;

use std::fmt;

use serde::Serialize;

use crate::corpus::ProvisionId;
use crate::network::CoCitationNetwork;

pub use centrality::{betweenness_centrality, betweenness_scores, degree_centrality, degrees};

/// Densities at or below this value are classed as sparse.
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct NodeMetrics {
    pub provision: ProvisionId,
    pub degree: usize,
    pub betweenness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityClass {
    Sparse,
    Dense,
}

impl DensityClass {
    pub fn of(density: f64) -> Self {
        if density <= SPARSE_DENSITY_THRESHOLD {
            DensityClass::Sparse
        } else {
            DensityClass::Dense
        }
    }
}

impl fmt::Display for DensityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityClass::Sparse => "sparse",
            DensityClass::Dense => "dense",
        })
    }
}

/// Whole-network indicators.
///
/// `edge_endpoints` is `2 * edges_l`, the degree sum; some published tables
/// report this figure under "Number of Edges".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkMetrics {
    pub size_g: usize,
    pub edges_l: usize,
    pub edge_endpoints: usize,
    pub density: f64,
    pub classification: DensityClass,
}

/// `2L / (g(g-1))`, or 0 when fewer than two nodes.
pub fn density(net: &CoCitationNetwork) -> f64 {
    density_of(net.node_count(), net.edge_count())
}

fn density_of(g: usize, l: usize) -> f64 {
    if g < 2 {
        return 0.0;
    }
    (2 * l) as f64 / (g * (g - 1)) as f64
}

pub fn network_metrics(net: &CoCitationNetwork) -> NetworkMetrics {
    let g = net.node_count();
    let l = net.edge_count();
    let d = density_of(g, l);
    NetworkMetrics {
        size_g: g,
        edges_l: l,
        edge_endpoints: 2 * l,
        density: d,
        classification: DensityClass::of(d),
    }
}

/// Per-node metrics in node order, plus network-level metrics.
pub fn summarize(net: &CoCitationNetwork) -> (Vec<NodeMetrics>, NetworkMetrics) {
    let deg = degrees(net);
    let btw = betweenness_scores(net);
    let nodes = net
        .nodes()
        .iter()
        .zip(deg.into_iter().zip(btw))
        .map(|(p, (degree, betweenness))| NodeMetrics {
            provision: p.clone(),
            degree,
            betweenness,
        })
        .collect();
    (nodes, network_metrics(net))
}
