//! Node-level centrality on the unweighted view of a co-citation network.

use std::collections::{BTreeMap, VecDeque};

use crate::corpus::ProvisionId;
use crate::network::CoCitationNetwork;

/// Distinct-neighbor counts, indexed by node.
pub fn degrees(net: &CoCitationNetwork) -> Vec<usize> {
    let mut deg = vec![0; net.node_count()];
    for e in net.edges() {
        deg[e.source] += 1;
        deg[e.target] += 1;
    }
    deg
}

pub fn degree_centrality(net: &CoCitationNetwork) -> BTreeMap<ProvisionId, usize> {
    net.nodes().iter().cloned().zip(degrees(net)).collect()
}

/// Non-normalized betweenness, indexed by node.
///
/// Brandes' accumulation: one BFS per source counts geodesics (`sigma`),
/// then dependencies are propagated back from the farthest nodes. Every
/// unordered pair is visited from both ends, hence the final halving.
/// Sources are processed in node order so the floating-point sum is
/// reproducible.
pub fn betweenness_scores(net: &CoCitationNetwork) -> Vec<f64> {
    let n = net.node_count();
    let adj = net.adjacency();
    let mut score = vec![0.0; n];

    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        preds.iter_mut().for_each(Vec::clear);
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }

    score.iter_mut().for_each(|x| *x /= 2.0);
    score
}

pub fn betweenness_centrality(net: &CoCitationNetwork) -> BTreeMap<ProvisionId, f64> {
    net.nodes().iter().cloned().zip(betweenness_scores(net)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> CoCitationNetwork {
        let mut net = CoCitationNetwork::new();
        for i in 0..n {
            net.add_node(ProvisionId::new(format!("n{i}"), ""));
        }
        for &(a, b) in edges {
            net.insert_edge(a, b, 1).unwrap();
        }
        net
    }

    fn complete(n: usize) -> CoCitationNetwork {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        graph(n, &edges)
    }

    #[test]
    fn complete_graph_degrees() {
        assert_eq!(degrees(&complete(4)), vec![3, 3, 3, 3]);
    }

    #[test]
    fn empty_network() {
        let net = CoCitationNetwork::new();
        assert!(degree_centrality(&net).is_empty());
        assert!(betweenness_centrality(&net).is_empty());
    }

    #[test]
    fn star_center() {
        let net = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(betweenness_scores(&net), vec![6.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn path_interior() {
        let net = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(betweenness_scores(&net), vec![0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn five_cycle() {
        // Each node lies on one of the two geodesics of each of the two
        // pairs at distance 2 that straddle it: 2 * 1/2 = 1.
        let net = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        for b in betweenness_scores(&net) {
            assert!((b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn complete_graph_zero() {
        assert!(betweenness_scores(&complete(6)).iter().all(|&b| b == 0.0));
    }

    #[test]
    fn disconnected_pairs_contribute_nothing() {
        // path a-b-c plus a separate edge d-e
        let net = graph(5, &[(0, 1), (1, 2), (3, 4)]);
        assert_eq!(betweenness_scores(&net), vec![0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn weights_are_ignored() {
        let mut net = CoCitationNetwork::new();
        for name in ["a", "b", "c"] {
            net.add_node(ProvisionId::new(name, ""));
        }
        net.insert_edge(0, 1, 9).unwrap();
        net.insert_edge(1, 2, 1).unwrap();
        assert_eq!(degrees(&net), vec![1, 2, 1]);
        assert_eq!(betweenness_scores(&net), vec![0.0, 1.0, 0.0]);
    }
}
