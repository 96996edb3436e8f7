use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::corpus::ProvisionId;

use super::{AffiliationMatrix, NetworkError};

/// One undirected tie, stored with `source < target` in node order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: u32,
}

/// Weighted undirected one-mode network over provisions.
///
/// Nodes keep their insertion order, which is the canonical order used for
/// edge storage, exports and tie-breaking. Isolated nodes are allowed.
#[derive(Debug, Clone, Default)]
pub struct CoCitationNetwork {
    nodes: Vec<ProvisionId>,
    index: HashMap<ProvisionId, usize>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl CoCitationNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_nodes(nodes: Vec<ProvisionId>) -> Result<Self, NetworkError> {
        let mut net = CoCitationNetwork::new();
        for node in nodes {
            if net.index.contains_key(&node) {
                return Err(NetworkError::DuplicateProvision(node.key()));
            }
            net.add_node(node);
        }
        Ok(net)
    }

    /// Add a node if absent; returns its index either way.
    pub fn add_node(&mut self, node: ProvisionId) -> usize {
        if let Some(&i) = self.index.get(&node) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(node.clone(), i);
        self.nodes.push(node);
        i
    }

    /// Insert a new undirected edge between node indices `a` and `b`.
    pub fn insert_edge(&mut self, a: usize, b: usize, weight: u32) -> Result<(), NetworkError> {
        let n = self.nodes.len();
        if a >= n || b >= n {
            return Err(NetworkError::NodeOutOfRange(a.max(b)));
        }
        if a == b {
            return Err(NetworkError::SelfLoop(self.nodes[a].key()));
        }
        if weight == 0 {
            return Err(NetworkError::ZeroWeight(self.nodes[a].key(), self.nodes[b].key()));
        }
        let key = (a.min(b), a.max(b));
        if self.edges.contains_key(&key) {
            return Err(NetworkError::DuplicateEdge(self.nodes[a].key(), self.nodes[b].key()));
        }
        self.edges.insert(key, weight);
        Ok(())
    }

    pub fn nodes(&self) -> &[ProvisionId] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, node: &ProvisionId) -> Option<usize> {
        self.index.get(node).copied()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<u32> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    /// Edges in canonical `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|(&(source, target), &weight)| Edge { source, target, weight })
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().map(|&w| u64::from(w)).sum()
    }

    /// Sorted neighbor lists, indexed by node.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Attach display labels: `explicit` first, then the unused letters
    /// A–Z to remaining nodes in node order. Nodes beyond the alphabet stay
    /// unlabeled.
    pub fn assign_labels(&mut self, explicit: &HashMap<ProvisionId, char>) {
        let mut used = HashSet::new();
        for node in &mut self.nodes {
            node.label = explicit.get(node).copied();
            if let Some(c) = node.label {
                used.insert(c);
            }
        }
        let mut free = ('A'..='Z').filter(|c| !used.contains(c));
        for node in &mut self.nodes {
            if node.label.is_none() {
                node.label = free.next();
            }
        }
        self.index = self.nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    }

    /// Copy of the network restricted to edges passing `keep`, with the
    /// node set unchanged.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> Option<u32>) -> Self {
        let mut out = CoCitationNetwork {
            nodes: self.nodes.clone(),
            index: self.index.clone(),
            edges: BTreeMap::new(),
        };
        for e in self.edges() {
            if let Some(w) = keep(&e) {
                out.edges.insert((e.source, e.target), w);
            }
        }
        out
    }

    fn edge_set(&self) -> BTreeSet<(&ProvisionId, &ProvisionId, u32)> {
        self.edges()
            .map(|e| {
                let (a, b) = (&self.nodes[e.source], &self.nodes[e.target]);
                (a.min(b), a.max(b), e.weight)
            })
            .collect()
    }
}

/// Networks are equal when they have the same provisions and the same
/// weighted ties, regardless of node order.
impl PartialEq for CoCitationNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len()
            && self.nodes.iter().all(|n| other.index.contains_key(n))
            && self.edge_set() == other.edge_set()
    }
}

impl Eq for CoCitationNetwork {}

/// One-mode projection: the off-diagonal of `X · Xᵀ`.
pub fn project(matrix: &AffiliationMatrix) -> CoCitationNetwork {
    let mut net = CoCitationNetwork::new();
    for p in matrix.provisions() {
        net.add_node(p.clone());
    }
    let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for col in 0..matrix.n_cols() {
        let rows = matrix.column_rows(col);
        for (i, &a) in rows.iter().enumerate() {
            for &b in &rows[i + 1..] {
                *counts.entry((a, b)).or_insert(0) += 1;
            }
        }
    }
    net.edges = counts;
    net
}

/// Keep ties with weight at least `min_weight` and flatten them to 1.
/// A `min_weight` of 0 behaves like 1.
pub fn dichotomize(net: &CoCitationNetwork, min_weight: u32) -> CoCitationNetwork {
    net.filter_edges(|e| (e.weight >= min_weight).then_some(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::JudgmentDoc;
    use crate::network::build_affiliation;
    use chrono::NaiveDate;

    fn p(s: &str) -> ProvisionId {
        ProvisionId::new(s, "")
    }

    fn doc(id: &str, cites: &[&str]) -> JudgmentDoc {
        JudgmentDoc::new(id, NaiveDate::from_ymd_opt(2023, 1, 1).unwrap()).with_citations(cites.iter().map(|c| p(c)))
    }

    fn weighted(pairs: &[(&str, &str, u32)]) -> CoCitationNetwork {
        let mut net = CoCitationNetwork::new();
        for &(a, b, w) in pairs {
            let (a, b) = (net.add_node(p(a)), net.add_node(p(b)));
            net.insert_edge(a, b, w).unwrap();
        }
        net
    }

    #[test]
    fn two_judgments_project() {
        let m = build_affiliation(&[doc("J1", &["A", "B"]), doc("J2", &["B", "C"])]).unwrap();
        let net = project(&m);
        assert_eq!(net, weighted(&[("A", "B", 1), ("B", "C", 1)]));
    }

    #[test]
    fn single_judgment_triangle() {
        let m = build_affiliation(&[doc("J1", &["A", "B", "C"])]).unwrap();
        let net = project(&m);
        assert_eq!(net.edge_count(), 3);
        assert!(net.edges().all(|e| e.weight == 1));
    }

    #[test]
    fn dichotomize_threshold() {
        let mut net = weighted(&[("A", "B", 3), ("B", "C", 1)]);
        let d = dichotomize(&net, 2);
        assert_eq!(d.node_count(), 3);
        assert_eq!(
            d.edges().collect::<Vec<_>>(),
            vec![Edge {
                source: 0,
                target: 1,
                weight: 1
            }]
        );

        let all = dichotomize(&net, 1);
        assert_eq!(all.edge_count(), 2);
        assert!(all.edges().all(|e| e.weight == 1));

        net = CoCitationNetwork::new();
        assert!(dichotomize(&net, 1).is_empty());
    }

    #[test]
    fn insert_edge_errors() {
        let mut net = weighted(&[("A", "B", 1)]);
        assert!(matches!(net.insert_edge(1, 0, 2), Err(NetworkError::DuplicateEdge(..))));
        assert!(matches!(net.insert_edge(0, 0, 1), Err(NetworkError::SelfLoop(_))));
        let c = net.add_node(p("C"));
        assert!(matches!(net.insert_edge(0, c, 0), Err(NetworkError::ZeroWeight(..))));
        assert!(matches!(net.insert_edge(0, 9, 1), Err(NetworkError::NodeOutOfRange(9))));
    }

    #[test]
    fn equality_ignores_node_order() {
        let a = weighted(&[("A", "B", 2), ("B", "C", 1)]);
        let b = weighted(&[("C", "B", 1), ("B", "A", 2)]);
        assert_eq!(a, b);
        let c = weighted(&[("A", "B", 3), ("B", "C", 1)]);
        assert_ne!(a, c);
    }

    #[test]
    fn labels_fill_unused_letters() {
        let mut net = weighted(&[("x", "y", 1), ("y", "z", 1)]);
        let explicit: HashMap<_, _> = [(p("y"), 'A')].into_iter().collect();
        net.assign_labels(&explicit);
        let labels: Vec<_> = net.nodes().iter().map(|n| n.label.unwrap()).collect();
        assert_eq!(labels, vec!['B', 'A', 'C']);
    }
}
