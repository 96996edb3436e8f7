use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corpus::{JudgmentDoc, ProvisionId};
use crate::network::CoCitationNetwork;

use super::cases::{CaseCluster, CaseKind};
use super::TypologyError;

/// How the strongest co-citation ties are selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreCriterion {
    MinWeight(u32),
    TopK(usize),
}

impl Default for CoreCriterion {
    fn default() -> Self {
        CoreCriterion::TopK(5)
    }
}

impl fmt::Display for CoreCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreCriterion::MinWeight(w) => write!(f, "min-weight={w}"),
            CoreCriterion::TopK(k) => write!(f, "top-k={k}"),
        }
    }
}

impl FromStr for CoreCriterion {
    type Err = TypologyError;

    /// Parses `min-weight=N` or `top-k=K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TypologyError::Criterion(s.to_string());
        let (key, value) = s.split_once('=').ok_or_else(bad)?;
        let criterion = match key.trim() {
            "min-weight" => CoreCriterion::MinWeight(value.trim().parse().map_err(|_| bad())?),
            "top-k" => CoreCriterion::TopK(value.trim().parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        criterion.validate()?;
        Ok(criterion)
    }
}

impl CoreCriterion {
    pub fn validate(self) -> Result<Self, TypologyError> {
        match self {
            CoreCriterion::MinWeight(0) | CoreCriterion::TopK(0) => Err(TypologyError::Criterion(self.to_string())),
            _ => Ok(self),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreEdge {
    pub source: ProvisionId,
    pub target: ProvisionId,
    pub weight: u32,
}

/// The strongest ties of a network, heaviest first (canonical order among
/// equal weights).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorePath {
    pub edges: Vec<CoreEdge>,
    pub criterion: CoreCriterion,
}

impl CorePath {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, a: &ProvisionId, b: &ProvisionId) -> bool {
        self.edges
            .iter()
            .any(|e| (&e.source == a && &e.target == b) || (&e.source == b && &e.target == a))
    }
}

pub fn core_path(net: &CoCitationNetwork, criterion: CoreCriterion) -> Result<CorePath, TypologyError> {
    criterion.validate()?;
    let mut edges: Vec<_> = net.edges().collect();
    edges.sort_by(|a, b| {
        b.weight
            .cmp(&a.weight)
            .then_with(|| (a.source, a.target).cmp(&(b.source, b.target)))
    });
    match criterion {
        CoreCriterion::MinWeight(w) => edges.retain(|e| e.weight >= w),
        CoreCriterion::TopK(k) => edges.truncate(k),
    }
    let nodes = net.nodes();
    Ok(CorePath {
        edges: edges
            .into_iter()
            .map(|e| CoreEdge {
                source: nodes[e.source].clone(),
                target: nodes[e.target].clone(),
                weight: e.weight,
            })
            .collect(),
        criterion,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationAlert {
    pub doc_id: String,
    pub missing_core_pairs: Vec<(ProvisionId, ProvisionId)>,
    pub severity: f64,
}

/// Flag batch-cluster documents that do not co-cite the core ties their
/// cluster's representative citations call for.
///
/// A core tie is expected for a cluster when both endpoints are among the
/// cluster's representative citations; it is missing from a document that
/// does not cite both endpoints. Alerts follow the order of `docs`.
pub fn deviation_alerts(docs: &[JudgmentDoc], clusters: &[CaseCluster], core: &CorePath) -> Vec<DeviationAlert> {
    let mut expected_by_doc: HashMap<&str, Vec<&CoreEdge>> = HashMap::new();
    for cluster in clusters.iter().filter(|c| c.kind == CaseKind::Batch) {
        let expected: Vec<&CoreEdge> = core
            .edges
            .iter()
            .filter(|e| {
                cluster.representative_citations.contains(&e.source)
                    && cluster.representative_citations.contains(&e.target)
            })
            .collect();
        if expected.is_empty() {
            continue;
        }
        for member in &cluster.members {
            expected_by_doc.insert(member.as_str(), expected.clone());
        }
    }

    docs.iter()
        .filter_map(|doc| {
            let expected = expected_by_doc.get(doc.doc_id.as_str())?;
            let missing: Vec<_> = expected
                .iter()
                .filter(|e| !(doc.cites(&e.source) && doc.cites(&e.target)))
                .map(|e| (e.source.clone(), e.target.clone()))
                .collect();
            (!missing.is_empty()).then(|| DeviationAlert {
                doc_id: doc.doc_id.clone(),
                severity: missing.len() as f64 / expected.len() as f64,
                missing_core_pairs: missing,
            })
        })
        .collect()
}
