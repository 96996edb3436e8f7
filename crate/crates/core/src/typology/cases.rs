//! Citation-profile similarity, case clustering and reference-case retrieval.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::corpus::{JudgmentDoc, ProvisionId};

use super::components::component_labels;
use super::TypologyError;

pub const DEFAULT_BATCH_MIN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    Batch,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseCluster {
    pub members: BTreeSet<String>,
    pub representative_citations: BTreeSet<ProvisionId>,
    pub kind: CaseKind,
}

/// Jaccard index of the two citation sets. Two empty sets are identical.
pub fn case_similarity(a: &JudgmentDoc, b: &JudgmentDoc) -> f64 {
    jaccard(&a.citations, &b.citations)
}

pub(crate) fn jaccard(a: &BTreeSet<ProvisionId>, b: &BTreeSet<ProvisionId>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    inter as f64 / union as f64
}

pub fn cluster_cases(docs: &[JudgmentDoc], threshold: f64) -> Result<Vec<CaseCluster>, TypologyError> {
    cluster_cases_with(docs, threshold, DEFAULT_BATCH_MIN)
}

/// Connected components of the graph linking documents whose similarity is
/// at least `threshold`. Components with `batch_min` or more members are
/// batch clusters.
///
/// A cluster's representative citations are the provisions cited by at
/// least `threshold` of its members. Clusters come out in order of their
/// earliest member in `docs`.
pub fn cluster_cases_with(
    docs: &[JudgmentDoc],
    threshold: f64,
    batch_min: usize,
) -> Result<Vec<CaseCluster>, TypologyError> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(TypologyError::Threshold(threshold));
    }
    if batch_min < 2 {
        return Err(TypologyError::BatchMin(batch_min));
    }

    let n = docs.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if case_similarity(&docs[i], &docs[j]) >= threshold {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let labels = component_labels(n, &adj);

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (doc, &c) in labels.iter().enumerate() {
        groups.entry(c).or_default().push(doc);
    }

    Ok(groups
        .into_values()
        .map(|members| {
            let mut counts: BTreeMap<&ProvisionId, usize> = BTreeMap::new();
            for &m in &members {
                for p in &docs[m].citations {
                    *counts.entry(p).or_default() += 1;
                }
            }
            let needed = threshold * members.len() as f64;
            let representative = counts
                .into_iter()
                .filter(|&(_, c)| c as f64 >= needed)
                .map(|(p, _)| p.clone())
                .collect();
            CaseCluster {
                kind: if members.len() >= batch_min {
                    CaseKind::Batch
                } else {
                    CaseKind::Complex
                },
                members: members.iter().map(|&m| docs[m].doc_id.clone()).collect(),
                representative_citations: representative,
            }
        })
        .collect())
}

/// Top-`k` corpus documents by similarity to `query`, ties broken by
/// ascending doc_id. The query itself is skipped if present.
pub fn retrieve_similar(
    query: &JudgmentDoc,
    corpus: &[JudgmentDoc],
    k: usize,
) -> Result<Vec<(String, f64)>, TypologyError> {
    if k == 0 {
        return Err(TypologyError::ZeroK);
    }
    if query.citations.is_empty() {
        return Err(TypologyError::EmptyQuery(query.doc_id.clone()));
    }
    let mut scored: Vec<(String, f64)> = corpus
        .iter()
        .filter(|d| d.doc_id != query.doc_id)
        .map(|d| (d.doc_id.clone(), case_similarity(query, d)))
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    Ok(scored)
}
