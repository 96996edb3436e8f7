use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::corpus::{JudgmentDoc, ProvisionId};
use crate::network::{AffiliationMatrix, CoCitationNetwork};

use super::TypologyError;

/// Connected components of a co-citation network, largest first.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Vec<ProvisionId>>,
    /// Indices into `components`; every component except the largest when
    /// there is more than one.
    pub outliers: Vec<usize>,
    /// Judgments whose (nonempty) citation set lies entirely inside a
    /// component.
    pub contributing_judgments: BTreeMap<usize, BTreeSet<String>>,
}

impl ComponentReport {
    pub fn is_outlier(&self, index: usize) -> bool {
        self.outliers.contains(&index)
    }
}

/// Component membership per node: a component id for every node index,
/// numbered in order of each component's smallest node.
pub fn component_labels(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn connected_components(net: &CoCitationNetwork, corpus: Option<&[JudgmentDoc]>) -> ComponentReport {
    let n = net.node_count();
    if n == 0 {
        return ComponentReport::default();
    }
    let labels = component_labels(n, &net.adjacency());
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (node, &c) in labels.iter().enumerate() {
        groups[c].push(node);
    }
    // Groups are already ordered by smallest member; a stable sort on size
    // keeps that as the tie-break.
    groups.sort_by_key(|g| std::cmp::Reverse(g.len()));

    let components: Vec<Vec<ProvisionId>> = groups
        .iter()
        .map(|g| g.iter().map(|&i| net.nodes()[i].clone()).collect())
        .collect();
    let outliers = if components.len() > 1 {
        (1..components.len()).collect()
    } else {
        Vec::new()
    };

    let mut contributing = BTreeMap::new();
    if let Some(docs) = corpus {
        for (ci, comp) in components.iter().enumerate() {
            let members: HashSet<&ProvisionId> = comp.iter().collect();
            let ids: BTreeSet<String> = docs
                .iter()
                .filter(|d| !d.citations.is_empty() && d.citations.iter().all(|p| members.contains(p)))
                .map(|d| d.doc_id.clone())
                .collect();
            if !ids.is_empty() {
                contributing.insert(ci, ids);
            }
        }
    }

    ComponentReport {
        components,
        outliers,
        contributing_judgments: contributing,
    }
}

/// Remove a group of provisions from the matrix.
///
/// Judgments whose citations lie entirely inside `component` are dropped,
/// then any component row left without citations is dropped. Rows still
/// cited by a surviving judgment stay, so the result never has an all-zero
/// row. For a true connected component this removes every row of it.
pub fn exclude_component(
    matrix: &AffiliationMatrix,
    component: &[ProvisionId],
) -> Result<AffiliationMatrix, TypologyError> {
    if component.is_empty() {
        return Err(TypologyError::EmptyComponent);
    }
    let mut inside = vec![false; matrix.n_rows()];
    for p in component {
        let row = matrix
            .row_index(p)
            .ok_or_else(|| TypologyError::UnknownProvision(p.key()))?;
        inside[row] = true;
    }

    let kept_cols: Vec<usize> = (0..matrix.n_cols())
        .filter(|&c| {
            let rows = matrix.column_rows(c);
            rows.is_empty() || rows.iter().any(|&r| !inside[r])
        })
        .collect();

    let mut provisions = Vec::new();
    let mut rows = Vec::new();
    for r in 0..matrix.n_rows() {
        let row: Vec<bool> = kept_cols.iter().map(|&c| matrix.get(r, c)).collect();
        if row.iter().any(|&x| x) {
            provisions.push(matrix.provisions()[r].clone());
            rows.push(row);
        }
    }
    let judgments = kept_cols.iter().map(|&c| matrix.judgments()[c].clone()).collect();
    Ok(AffiliationMatrix::from_rows(provisions, judgments, rows)?)
}
