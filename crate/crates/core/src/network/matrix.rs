use std::collections::{HashMap, HashSet};

use crate::corpus::{JudgmentDoc, ProvisionId};

use super::NetworkError;

/// Binary provision × judgment incidence matrix.
///
/// Rows are provisions in first-appearance order, columns are judgments in
/// input order. Every row has at least one cell set; columns may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffiliationMatrix {
    provisions: Vec<ProvisionId>,
    judgments: Vec<String>,
    // row-major, provisions.len() * judgments.len()
    cells: Vec<bool>,
}

impl AffiliationMatrix {
    /// Build from explicit rows, checking every invariant.
    pub fn from_rows(
        provisions: Vec<ProvisionId>,
        judgments: Vec<String>,
        rows: Vec<Vec<bool>>,
    ) -> Result<Self, NetworkError> {
        if rows.len() != provisions.len() {
            return Err(NetworkError::Dimensions {
                rows: rows.len(),
                cols: judgments.len(),
                expected_rows: provisions.len(),
                expected_cols: judgments.len(),
            });
        }
        let mut seen = HashSet::new();
        for p in &provisions {
            if !seen.insert(p) {
                return Err(NetworkError::DuplicateProvision(p.key()));
            }
        }
        let mut seen = HashSet::new();
        for j in &judgments {
            if !seen.insert(j) {
                return Err(NetworkError::DuplicateDocId(j.clone()));
            }
        }
        let mut cells = Vec::with_capacity(provisions.len() * judgments.len());
        for (p, row) in provisions.iter().zip(&rows) {
            if row.len() != judgments.len() {
                return Err(NetworkError::Dimensions {
                    rows: rows.len(),
                    cols: row.len(),
                    expected_rows: provisions.len(),
                    expected_cols: judgments.len(),
                });
            }
            if !row.iter().any(|&c| c) {
                return Err(NetworkError::EmptyRow(p.key()));
            }
            cells.extend_from_slice(row);
        }
        Ok(AffiliationMatrix {
            provisions,
            judgments,
            cells,
        })
    }

    pub fn provisions(&self) -> &[ProvisionId] {
        &self.provisions
    }

    pub fn judgments(&self) -> &[String] {
        &self.judgments
    }

    pub fn n_rows(&self) -> usize {
        self.provisions.len()
    }

    pub fn n_cols(&self) -> usize {
        self.judgments.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.judgments.len() + col]
    }

    pub fn row(&self, row: usize) -> &[bool] {
        let width = self.judgments.len();
        &self.cells[row * width..(row + 1) * width]
    }

    /// Row indices of the provisions cited by judgment `col`.
    pub fn column_rows(&self, col: usize) -> Vec<usize> {
        (0..self.n_rows()).filter(|&r| self.get(r, col)).collect()
    }

    pub fn row_index(&self, provision: &ProvisionId) -> Option<usize> {
        self.provisions.iter().position(|p| p == provision)
    }
}

/// Build the incidence matrix for `docs`.
pub fn build_affiliation(docs: &[JudgmentDoc]) -> Result<AffiliationMatrix, NetworkError> {
    let mut judgments = Vec::with_capacity(docs.len());
    let mut seen_docs = HashSet::new();
    for doc in docs {
        if doc.doc_id.is_empty() {
            return Err(NetworkError::EmptyDocId);
        }
        if !seen_docs.insert(doc.doc_id.as_str()) {
            return Err(NetworkError::DuplicateDocId(doc.doc_id.clone()));
        }
        judgments.push(doc.doc_id.clone());
    }

    let mut provisions: Vec<ProvisionId> = Vec::new();
    let mut index: HashMap<&ProvisionId, usize> = HashMap::new();
    for doc in docs {
        for p in &doc.citations {
            if !index.contains_key(p) {
                index.insert(p, provisions.len());
                provisions.push(p.clone());
            }
        }
    }

    let width = docs.len();
    let mut cells = vec![false; provisions.len() * width];
    for (col, doc) in docs.iter().enumerate() {
        for p in &doc.citations {
            cells[index[p] * width + col] = true;
        }
    }
    Ok(AffiliationMatrix {
        provisions,
        judgments,
        cells,
    })
}
