//! Two-mode affiliation matrix and its one-mode co-citation projection.

mod graph;
mod matrix;

use thiserror::Error;

pub use graph::{dichotomize, project, CoCitationNetwork, Edge};
pub use matrix::{build_affiliation, AffiliationMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("duplicate doc_id `{0}`")]
    DuplicateDocId(String),
    #[error("document with empty doc_id")]
    EmptyDocId,
    #[error("duplicate provision `{0}`")]
    DuplicateProvision(String),
    #[error("provision `{0}` is cited by no judgment")]
    EmptyRow(String),
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Dimensions {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("edge `{0}`-`{1}` has weight 0")]
    ZeroWeight(String, String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
}
