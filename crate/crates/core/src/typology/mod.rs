//! Case typology: structural outliers, citation-profile clusters, core
//! paths and deviation alerts.

mod cases;
mod components;
mod core_path;

use thiserror::Error;

use crate::network::NetworkError;

pub use cases::{
    case_similarity, cluster_cases, cluster_cases_with, retrieve_similar, CaseCluster, CaseKind, DEFAULT_BATCH_MIN,
};
pub use components::{component_labels, connected_components, exclude_component, ComponentReport};
pub use core_path::{core_path, deviation_alerts, CoreCriterion, CoreEdge, CorePath, DeviationAlert};

#[derive(Debug, Error, PartialEq)]
pub enum TypologyError {
    #[error("component to exclude is empty")]
    EmptyComponent,
    #[error("provision `{0}` is not in the matrix")]
    UnknownProvision(String),
    #[error("clustering threshold {0} is outside (0, 1]")]
    Threshold(f64),
    #[error("batch_min must be at least 2, got {0}")]
    BatchMin(usize),
    #[error("k must be positive")]
    ZeroK,
    #[error("query `{0}` cites no provisions")]
    EmptyQuery(String),
    #[error("invalid core criterion `{0}` (expected min-weight=N or top-k=K with N, K >= 1)")]
    Criterion(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}
