//! Legal co-citation network analysis.
//!
//! The pipeline turns a corpus of judgments into a provision × judgment
//! affiliation matrix, projects it onto a weighted co-citation network of
//! provisions, and reports degree, betweenness and density alongside a
//! component-based outlier check and citation-profile case typology.
//!
//! ```
//! use citenet::corpus::{JudgmentDoc, ProvisionId};
//! use citenet::network::{build_affiliation, project};
//! use citenet::metrics::summarize;
//! use chrono::NaiveDate;
//!
//! let day = NaiveDate::from_ymd_opt(2023, 5, 4).unwrap();
//! let docs = vec![
//!     JudgmentDoc::new("J1", day).with_citations([ProvisionId::new("Civil Code", "6"), ProvisionId::new("Civil Code", "1032")]),
//!     JudgmentDoc::new("J2", day).with_citations([ProvisionId::new("Civil Code", "6"), ProvisionId::new("Contract Law", "60")]),
//! ];
//! let net = project(&build_affiliation(&docs).unwrap());
//! let (nodes, overall) = summarize(&net);
//! assert_eq!(overall.edges_l, 2);
//! let hub = nodes.iter().find(|n| n.provision.article == "6").unwrap();
//! assert_eq!((hub.degree, hub.betweenness), (2, 1.0));
//! ```

pub mod corpus;
pub mod metrics;
pub mod network;
pub mod pipeline;
pub mod reports;
pub mod typology;
