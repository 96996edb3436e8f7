//! Sample screening: deduplication followed by date, keyword, jurisdiction
//! and manual-exclusion filters, with a balanced stage-by-stage report.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::doc::JudgmentDoc;

pub const REASON_DUPLICATE: &str = "duplicate";
pub const REASON_DATE: &str = "outside date window";
pub const REASON_KEYWORD: &str = "missing required keyword";
pub const REASON_JURISDICTION: &str = "jurisdiction mismatch";
pub const REASON_MANUAL: &str = "manual exclusion";

#[derive(Debug, Error)]
pub enum ScreenError {
    #[error("failed to read screening config: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid screening config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("date_from {from} is after date_to {to}")]
    InvertedWindow { from: NaiveDate, to: NaiveDate },
}

/// Screening criteria. Every field is optional; the default config lets
/// every document through.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScreeningConfig {
    #[serde(default)]
    pub date_from: Option<NaiveDate>,
    #[serde(default)]
    pub date_to: Option<NaiveDate>,
    #[serde(default)]
    pub required_keywords: BTreeSet<String>,
    #[serde(default)]
    pub jurisdiction: Option<String>,
    #[serde(default)]
    pub exclusion_ids: BTreeSet<String>,
}

impl ScreeningConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ScreenError> {
        let config: ScreeningConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, ScreenError> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), ScreenError> {
        if let (Some(from), Some(to)) = (self.date_from, self.date_to) {
            if from > to {
                return Err(ScreenError::InvertedWindow { from, to });
            }
        }
        Ok(())
    }

    fn in_window(&self, date: NaiveDate) -> bool {
        self.date_from.is_none_or(|from| date >= from) && self.date_to.is_none_or(|to| date <= to)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedDoc {
    pub doc_id: String,
    pub reason: String,
}

/// Per-stage counts. `initial_count` minus every removal count equals
/// `final_count`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreeningReport {
    pub initial_count: usize,
    pub duplicates_removed: usize,
    pub date_filtered: usize,
    pub keyword_filtered: usize,
    pub jurisdiction_filtered: usize,
    pub manually_excluded: usize,
    pub final_count: usize,
    pub removed_ids: Vec<RemovedDoc>,
}

impl ScreeningReport {
    pub fn is_balanced(&self) -> bool {
        let removed = self.duplicates_removed
            + self.date_filtered
            + self.keyword_filtered
            + self.jurisdiction_filtered
            + self.manually_excluded;
        self.initial_count >= removed
            && self.initial_count - removed == self.final_count
            && self.removed_ids.len() == removed
    }
}

/// Whitespace-normalized SHA-256 of the text, hex encoded.
pub fn content_hash(text: &str) -> String {
    let normalized = text.split_whitespace().collect::<Vec<_>>().join(" ");
    hex::encode(Sha256::digest(normalized.as_bytes()))
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum DedupKey {
    Content(String),
    Structural(String, NaiveDate, Vec<(String, String)>),
}

fn dedup_key(doc: &JudgmentDoc) -> DedupKey {
    match &doc.raw_text {
        Some(text) => DedupKey::Content(content_hash(text)),
        None => DedupKey::Structural(
            doc.court.clone(),
            doc.decision_date,
            // BTreeSet iteration is already sorted.
            doc.citations
                .iter()
                .map(|p| (p.statute.clone(), p.article.clone()))
                .collect(),
        ),
    }
}

/// Drop later copies of any document whose duplicate key was already seen.
/// Returns the survivors in input order and the removed ids.
pub fn deduplicate(docs: Vec<JudgmentDoc>) -> (Vec<JudgmentDoc>, Vec<String>) {
    let mut seen = HashSet::new();
    let mut kept = Vec::with_capacity(docs.len());
    let mut removed = Vec::new();
    for doc in docs {
        if seen.insert(dedup_key(&doc)) {
            kept.push(doc);
        } else {
            removed.push(doc.doc_id);
        }
    }
    (kept, removed)
}

fn has_keyword(doc: &JudgmentDoc, keyword: &str) -> bool {
    doc.raw_text.as_deref().is_some_and(|t| t.contains(keyword))
        || doc.cause_of_action.contains(keyword)
        || doc.court.contains(keyword)
        || doc.tags.iter().any(|t| t.contains(keyword))
}

/// Apply the filters in fixed order: date window, required keywords,
/// jurisdiction (substring of `court`), manual exclusions.
pub fn screen(docs: Vec<JudgmentDoc>, config: &ScreeningConfig) -> (Vec<JudgmentDoc>, ScreeningReport) {
    let mut report = ScreeningReport {
        initial_count: docs.len(),
        ..Default::default()
    };
    let mut kept = Vec::with_capacity(docs.len());
    for doc in docs {
        let reason = if !config.in_window(doc.decision_date) {
            report.date_filtered += 1;
            REASON_DATE.to_string()
        } else if let Some(missing) = config.required_keywords.iter().find(|k| !has_keyword(&doc, k)) {
            report.keyword_filtered += 1;
            format!("{REASON_KEYWORD}: {missing}")
        } else if config.jurisdiction.as_deref().is_some_and(|j| !doc.court.contains(j)) {
            report.jurisdiction_filtered += 1;
            REASON_JURISDICTION.to_string()
        } else if config.exclusion_ids.contains(&doc.doc_id) {
            report.manually_excluded += 1;
            REASON_MANUAL.to_string()
        } else {
            kept.push(doc);
            continue;
        };
        report.removed_ids.push(RemovedDoc {
            doc_id: doc.doc_id,
            reason,
        });
    }
    report.final_count = kept.len();
    (kept, report)
}

/// Deduplicate, then screen, folding the duplicate count into the report.
pub fn dedup_and_screen(docs: Vec<JudgmentDoc>, config: &ScreeningConfig) -> (Vec<JudgmentDoc>, ScreeningReport) {
    let initial = docs.len();
    let (unique, duplicates) = deduplicate(docs);
    let (kept, mut report) = screen(unique, config);
    report.initial_count = initial;
    report.duplicates_removed = duplicates.len();
    let mut removed: Vec<RemovedDoc> = duplicates
        .into_iter()
        .map(|doc_id| RemovedDoc {
            doc_id,
            reason: REASON_DUPLICATE.to_string(),
        })
        .collect();
    removed.append(&mut report.removed_ids);
    report.removed_ids = removed;
    (kept, report)
}
