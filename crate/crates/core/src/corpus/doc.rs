use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

/// Whether a cited provision is still in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvisionStatus {
    InForce,
    Invalidated,
    #[default]
    Unknown,
}

impl ProvisionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ProvisionStatus::InForce => "in_force",
            ProvisionStatus::Invalidated => "invalidated",
            ProvisionStatus::Unknown => "unknown",
        }
    }
}

/// A single legal provision (statute + article).
///
/// Identity is the `(statute, article)` pair only: two ids that differ in
/// `status` or `label` compare equal and hash identically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProvisionId {
    pub statute: String,
    pub article: String,
    #[serde(default)]
    pub status: ProvisionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<char>,
}

/// Separator between statute and article in the textual key form.
pub const ARTICLE_SEPARATOR: &str = " Art. ";

impl ProvisionId {
    pub fn new(statute: impl Into<String>, article: impl Into<String>) -> Self {
        ProvisionId {
            statute: statute.into(),
            article: article.into(),
            status: ProvisionStatus::Unknown,
            label: None,
        }
    }

    pub fn with_status(mut self, status: ProvisionStatus) -> Self {
        self.status = status;
        self
    }

    pub fn with_label(mut self, label: char) -> Self {
        self.label = Some(label);
        self
    }

    /// Canonical textual key, `"<statute> Art. <article>"`, or the bare
    /// statute when the article is empty.
    pub fn key(&self) -> String {
        if self.article.is_empty() {
            self.statute.clone()
        } else {
            format!("{}{}{}", self.statute, ARTICLE_SEPARATOR, self.article)
        }
    }

    /// Inverse of [`ProvisionId::key`].
    pub fn from_key(key: &str) -> Self {
        match key.rsplit_once(ARTICLE_SEPARATOR) {
            Some((statute, article)) if !article.is_empty() => ProvisionId::new(statute, article),
            _ => ProvisionId::new(key, ""),
        }
    }

    /// Label if assigned, otherwise the canonical key.
    pub fn display_name(&self) -> String {
        match self.label {
            Some(c) => c.to_string(),
            None => self.key(),
        }
    }
}

impl PartialEq for ProvisionId {
    fn eq(&self, other: &Self) -> bool {
        self.statute == other.statute && self.article == other.article
    }
}

impl Eq for ProvisionId {}

impl Hash for ProvisionId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.statute.hash(state);
        self.article.hash(state);
    }
}

impl Ord for ProvisionId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.statute
            .cmp(&other.statute)
            .then_with(|| self.article.cmp(&other.article))
    }
}

impl PartialOrd for ProvisionId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProvisionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// One judicial decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgmentDoc {
    pub doc_id: String,
    #[serde(default)]
    pub court: String,
    pub decision_date: NaiveDate,
    #[serde(default)]
    pub cause_of_action: String,
    #[serde(default)]
    pub citations: BTreeSet<ProvisionId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_text: Option<String>,
    #[serde(default)]
    pub tags: BTreeSet<String>,
}

impl JudgmentDoc {
    pub fn new(doc_id: impl Into<String>, decision_date: NaiveDate) -> Self {
        JudgmentDoc {
            doc_id: doc_id.into(),
            court: String::new(),
            decision_date,
            cause_of_action: String::new(),
            citations: BTreeSet::new(),
            raw_text: None,
            tags: BTreeSet::new(),
        }
    }

    pub fn with_citations<I: IntoIterator<Item = ProvisionId>>(mut self, citations: I) -> Self {
        self.citations = citations.into_iter().collect();
        self
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.raw_text = Some(text.into());
        self
    }

    pub fn cites(&self, provision: &ProvisionId) -> bool {
        self.citations.contains(provision)
    }
}
