//! Judgment documents: ingestion, citation extraction and sample screening.

mod doc;
mod records;
mod rules;
mod screen;

pub use doc::{JudgmentDoc, ProvisionId, ProvisionStatus, ARTICLE_SEPARATOR};
pub use records::{parse_corpus, parse_corpus_file, write_records, CorpusError, CorpusFormat};
pub use rules::{
    chinese_number, extract_citations, parse_article_list, CitationRule, CitationRuleSet, MissingText, RuleError,
};
pub use screen::{
    content_hash, dedup_and_screen, deduplicate, screen, RemovedDoc, ScreenError, ScreeningConfig, ScreeningReport,
    REASON_DATE, REASON_DUPLICATE, REASON_JURISDICTION, REASON_KEYWORD, REASON_MANUAL,
};
