//! Corpus ingestion.
//!
//! Two input layouts are accepted:
//!
//! * `records`: newline-delimited JSON objects, one judgment per line.
//!   Blank lines are skipped.
//! * `raw_text`: plain text documents separated by a line containing only
//!   `---`. Each document starts with `key: value` header lines
//!   (`doc_id`, `court`, `decision_date`, `cause_of_action`, `tags`), then a
//!   blank line, then the judgment body. Citations are left empty for
//!   later extraction.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use thiserror::Error;

use super::doc::JudgmentDoc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorpusFormat {
    #[default]
    Records,
    RawText,
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "records" => Ok(CorpusFormat::Records),
            "raw_text" | "raw-text" => Ok(CorpusFormat::RawText),
            other => Err(format!("unknown corpus format `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("corpus is not valid UTF-8: {0}")]
    Encoding(#[from] std::string::FromUtf8Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate doc_id `{doc_id}`")]
    DuplicateDocId { doc_id: String, line: usize },
}

pub fn parse_corpus<R: Read>(mut source: R, format: CorpusFormat) -> Result<Vec<JudgmentDoc>, CorpusError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let text = String::from_utf8(bytes)?;
    let parsed = match format {
        CorpusFormat::Records => parse_records(&text)?,
        CorpusFormat::RawText => parse_raw_text(&text)?,
    };

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (doc, line) in &parsed {
        if seen.insert(doc.doc_id.as_str(), *line).is_some() {
            return Err(CorpusError::DuplicateDocId {
                doc_id: doc.doc_id.clone(),
                line: *line,
            });
        }
    }
    Ok(parsed.into_iter().map(|(doc, _)| doc).collect())
}

pub fn parse_corpus_file(path: &Path, format: CorpusFormat) -> Result<Vec<JudgmentDoc>, CorpusError> {
    parse_corpus(fs::File::open(path)?, format)
}

/// Serialize documents back into the newline-delimited record layout.
pub fn write_records(docs: &[JudgmentDoc]) -> String {
    let mut out = String::new();
    for doc in docs {
        // JudgmentDoc only holds strings, dates and sets; serialization cannot fail.
        out.push_str(&serde_json::to_string(doc).expect("serializable doc"));
        out.push('\n');
    }
    out
}

fn parse_records(text: &str) -> Result<Vec<(JudgmentDoc, usize)>, CorpusError> {
    let mut docs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let doc: JudgmentDoc = serde_json::from_str(raw).map_err(|e| CorpusError::Malformed {
            line,
            message: e.to_string(),
        })?;
        if doc.doc_id.trim().is_empty() {
            return Err(CorpusError::Malformed {
                line,
                message: "doc_id is empty".into(),
            });
        }
        docs.push((doc, line));
    }
    Ok(docs)
}

fn parse_raw_text(text: &str) -> Result<Vec<(JudgmentDoc, usize)>, CorpusError> {
    let mut docs = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        if raw.trim() == "---" {
            if let Some(doc) = raw_block(&block)? {
                docs.push(doc);
            }
            block.clear();
        } else {
            block.push((idx + 1, raw));
        }
    }
    if let Some(doc) = raw_block(&block)? {
        docs.push(doc);
    }
    Ok(docs)
}

fn raw_block(lines: &[(usize, &str)]) -> Result<Option<(JudgmentDoc, usize)>, CorpusError> {
    let Some(start) = lines.iter().position(|(_, l)| !l.trim().is_empty()) else {
        return Ok(None);
    };
    let lines = &lines[start..];
    let first_line = lines[0].0;

    let mut doc_id = None;
    let mut court = String::new();
    let mut date = None;
    let mut cause = String::new();
    let mut tags = BTreeSet::new();

    let mut body_start = lines.len();
    for (pos, &(line, raw)) in lines.iter().enumerate() {
        if raw.trim().is_empty() {
            body_start = pos + 1;
            break;
        }
        let (key, value) = raw.split_once(':').ok_or_else(|| CorpusError::Malformed {
            line,
            message: format!("expected `key: value` header, found `{raw}`"),
        })?;
        let value = value.trim();
        match key.trim() {
            "doc_id" => doc_id = Some(value.to_string()),
            "court" => court = value.to_string(),
            "cause_of_action" => cause = value.to_string(),
            "decision_date" => {
                let parsed = NaiveDate::parse_from_str(value, "%Y-%m-%d").map_err(|e| CorpusError::Malformed {
                    line,
                    message: format!("invalid decision_date `{value}`: {e}"),
                })?;
                date = Some(parsed);
            }
            "tags" => {
                tags = value
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(String::from)
                    .collect()
            }
            other => {
                return Err(CorpusError::Malformed {
                    line,
                    message: format!("unknown header `{other}`"),
                })
            }
        }
    }

    let doc_id = doc_id.filter(|d| !d.is_empty()).ok_or_else(|| CorpusError::Malformed {
        line: first_line,
        message: "missing field `doc_id`".into(),
    })?;
    let decision_date = date.ok_or_else(|| CorpusError::Malformed {
        line: first_line,
        message: "missing field `decision_date`".into(),
    })?;

    let body = lines[body_start.min(lines.len())..]
        .iter()
        .map(|(_, l)| *l)
        .collect::<Vec<_>>()
        .join("\n");

    let mut doc = JudgmentDoc::new(doc_id, decision_date);
    doc.court = court;
    doc.cause_of_action = cause;
    doc.tags = tags;
    doc.raw_text = Some(body.trim().to_string());
    Ok(Some((doc, first_line)))
}
