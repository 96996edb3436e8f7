//! Pattern-based citation extraction.
//!
//! A rule set is a TOML document:
//!
//! ```toml
//! [aliases]
//! "中华人民共和国民法典" = "民法典"
//! "民法典" = "Civil Code"
//!
//! [[rules]]
//! pattern = '《(?P<statute>合同法)》(?P<articles>(?:第[零〇一二两三四五六七八九十百千]+条[、，]?)+)'
//! article_capture = "articles"
//! status = "invalidated"
//!
//! [[labels]]
//! statute = "Contract Law"
//! article = "60"
//! label = "C"
//! ```
//!
//! Rules are tried in file order. A match whose byte span overlaps a span
//! already claimed by an earlier rule (or an earlier match of the same
//! rule) is discarded, so the first matching rule wins. The statute is the
//! rule's literal `statute` when given, otherwise the `statute` capture
//! group; either way it is canonicalized through the alias table. The
//! `article_capture` group may list several articles
//! (`第六条、第一千零三十二条`); each becomes one provision.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::Deserialize;
use thiserror::Error;

use super::doc::{JudgmentDoc, ProvisionId, ProvisionStatus};

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("failed to read rule set: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid rule set: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("rule {index}: pattern does not compile: {source}")]
    Pattern { index: usize, source: regex::Error },
    #[error("rule {index}: pattern has no capture group named `{group}`")]
    MissingGroup { index: usize, group: String },
    #[error("alias cycle involving `{0}`")]
    AliasCycle(String),
    #[error("label `{label}` assigned to both {first} and {second}")]
    DuplicateLabel { label: char, first: String, second: String },
}

#[derive(Debug, Error)]
#[error("document `{0}` has no raw_text to extract citations from")]
pub struct MissingText(pub String);

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleSpec {
    pattern: String,
    #[serde(default)]
    statute: Option<String>,
    #[serde(default = "default_article_capture")]
    article_capture: String,
    #[serde(default)]
    status: ProvisionStatus,
}

fn default_article_capture() -> String {
    "articles".to_string()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelSpec {
    statute: String,
    article: String,
    label: char,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleSetSpec {
    #[serde(default)]
    aliases: BTreeMap<String, String>,
    #[serde(default)]
    rules: Vec<RuleSpec>,
    #[serde(default)]
    labels: Vec<LabelSpec>,
}

#[derive(Debug, Clone)]
pub struct CitationRule {
    pub pattern: Regex,
    pub statute: Option<String>,
    pub article_capture: String,
    pub status: ProvisionStatus,
}

#[derive(Debug, Clone, Default)]
pub struct CitationRuleSet {
    pub rules: Vec<CitationRule>,
    aliases: BTreeMap<String, String>,
    labels: HashMap<ProvisionId, char>,
}

impl CitationRuleSet {
    pub fn from_toml_str(text: &str) -> Result<Self, RuleError> {
        let spec: RuleSetSpec = toml::from_str(text)?;
        check_alias_cycles(&spec.aliases)?;

        let mut rules = Vec::with_capacity(spec.rules.len());
        for (index, rule) in spec.rules.into_iter().enumerate() {
            let pattern = Regex::new(&rule.pattern).map_err(|source| RuleError::Pattern { index, source })?;
            let has_group = |name: &str| pattern.capture_names().flatten().any(|n| n == name);
            if !has_group(&rule.article_capture) {
                return Err(RuleError::MissingGroup {
                    index,
                    group: rule.article_capture,
                });
            }
            if rule.statute.is_none() && !has_group("statute") {
                return Err(RuleError::MissingGroup {
                    index,
                    group: "statute".into(),
                });
            }
            rules.push(CitationRule {
                pattern,
                statute: rule.statute,
                article_capture: rule.article_capture,
                status: rule.status,
            });
        }

        let mut set = CitationRuleSet {
            rules,
            aliases: spec.aliases,
            labels: HashMap::new(),
        };
        let mut owners: HashMap<char, ProvisionId> = HashMap::new();
        for entry in spec.labels {
            let id = ProvisionId::new(set.canonical_statute(&entry.statute), entry.article);
            if let Some(prev) = owners.get(&entry.label) {
                if *prev != id {
                    return Err(RuleError::DuplicateLabel {
                        label: entry.label,
                        first: prev.key(),
                        second: id.key(),
                    });
                }
            }
            owners.insert(entry.label, id.clone());
            set.labels.insert(id, entry.label);
        }
        Ok(set)
    }

    pub fn from_file(path: &Path) -> Result<Self, RuleError> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    /// Follow the alias chain to its canonical name.
    pub fn canonical_statute(&self, name: &str) -> String {
        let mut current = name.trim();
        // Cycles are rejected at load time, so the chain terminates.
        while let Some(next) = self.aliases.get(current) {
            current = next;
        }
        current.to_string()
    }

    /// Display labels declared in the rule set, keyed by provision.
    pub fn labels(&self) -> &HashMap<ProvisionId, char> {
        &self.labels
    }

    /// Every provision cited in `text`, in first-match order per rule.
    pub fn extract(&self, text: &str) -> BTreeSet<ProvisionId> {
        let mut claimed: Vec<(usize, usize)> = Vec::new();
        let mut found = BTreeSet::new();
        for rule in &self.rules {
            for caps in rule.pattern.captures_iter(text) {
                let whole = caps.get(0).expect("group 0 always participates");
                let (start, end) = (whole.start(), whole.end());
                if claimed.iter().any(|&(s, e)| start < e && s < end) {
                    continue;
                }
                let Some(articles) = caps.name(&rule.article_capture) else {
                    continue;
                };
                let statute = match (&rule.statute, caps.name("statute")) {
                    (Some(literal), _) => self.canonical_statute(literal),
                    (None, Some(m)) => self.canonical_statute(m.as_str()),
                    (None, None) => continue,
                };
                claimed.push((start, end));
                for article in parse_article_list(articles.as_str()) {
                    found.insert(ProvisionId::new(statute.clone(), article).with_status(rule.status));
                }
            }
        }
        found
    }
}

fn check_alias_cycles(aliases: &BTreeMap<String, String>) -> Result<(), RuleError> {
    for start in aliases.keys() {
        let mut seen = BTreeSet::new();
        let mut current = start.as_str();
        while let Some(next) = aliases.get(current) {
            if !seen.insert(current) {
                return Err(RuleError::AliasCycle(start.clone()));
            }
            current = next;
        }
    }
    Ok(())
}

/// Populate `doc.citations` from its raw text. The rest of the document is
/// left untouched.
pub fn extract_citations(doc: &JudgmentDoc, rules: &CitationRuleSet) -> Result<JudgmentDoc, MissingText> {
    let text = doc.raw_text.as_deref().ok_or_else(|| MissingText(doc.doc_id.clone()))?;
    let mut out = doc.clone();
    out.citations = rules.extract(text);
    Ok(out)
}

fn designator_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"第([零〇一二两三四五六七八九十百千万0-9]+)条").unwrap())
}

fn digits_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[0-9]+").unwrap())
}

/// Split an article capture such as `第六条、第一千零三十二条` or
/// `Art. 60, 107` into canonical arabic article numbers.
pub fn parse_article_list(text: &str) -> Vec<String> {
    let mut articles: Vec<String> = designator_re()
        .captures_iter(text)
        .filter_map(|c| chinese_number(&c[1]))
        .map(|n| n.to_string())
        .collect();
    if articles.is_empty() {
        articles = digits_re()
            .find_iter(text)
            .map(|m| m.as_str().trim_start_matches('0'))
            .map(|s| if s.is_empty() { "0".to_string() } else { s.to_string() })
            .collect();
    }
    articles
}

/// Parse a Chinese (or arabic) numeral as used in article designators.
pub fn chinese_number(text: &str) -> Option<u64> {
    if text.is_empty() {
        return None;
    }
    if text.bytes().all(|b| b.is_ascii_digit()) {
        return text.parse().ok();
    }
    let mut total = 0u64;
    let mut section = 0u64;
    let mut digit: Option<u64> = None;
    for ch in text.chars() {
        let value = match ch {
            '零' | '〇' => Some(0),
            '一' => Some(1),
            '二' | '两' => Some(2),
            '三' => Some(3),
            '四' => Some(4),
            '五' => Some(5),
            '六' => Some(6),
            '七' => Some(7),
            '八' => Some(8),
            '九' => Some(9),
            _ => None,
        };
        if let Some(v) = value {
            digit = Some(v);
            continue;
        }
        match ch {
            '十' | '百' | '千' => {
                let unit = match ch {
                    '十' => 10,
                    '百' => 100,
                    _ => 1000,
                };
                // A bare 十 at the start means one ten (十二 = 12).
                section += digit.take().unwrap_or(1) * unit;
            }
            '万' => {
                section += digit.take().unwrap_or(0);
                total += section.max(1) * 10_000;
                section = 0;
            }
            _ => return None,
        }
    }
    Some(total + section + digit.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    const RULES: &str = r#"
[aliases]
"中华人民共和国民法典" = "民法典"
"民法典" = "Civil Code"
"合同法" = "Contract Law"
"中华人民共和国合同法" = "合同法"

[[rules]]
pattern = '《(?P<statute>(?:中华人民共和国)?合同法)》(?P<articles>(?:第[零〇一二两三四五六七八九十百千]+条[、，]?)+)'
status = "invalidated"

[[rules]]
pattern = '《(?P<statute>[^》]+)》(?P<articles>(?:第[零〇一二两三四五六七八九十百千]+条[、，]?)+)'
status = "in_force"
"#;

    fn doc(text: &str) -> JudgmentDoc {
        JudgmentDoc::new("J1", NaiveDate::from_ymd_opt(2023, 1, 1).unwrap()).with_text(text)
    }

    #[test]
    fn numerals() {
        assert_eq!(chinese_number("六"), Some(6));
        assert_eq!(chinese_number("十"), Some(10));
        assert_eq!(chinese_number("十二"), Some(12));
        assert_eq!(chinese_number("六十"), Some(60));
        assert_eq!(chinese_number("一百零七"), Some(107));
        assert_eq!(chinese_number("一百四十七"), Some(147));
        assert_eq!(chinese_number("四百九十六"), Some(496));
        assert_eq!(chinese_number("一千零三十二"), Some(1032));
        assert_eq!(chinese_number("一千二百六十"), Some(1260));
        assert_eq!(chinese_number("一万零一"), Some(10001));
        assert_eq!(chinese_number("60"), Some(60));
        assert_eq!(chinese_number("abc"), None);
    }

    #[test]
    fn civil_code_article_list() {
        let rules = CitationRuleSet::from_toml_str(RULES).unwrap();
        let out = extract_citations(&doc("…依据《民法典》第六条、第一千零三十二条…"), &rules).unwrap();
        let expected: BTreeSet<_> = [
            ProvisionId::new("Civil Code", "6"),
            ProvisionId::new("Civil Code", "1032"),
        ]
        .into_iter()
        .collect();
        assert_eq!(out.citations, expected);
        assert!(out.citations.iter().all(|p| p.status == ProvisionStatus::InForce));
    }

    #[test]
    fn repeated_mentions_collapse() {
        let rules = CitationRuleSet::from_toml_str(RULES).unwrap();
        let text = "《民法典》第六条……《民法典》第六条……《中华人民共和国民法典》第六条";
        let out = extract_citations(&doc(text), &rules).unwrap();
        assert_eq!(out.citations.len(), 1);
    }

    #[test]
    fn contract_law_is_invalidated_via_first_rule() {
        // Hand-checked snippet: the specific rule must claim the span before
        // the generic one would mark it in force.
        let rules = CitationRuleSet::from_toml_str(RULES).unwrap();
        let text = "根据《中华人民共和国合同法》第六十条之规定，被告应当履行还款义务。";
        let out = extract_citations(&doc(text), &rules).unwrap();
        let cited: Vec<_> = out.citations.iter().collect();
        assert_eq!(cited.len(), 1);
        assert_eq!(cited[0], &ProvisionId::new("Contract Law", "60"));
        assert_eq!(cited[0].status, ProvisionStatus::Invalidated);
    }

    #[test]
    fn no_match_gives_empty_set() {
        let rules = CitationRuleSet::from_toml_str(RULES).unwrap();
        let original = doc("本案无引用条文。");
        let out = extract_citations(&original, &rules).unwrap();
        assert!(out.citations.is_empty());
        assert_eq!(out.raw_text, original.raw_text);
        assert_eq!(out.doc_id, original.doc_id);
    }

    #[test]
    fn missing_text_is_error() {
        let rules = CitationRuleSet::from_toml_str(RULES).unwrap();
        let d = JudgmentDoc::new("J9", NaiveDate::from_ymd_opt(2023, 1, 1).unwrap());
        assert!(extract_citations(&d, &rules).is_err());
    }

    #[test]
    fn literal_statute_and_arabic_articles() {
        let rules = CitationRuleSet::from_toml_str(
            r#"
[[rules]]
pattern = '(?i)contract law,? art(?:icle)?s?\.? (?P<articles>[0-9, and]+)'
statute = "Contract Law"
status = "invalidated"
"#,
        )
        .unwrap();
        let out = rules.extract("applying Contract Law Art. 60, 107 and 8");
        let articles: Vec<_> = out.iter().map(|p| p.article.as_str()).collect();
        assert_eq!(articles, vec!["107", "60", "8"]);
    }

    #[test]
    fn alias_cycle_rejected() {
        let err = CitationRuleSet::from_toml_str(
            r#"
[aliases]
"a" = "b"
"b" = "a"
"#,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::AliasCycle(_)));
    }

    #[test]
    fn bad_pattern_rejected() {
        let err = CitationRuleSet::from_toml_str(
            r#"
[[rules]]
pattern = '(?P<articles>['
statute = "x"
"#,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::Pattern { index: 0, .. }));
    }

    #[test]
    fn missing_capture_rejected() {
        let err = CitationRuleSet::from_toml_str(
            r#"
[[rules]]
pattern = '第(?P<num>[0-9]+)条'
statute = "x"
"#,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::MissingGroup { .. }));
    }

    #[test]
    fn labels_resolve_aliases_and_must_be_unique() {
        let rules = CitationRuleSet::from_toml_str(
            r#"
[aliases]
"合同法" = "Contract Law"
[[labels]]
statute = "合同法"
article = "60"
label = "C"
"#,
        )
        .unwrap();
        assert_eq!(rules.labels().get(&ProvisionId::new("Contract Law", "60")), Some(&'C'));

        let err = CitationRuleSet::from_toml_str(
            r#"
[[labels]]
statute = "X"
article = "1"
label = "A"
[[labels]]
statute = "X"
article = "2"
label = "A"
"#,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::DuplicateLabel { label: 'A', .. }));
    }
}
