//! End-to-end run: ingest → extract → deduplicate/screen → matrix →
//! projection → metrics → components → clusters, core path and alerts.
//!
//! Artifacts are staged in a temporary directory inside the output
//! directory and moved into place only when every stage succeeded.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::corpus::{
    dedup_and_screen, extract_citations, parse_corpus_file, write_records, CitationRuleSet, CorpusFormat, JudgmentDoc,
    ProvisionId, ScreeningConfig, ScreeningReport,
};
use crate::metrics::{summarize, NetworkMetrics};
use crate::network::{build_affiliation, dichotomize, project, AffiliationMatrix, CoCitationNetwork};
use crate::reports::{export_graph, matrix_csv, network_metrics_csv, node_metrics_csv, typology_summary, GraphFormat};
use crate::typology::{
    cluster_cases_with, connected_components, core_path, deviation_alerts, exclude_component, ComponentReport,
    CoreCriterion, DEFAULT_BATCH_MIN,
};

pub const SCREENING_REPORT: &str = "screening_report.json";
pub const SCREENED_CORPUS: &str = "screened_corpus.jsonl";
pub const MATRIX_CSV: &str = "affiliation_matrix.csv";
pub const NETWORK_STEM: &str = "network";
pub const NODE_METRICS_CSV: &str = "node_metrics.csv";
pub const NETWORK_METRICS_CSV: &str = "network_metrics.csv";
pub const COMPONENTS_JSONL: &str = "components.jsonl";
pub const CLUSTERS_JSONL: &str = "clusters.jsonl";
pub const CORE_PATH_CSV: &str = "core_path.csv";
pub const ALERTS_JSONL: &str = "alerts.jsonl";
pub const SUMMARY_TXT: &str = "typology_summary.txt";
pub const EXCLUDED_DIR: &str = "excluded";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Ruleset,
    ScreeningConfig,
    Ingest,
    Extract,
    Screen,
    Build,
    Metrics,
    Typology,
    Write,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Config => "config",
            Stage::Ruleset => "ruleset",
            Stage::ScreeningConfig => "screening config",
            Stage::Ingest => "ingest",
            Stage::Extract => "extract",
            Stage::Screen => "screen",
            Stage::Build => "build",
            Stage::Metrics => "metrics",
            Stage::Typology => "typology",
            Stage::Write => "write",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad or missing input files and parameters.
    Input,
    /// A stage failed while processing valid inputs.
    Stage,
}

#[derive(Debug)]
pub struct PipelineError {
    pub stage: Stage,
    pub kind: ErrorKind,
    pub message: String,
}

impl PipelineError {
    fn input(stage: Stage, message: impl fmt::Display) -> Self {
        PipelineError {
            stage,
            kind: ErrorKind::Input,
            message: message.to_string(),
        }
    }

    fn stage(stage: Stage, message: impl fmt::Display) -> Self {
        PipelineError {
            stage,
            kind: ErrorKind::Stage,
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 1,
            ErrorKind::Stage => 2,
        }
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage failed: {}", self.stage, self.message)
    }
}

impl std::error::Error for PipelineError {}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub corpus: PathBuf,
    pub corpus_format: CorpusFormat,
    pub rules: Option<PathBuf>,
    pub screen: Option<PathBuf>,
    pub min_weight: u32,
    pub threshold: f64,
    pub batch_min: usize,
    pub core: CoreCriterion,
    pub out_dir: PathBuf,
    pub formats: Vec<GraphFormat>,
    pub precise: bool,
    pub exclude_outliers: bool,
}

impl PipelineConfig {
    pub fn new(corpus: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            corpus: corpus.into(),
            corpus_format: CorpusFormat::Records,
            rules: None,
            screen: None,
            min_weight: 1,
            threshold: 0.5,
            batch_min: DEFAULT_BATCH_MIN,
            core: CoreCriterion::default(),
            out_dir: out_dir.into(),
            formats: vec![GraphFormat::EdgeCsv],
            precise: false,
            exclude_outliers: false,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if !self.corpus.is_file() {
            return Err(PipelineError::input(
                Stage::Ingest,
                format!("corpus file not found: {}", self.corpus.display()),
            ));
        }
        if let Some(rules) = self.rules.as_ref().filter(|p| !p.is_file()) {
            return Err(PipelineError::input(
                Stage::Ruleset,
                format!("ruleset file not found: {}", rules.display()),
            ));
        }
        if let Some(screen) = self.screen.as_ref().filter(|p| !p.is_file()) {
            return Err(PipelineError::input(
                Stage::ScreeningConfig,
                format!("screening config not found: {}", screen.display()),
            ));
        }
        if self.min_weight == 0 {
            return Err(PipelineError::input(Stage::Config, "min-weight must be at least 1"));
        }
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(PipelineError::input(
                Stage::Config,
                format!("threshold {} is outside (0, 1]", self.threshold),
            ));
        }
        if self.batch_min < 2 {
            return Err(PipelineError::input(Stage::Config, "batch-min must be at least 2"));
        }
        self.core
            .validate()
            .map_err(|e| PipelineError::input(Stage::Config, e))?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub screening: ScreeningReport,
    pub network: Option<NetworkMetrics>,
    /// Paths relative to the output directory, in write order.
    pub files: Vec<PathBuf>,
}

#[derive(Serialize)]
struct ComponentRecord<'a> {
    index: usize,
    size: usize,
    outlier: bool,
    provisions: &'a [ProvisionId],
    contributing_judgments: Vec<&'a str>,
}

#[derive(Serialize)]
struct ClusterRecord<'a> {
    index: usize,
    #[serde(flatten)]
    cluster: &'a crate::typology::CaseCluster,
}

/// Collects artifacts before they are published.
struct Staging {
    dir: tempfile::TempDir,
    files: Vec<PathBuf>,
}

impl Staging {
    fn new(out_dir: &Path) -> Result<Self, PipelineError> {
        fs::create_dir_all(out_dir).map_err(|e| PipelineError::input(Stage::Write, e))?;
        let dir = tempfile::Builder::new()
            .prefix(".citenet-staging-")
            .tempdir_in(out_dir)
            .map_err(|e| PipelineError::stage(Stage::Write, e))?;
        Ok(Staging { dir, files: Vec::new() })
    }

    fn write(&mut self, rel: impl AsRef<Path>, contents: impl AsRef<[u8]>) -> Result<(), PipelineError> {
        let rel = rel.as_ref();
        let path = self.dir.path().join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| PipelineError::stage(Stage::Write, e))?;
        }
        fs::write(&path, contents).map_err(|e| PipelineError::stage(Stage::Write, e))?;
        self.files.push(rel.to_path_buf());
        Ok(())
    }

    fn publish(self, out_dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
        for rel in &self.files {
            let target = out_dir.join(rel);
            if let Some(parent) = target.parent() {
                fs::create_dir_all(parent).map_err(|e| PipelineError::stage(Stage::Write, e))?;
            }
            fs::rename(self.dir.path().join(rel), &target).map_err(|e| PipelineError::stage(Stage::Write, e))?;
        }
        Ok(self.files)
    }
}

fn jsonl<T: Serialize>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(&item).expect("report records serialize"));
        out.push('\n');
    }
    out
}

/// Load and extract citations for every document. Documents that already
/// carry citations keep them; those with raw text and no citations are run
/// through the rule set when one is given.
pub fn ingest(config: &PipelineConfig) -> Result<(Vec<JudgmentDoc>, Option<CitationRuleSet>), PipelineError> {
    let rules = config
        .rules
        .as_deref()
        .map(CitationRuleSet::from_file)
        .transpose()
        .map_err(|e| PipelineError::input(Stage::Ruleset, e))?;
    let docs =
        parse_corpus_file(&config.corpus, config.corpus_format).map_err(|e| PipelineError::input(Stage::Ingest, e))?;
    let docs = match &rules {
        Some(rules) => docs
            .into_iter()
            .map(|doc| {
                if doc.citations.is_empty() && doc.raw_text.is_some() {
                    extract_citations(&doc, rules).map_err(|e| PipelineError::stage(Stage::Extract, e))
                } else {
                    Ok(doc)
                }
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => docs,
    };
    Ok((docs, rules))
}

/// Weighted projection of `matrix`, labeled from the rule set.
pub fn labeled_projection(matrix: &AffiliationMatrix, rules: Option<&CitationRuleSet>) -> CoCitationNetwork {
    let mut net = project(matrix);
    match rules {
        Some(r) => net.assign_labels(r.labels()),
        None => net.assign_labels(&Default::default()),
    }
    net
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineOutcome, PipelineError> {
    config.validate()?;
    let screen_config = match &config.screen {
        Some(path) => ScreeningConfig::from_file(path).map_err(|e| PipelineError::input(Stage::ScreeningConfig, e))?,
        None => ScreeningConfig::default(),
    };
    let (docs, rules) = ingest(config)?;

    let mut staging = Staging::new(&config.out_dir)?;

    let (docs, report) = dedup_and_screen(docs, &screen_config);
    debug_assert!(report.is_balanced());
    staging.write(
        SCREENING_REPORT,
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    )?;
    staging.write(SCREENED_CORPUS, write_records(&docs))?;

    if docs.is_empty() {
        let files = staging.publish(&config.out_dir)?;
        return Ok(PipelineOutcome {
            screening: report,
            network: None,
            files,
        });
    }

    let matrix = build_affiliation(&docs).map_err(|e| PipelineError::stage(Stage::Build, e))?;
    let weighted = labeled_projection(&matrix, rules.as_ref());
    staging.write(MATRIX_CSV, matrix_csv(&matrix))?;
    for &format in &config.formats {
        staging.write(
            format!("{NETWORK_STEM}.{}", format.extension()),
            export_graph(&weighted, format),
        )?;
    }

    let binary = dichotomize(&weighted, config.min_weight);
    let (nodes, network) = summarize(&binary);
    staging.write(NODE_METRICS_CSV, node_metrics_csv(&nodes, config.precise))?;
    staging.write(NETWORK_METRICS_CSV, network_metrics_csv(&network, config.precise))?;

    let components = connected_components(&binary, Some(&docs));
    staging.write(COMPONENTS_JSONL, component_records(&components))?;

    if config.exclude_outliers && !components.outliers.is_empty() {
        let mut reduced = matrix.clone();
        for &ci in &components.outliers {
            reduced = exclude_component(&reduced, &components.components[ci])
                .map_err(|e| PipelineError::stage(Stage::Typology, e))?;
        }
        let reduced_net = dichotomize(&labeled_projection(&reduced, rules.as_ref()), config.min_weight);
        let (nodes, network) = summarize(&reduced_net);
        let dir = Path::new(EXCLUDED_DIR);
        staging.write(dir.join(MATRIX_CSV), matrix_csv(&reduced))?;
        staging.write(dir.join(NODE_METRICS_CSV), node_metrics_csv(&nodes, config.precise))?;
        staging.write(
            dir.join(NETWORK_METRICS_CSV),
            network_metrics_csv(&network, config.precise),
        )?;
    }

    let clusters = cluster_cases_with(&docs, config.threshold, config.batch_min)
        .map_err(|e| PipelineError::stage(Stage::Typology, e))?;
    staging.write(
        CLUSTERS_JSONL,
        jsonl(
            clusters
                .iter()
                .enumerate()
                .map(|(index, cluster)| ClusterRecord { index, cluster }),
        ),
    )?;

    let core = core_path(&weighted, config.core).map_err(|e| PipelineError::stage(Stage::Typology, e))?;
    let mut core_rows = vec![vec!["source".to_string(), "target".to_string(), "weight".to_string()]];
    core_rows.extend(
        core.edges
            .iter()
            .map(|e| vec![e.source.key(), e.target.key(), e.weight.to_string()]),
    );
    staging.write(CORE_PATH_CSV, crate::reports::csv_string(core_rows))?;

    let alerts = if core.is_empty() {
        Vec::new()
    } else {
        deviation_alerts(&docs, &clusters, &core)
    };
    staging.write(ALERTS_JSONL, jsonl(&alerts))?;
    staging.write(SUMMARY_TXT, typology_summary(&clusters, &alerts))?;

    let files = staging.publish(&config.out_dir)?;
    Ok(PipelineOutcome {
        screening: report,
        network: Some(network),
        files,
    })
}

pub fn component_records(report: &ComponentReport) -> String {
    jsonl(report.components.iter().enumerate().map(|(index, provisions)| {
        ComponentRecord {
            index,
            size: provisions.len(),
            outlier: report.is_outlier(index),
            provisions,
            contributing_judgments: report
                .contributing_judgments
                .get(&index)
                .map(|ids| ids.iter().map(String::as_str).collect())
                .unwrap_or_default(),
        }
    }))
}
