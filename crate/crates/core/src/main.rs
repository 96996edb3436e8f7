use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use citenet::corpus::{dedup_and_screen, write_records, CitationRuleSet, CorpusFormat, JudgmentDoc, ScreeningConfig};
use citenet::metrics::summarize;
use citenet::network::{build_affiliation, dichotomize, CoCitationNetwork};
use citenet::pipeline::{
    component_records, ingest, labeled_projection, run_pipeline, PipelineConfig, NETWORK_METRICS_CSV, NODE_METRICS_CSV,
};
use citenet::reports::{export_graph, import_graph, matrix_csv, network_metrics_csv, node_metrics_csv, GraphFormat};
use citenet::typology::{
    cluster_cases_with, connected_components, core_path, deviation_alerts, retrieve_similar, CoreCriterion,
    DEFAULT_BATCH_MIN,
};

#[derive(Parser)]
#[command(name = "citenet", version, about = "Legal co-citation network toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a corpus, extract citations and print normalized records
    Ingest(CorpusArgs),
    /// Deduplicate and screen a corpus; survivors to stdout, report to stderr
    Screen {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Screening config (TOML)
        #[arg(long = "screen")]
        screen: Option<PathBuf>,
    },
    /// Print the provision x judgment affiliation matrix as CSV
    Build(CorpusArgs),
    /// Degree/betweenness table and overall network metrics
    Metrics {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 1)]
        min_weight: u32,
        /// Print full-precision reals instead of three decimals
        #[arg(long)]
        precise: bool,
        /// Write node_metrics.csv and network_metrics.csv here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected components with outlier flags
    Components {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 1)]
        min_weight: u32,
    },
    /// Cluster cases by citation-profile similarity
    Cluster {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        clustering: ClusterArgs,
    },
    /// Rank corpus documents by similarity to one of them
    Retrieve {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// doc_id of the query judgment
        #[arg(long)]
        query: String,
        #[arg(short, long, default_value_t = 5)]
        k: usize,
    },
    /// Deviation alerts against the core path
    Alerts {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        clustering: ClusterArgs,
        /// min-weight=N or top-k=K
        #[arg(long, default_value_t = CoreCriterion::default())]
        core: CoreCriterion,
    },
    /// Export the co-citation network
    Export {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "edge_csv")]
        format: GraphFormat,
    },
    /// Full pipeline into an output directory
    Run(RunArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file
    #[arg(long)]
    corpus: PathBuf,
    /// records or raw_text
    #[arg(long, default_value = "records")]
    input_format: CorpusFormat,
    /// Citation rule set (TOML)
    #[arg(long)]
    rules: Option<PathBuf>,
}

#[derive(Args)]
struct SourceArgs {
    /// Corpus file to build the network from
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    corpus: Option<PathBuf>,
    #[arg(long, default_value = "records")]
    input_format: CorpusFormat,
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Existing network in edge_csv form
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct ClusterArgs {
    /// Similarity threshold in (0, 1]
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, default_value_t = DEFAULT_BATCH_MIN)]
    batch_min: usize,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Screening config (TOML)
    #[arg(long = "screen")]
    screen: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    min_weight: u32,
    #[command(flatten)]
    clustering: ClusterArgs,
    #[arg(long, default_value_t = CoreCriterion::default())]
    core: CoreCriterion,
    #[arg(long)]
    out: PathBuf,
    /// Graph formats to write; repeat for several
    #[arg(long = "format", default_value = "edge_csv")]
    formats: Vec<GraphFormat>,
    #[arg(long)]
    precise: bool,
    /// Also write metrics with outlier components removed
    #[arg(long)]
    exclude_outliers: bool,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl std::fmt::Display) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }

    fn stage(message: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<citenet::pipeline::PipelineError> for Failure {
    fn from(e: citenet::pipeline::PipelineError) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::stage(format!("write stage failed: {e}"))
    }
}

fn ingest_args(args: &CorpusArgs) -> Result<(Vec<JudgmentDoc>, Option<CitationRuleSet>), Failure> {
    let mut config = PipelineConfig::new(&args.corpus, ".");
    config.corpus_format = args.input_format;
    config.rules = args.rules.clone();
    if let Some(rules) = config.rules.as_ref().filter(|p| !p.is_file()) {
        return Err(Failure::input(format!(
            "ruleset stage failed: ruleset file not found: {}",
            rules.display()
        )));
    }
    Ok(ingest(&config)?)
}

fn load_corpus(args: &CorpusArgs) -> Result<Vec<JudgmentDoc>, Failure> {
    Ok(ingest_args(args)?.0)
}

fn network_from(args: &CorpusArgs) -> Result<(CoCitationNetwork, Vec<JudgmentDoc>), Failure> {
    let (docs, rules) = ingest_args(args)?;
    let matrix = build_affiliation(&docs).map_err(|e| Failure::stage(format!("build stage failed: {e}")))?;
    Ok((labeled_projection(&matrix, rules.as_ref()), docs))
}

fn load_network(source: &SourceArgs) -> Result<(CoCitationNetwork, Option<Vec<JudgmentDoc>>), Failure> {
    if let Some(path) = &source.graph {
        let file = fs::File::open(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let net = import_graph(file).map_err(|e| Failure::input(format!("import stage failed: {e}")))?;
        return Ok((net, None));
    }
    let args = CorpusArgs {
        corpus: source.corpus.clone().expect("clap requires --corpus or --graph"),
        input_format: source.input_format,
        rules: source.rules.clone(),
    };
    let (net, docs) = network_from(&args)?;
    Ok((net, Some(docs)))
}

fn emit(bytes: impl AsRef<[u8]>) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(bytes.as_ref())?;
    stdout.flush()?;
    Ok(())
}

fn jsonl<T: serde::Serialize>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| serde_json::to_string(i).expect("serializable") + "\n")
        .collect()
}

fn write_to(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Ingest(args) => emit(write_records(&load_corpus(&args)?)),
        Command::Screen { corpus, screen } => {
            let config = match &screen {
                Some(path) => ScreeningConfig::from_file(path)
                    .map_err(|e| Failure::input(format!("screening config stage failed: {e}")))?,
                None => ScreeningConfig::default(),
            };
            let (docs, report) = dedup_and_screen(load_corpus(&corpus)?, &config);
            eprintln!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            emit(write_records(&docs))
        }
        Command::Build(args) => {
            let docs = load_corpus(&args)?;
            let matrix = build_affiliation(&docs).map_err(|e| Failure::stage(format!("build stage failed: {e}")))?;
            emit(matrix_csv(&matrix))
        }
        Command::Metrics {
            source,
            min_weight,
            precise,
            out,
        } => {
            let (net, _) = load_network(&source)?;
            let (nodes, overall) = summarize(&dichotomize(&net, min_weight));
            let node_table = node_metrics_csv(&nodes, precise);
            let overall_table = network_metrics_csv(&overall, precise);
            match out {
                Some(dir) => {
                    write_to(&dir, NODE_METRICS_CSV, &node_table)?;
                    write_to(&dir, NETWORK_METRICS_CSV, &overall_table)
                }
                None => emit(format!("{node_table}\n{overall_table}")),
            }
        }
        Command::Components { source, min_weight } => {
            let (net, docs) = load_network(&source)?;
            let report = connected_components(&dichotomize(&net, min_weight), docs.as_deref());
            emit(component_records(&report))
        }
        Command::Cluster { corpus, clustering } => {
            let docs = load_corpus(&corpus)?;
            let clusters = cluster_cases_with(&docs, clustering.threshold, clustering.batch_min)
                .map_err(|e| Failure::input(format!("typology stage failed: {e}")))?;
            emit(jsonl(&clusters))
        }
        Command::Retrieve { corpus, query, k } => {
            let docs = load_corpus(&corpus)?;
            let q = docs
                .iter()
                .find(|d| d.doc_id == query)
                .ok_or_else(|| Failure::input(format!("query `{query}` not found in corpus")))?;
            let ranked = retrieve_similar(q, &docs, k).map_err(|e| Failure::input(format!("retrieve failed: {e}")))?;
            let mut out = String::from("doc_id,score\n");
            for (id, score) in ranked {
                out.push_str(&format!("{id},{score}\n"));
            }
            emit(out)
        }
        Command::Alerts {
            corpus,
            clustering,
            core,
        } => {
            let (net, docs) = network_from(&corpus)?;
            let clusters = cluster_cases_with(&docs, clustering.threshold, clustering.batch_min)
                .map_err(|e| Failure::input(format!("typology stage failed: {e}")))?;
            let core = core_path(&net, core).map_err(|e| Failure::input(e.to_string()))?;
            if core.is_empty() {
                return emit("");
            }
            emit(jsonl(&deviation_alerts(&docs, &clusters, &core)))
        }
        Command::Export { source, format } => {
            let (net, _) = load_network(&source)?;
            emit(export_graph(&net, format))
        }
        Command::Run(args) => {
            let config = PipelineConfig {
                corpus: args.corpus.corpus,
                corpus_format: args.corpus.input_format,
                rules: args.corpus.rules,
                screen: args.screen,
                min_weight: args.min_weight,
                threshold: args.clustering.threshold,
                batch_min: args.clustering.batch_min,
                core: args.core,
                out_dir: args.out,
                formats: args.formats,
                precise: args.precise,
                exclude_outliers: args.exclude_outliers,
            };
            let outcome = run_pipeline(&config)?;
            let r = &outcome.screening;
            eprintln!(
                "screened {} -> {} documents ({} duplicates, {} date, {} keyword, {} jurisdiction, {} manual)",
                r.initial_count,
                r.final_count,
                r.duplicates_removed,
                r.date_filtered,
                r.keyword_filtered,
                r.jurisdiction_filtered,
                r.manually_excluded
            );
            if let Some(m) = outcome.network {
                eprintln!(
                    "network: {} nodes, {} ties, density {:.3} ({})",
                    m.size_g, m.edges_l, m.density, m.classification
                );
            }
            eprintln!("wrote {} files to {}", outcome.files.len(), config.out_dir.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; --help and --version are not
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
