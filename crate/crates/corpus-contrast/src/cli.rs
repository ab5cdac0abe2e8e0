//! Command-line front end. One thin subcommand per pipeline stage plus
//! `run --config` for the whole thing.
//!
//! Exit codes: 0 success, 2 validation or configuration error, 3 stage
//! failure at runtime.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::align::{strip_quoted_text, AlignmentScoring};
use crate::classifier::{
    drop_neutral, evaluate, load_labels, split_dataset, train_classifier, LabeledDocument,
    LinearModel, TrainParams,
};
use crate::corpus::{
    filter_by_phrases, load_corpus, remove_exact_duplicates, save_corpus, Document, DocumentSet,
};
use crate::embedding::{
    load_embedding_table, save_embedding_table, train_skipgram, EmbeddingTable, SkipgramParams,
};
use crate::error::PipelineError;
use crate::pipeline::{render_report, run_pipeline, PipelineConfig};
use crate::prep::{build_vocabulary, load_stoplist, prepare_documents, StopList};
use crate::semaxis::{
    build_axis, score_corpus, score_document, score_entities, SemanticAxis,
    DEFAULT_NEGATIVE_SEEDS, DEFAULT_POSITIVE_SEEDS,
};
use crate::stats::{
    chi_squared_2x2, cohens_kappa, welch_t_test, SampleSummary, StdKind,
};
use crate::topics::{fit_lda, load_model, save_model, topic_sentiment, topic_timeline, Binning, LdaParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug)]
enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

fn runtime<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Runtime(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "corpus-contrast", version, about = "Comparative corpus analytics pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a line-delimited corpus file, filter by phrases, drop exact duplicates
    Ingest(IngestArgs),
    /// Strip quoted text from threaded comments by local alignment
    Clean(CleanArgs),
    /// Tokenize and remove stop-words
    Prep(PrepArgs),
    /// Word embeddings
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Axis-projection sentiment scoring
    #[command(subcommand)]
    Semaxis(SemaxisCommand),
    /// Topic modeling
    #[command(subcommand)]
    Topics(TopicsCommand),
    /// Statistical tests
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Supervised sentiment baseline
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Run the full pipeline from a config file
    Run(RunArgs),
}

#[derive(Args, Debug)]
struct IngestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    corpus_tag: String,
    /// Keep only documents containing at least one phrase (repeatable)
    #[arg(long = "filter-phrase")]
    filter_phrases: Vec<String>,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct CleanArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long = "match", default_value_t = 2)]
    match_score: i64,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    mismatch: i64,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    gap: i64,
    #[arg(long = "min-match", default_value_t = 5)]
    min_match: usize,
    /// Align against every predecessor instead of OP + immediate predecessor
    #[arg(long)]
    all_predecessors: bool,
    /// Cleaning report path (default: <output>.report.json)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PrepArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Replacement for the bundled standard stop-list
    #[arg(long)]
    stoplist: Option<PathBuf>,
    /// Extra stop-words on top of the standard list
    #[arg(long)]
    custom_stops: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum EmbedCommand {
    /// Train skip-gram embeddings on a prepared corpus
    Train(EmbedTrainArgs),
    /// Print table dimensions and provenance
    Info { path: PathBuf },
}

#[derive(Args, Debug)]
struct EmbedTrainArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 100)]
    dim: usize,
    #[arg(long, default_value_t = 5)]
    window: usize,
    #[arg(long, default_value_t = 5)]
    negatives: usize,
    #[arg(long, default_value_t = 5)]
    epochs: usize,
    #[arg(long, default_value_t = 5)]
    min_count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Subcommand, Debug)]
enum SemaxisCommand {
    /// Score a corpus along the sentiment axis
    Score(SemaxisScoreArgs),
    /// Rank gazetteer entities by frequency with axis scores
    Entities(SemaxisEntitiesArgs),
}

#[derive(Args, Debug)]
struct SemaxisScoreArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    pos_seeds: Option<PathBuf>,
    #[arg(long)]
    neg_seeds: Option<PathBuf>,
    #[arg(long)]
    input: PathBuf,
    /// Also emit one mean score per document
    #[arg(long)]
    per_document: bool,
    /// Report sample (n-1) standard deviation instead of population
    #[arg(long)]
    sample_std: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SemaxisEntitiesArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    pos_seeds: Option<PathBuf>,
    #[arg(long)]
    neg_seeds: Option<PathBuf>,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    gazetteer: PathBuf,
    #[arg(long, default_value_t = 5)]
    top: usize,
}

#[derive(Subcommand, Debug)]
enum TopicsCommand {
    /// Fit an LDA model on a prepared corpus
    Fit(TopicsFitArgs),
    /// Print top words, shares, and optional axis sentiment per topic
    Report(TopicsReportArgs),
    /// Topic mass per calendar period
    Timeline(TopicsTimelineArgs),
}

#[derive(Args, Debug)]
struct TopicsFitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 20)]
    k: usize,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    beta: f64,
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    #[arg(long, default_value_t = 200)]
    burn_in: usize,
    #[arg(long, default_value_t = 10)]
    thinning: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct TopicsReportArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 12)]
    top_words: usize,
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    pos_seeds: Option<PathBuf>,
    #[arg(long)]
    neg_seeds: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TopicsTimelineArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    input: PathBuf,
    #[arg(long = "bin", default_value = "year")]
    bin: Binning,
}

#[derive(Subcommand, Debug)]
enum StatsCommand {
    /// Welch t-test between two sentiment summaries
    Compare {
        #[arg(long)]
        summary_a: PathBuf,
        #[arg(long)]
        summary_b: PathBuf,
    },
    /// Cohen's kappa between two label files joined on id
    Kappa {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Chi-squared test of a 2x2 table given as a,b,c,d
    Chi2 {
        #[arg(long)]
        counts: String,
        #[arg(long)]
        continuity: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ClassifyCommand {
    /// Train the logistic baseline on labeled documents
    Train(ClassifyTrainArgs),
    /// Evaluate a trained model against a gold label file
    Eval(ClassifyEvalArgs),
}

#[derive(Args, Debug)]
struct ClassifyTrainArgs {
    #[arg(long)]
    labels: PathBuf,
    /// Prepared corpus file (repeatable)
    #[arg(long = "corpus", required = true)]
    corpora: Vec<PathBuf>,
    #[arg(long)]
    table: PathBuf,
    #[arg(long, default_value_t = 0.8)]
    split_ratio: f64,
    #[arg(long, default_value_t = 500)]
    epochs: usize,
    #[arg(long, default_value_t = 0.5)]
    learning_rate: f64,
    #[arg(long, default_value_t = 1e-4)]
    l2: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct ClassifyEvalArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    gold: PathBuf,
    #[arg(long = "corpus", required = true)]
    corpora: Vec<PathBuf>,
    #[arg(long)]
    table: PathBuf,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
}

/// Parses argv and runs a subcommand; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}

fn load_docs(path: &PathBuf) -> Result<DocumentSet, CliError> {
    let report = load_corpus(path, "").map_err(validation)?;
    for d in &report.diagnostics {
        eprintln!("{}: line {}: {}", path.display(), d.line, d.message);
    }
    for w in &report.warnings {
        eprintln!("{}: {}", path.display(), w);
    }
    Ok(report.set)
}

fn load_table(path: &PathBuf) -> Result<EmbeddingTable, CliError> {
    let (table, warnings) = load_embedding_table(path).map_err(validation)?;
    for w in warnings {
        eprintln!("{}: {}", path.display(), w);
    }
    Ok(table)
}

fn load_seeds(path: &Option<PathBuf>, default: &[&str]) -> Result<Vec<String>, CliError> {
    match path {
        None => Ok(default.iter().map(|s| s.to_string()).collect()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(validation)?;
            Ok(text
                .lines()
                .map(|l| l.trim())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.to_lowercase())
                .collect())
        }
    }
}

fn load_axis(
    table: &EmbeddingTable,
    pos: &Option<PathBuf>,
    neg: &Option<PathBuf>,
) -> Result<SemanticAxis, CliError> {
    let positive = load_seeds(pos, DEFAULT_POSITIVE_SEEDS)?;
    let negative = load_seeds(neg, DEFAULT_NEGATIVE_SEEDS)?;
    build_axis(table, &positive, &negative).map_err(runtime)
}

fn emit_json<T: serde::Serialize>(value: &T, output: Option<&PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(runtime)?;
    match output {
        Some(path) => std::fs::write(path, text + "\n").map_err(runtime)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn resolve_labeled<'a>(
    labeled: Vec<LabeledDocument>,
    index: &HashMap<&str, &'a Document>,
) -> Vec<(LabeledDocument, &'a Document)> {
    labeled
        .into_iter()
        .filter_map(|l| index.get(l.id.as_str()).map(|d| (l, *d)))
        .collect()
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ingest(args) => {
            let set = load_docs(&args.input)?;
            let mut set = DocumentSet { corpus_tag: args.corpus_tag.clone(), documents: set.documents };
            for d in &mut set.documents {
                d.corpus_tag = args.corpus_tag.clone();
            }
            let n_loaded = set.len();
            let set = if args.filter_phrases.is_empty() {
                set
            } else {
                filter_by_phrases(&set, &args.filter_phrases).map_err(validation)?
            };
            let (set, n_dups) = remove_exact_duplicates(&set);
            save_corpus(&set, &args.output).map_err(runtime)?;
            println!(
                "loaded {n_loaded}, kept {} after phrase filter, removed {n_dups} duplicates",
                set.len() + n_dups
            );
            Ok(())
        }
        Command::Clean(args) => {
            let scoring = AlignmentScoring {
                match_score: args.match_score,
                mismatch_penalty: args.mismatch,
                gap_penalty: args.gap,
                min_match_tokens: args.min_match,
            };
            scoring.validate().map_err(CliError::Validation)?;
            let set = load_docs(&args.input)?;
            let mut cleaned = DocumentSet::new(set.corpus_tag.clone());
            let mut events = Vec::new();
            for thread in set.threads() {
                let docs: Vec<Document> = thread.into_iter().cloned().collect();
                let (survivors, mut ev) = strip_quoted_text(&docs, &scoring, args.all_predecessors);
                cleaned.documents.extend(survivors);
                events.append(&mut ev);
            }
            save_corpus(&cleaned, &args.output).map_err(runtime)?;
            let report_path = args.report.unwrap_or_else(|| {
                let mut p = args.output.as_os_str().to_owned();
                p.push(".report.json");
                PathBuf::from(p)
            });
            emit_json(&events, Some(&report_path))?;
            println!("{} documents kept, {} cleaning events", cleaned.len(), events.len());
            Ok(())
        }
        Command::Prep(args) => {
            let mut stops = match &args.stoplist {
                Some(p) => {
                    let set = load_stoplist(p).map_err(validation)?;
                    StopList::default().with_custom(set)
                }
                None => StopList::english(),
            };
            if let Some(p) = &args.custom_stops {
                let custom = load_stoplist(p).map_err(validation)?;
                stops = stops.with_custom(custom);
            }
            let mut set = load_docs(&args.input)?;
            prepare_documents(&mut set, &stops);
            save_corpus(&set, &args.output).map_err(runtime)?;
            println!("prepared {} documents", set.len());
            Ok(())
        }
        Command::Embed(EmbedCommand::Train(args)) => {
            let set = load_docs(&args.input)?;
            let (vocab, warnings) = build_vocabulary(&set, args.min_count);
            for w in warnings {
                eprintln!("{w}");
            }
            let params = SkipgramParams {
                dimension: args.dim,
                window: args.window,
                negatives: args.negatives,
                epochs: args.epochs,
                seed: args.seed,
                ..Default::default()
            };
            let (table, stats) = train_skipgram(&set, &vocab, &params).map_err(runtime)?;
            save_embedding_table(&table, &args.output).map_err(runtime)?;
            println!(
                "trained {} vectors of dimension {} over {} pairs",
                table.len(),
                table.dimension,
                stats.pairs_trained
            );
            Ok(())
        }
        Command::Embed(EmbedCommand::Info { path }) => {
            let table = load_table(&path)?;
            println!("tokens: {}", table.len());
            println!("dimension: {}", table.dimension);
            println!("provenance: {:?}", table.provenance);
            Ok(())
        }
        Command::Semaxis(SemaxisCommand::Score(args)) => {
            let table = load_table(&args.table)?;
            let axis = load_axis(&table, &args.pos_seeds, &args.neg_seeds)?;
            let set = load_docs(&args.input)?;
            let summary =
                score_corpus(&table, &axis, &set, args.sample_std, false).map_err(runtime)?;
            if args.per_document {
                #[derive(serde::Serialize)]
                struct PerDocReport {
                    summary: crate::semaxis::SentimentSummary,
                    documents: Vec<(String, Option<f64>)>,
                }
                let documents = set
                    .documents
                    .iter()
                    .map(|d| (d.id.clone(), score_document(&table, &axis, d).ok()))
                    .collect();
                emit_json(&PerDocReport { summary, documents }, args.output.as_ref())
            } else {
                emit_json(&summary, args.output.as_ref())
            }
        }
        Command::Semaxis(SemaxisCommand::Entities(args)) => {
            let table = load_table(&args.table)?;
            let axis = load_axis(&table, &args.pos_seeds, &args.neg_seeds)?;
            let set = load_docs(&args.input)?;
            let gazetteer = {
                let text = std::fs::read_to_string(&args.gazetteer).map_err(validation)?;
                text.lines()
                    .map(|l| l.trim())
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| l.to_lowercase())
                    .collect::<Vec<_>>()
            };
            let ranked =
                score_entities(&table, &axis, &gazetteer, &set, args.top).map_err(runtime)?;
            emit_json(&ranked, None)
        }
        Command::Topics(TopicsCommand::Fit(args)) => {
            let set = load_docs(&args.input)?;
            let (vocab, _) = build_vocabulary(&set, 1);
            let params = LdaParams {
                k: args.k,
                alpha: args.alpha.unwrap_or(50.0 / args.k as f64),
                beta: args.beta,
                iterations: args.iterations,
                burn_in: args.burn_in,
                thinning: args.thinning,
                seed: args.seed,
            };
            let model = fit_lda(&set, &vocab, &params).map_err(runtime)?;
            save_model(&model, &args.output).map_err(runtime)?;
            println!("fit {} topics over {} documents", model.k(), model.n_docs());
            Ok(())
        }
        Command::Topics(TopicsCommand::Report(args)) => {
            let model = load_model(&args.model).map_err(validation)?;
            let sentiment = match &args.table {
                None => None,
                Some(path) => {
                    let table = load_table(path)?;
                    let axis = load_axis(&table, &args.pos_seeds, &args.neg_seeds)?;
                    Some(
                        topic_sentiment(&model, &table, &axis, args.top_words)
                            .map_err(runtime)?,
                    )
                }
            };
            let (share_theta, share_dominant) = model.topic_shares();
            for topic in 0..model.k() {
                let top = model.top_words(topic, args.top_words).map_err(runtime)?;
                let words: Vec<String> = top.into_iter().map(|(t, _)| t).collect();
                let s = sentiment
                    .as_ref()
                    .and_then(|v| v[topic])
                    .map(|x| format!("{:+.3}", x))
                    .unwrap_or_else(|| "n/a".into());
                println!(
                    "{:>3}  share {:>5.1}% (dominant {:>5.1}%)  sentiment {}  {}",
                    topic,
                    share_theta[topic] * 100.0,
                    share_dominant[topic] * 100.0,
                    s,
                    words.join(" ")
                );
            }
            Ok(())
        }
        Command::Topics(TopicsCommand::Timeline(args)) => {
            let model = load_model(&args.model).map_err(validation)?;
            let set = load_docs(&args.input)?;
            let (timelines, undated) = topic_timeline(&model, &set, args.bin).map_err(runtime)?;
            println!("topic\tperiod_start\tmass\tn_docs");
            for tl in &timelines {
                for bin in &tl.bins {
                    println!("{}\t{}\t{}\t{}", tl.topic, bin.period_start, bin.mass, bin.n_docs);
                }
            }
            if undated > 0 {
                eprintln!("{undated} documents had no timestamp");
            }
            Ok(())
        }
        Command::Stats(StatsCommand::Compare { summary_a, summary_b }) => {
            let read = |p: &PathBuf| -> Result<SampleSummary, CliError> {
                let text = std::fs::read_to_string(p).map_err(validation)?;
                let s: crate::semaxis::SentimentSummary =
                    serde_json::from_str(&text).map_err(validation)?;
                SampleSummary::new(s.mean, s.std, s.n_tokens, StdKind::Population)
                    .map_err(validation)
            };
            let result = welch_t_test(&read(&summary_a)?, &read(&summary_b)?).map_err(runtime)?;
            emit_json(&result, None)
        }
        Command::Stats(StatsCommand::Kappa { a, b }) => {
            let read = |p: &PathBuf| -> Result<Vec<LabeledDocument>, CliError> {
                load_labels(p, false).map_err(validation)
            };
            let la = read(&a)?;
            let lb = read(&b)?;
            let by_id: HashMap<&str, i8> = lb.iter().map(|l| (l.id.as_str(), l.label)).collect();
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for l in &la {
                if let Some(&other) = by_id.get(l.id.as_str()) {
                    xs.push(l.label);
                    ys.push(other);
                }
            }
            let kappa = cohens_kappa(&xs, &ys).map_err(runtime)?;
            println!("{{\"kappa\": {kappa}, \"n\": {}}}", xs.len());
            Ok(())
        }
        Command::Stats(StatsCommand::Chi2 { counts, continuity }) => {
            let parts: Vec<u64> = counts
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(validation)?;
            if parts.len() != 4 {
                return Err(CliError::Validation(format!(
                    "--counts needs 4 comma-separated values, got {}",
                    parts.len()
                )));
            }
            let table = [[parts[0], parts[1]], [parts[2], parts[3]]];
            let result = chi_squared_2x2(table, continuity).map_err(runtime)?;
            emit_json(&result, None)
        }
        Command::Classify(ClassifyCommand::Train(args)) => {
            let sets: Vec<DocumentSet> =
                args.corpora.iter().map(load_docs).collect::<Result<_, _>>()?;
            let index: HashMap<&str, &Document> = sets
                .iter()
                .flat_map(|s| &s.documents)
                .map(|d| (d.id.as_str(), d))
                .collect();
            let table = load_table(&args.table)?;
            let labeled = load_labels(&args.labels, false).map_err(validation)?;
            let (binary, n_neutral) = drop_neutral(&labeled);
            let (train, validation_set) =
                split_dataset(&binary, args.split_ratio, args.seed).map_err(validation)?;
            let params = TrainParams {
                epochs: args.epochs,
                learning_rate: args.learning_rate,
                l2: args.l2,
                seed: args.seed,
            };
            let train_pairs = resolve_labeled(train, &index);
            let report = train_classifier(&train_pairs, &table, &params).map_err(runtime)?;
            let val_pairs = resolve_labeled(validation_set, &index);
            let (metrics, _) = evaluate(&report.model, &table, &val_pairs).map_err(runtime)?;
            emit_json(&report.model, Some(&args.output))?;
            println!(
                "trained on {} documents ({n_neutral} neutral dropped, {} featureless); validation accuracy {:.3}",
                train_pairs.len(),
                report.excluded_docs.len(),
                metrics.accuracy
            );
            Ok(())
        }
        Command::Classify(ClassifyCommand::Eval(args)) => {
            let sets: Vec<DocumentSet> =
                args.corpora.iter().map(load_docs).collect::<Result<_, _>>()?;
            let index: HashMap<&str, &Document> = sets
                .iter()
                .flat_map(|s| &s.documents)
                .map(|d| (d.id.as_str(), d))
                .collect();
            let table = load_table(&args.table)?;
            let model: LinearModel = {
                let text = std::fs::read_to_string(&args.model).map_err(validation)?;
                serde_json::from_str(&text).map_err(validation)?
            };
            let gold = load_labels(&args.gold, true).map_err(validation)?;
            let (binary, _) = drop_neutral(&gold);
            let pairs = resolve_labeled(binary, &index);
            let (metrics, _) = evaluate(&model, &table, &pairs).map_err(runtime)?;
            emit_json(&metrics, None)
        }
        Command::Run(args) => {
            let (config, hash) = PipelineConfig::from_file(&args.config).map_err(|e| match e {
                PipelineError::Validation(m) => CliError::Validation(m),
                other => CliError::Runtime(other.to_string()),
            })?;
            let report = run_pipeline(&config, &hash).map_err(|e| match e {
                PipelineError::Validation(m) => CliError::Validation(m),
                other => CliError::Runtime(other.to_string()),
            })?;
            print!("{}", render_report(&report));
            eprintln!(
                "report written to {}",
                config.output_dir.join("report.json").display()
            );
            Ok(())
        }
    }
}
