//! End-to-end pipeline: one configuration file in, a comparison report and
//! plot-data files out.
//!
//! Stages run in order ingest -> clean -> prep -> embed -> semaxis -> topics
//! -> classify -> stats, each persisting its output under
//! `<output_dir>/stages/` so a rerun resumes from cached stage files. A single
//! global seed fans out to per-stage seeds through a stage-name hash, keeping
//! every stage independently deterministic.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::align::{strip_quoted_text, AlignmentScoring, CleanEvent};
use crate::classifier::{
    drop_neutral, evaluate, load_labels, mean_predicted_sentiment, split_dataset, train_classifier,
    LabeledDocument, TrainParams,
};
use crate::corpus::{
    filter_by_phrases, load_corpus, remove_exact_duplicates, save_corpus, Document, DocumentSet,
};
use crate::embedding::{
    load_embedding_table, save_embedding_table, train_skipgram_multi, EmbeddingTable,
    SkipgramParams,
};
use crate::error::PipelineError;
use crate::prep::{build_vocabulary_multi, load_stoplist, prepare_documents, StopList};
use crate::semaxis::{
    build_axis, score_corpus, score_entities, EntityScore, SentimentSummary,
    DEFAULT_NEGATIVE_SEEDS, DEFAULT_POSITIVE_SEEDS,
};
use crate::stats::{chi_squared_2x2, welch_t_test, SampleSummary, StdKind, TestResult};
use crate::topics::{
    fit_lda, load_model, save_model, topic_sentiment, topic_timeline, Binning, LdaParams,
    TopicTimeline,
};

pub const PIPELINE_VERSION: &str = env!("CARGO_PKG_VERSION");

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub path: PathBuf,
    pub tag: String,
    #[serde(default)]
    pub filter_phrases: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct CleaningConfig {
    pub match_score: i64,
    pub mismatch_penalty: i64,
    pub gap_penalty: i64,
    pub min_match_tokens: usize,
    pub all_predecessors: bool,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        let s = AlignmentScoring::default();
        CleaningConfig {
            match_score: s.match_score,
            mismatch_penalty: s.mismatch_penalty,
            gap_penalty: s.gap_penalty,
            min_match_tokens: s.min_match_tokens,
            all_predecessors: false,
        }
    }
}

impl CleaningConfig {
    pub fn scoring(&self) -> AlignmentScoring {
        AlignmentScoring {
            match_score: self.match_score,
            mismatch_penalty: self.mismatch_penalty,
            gap_penalty: self.gap_penalty,
            min_match_tokens: self.min_match_tokens,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PrepConfig {
    pub custom_stops: Option<PathBuf>,
    /// Minimum corpus frequency for the embedding vocabulary.
    pub min_count: usize,
}

impl Default for PrepConfig {
    fn default() -> Self {
        PrepConfig { custom_stops: None, min_count: 5 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct EmbeddingConfig {
    /// "train" trains per-corpus skip-gram tables; "load" reads one
    /// pretrained table shared by both corpora.
    pub mode: String,
    pub path: Option<PathBuf>,
    pub dimension: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        let p = SkipgramParams::default();
        EmbeddingConfig {
            mode: "train".into(),
            path: None,
            dimension: p.dimension,
            window: p.window,
            negatives: p.negatives,
            epochs: p.epochs,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct AxisConfig {
    pub positive_seeds: Option<PathBuf>,
    pub negative_seeds: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct TopicsConfig {
    pub k: usize,
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub burn_in: usize,
    pub thinning: usize,
    /// Words per topic used for reports and topic sentiment.
    pub top_words: usize,
}

impl Default for TopicsConfig {
    fn default() -> Self {
        TopicsConfig {
            k: 20,
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            burn_in: 200,
            thinning: 10,
            top_words: 15,
        }
    }
}

impl TopicsConfig {
    pub fn lda_params(&self, seed: u64) -> LdaParams {
        LdaParams {
            k: self.k,
            alpha: self.alpha.unwrap_or(50.0 / self.k as f64),
            beta: self.beta,
            iterations: self.iterations,
            burn_in: self.burn_in,
            thinning: self.thinning,
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelsConfig {
    pub train: PathBuf,
    pub gold: PathBuf,
    #[serde(default = "default_split_ratio")]
    pub split_ratio: f64,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "default_l2")]
    pub l2: f64,
}

fn default_split_ratio() -> f64 {
    0.8
}
fn default_epochs() -> usize {
    500
}
fn default_learning_rate() -> f64 {
    0.5
}
fn default_l2() -> f64 {
    1e-4
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: u64,
    pub output_dir: PathBuf,
    pub corpus_a: CorpusConfig,
    pub corpus_b: CorpusConfig,
    #[serde(default)]
    pub cleaning: CleaningConfig,
    #[serde(default)]
    pub prep: PrepConfig,
    #[serde(default)]
    pub embedding: EmbeddingConfig,
    #[serde(default)]
    pub axis: AxisConfig,
    #[serde(default)]
    pub gazetteer: Option<PathBuf>,
    #[serde(default)]
    pub topics: TopicsConfig,
    #[serde(default)]
    pub labels: Option<LabelsConfig>,
    #[serde(default = "default_binning")]
    pub timeline_binning: Binning,
    #[serde(default = "default_top_entities")]
    pub top_entities: usize,
}

fn default_binning() -> Binning {
    Binning::Year
}
fn default_top_entities() -> usize {
    5
}

impl PipelineConfig {
    /// Reads and validates a TOML config. Relative paths are resolved against
    /// the config file's directory. Returns the config and the hex SHA-256 of
    /// the file contents (the provenance hash).
    pub fn from_file(path: impl AsRef<Path>) -> Result<(Self, String), PipelineError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| PipelineError::Validation(format!("{}: {}", path.display(), e)))?;
        let hash = hex_digest(text.as_bytes());
        let mut config: PipelineConfig = toml::from_str(&text)
            .map_err(|e| PipelineError::Validation(format!("{}: {}", path.display(), e)))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        config.resolve_paths(base);
        config.validate()?;
        Ok((config, hash))
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&p);
            }
        };
        fix(&mut self.output_dir);
        fix(&mut self.corpus_a.path);
        fix(&mut self.corpus_b.path);
        if let Some(p) = &mut self.prep.custom_stops {
            fix(p);
        }
        if let Some(p) = &mut self.embedding.path {
            fix(p);
        }
        if let Some(p) = &mut self.axis.positive_seeds {
            fix(p);
        }
        if let Some(p) = &mut self.axis.negative_seeds {
            fix(p);
        }
        if let Some(p) = &mut self.gazetteer {
            fix(p);
        }
        if let Some(l) = &mut self.labels {
            fix(&mut l.train);
            fix(&mut l.gold);
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let mut required: Vec<(&str, &Path)> = vec![
            ("corpus_a.path", &self.corpus_a.path),
            ("corpus_b.path", &self.corpus_b.path),
        ];
        if let Some(p) = &self.prep.custom_stops {
            required.push(("prep.custom_stops", p));
        }
        if let Some(p) = &self.axis.positive_seeds {
            required.push(("axis.positive_seeds", p));
        }
        if let Some(p) = &self.axis.negative_seeds {
            required.push(("axis.negative_seeds", p));
        }
        if let Some(p) = &self.gazetteer {
            required.push(("gazetteer", p));
        }
        if let Some(l) = &self.labels {
            required.push(("labels.train", &l.train));
            required.push(("labels.gold", &l.gold));
        }
        if self.embedding.mode == "load" {
            match &self.embedding.path {
                Some(p) => required.push(("embedding.path", p)),
                None => {
                    return Err(PipelineError::Validation(
                        "embedding.mode = \"load\" requires embedding.path".into(),
                    ))
                }
            }
        } else if self.embedding.mode != "train" {
            return Err(PipelineError::Validation(format!(
                "embedding.mode must be \"train\" or \"load\", got {:?}",
                self.embedding.mode
            )));
        }
        for (name, p) in required {
            if !p.exists() {
                return Err(PipelineError::Validation(format!(
                    "{} does not exist: {}",
                    name,
                    p.display()
                )));
            }
        }
        if self.corpus_a.tag == self.corpus_b.tag {
            return Err(PipelineError::Validation("corpus tags must differ".into()));
        }
        self.cleaning.scoring().validate().map_err(PipelineError::Validation)?;
        fs::create_dir_all(&self.output_dir).map_err(|e| {
            PipelineError::Validation(format!(
                "output_dir {} not writable: {}",
                self.output_dir.display(),
                e
            ))
        })?;
        Ok(())
    }
}

/// Derives a per-stage seed from the global seed and the stage name.
pub fn stage_seed(global_seed: u64, stage: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(global_seed.to_le_bytes());
    hasher.update(stage.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{:02x}", b)).collect()
}

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportProvenance {
    pub config_hash: String,
    pub global_seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopicReportRow {
    pub topic: usize,
    pub top_words: Vec<String>,
    /// Mean theta mass across documents.
    pub share_theta: f64,
    /// Fraction of documents with this dominant topic.
    pub share_dominant: f64,
    pub sentiment: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusSection {
    pub tag: String,
    pub n_loaded: usize,
    pub n_after_filter: usize,
    pub n_after_dedup: usize,
    pub n_after_clean: usize,
    pub clean_events: Vec<CleanEvent>,
    pub sentiment: SentimentSummary,
    pub topics: Vec<TopicReportRow>,
    pub entities: Vec<EntityScore>,
    pub timelines: Vec<TopicTimeline>,
    pub undated_docs: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifierSection {
    pub n_labeled: usize,
    pub n_neutral_dropped: usize,
    pub n_train: usize,
    pub n_validation: usize,
    pub n_gold: usize,
    pub gold_accuracy: f64,
    pub gold_f1: f64,
    pub validation_accuracy: f64,
    pub mean_predicted_a: Option<f64>,
    pub mean_predicted_b: Option<f64>,
    /// 2x2 prediction-count comparison between the corpora.
    pub chi_squared: TestResult,
    pub prediction_counts: [[u64; 2]; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub provenance: ReportProvenance,
    pub corpus_a: CorpusSection,
    pub corpus_b: CorpusSection,
    pub sentiment_welch: TestResult,
    pub classifier: Option<ClassifierSection>,
}

// ---------------------------------------------------------------------------
// Stage plumbing
// ---------------------------------------------------------------------------

fn stage_dir(config: &PipelineConfig) -> PathBuf {
    config.output_dir.join("stages")
}

fn err<E: std::fmt::Display>(stage: &'static str) -> impl Fn(E) -> PipelineError {
    move |e| PipelineError::stage(stage, e)
}

fn load_cached_jsonl(path: &Path, tag: &str) -> Option<DocumentSet> {
    if path.exists() {
        load_corpus(path, tag).ok().map(|r| r.set)
    } else {
        None
    }
}

fn read_word_list(path: &Path, stage: &'static str) -> Result<Vec<String>, PipelineError> {
    let text = fs::read_to_string(path).map_err(err(stage))?;
    Ok(text
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect())
}

struct CorpusArtifacts {
    prepared: DocumentSet,
    table: EmbeddingTable,
    n_loaded: usize,
    n_after_filter: usize,
    n_after_dedup: usize,
    n_after_clean: usize,
    clean_events: Vec<CleanEvent>,
}

fn run_corpus_stages(
    config: &PipelineConfig,
    which: &CorpusConfig,
    stops: &StopList,
) -> Result<CorpusArtifacts, PipelineError> {
    let stages = stage_dir(config);
    let tag = &which.tag;

    // ingest: load, phrase-filter, exact dedup
    let ingest_path = stages.join(format!("ingest_{tag}.jsonl"));
    let ingest_meta_path = stages.join(format!("ingest_{tag}_meta.json"));
    #[derive(Serialize, Deserialize, Default)]
    struct IngestMeta {
        n_loaded: usize,
        n_after_filter: usize,
        n_after_dedup: usize,
    }
    let (ingested, meta) = match (load_cached_jsonl(&ingest_path, tag), ingest_meta_path.exists()) {
        (Some(set), true) => {
            let meta: IngestMeta =
                serde_json::from_str(&fs::read_to_string(&ingest_meta_path).map_err(err("ingest"))?)
                    .map_err(err("ingest"))?;
            (set, meta)
        }
        _ => {
            let report = load_corpus(&which.path, tag).map_err(err("ingest"))?;
            let n_loaded = report.set.len();
            let filtered = if which.filter_phrases.is_empty() {
                report.set
            } else {
                filter_by_phrases(&report.set, &which.filter_phrases).map_err(err("ingest"))?
            };
            let n_after_filter = filtered.len();
            let (deduped, _) = remove_exact_duplicates(&filtered);
            let meta =
                IngestMeta { n_loaded, n_after_filter, n_after_dedup: deduped.len() };
            save_corpus(&deduped, &ingest_path).map_err(err("ingest"))?;
            fs::write(&ingest_meta_path, serde_json::to_string_pretty(&meta).unwrap())
                .map_err(err("ingest"))?;
            (deduped, meta)
        }
    };

    // clean: quote stripping per thread
    let clean_path = stages.join(format!("clean_{tag}.jsonl"));
    let clean_report_path = stages.join(format!("clean_{tag}_report.json"));
    let (cleaned, clean_events) = match (load_cached_jsonl(&clean_path, tag), clean_report_path.exists()) {
        (Some(set), true) => {
            let events: Vec<CleanEvent> = serde_json::from_str(
                &fs::read_to_string(&clean_report_path).map_err(err("clean"))?,
            )
            .map_err(err("clean"))?;
            (set, events)
        }
        _ => {
            let scoring = config.cleaning.scoring();
            let mut cleaned = DocumentSet::new(tag.clone());
            let mut events = Vec::new();
            for thread in ingested.threads() {
                let docs: Vec<Document> = thread.into_iter().cloned().collect();
                let (survivors, mut ev) =
                    strip_quoted_text(&docs, &scoring, config.cleaning.all_predecessors);
                cleaned.documents.extend(survivors);
                events.append(&mut ev);
            }
            save_corpus(&cleaned, &clean_path).map_err(err("clean"))?;
            fs::write(&clean_report_path, serde_json::to_string_pretty(&events).unwrap())
                .map_err(err("clean"))?;
            (cleaned, events)
        }
    };

    // prep: tokenize + stop-words
    let prep_path = stages.join(format!("prep_{tag}.jsonl"));
    let prepared = match load_cached_jsonl(&prep_path, tag) {
        Some(set) => set,
        None => {
            let mut set = cleaned.clone();
            prepare_documents(&mut set, stops);
            save_corpus(&set, &prep_path).map_err(err("prep"))?;
            set
        }
    };

    // embed: train per corpus or load a shared table
    let embed_path = stages.join(format!("embed_{tag}.vec"));
    let table = if embed_path.exists() {
        load_embedding_table(&embed_path).map_err(err("embed"))?.0
    } else if config.embedding.mode == "load" {
        let path = config.embedding.path.as_ref().unwrap();
        let (table, _) = load_embedding_table(path).map_err(err("embed"))?;
        table
    } else {
        let (vocab, _) = build_vocabulary_multi(&[&prepared], config.prep.min_count);
        let params = SkipgramParams {
            dimension: config.embedding.dimension,
            window: config.embedding.window,
            negatives: config.embedding.negatives,
            epochs: config.embedding.epochs,
            seed: stage_seed(config.seed, &format!("embed_{tag}")),
            ..Default::default()
        };
        let (table, _) =
            train_skipgram_multi(&[&prepared], &vocab, &params).map_err(err("embed"))?;
        save_embedding_table(&table, &embed_path).map_err(err("embed"))?;
        table
    };

    Ok(CorpusArtifacts {
        prepared,
        table,
        n_loaded: meta.n_loaded,
        n_after_filter: meta.n_after_filter,
        n_after_dedup: meta.n_after_dedup,
        n_after_clean: cleaned.len(),
        clean_events,
    })
}

fn axis_seed_lists(config: &PipelineConfig) -> Result<(Vec<String>, Vec<String>), PipelineError> {
    let positive = match &config.axis.positive_seeds {
        Some(p) => read_word_list(p, "semaxis")?,
        None => DEFAULT_POSITIVE_SEEDS.iter().map(|s| s.to_string()).collect(),
    };
    let negative = match &config.axis.negative_seeds {
        Some(p) => read_word_list(p, "semaxis")?,
        None => DEFAULT_NEGATIVE_SEEDS.iter().map(|s| s.to_string()).collect(),
    };
    Ok((positive, negative))
}

fn corpus_section(
    config: &PipelineConfig,
    which: &CorpusConfig,
    artifacts: &CorpusArtifacts,
) -> Result<CorpusSection, PipelineError> {
    let stages = stage_dir(config);
    let tag = &which.tag;
    let (positive, negative) = axis_seed_lists(config)?;
    let axis =
        build_axis(&artifacts.table, &positive, &negative).map_err(err("semaxis"))?;

    // semaxis: token-occurrence sentiment population summary
    let semaxis_path = stages.join(format!("semaxis_{tag}.json"));
    let sentiment: SentimentSummary = if semaxis_path.exists() {
        serde_json::from_str(&fs::read_to_string(&semaxis_path).map_err(err("semaxis"))?)
            .map_err(err("semaxis"))?
    } else {
        let summary = score_corpus(&artifacts.table, &axis, &artifacts.prepared, false, false)
            .map_err(err("semaxis"))?;
        fs::write(&semaxis_path, serde_json::to_string_pretty(&summary).unwrap())
            .map_err(err("semaxis"))?;
        summary
    };

    // topics: LDA fit plus report rows and timelines
    let model_path = stages.join(format!("topics_{tag}.model"));
    let model = if model_path.exists() {
        load_model(&model_path).map_err(err("topics"))?
    } else {
        let (vocab, _) = build_vocabulary_multi(&[&artifacts.prepared], 1);
        let params = config.topics.lda_params(stage_seed(config.seed, &format!("topics_{tag}")));
        let model = fit_lda(&artifacts.prepared, &vocab, &params).map_err(err("topics"))?;
        save_model(&model, &model_path).map_err(err("topics"))?;
        model
    };

    let sentiments = topic_sentiment(&model, &artifacts.table, &axis, config.topics.top_words)
        .map_err(err("topics"))?;
    let (share_theta, share_dominant) = model.topic_shares();
    let mut topic_rows = Vec::with_capacity(model.k());
    for topic in 0..model.k() {
        let top = model.top_words(topic, config.topics.top_words).map_err(err("topics"))?;
        topic_rows.push(TopicReportRow {
            topic,
            top_words: top.into_iter().map(|(t, _)| t).collect(),
            share_theta: share_theta[topic],
            share_dominant: share_dominant[topic],
            sentiment: sentiments[topic],
        });
    }

    let (timelines, undated) =
        match topic_timeline(&model, &artifacts.prepared, config.timeline_binning) {
            Ok(x) => x,
            Err(crate::error::TopicError::NoDatedDocuments) => (Vec::new(), 0),
            Err(e) => return Err(PipelineError::stage("topics", e)),
        };

    // entities: optional gazetteer ranking
    let entities = match &config.gazetteer {
        None => Vec::new(),
        Some(path) => {
            let gazetteer = read_word_list(path, "semaxis")?;
            score_entities(
                &artifacts.table,
                &axis,
                &gazetteer,
                &artifacts.prepared,
                config.top_entities,
            )
            .map_err(err("semaxis"))?
        }
    };

    Ok(CorpusSection {
        tag: tag.clone(),
        n_loaded: artifacts.n_loaded,
        n_after_filter: artifacts.n_after_filter,
        n_after_dedup: artifacts.n_after_dedup,
        n_after_clean: artifacts.n_after_clean,
        clean_events: artifacts.clean_events.clone(),
        sentiment,
        topics: topic_rows,
        entities,
        timelines,
        undated_docs: undated,
    })
}

fn classifier_section(
    config: &PipelineConfig,
    labels_config: &LabelsConfig,
    a: &CorpusArtifacts,
    b: &CorpusArtifacts,
) -> Result<ClassifierSection, PipelineError> {
    const STAGE: &str = "classify";

    // The classifier works over the combined corpus, so it gets one table
    // trained on both (or the shared loaded table).
    let stages = stage_dir(config);
    let combined_path = stages.join("embed_combined.vec");
    let table = if combined_path.exists() {
        load_embedding_table(&combined_path).map_err(|x| PipelineError::stage(STAGE, x))?.0
    } else if config.embedding.mode == "load" {
        load_embedding_table(config.embedding.path.as_ref().unwrap()).map_err(|x| PipelineError::stage(STAGE, x))?.0
    } else {
        let (vocab, _) =
            build_vocabulary_multi(&[&a.prepared, &b.prepared], config.prep.min_count);
        let params = SkipgramParams {
            dimension: config.embedding.dimension,
            window: config.embedding.window,
            negatives: config.embedding.negatives,
            epochs: config.embedding.epochs,
            seed: stage_seed(config.seed, "embed_combined"),
            ..Default::default()
        };
        let (table, _) =
            train_skipgram_multi(&[&a.prepared, &b.prepared], &vocab, &params).map_err(|x| PipelineError::stage(STAGE, x))?;
        save_embedding_table(&table, &combined_path).map_err(|x| PipelineError::stage(STAGE, x))?;
        table
    };

    let doc_index: std::collections::HashMap<&str, &Document> = a
        .prepared
        .documents
        .iter()
        .chain(&b.prepared.documents)
        .map(|d| (d.id.as_str(), d))
        .collect();
    let resolve = |labeled: Vec<LabeledDocument>| -> Vec<(LabeledDocument, &Document)> {
        labeled
            .into_iter()
            .filter_map(|l| doc_index.get(l.id.as_str()).map(|d| (l, *d)))
            .collect()
    };

    let labeled = load_labels(&labels_config.train, false).map_err(|x| PipelineError::stage(STAGE, x))?;
    let n_labeled = labeled.len();
    let (binary, n_neutral_dropped) = drop_neutral(&labeled);
    let gold_raw = load_labels(&labels_config.gold, true).map_err(|x| PipelineError::stage(STAGE, x))?;
    let (gold_binary, _) = drop_neutral(&gold_raw);
    let gold_ids: std::collections::HashSet<&str> =
        gold_binary.iter().map(|l| l.id.as_str()).collect();
    let non_gold: Vec<LabeledDocument> =
        binary.into_iter().filter(|l| !gold_ids.contains(l.id.as_str())).collect();

    let split_seed = stage_seed(config.seed, "classify_split");
    let (train, validation) =
        split_dataset(&non_gold, labels_config.split_ratio, split_seed).map_err(|x| PipelineError::stage(STAGE, x))?;
    let (n_train, n_validation) = (train.len(), validation.len());

    let params = TrainParams {
        epochs: labels_config.epochs,
        learning_rate: labels_config.learning_rate,
        l2: labels_config.l2,
        seed: stage_seed(config.seed, "classify_train"),
    };
    let train_pairs = resolve(train);
    let report = train_classifier(&train_pairs, &table, &params).map_err(|x| PipelineError::stage(STAGE, x))?;

    let validation_pairs = resolve(validation);
    let (val_metrics, _) = evaluate(&report.model, &table, &validation_pairs).map_err(|x| PipelineError::stage(STAGE, x))?;
    let gold_pairs = resolve(gold_binary);
    let n_gold = gold_pairs.len();
    let (gold_metrics, gold_preds) = evaluate(&report.model, &table, &gold_pairs).map_err(|x| PipelineError::stage(STAGE, x))?;
    fs::write(
        stages.join("classify_gold_predictions.json"),
        serde_json::to_string_pretty(&gold_preds).unwrap(),
    )
    .map_err(|x| PipelineError::stage(STAGE, x))?;

    // chi-squared over the per-corpus prediction counts
    let count_for = |docs: &[Document]| -> [u64; 2] {
        let mut pos = 0;
        let mut neg = 0;
        for d in docs {
            match report.model.predict(&table, d) {
                Some(1) => pos += 1,
                Some(-1) => neg += 1,
                _ => {}
            }
        }
        [pos, neg]
    };
    let counts = [count_for(&a.prepared.documents), count_for(&b.prepared.documents)];
    let chi = chi_squared_2x2(counts, false).map_err(|x| PipelineError::stage(STAGE, x))?;

    Ok(ClassifierSection {
        n_labeled,
        n_neutral_dropped,
        n_train,
        n_validation,
        n_gold,
        gold_accuracy: gold_metrics.accuracy,
        gold_f1: gold_metrics.f1,
        validation_accuracy: val_metrics.accuracy,
        mean_predicted_a: mean_predicted_sentiment(&report.model, &table, &a.prepared.documents),
        mean_predicted_b: mean_predicted_sentiment(&report.model, &table, &b.prepared.documents),
        chi_squared: chi,
        prediction_counts: counts,
    })
}

/// Executes the full pipeline. Stage outputs are persisted under
/// `<output_dir>/stages/` and reused on rerun; identical config and seed give
/// an identical report.
pub fn run_pipeline(
    config: &PipelineConfig,
    config_hash: &str,
) -> Result<ComparisonReport, PipelineError> {
    fs::create_dir_all(stage_dir(config))
        .map_err(|e| PipelineError::stage("ingest", e))?;

    let mut stops = StopList::english();
    if let Some(path) = &config.prep.custom_stops {
        let custom = load_stoplist(path).map_err(err("prep"))?;
        stops = stops.with_custom(custom);
    }

    let artifacts_a = run_corpus_stages(config, &config.corpus_a, &stops)?;
    let artifacts_b = run_corpus_stages(config, &config.corpus_b, &stops)?;

    let section_a = corpus_section(config, &config.corpus_a, &artifacts_a)?;
    let section_b = corpus_section(config, &config.corpus_b, &artifacts_b)?;

    let welch = {
        let to_summary = |s: &SentimentSummary| {
            SampleSummary::new(s.mean, s.std, s.n_tokens, StdKind::Population)
                .map_err(err("stats"))
        };
        welch_t_test(&to_summary(&section_a.sentiment)?, &to_summary(&section_b.sentiment)?)
            .map_err(err("stats"))?
    };

    let classifier = match &config.labels {
        Some(lc) => Some(classifier_section(config, lc, &artifacts_a, &artifacts_b)?),
        None => None,
    };

    let report = ComparisonReport {
        provenance: ReportProvenance {
            config_hash: config_hash.to_string(),
            global_seed: config.seed,
            version: PIPELINE_VERSION.to_string(),
        },
        corpus_a: section_a,
        corpus_b: section_b,
        sentiment_welch: welch,
        classifier,
    };

    fs::write(
        config.output_dir.join("report.json"),
        serde_json::to_string_pretty(&report).unwrap(),
    )
    .map_err(err("report"))?;
    fs::write(config.output_dir.join("report.txt"), render_report(&report))
        .map_err(err("report"))?;
    emit_plot_data(&report, &config.output_dir.join("plots"))?;
    Ok(report)
}

/// Renders the human-readable summary.
pub fn render_report(report: &ComparisonReport) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "corpus comparison report");
    let _ = writeln!(out, "version {}  seed {}", report.provenance.version, report.provenance.global_seed);
    let _ = writeln!(out, "config {}", report.provenance.config_hash);
    for section in [&report.corpus_a, &report.corpus_b] {
        let _ = writeln!(out, "\n== corpus {} ==", section.tag);
        let _ = writeln!(
            out,
            "documents: {} loaded, {} after filter, {} after dedup, {} after clean",
            section.n_loaded, section.n_after_filter, section.n_after_dedup, section.n_after_clean
        );
        let s = &section.sentiment;
        let _ = writeln!(
            out,
            "sentiment: mean {:.4} std {:.4} over {} token occurrences ({} OOV skipped)",
            s.mean, s.std, s.n_tokens, s.oov_count
        );
        let _ = writeln!(out, "topics:");
        for row in &section.topics {
            let sentiment = row
                .sentiment
                .map(|x| format!("{:+.3}", x))
                .unwrap_or_else(|| "  n/a".into());
            let _ = writeln!(
                out,
                "  {:>2}  share {:>5.1}% (dominant {:>5.1}%)  sentiment {}  {}",
                row.topic,
                row.share_theta * 100.0,
                row.share_dominant * 100.0,
                sentiment,
                row.top_words.iter().take(8).cloned().collect::<Vec<_>>().join(" ")
            );
        }
        if !section.entities.is_empty() {
            let _ = writeln!(out, "entities:");
            for e in &section.entities {
                let score =
                    e.score.map(|x| format!("{:+.3}", x)).unwrap_or_else(|| "n/a".into());
                let _ = writeln!(out, "  {:<20} freq {:>6}  sentiment {}", e.entity, e.frequency, score);
            }
        }
    }
    let w = &report.sentiment_welch;
    let _ = writeln!(
        out,
        "\ntoken-wise sentiment comparison (Welch t): t = {:.3}, dof = {:.1}, p = {}",
        w.statistic,
        w.dof,
        w.p_display()
    );
    if let Some(c) = &report.classifier {
        let _ = writeln!(out, "\n== supervised baseline ==");
        let _ = writeln!(
            out,
            "labels: {} total, {} neutral dropped, split {}/{}, gold {}",
            c.n_labeled, c.n_neutral_dropped, c.n_train, c.n_validation, c.n_gold
        );
        let _ = writeln!(
            out,
            "gold accuracy {:.3}  gold F1 {:.3}  validation accuracy {:.3}",
            c.gold_accuracy, c.gold_f1, c.validation_accuracy
        );
        let _ = writeln!(
            out,
            "mean predicted sentiment: {} = {:.3}, {} = {:.3}",
            report.corpus_a.tag,
            c.mean_predicted_a.unwrap_or(f64::NAN),
            report.corpus_b.tag,
            c.mean_predicted_b.unwrap_or(f64::NAN)
        );
        let _ = writeln!(
            out,
            "document-wise comparison (chi-squared): chi2 = {:.4}, p = {}",
            c.chi_squared.statistic,
            c.chi_squared.p_display()
        );
    }
    out
}

/// Writes per-figure delimited-text files: per-topic sentiment/share tables,
/// topic timelines, and entity rankings, one set per corpus.
pub fn emit_plot_data(report: &ComparisonReport, dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    const STAGE: &str = "report";
    fs::create_dir_all(dir).map_err(|x| PipelineError::stage(STAGE, x))?;
    let mut written = Vec::new();

    for section in [&report.corpus_a, &report.corpus_b] {
        let tag = &section.tag;

        let mut topic_file = String::from("topic\tsentiment\tshare_theta\tshare_dominant\n");
        for row in &section.topics {
            topic_file.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                row.topic,
                row.sentiment.map(|x| x.to_string()).unwrap_or_else(|| "NA".into()),
                row.share_theta,
                row.share_dominant
            ));
        }
        let path = dir.join(format!("topic_sentiment_{tag}.tsv"));
        fs::write(&path, topic_file).map_err(|x| PipelineError::stage(STAGE, x))?;
        written.push(path);

        let mut timeline_file = String::from("topic\tperiod_start\tmass\tn_docs\n");
        for tl in &section.timelines {
            for bin in &tl.bins {
                timeline_file.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    tl.topic, bin.period_start, bin.mass, bin.n_docs
                ));
            }
        }
        let path = dir.join(format!("topic_timeline_{tag}.tsv"));
        fs::write(&path, timeline_file).map_err(|x| PipelineError::stage(STAGE, x))?;
        written.push(path);

        let mut entity_file = String::from("entity\tfrequency\tsentiment\n");
        for ent in &section.entities {
            entity_file.push_str(&format!(
                "{}\t{}\t{}\n",
                ent.entity,
                ent.frequency,
                ent.score.map(|x| x.to_string()).unwrap_or_else(|| "NA".into())
            ));
        }
        let path = dir.join(format!("entities_{tag}.tsv"));
        fs::write(&path, entity_file).map_err(|x| PipelineError::stage(STAGE, x))?;
        written.push(path);
    }
    Ok(written)
}
