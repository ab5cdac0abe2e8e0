//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
    #[error("configuration error: {0}")]
    Config(String),
}

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("embedding file is empty")]
    Empty,
    #[error("vocabulary is empty")]
    EmptyVocabulary,
    #[error("cosine of zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    UnequalDimensions(usize, usize),
}

#[derive(Debug, Error)]
pub enum AxisError {
    #[error("no {pole} seed resolved in the table; missing: {missing:?}")]
    UnresolvedPole { pole: &'static str, missing: Vec<String> },
    #[error("axis vector is zero (positive and negative seed means coincide)")]
    ZeroAxis,
    #[error("token {0:?} is out of vocabulary")]
    OutOfVocabulary(String),
    #[error("no in-vocabulary token occurrences to score")]
    NothingToScore,
    #[error("gazetteer is empty")]
    EmptyGazetteer,
}

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("invalid sample summary: {0}")]
    InvalidSummary(String),
    #[error("zero marginal in contingency table: {0}")]
    ZeroMarginal(String),
    #[error("label lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Error)]
pub enum TopicError {
    #[error("vocabulary is empty")]
    EmptyVocabulary,
    #[error("no usable documents")]
    NoDocuments,
    #[error("topic index {0} out of range (K = {1})")]
    TopicOutOfRange(usize, usize),
    #[error("no dated documents for timeline")]
    NoDatedDocuments,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("model file line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("training set is empty after filtering")]
    EmptyTrainingSet,
    #[error("gold set is empty")]
    EmptyGoldSet,
    #[error("unexpected label {0}; expected -1, 0, or 1")]
    BadLabel(i8),
    #[error("bad label file: {0}")]
    BadLabelFile(String),
    #[error("need at least 2 documents to split, got {0}")]
    TooFewToSplit(usize),
    #[error("split ratio {0} outside (0, 1)")]
    BadRatio(f64),
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config validation failed: {0}")]
    Validation(String),
    #[error("stage {stage} failed: {message}")]
    Stage { stage: &'static str, message: String },
}

impl PipelineError {
    pub fn stage(stage: &'static str, err: impl std::fmt::Display) -> Self {
        PipelineError::Stage { stage, message: err.to_string() }
    }
}
