//! Semantic-axis sentiment: build an axis from positive/negative seed sets and
//! score tokens, documents, corpora, and gazetteer entities along it.
//!
//! A token's score is the cosine similarity between its embedding and the axis
//! vector mean(positive seeds) - mean(negative seeds). Corpus sentiment is the
//! mean over per-token-occurrence scores (repeats counted each time), which is
//! the population the two-sample significance test runs on.

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, DocumentSet};
use crate::embedding::{cosine, EmbeddingTable};
use crate::error::AxisError;

/// Default positive seeds, shipped so results are reproducible.
pub const DEFAULT_POSITIVE_SEEDS: &[&str] = &["good", "great", "excellent", "love", "best", "reliable"];
/// Default negative seeds.
pub const DEFAULT_NEGATIVE_SEEDS: &[&str] = &["bad", "terrible", "poor", "hate", "worst", "unreliable"];

/// A direction in embedding space defined by seed word sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemanticAxis {
    pub axis_vector: Vec<f64>,
    pub positive_seeds: Vec<String>,
    pub negative_seeds: Vec<String>,
    pub resolved_positive: Vec<String>,
    pub resolved_negative: Vec<String>,
}

/// Token-occurrence score population for one corpus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SentimentSummary {
    pub corpus_tag: String,
    pub mean: f64,
    /// Population standard deviation unless `sample_std` was requested.
    pub std: f64,
    pub n_tokens: u64,
    pub oov_count: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub token_scores: Vec<f64>,
}

fn mean_of(table: &EmbeddingTable, seeds: &[String]) -> (Vec<f64>, Vec<String>, Vec<String>) {
    let mut acc = vec![0.0; table.dimension];
    let mut resolved = Vec::new();
    let mut missing = Vec::new();
    for seed in seeds {
        match table.get(seed) {
            Some(v) => {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x;
                }
                resolved.push(seed.clone());
            }
            None => missing.push(seed.clone()),
        }
    }
    if !resolved.is_empty() {
        let k = resolved.len() as f64;
        for a in &mut acc {
            *a /= k;
        }
    }
    (acc, resolved, missing)
}

/// Builds an axis as mean(resolved positive vectors) - mean(resolved negative
/// vectors). A pole with no resolvable seed is fatal, as is a zero axis.
pub fn build_axis(
    table: &EmbeddingTable,
    positive: &[String],
    negative: &[String],
) -> Result<SemanticAxis, AxisError> {
    let (pos_mean, resolved_positive, missing_pos) = mean_of(table, positive);
    if resolved_positive.is_empty() {
        return Err(AxisError::UnresolvedPole { pole: "positive", missing: missing_pos });
    }
    let (neg_mean, resolved_negative, missing_neg) = mean_of(table, negative);
    if resolved_negative.is_empty() {
        return Err(AxisError::UnresolvedPole { pole: "negative", missing: missing_neg });
    }
    let axis_vector: Vec<f64> = pos_mean.iter().zip(&neg_mean).map(|(p, n)| p - n).collect();
    if axis_vector.iter().all(|&x| x == 0.0) {
        return Err(AxisError::ZeroAxis);
    }
    Ok(SemanticAxis {
        axis_vector,
        positive_seeds: positive.to_vec(),
        negative_seeds: negative.to_vec(),
        resolved_positive,
        resolved_negative,
    })
}

/// Cosine similarity between a token's embedding and the axis. Out-of-
/// vocabulary tokens are a defined miss, consumed by callers as skip+count.
pub fn score_token(table: &EmbeddingTable, axis: &SemanticAxis, token: &str) -> Result<f64, AxisError> {
    let v = table.get(token).ok_or_else(|| AxisError::OutOfVocabulary(token.to_string()))?;
    cosine(v, &axis.axis_vector).map_err(|_| AxisError::OutOfVocabulary(token.to_string()))
}

/// Scores every token occurrence in the corpus. Repeated tokens are scored
/// each time; OOV occurrences are skipped and counted. `keep_scores` retains
/// the raw score population in the summary.
pub fn score_corpus(
    table: &EmbeddingTable,
    axis: &SemanticAxis,
    docs: &DocumentSet,
    sample_std: bool,
    keep_scores: bool,
) -> Result<SentimentSummary, AxisError> {
    let mut scores: Vec<f64> = Vec::new();
    let mut oov: u64 = 0;
    for doc in &docs.documents {
        for tok in doc.tokens() {
            match score_token(table, axis, tok) {
                Ok(s) => scores.push(s),
                Err(_) => oov += 1,
            }
        }
    }
    if scores.is_empty() {
        return Err(AxisError::NothingToScore);
    }
    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let ss: f64 = scores.iter().map(|s| (s - mean) * (s - mean)).sum();
    let std = if sample_std && scores.len() > 1 { (ss / (n - 1.0)).sqrt() } else { (ss / n).sqrt() };
    Ok(SentimentSummary {
        corpus_tag: docs.corpus_tag.clone(),
        mean,
        std,
        n_tokens: scores.len() as u64,
        oov_count: oov,
        token_scores: if keep_scores { scores } else { Vec::new() },
    })
}

/// Mean token score of a single document. A document with no in-vocabulary
/// token is a defined miss.
pub fn score_document(
    table: &EmbeddingTable,
    axis: &SemanticAxis,
    doc: &Document,
) -> Result<f64, AxisError> {
    let mut sum = 0.0;
    let mut n = 0u64;
    for tok in doc.tokens() {
        if let Ok(s) = score_token(table, axis, tok) {
            sum += s;
            n += 1;
        }
    }
    if n == 0 {
        return Err(AxisError::NothingToScore);
    }
    Ok(sum / n as f64)
}

/// One gazetteer entity with its corpus frequency and axis score. Entities
/// missing from the embedding table carry a null score.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntityScore {
    pub entity: String,
    pub frequency: u64,
    pub score: Option<f64>,
}

/// Ranks gazetteer entities by corpus frequency (descending, ties
/// alphabetical) and scores each on its own embedding. Entities absent from
/// the corpus are excluded from the top-k.
pub fn score_entities(
    table: &EmbeddingTable,
    axis: &SemanticAxis,
    gazetteer: &[String],
    docs: &DocumentSet,
    top_k: usize,
) -> Result<Vec<EntityScore>, AxisError> {
    if gazetteer.is_empty() {
        return Err(AxisError::EmptyGazetteer);
    }
    let wanted: std::collections::HashSet<&str> = gazetteer.iter().map(|s| s.as_str()).collect();
    let mut counts: std::collections::HashMap<&str, u64> = std::collections::HashMap::new();
    for doc in &docs.documents {
        for tok in doc.tokens() {
            if let Some(&e) = wanted.get(tok.as_str()) {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
    }
    let mut ranked: Vec<EntityScore> = counts
        .into_iter()
        .map(|(entity, frequency)| EntityScore {
            entity: entity.to_string(),
            frequency,
            score: score_token(table, axis, entity).ok(),
        })
        .collect();
    ranked.sort_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.entity.cmp(&b.entity)));
    ranked.truncate(top_k);
    Ok(ranked)
}
