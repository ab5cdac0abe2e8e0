//! Word embeddings: pretrained-table loading and skip-gram with negative
//! sampling trained from scratch.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::DocumentSet;
use crate::error::EmbeddingError;
use crate::prep::Vocabulary;

/// Where a table's vectors came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Loaded(String),
    Trained(String),
}

/// Vocabulary -> dense vector map with a fixed dimension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingTable {
    pub dimension: usize,
    pub provenance: Provenance,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dimension: usize, provenance: Provenance) -> Self {
        EmbeddingTable { dimension, provenance, vectors: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.vectors.get(token).map(|v| v.as_slice())
    }

    pub fn contains(&self, token: &str) -> bool {
        self.vectors.contains_key(token)
    }

    /// Inserts a vector; panics if the dimension disagrees with the table.
    pub fn insert(&mut self, token: impl Into<String>, vector: Vec<f64>) {
        assert_eq!(vector.len(), self.dimension, "vector dimension mismatch");
        self.vectors.insert(token.into(), vector);
    }

    /// Tokens in sorted order (the order used when saving).
    pub fn sorted_tokens(&self) -> Vec<&str> {
        let mut toks: Vec<&str> = self.vectors.keys().map(|s| s.as_str()).collect();
        toks.sort_unstable();
        toks
    }
}

/// Loads a text-format embedding file: `<token> <f1> ... <fd>` per line, no
/// header. Dimension is inferred from the first line and enforced on every
/// later line. Duplicate tokens keep the first vector and produce a warning.
pub fn load_embedding_table(
    path: impl AsRef<Path>,
) -> Result<(EmbeddingTable, Vec<String>), EmbeddingError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| EmbeddingError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let reader = BufReader::new(file);

    let mut table: Option<EmbeddingTable> = None;
    let mut warnings = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| EmbeddingError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let token = parts
            .next()
            .ok_or_else(|| EmbeddingError::Parse { line: line_no, message: "missing token".into() })?
            .to_string();
        let mut vector = Vec::new();
        for p in parts {
            let v: f64 = p.parse().map_err(|e| EmbeddingError::Parse {
                line: line_no,
                message: format!("bad float {:?}: {}", p, e),
            })?;
            if !v.is_finite() {
                return Err(EmbeddingError::Parse {
                    line: line_no,
                    message: format!("non-finite component {}", v),
                });
            }
            vector.push(v);
        }
        if vector.is_empty() {
            return Err(EmbeddingError::Parse { line: line_no, message: "no components".into() });
        }
        match &mut table {
            None => {
                let mut t = EmbeddingTable::new(
                    vector.len(),
                    Provenance::Loaded(path.display().to_string()),
                );
                t.insert(token, vector);
                table = Some(t);
            }
            Some(t) => {
                if vector.len() != t.dimension {
                    return Err(EmbeddingError::DimensionMismatch {
                        line: line_no,
                        expected: t.dimension,
                        found: vector.len(),
                    });
                }
                if t.contains(&token) {
                    warnings.push(format!("line {}: duplicate token {:?}, keeping first", line_no, token));
                } else {
                    t.insert(token, vector);
                }
            }
        }
    }
    table.map(|t| (t, warnings)).ok_or(EmbeddingError::Empty)
}

/// Saves a table in the same text format `load_embedding_table` reads, tokens
/// sorted for deterministic output.
pub fn save_embedding_table(
    table: &EmbeddingTable,
    path: impl AsRef<Path>,
) -> Result<(), EmbeddingError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| EmbeddingError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut w = BufWriter::new(file);
    for token in table.sorted_tokens() {
        let vec = table.get(token).unwrap();
        let mut line = String::from(token);
        for v in vec {
            line.push(' ');
            line.push_str(&format!("{}", v));
        }
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(|e| EmbeddingError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    }
    w.flush().map_err(|e| EmbeddingError::Io { path: path.display().to_string(), source: e })?;
    Ok(())
}

/// Cosine similarity. Zero vectors are an error, never a silent 0.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, EmbeddingError> {
    if u.len() != v.len() {
        return Err(EmbeddingError::UnequalDimensions(u.len(), v.len()));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(EmbeddingError::ZeroVector);
    }
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

/// Skip-gram training hyperparameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkipgramParams {
    pub dimension: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub initial_lr: f64,
    pub min_lr: f64,
    pub subsample: f64,
    pub seed: u64,
}

impl Default for SkipgramParams {
    fn default() -> Self {
        SkipgramParams {
            dimension: 100,
            window: 5,
            negatives: 5,
            epochs: 5,
            initial_lr: 0.025,
            min_lr: 1e-4,
            subsample: 1e-3,
            seed: 42,
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// SGNS loss for one (center, context, negatives) triple:
/// -log sigma(u_o . v_c) - sum_n log sigma(-u_n . v_c).
pub fn sgns_loss(center: &[f64], context: &[f64], negatives: &[Vec<f64>]) -> f64 {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut loss = -sigmoid(dot(context, center)).ln();
    for neg in negatives {
        loss -= sigmoid(-dot(neg, center)).ln();
    }
    loss
}

/// Analytic gradients of [`sgns_loss`] with respect to the center vector, the
/// context vector, and each negative vector.
pub fn sgns_gradients(
    center: &[f64],
    context: &[f64],
    negatives: &[Vec<f64>],
) -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
    let d = center.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let mut grad_center = vec![0.0; d];
    // d/du_o: (sigma(u_o.v_c) - 1) v_c
    let g_pos = sigmoid(dot(context, center)) - 1.0;
    let grad_context: Vec<f64> = center.iter().map(|&c| g_pos * c).collect();
    for i in 0..d {
        grad_center[i] += g_pos * context[i];
    }
    // d/du_n: sigma(u_n.v_c) v_c
    let mut grad_negs = Vec::with_capacity(negatives.len());
    for neg in negatives {
        let g = sigmoid(dot(neg, center));
        grad_negs.push(center.iter().map(|&c| g * c).collect());
        for i in 0..d {
            grad_center[i] += g * neg[i];
        }
    }
    (grad_center, grad_context, grad_negs)
}

/// Cumulative-distribution sampler over the unigram distribution raised to
/// 0.75, the standard negative-sampling noise distribution.
struct NoiseSampler {
    cdf: Vec<f64>,
}

impl NoiseSampler {
    fn new(vocab: &Vocabulary) -> Self {
        let mut cdf = Vec::with_capacity(vocab.len());
        let mut acc = 0.0;
        for id in 0..vocab.len() {
            acc += (vocab.frequency_by_id(id) as f64).powf(0.75);
            cdf.push(acc);
        }
        NoiseSampler { cdf }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cdf.last().unwrap();
        let x: f64 = rng.gen_range(0.0..total);
        self.cdf.partition_point(|&c| c <= x)
    }
}

/// Per-epoch training diagnostics.
#[derive(Debug, Clone)]
pub struct TrainStats {
    pub epoch_losses: Vec<f64>,
    pub pairs_trained: u64,
}

/// Trains skip-gram-with-negative-sampling embeddings. Deterministic under a
/// fixed seed (training is single-threaded). Documents shorter than 2
/// in-vocabulary tokens are skipped.
pub fn train_skipgram(
    docs: &DocumentSet,
    vocab: &Vocabulary,
    params: &SkipgramParams,
) -> Result<(EmbeddingTable, TrainStats), EmbeddingError> {
    train_skipgram_multi(std::slice::from_ref(&docs), vocab, params)
}

/// Same as [`train_skipgram`] over several document sets treated as one
/// training corpus.
pub fn train_skipgram_multi(
    sets: &[&DocumentSet],
    vocab: &Vocabulary,
    params: &SkipgramParams,
) -> Result<(EmbeddingTable, TrainStats), EmbeddingError> {
    if vocab.is_empty() {
        return Err(EmbeddingError::EmptyVocabulary);
    }
    let v = vocab.len();
    let d = params.dimension;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // Input vectors uniform in [-0.5/d, 0.5/d]; output vectors start at zero.
    let mut input: Vec<f64> = (0..v * d).map(|_| (rng.gen::<f64>() - 0.5) / d as f64).collect();
    let mut output: Vec<f64> = vec![0.0; v * d];

    // Documents as in-vocabulary id sequences.
    let docs_ids: Vec<Vec<usize>> = sets
        .iter()
        .flat_map(|set| set.documents.iter())
        .map(|doc| doc.tokens().iter().filter_map(|t| vocab.id(t)).collect::<Vec<usize>>())
        .filter(|ids| ids.len() >= 2)
        .collect();
    if docs_ids.is_empty() {
        return Err(EmbeddingError::EmptyVocabulary);
    }

    let total_tokens: u64 =
        docs_ids.iter().map(|d| d.len() as u64).sum::<u64>() * params.epochs as u64;
    let corpus_total = vocab.total_count() as f64;
    let sampler = NoiseSampler::new(vocab);

    let keep_prob = |id: usize| -> f64 {
        if params.subsample <= 0.0 {
            return 1.0;
        }
        let f = vocab.frequency_by_id(id) as f64 / corpus_total;
        ((params.subsample / f).sqrt() + params.subsample / f).min(1.0)
    };

    let mut stats = TrainStats { epoch_losses: Vec::new(), pairs_trained: 0 };
    let mut tokens_seen: u64 = 0;

    for _epoch in 0..params.epochs {
        let mut epoch_loss = 0.0;
        let mut epoch_pairs: u64 = 0;

        for doc in &docs_ids {
            // Subsample frequent tokens, then slide a dynamic window.
            let sentence: Vec<usize> =
                doc.iter().copied().filter(|&id| rng.gen::<f64>() < keep_prob(id)).collect();
            tokens_seen += doc.len() as u64;
            if sentence.len() < 2 {
                continue;
            }
            let lr = {
                let progress = tokens_seen as f64 / total_tokens as f64;
                (params.initial_lr * (1.0 - progress)).max(params.min_lr)
            };

            for (pos, &center) in sentence.iter().enumerate() {
                let b = rng.gen_range(1..=params.window);
                let lo = pos.saturating_sub(b);
                let hi = (pos + b).min(sentence.len() - 1);
                for ctx_pos in lo..=hi {
                    if ctx_pos == pos {
                        continue;
                    }
                    let context = sentence[ctx_pos];

                    // Gather negatives distinct from the true context word.
                    let mut negs = Vec::with_capacity(params.negatives);
                    while negs.len() < params.negatives {
                        let n = sampler.sample(&mut rng);
                        if n != context {
                            negs.push(n);
                        }
                    }

                    epoch_loss += train_pair(
                        &mut input,
                        &mut output,
                        d,
                        center,
                        context,
                        &negs,
                        lr,
                    );
                    epoch_pairs += 1;
                }
            }
        }

        stats.pairs_trained += epoch_pairs;
        stats.epoch_losses.push(if epoch_pairs > 0 {
            epoch_loss / epoch_pairs as f64
        } else {
            0.0
        });
    }

    let mut table =
        EmbeddingTable::new(d, Provenance::Trained(format!("sgns seed={}", params.seed)));
    for id in 0..v {
        table.insert(vocab.token(id).unwrap().to_string(), input[id * d..(id + 1) * d].to_vec());
    }
    Ok((table, stats))
}

/// One SGD step on a (center, context, negatives) triple; returns the loss
/// before the update.
fn train_pair(
    input: &mut [f64],
    output: &mut [f64],
    d: usize,
    center: usize,
    context: usize,
    negatives: &[usize],
    lr: f64,
) -> f64 {
    let c_off = center * d;
    let mut loss = 0.0;
    let mut grad_center = vec![0.0; d];

    {
        let ctx = &output[context * d..context * d + d];
        let cen = &input[c_off..c_off + d];
        let dot: f64 = ctx.iter().zip(cen).map(|(a, b)| a * b).sum();
        let s = sigmoid(dot);
        loss -= s.ln();
        let g = s - 1.0;
        for i in 0..d {
            grad_center[i] += g * ctx[i];
        }
        for i in 0..d {
            output[context * d + i] -= lr * g * input[c_off + i];
        }
    }
    for &neg in negatives {
        let n_off = neg * d;
        let dot: f64 =
            output[n_off..n_off + d].iter().zip(&input[c_off..c_off + d]).map(|(a, b)| a * b).sum();
        let s = sigmoid(dot);
        loss -= sigmoid(-dot).ln();
        for i in 0..d {
            grad_center[i] += s * output[n_off + i];
        }
        for i in 0..d {
            output[n_off + i] -= lr * s * input[c_off + i];
        }
    }
    for i in 0..d {
        input[c_off + i] -= lr * grad_center[i];
    }
    loss
}
