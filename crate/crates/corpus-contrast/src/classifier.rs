//! Supervised document-sentiment baseline: logistic regression over mean
//! document embeddings, with the label/split/gold evaluation workflow.
//!
//! Labels are -1 / 0 / +1; neutral labels are dropped after annotation,
//! leaving a binary task. Gold documents (both annotators agreed) are held
//! out of training entirely and used only for final evaluation.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::embedding::EmbeddingTable;
use crate::error::ClassifierError;
use crate::stats::{classification_metrics, ClassificationMetrics};

/// One annotated document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDocument {
    pub id: String,
    pub label: i8,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotators: Vec<String>,
    #[serde(default)]
    pub is_gold: bool,
}

impl LabeledDocument {
    pub fn new(id: impl Into<String>, label: i8) -> Self {
        LabeledDocument { id: id.into(), label, annotators: Vec::new(), is_gold: false }
    }
}

/// Loads a label file: one JSON record per line with `id`, `label` in
/// {-1, 0, 1}, and optional `annotator`. A gold file uses the same format;
/// pass `is_gold` accordingly.
pub fn load_labels(
    path: impl AsRef<Path>,
    is_gold: bool,
) -> Result<Vec<LabeledDocument>, ClassifierError> {
    #[derive(Deserialize)]
    struct Record {
        id: String,
        label: i8,
        #[serde(default)]
        annotator: Option<String>,
    }
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|e| ClassifierError::BadLabelFile(format!("{}: {}", path.display(), e)))?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line
            .map_err(|e| ClassifierError::BadLabelFile(format!("{}: {}", path.display(), e)))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line).map_err(|e| {
            ClassifierError::BadLabelFile(format!("{} line {}: {}", path.display(), idx + 1, e))
        })?;
        if ![-1, 0, 1].contains(&rec.label) {
            return Err(ClassifierError::BadLabel(rec.label));
        }
        let mut ld = LabeledDocument::new(rec.id, rec.label);
        ld.is_gold = is_gold;
        if let Some(a) = rec.annotator {
            ld.annotators.push(a);
        }
        out.push(ld);
    }
    Ok(out)
}

/// Removes every neutral (0) label. Returns survivors and the removal count.
pub fn drop_neutral(labeled: &[LabeledDocument]) -> (Vec<LabeledDocument>, usize) {
    let kept: Vec<LabeledDocument> = labeled.iter().filter(|l| l.label != 0).cloned().collect();
    let removed = labeled.len() - kept.len();
    (kept, removed)
}

/// Deterministic shuffled split: the first floor(n * ratio) shuffled entries
/// train, the remainder validate. Gold documents must be excluded beforehand.
pub fn split_dataset(
    labeled: &[LabeledDocument],
    ratio: f64,
    seed: u64,
) -> Result<(Vec<LabeledDocument>, Vec<LabeledDocument>), ClassifierError> {
    if labeled.len() < 2 {
        return Err(ClassifierError::TooFewToSplit(labeled.len()));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(ClassifierError::BadRatio(ratio));
    }
    let mut shuffled = labeled.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);
    let cut = (labeled.len() as f64 * ratio).floor() as usize;
    let validation = shuffled.split_off(cut);
    Ok((shuffled, validation))
}

/// Training hyperparameters for the logistic baseline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainParams {
    pub epochs: usize,
    pub learning_rate: f64,
    pub l2: f64,
    pub seed: u64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams { epochs: 500, learning_rate: 0.5, l2: 1e-4, seed: 42 }
    }
}

/// Logistic regression weights over mean document embeddings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub params: TrainParams,
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Mean of in-vocabulary token vectors; None when the document has no
/// in-vocabulary token.
pub fn document_features(table: &EmbeddingTable, doc: &Document) -> Option<Vec<f64>> {
    let mut acc = vec![0.0; table.dimension];
    let mut n = 0u64;
    for tok in doc.tokens() {
        if let Some(v) = table.get(tok) {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
            n += 1;
        }
    }
    if n == 0 {
        return None;
    }
    for a in &mut acc {
        *a /= n as f64;
    }
    Some(acc)
}

/// Logistic loss with L2 regularization over a feature/label batch
/// (labels in {0, 1}).
pub fn logistic_loss(weights: &[f64], bias: f64, l2: f64, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mut loss = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let z = bias + weights.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>();
        // log(1 + e^z) - y z, stable for large |z|
        loss += z.max(0.0) + (-(z.abs())).exp().ln_1p() - y * z;
    }
    loss / n + 0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>()
}

/// Analytic gradient of [`logistic_loss`]; returns (d/dweights, d/dbias).
pub fn logistic_gradient(
    weights: &[f64],
    bias: f64,
    l2: f64,
    xs: &[Vec<f64>],
    ys: &[f64],
) -> (Vec<f64>, f64) {
    let n = xs.len() as f64;
    let mut gw = vec![0.0; weights.len()];
    let mut gb = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let z = bias + weights.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>();
        let e = sigmoid(z) - y;
        for (g, xi) in gw.iter_mut().zip(x) {
            *g += e * xi / n;
        }
        gb += e / n;
    }
    for (g, w) in gw.iter_mut().zip(weights) {
        *g += l2 * w;
    }
    (gw, gb)
}

/// Report of one training run.
#[derive(Debug, Clone)]
pub struct TrainReport {
    pub model: LinearModel,
    pub excluded_docs: Vec<String>,
    pub final_loss: f64,
}

/// Trains the logistic baseline by full-batch gradient descent. Labels map
/// -1 to 0 and +1 to 1 internally. Documents with no in-vocabulary token are
/// excluded with a warning entry. Deterministic under fixed parameters.
pub fn train_classifier(
    train: &[(LabeledDocument, &Document)],
    table: &EmbeddingTable,
    params: &TrainParams,
) -> Result<TrainReport, ClassifierError> {
    let mut xs: Vec<Vec<f64>> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut excluded = Vec::new();
    for (labeled, doc) in train {
        match labeled.label {
            -1 | 1 => {}
            other => return Err(ClassifierError::BadLabel(other)),
        }
        match document_features(table, doc) {
            Some(x) => {
                xs.push(x);
                ys.push(if labeled.label == 1 { 1.0 } else { 0.0 });
            }
            None => excluded.push(labeled.id.clone()),
        }
    }
    if xs.is_empty() {
        return Err(ClassifierError::EmptyTrainingSet);
    }

    let mut weights = vec![0.0; table.dimension];
    let mut bias = 0.0;
    for _ in 0..params.epochs {
        let (gw, gb) = logistic_gradient(&weights, bias, params.l2, &xs, &ys);
        for (w, g) in weights.iter_mut().zip(&gw) {
            *w -= params.learning_rate * g;
        }
        bias -= params.learning_rate * gb;
    }
    let final_loss = logistic_loss(&weights, bias, params.l2, &xs, &ys);
    Ok(TrainReport {
        model: LinearModel { weights, bias, params: params.clone() },
        excluded_docs: excluded,
        final_loss,
    })
}

impl LinearModel {
    /// Positive-class probability for one document; None when no token is in
    /// vocabulary.
    pub fn predict_proba(&self, table: &EmbeddingTable, doc: &Document) -> Option<f64> {
        let x = document_features(table, doc)?;
        let z = self.bias + self.weights.iter().zip(&x).map(|(w, xi)| w * xi).sum::<f64>();
        Some(sigmoid(z))
    }

    /// Predicted label in the external +-1 convention, thresholded at 0.5.
    pub fn predict(&self, table: &EmbeddingTable, doc: &Document) -> Option<i8> {
        self.predict_proba(table, doc).map(|p| if p >= 0.5 { 1 } else { -1 })
    }
}

/// Gold-set evaluation. Returns metrics plus the per-document predictions
/// (persisted upstream for the chi-squared corpus comparison).
pub fn evaluate(
    model: &LinearModel,
    table: &EmbeddingTable,
    gold: &[(LabeledDocument, &Document)],
) -> Result<(ClassificationMetrics, Vec<(String, i8)>), ClassifierError> {
    if gold.is_empty() {
        return Err(ClassifierError::EmptyGoldSet);
    }
    let mut predicted = Vec::new();
    let mut labels = Vec::new();
    let mut per_doc = Vec::new();
    for (labeled, doc) in gold {
        if let Some(p) = model.predict(table, doc) {
            predicted.push(p);
            labels.push(labeled.label);
            per_doc.push((labeled.id.clone(), p));
        }
    }
    if predicted.is_empty() {
        return Err(ClassifierError::EmptyGoldSet);
    }
    let metrics = classification_metrics(&predicted, &labels, &1)
        .map_err(|e| ClassifierError::BadLabelFile(e.to_string()))?;
    Ok((metrics, per_doc))
}

/// Mean over documents of the predicted +-1 label. Documents without
/// in-vocabulary tokens are skipped.
pub fn mean_predicted_sentiment(
    model: &LinearModel,
    table: &EmbeddingTable,
    docs: &[Document],
) -> Option<f64> {
    let preds: Vec<f64> =
        docs.iter().filter_map(|d| model.predict(table, d)).map(f64::from).collect();
    if preds.is_empty() {
        None
    } else {
        Some(preds.iter().sum::<f64>() / preds.len() as f64)
    }
}
