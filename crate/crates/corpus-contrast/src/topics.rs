//! LDA topic modeling by collapsed Gibbs sampling, with per-topic sentiment
//! and topic-frequency timelines.
//!
//! Per-token topic assignments are resampled from the count-based full
//! conditional P(z = k) proportional to (n_dk + alpha)(n_kw + beta)/(n_k + V beta),
//! with the current assignment excluded from the counts. Topic-word and
//! document-topic distributions are averaged over post-burn-in samples.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::DocumentSet;
use crate::embedding::EmbeddingTable;
use crate::error::TopicError;
use crate::prep::Vocabulary;
use crate::semaxis::{score_token, SemanticAxis};

/// Gibbs sampler hyperparameters. `alpha` defaults to 50/K and `beta` to
/// 0.01.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LdaParams {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub burn_in: usize,
    pub thinning: usize,
    pub seed: u64,
}

impl LdaParams {
    pub fn with_k(k: usize) -> Self {
        LdaParams {
            k,
            alpha: 50.0 / k as f64,
            beta: 0.01,
            iterations: 1000,
            burn_in: 200,
            thinning: 10,
            seed: 42,
        }
    }

    pub fn validate(&self) -> Result<(), TopicError> {
        if self.k < 2 {
            return Err(TopicError::InvalidParams("K must be >= 2".into()));
        }
        if self.alpha <= 0.0 || self.beta <= 0.0 {
            return Err(TopicError::InvalidParams("alpha and beta must be positive".into()));
        }
        if self.burn_in >= self.iterations {
            return Err(TopicError::InvalidParams("burn_in must be < iterations".into()));
        }
        if self.thinning == 0 {
            return Err(TopicError::InvalidParams("thinning must be >= 1".into()));
        }
        Ok(())
    }
}

impl Default for LdaParams {
    fn default() -> Self {
        LdaParams::with_k(20)
    }
}

/// A fitted topic model. `phi` is K x V (topic-word), `theta` is D x K
/// (document-topic); rows of both sum to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopicModel {
    pub params: LdaParams,
    pub vocab_tokens: Vec<String>,
    pub doc_ids: Vec<String>,
    pub phi: Vec<Vec<f64>>,
    pub theta: Vec<Vec<f64>>,
    pub skipped_docs: Vec<String>,
}

/// Topic mass per time period for one topic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopicTimeline {
    pub topic: usize,
    pub bins: Vec<TimelineBin>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimelineBin {
    pub period_start: NaiveDate,
    pub mass: f64,
    pub n_docs: u64,
}

/// Calendar binning for timelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binning {
    Month,
    Quarter,
    Year,
}

impl Binning {
    pub fn period_start(&self, date: NaiveDate) -> NaiveDate {
        match self {
            Binning::Month => NaiveDate::from_ymd_opt(date.year(), date.month(), 1).unwrap(),
            Binning::Quarter => {
                let q_month = 1 + 3 * ((date.month() - 1) / 3);
                NaiveDate::from_ymd_opt(date.year(), q_month, 1).unwrap()
            }
            Binning::Year => NaiveDate::from_ymd_opt(date.year(), 1, 1).unwrap(),
        }
    }
}

impl std::str::FromStr for Binning {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "month" => Ok(Binning::Month),
            "quarter" => Ok(Binning::Quarter),
            "year" => Ok(Binning::Year),
            other => Err(format!("unknown binning {:?} (expected month|quarter|year)", other)),
        }
    }
}

/// Fits LDA by collapsed Gibbs sampling. Deterministic under a fixed seed.
/// Documents with no in-vocabulary tokens are skipped and recorded.
pub fn fit_lda(
    docs: &DocumentSet,
    vocab: &Vocabulary,
    params: &LdaParams,
) -> Result<TopicModel, TopicError> {
    params.validate()?;
    if vocab.is_empty() {
        return Err(TopicError::EmptyVocabulary);
    }
    let k = params.k;
    let v = vocab.len();

    let mut doc_ids = Vec::new();
    let mut skipped_docs = Vec::new();
    let mut doc_tokens: Vec<Vec<usize>> = Vec::new();
    for doc in &docs.documents {
        let ids: Vec<usize> = doc.tokens().iter().filter_map(|t| vocab.id(t)).collect();
        if ids.is_empty() {
            skipped_docs.push(doc.id.clone());
        } else {
            doc_ids.push(doc.id.clone());
            doc_tokens.push(ids);
        }
    }
    let d = doc_tokens.len();
    if d == 0 {
        return Err(TopicError::NoDocuments);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut n_dk = vec![vec![0u32; k]; d];
    let mut n_kw = vec![vec![0u32; v]; k];
    let mut n_k = vec![0u32; k];
    let mut z: Vec<Vec<usize>> = Vec::with_capacity(d);

    for (di, tokens) in doc_tokens.iter().enumerate() {
        let mut zd = Vec::with_capacity(tokens.len());
        for &w in tokens {
            let topic = rng.gen_range(0..k);
            n_dk[di][topic] += 1;
            n_kw[topic][w] += 1;
            n_k[topic] += 1;
            zd.push(topic);
        }
        z.push(zd);
    }

    let v_beta = v as f64 * params.beta;
    let k_alpha = k as f64 * params.alpha;
    let mut probs = vec![0.0f64; k];

    let mut phi_sum = vec![vec![0.0f64; v]; k];
    let mut theta_sum = vec![vec![0.0f64; k]; d];
    let mut samples = 0usize;

    for iter in 0..params.iterations {
        for di in 0..d {
            for (ti, &w) in doc_tokens[di].iter().enumerate() {
                let old = z[di][ti];
                n_dk[di][old] -= 1;
                n_kw[old][w] -= 1;
                n_k[old] -= 1;

                let mut total = 0.0;
                for t in 0..k {
                    let p = (n_dk[di][t] as f64 + params.alpha)
                        * (n_kw[t][w] as f64 + params.beta)
                        / (n_k[t] as f64 + v_beta);
                    probs[t] = p;
                    total += p;
                }
                let x = rng.gen::<f64>() * total;
                let mut acc = 0.0;
                let mut new = k - 1;
                for (t, &p) in probs.iter().enumerate() {
                    acc += p;
                    if x < acc {
                        new = t;
                        break;
                    }
                }

                z[di][ti] = new;
                n_dk[di][new] += 1;
                n_kw[new][w] += 1;
                n_k[new] += 1;
            }
        }

        let past_burn_in = iter >= params.burn_in;
        if past_burn_in && (iter - params.burn_in) % params.thinning == 0 {
            for t in 0..k {
                let denom = n_k[t] as f64 + v_beta;
                for w in 0..v {
                    phi_sum[t][w] += (n_kw[t][w] as f64 + params.beta) / denom;
                }
            }
            for di in 0..d {
                let denom = doc_tokens[di].len() as f64 + k_alpha;
                for t in 0..k {
                    theta_sum[di][t] += (n_dk[di][t] as f64 + params.alpha) / denom;
                }
            }
            samples += 1;
        }
    }
    debug_assert!(samples > 0);

    let phi: Vec<Vec<f64>> =
        phi_sum.into_iter().map(|row| row.into_iter().map(|x| x / samples as f64).collect()).collect();
    let theta: Vec<Vec<f64>> = theta_sum
        .into_iter()
        .map(|row| row.into_iter().map(|x| x / samples as f64).collect())
        .collect();

    Ok(TopicModel {
        params: params.clone(),
        vocab_tokens: vocab.tokens().to_vec(),
        doc_ids,
        phi,
        theta,
        skipped_docs,
    })
}

impl TopicModel {
    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn n_docs(&self) -> usize {
        self.theta.len()
    }

    /// The M highest-probability tokens of topic `k`, ties alphabetical.
    pub fn top_words(&self, topic: usize, m: usize) -> Result<Vec<(String, f64)>, TopicError> {
        if topic >= self.k() {
            return Err(TopicError::TopicOutOfRange(topic, self.k()));
        }
        let row = &self.phi[topic];
        let mut indexed: Vec<usize> = (0..row.len()).collect();
        indexed.sort_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .unwrap()
                .then_with(|| self.vocab_tokens[a].cmp(&self.vocab_tokens[b]))
        });
        Ok(indexed
            .into_iter()
            .take(m)
            .map(|i| (self.vocab_tokens[i].clone(), row[i]))
            .collect())
    }

    /// Argmax of a document's theta row; ties break to the lowest topic id.
    pub fn dominant_topic(&self, doc_index: usize) -> Result<usize, TopicError> {
        let row = self
            .theta
            .get(doc_index)
            .ok_or(TopicError::TopicOutOfRange(doc_index, self.n_docs()))?;
        let mut best = 0;
        for (t, &p) in row.iter().enumerate() {
            if p > row[best] {
                best = t;
            }
        }
        Ok(best)
    }

    /// Corpus share of each topic, both as mean theta mass and as the
    /// fraction of documents whose dominant topic it is.
    pub fn topic_shares(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.n_docs() as f64;
        let k = self.k();
        let mut mass = vec![0.0; k];
        let mut dominant = vec![0.0; k];
        for (di, row) in self.theta.iter().enumerate() {
            for (t, &p) in row.iter().enumerate() {
                mass[t] += p / d;
            }
            dominant[self.dominant_topic(di).unwrap()] += 1.0 / d;
        }
        (mass, dominant)
    }
}

/// Per-topic sentiment: the phi-weighted mean of token axis scores over each
/// topic's top-M in-vocabulary words, weights renormalized over resolved
/// words. Topics with no resolved top word get a null score.
pub fn topic_sentiment(
    model: &TopicModel,
    table: &EmbeddingTable,
    axis: &SemanticAxis,
    m: usize,
) -> Result<Vec<Option<f64>>, TopicError> {
    let mut out = Vec::with_capacity(model.k());
    for topic in 0..model.k() {
        let top = model.top_words(topic, m)?;
        let mut weighted = 0.0;
        let mut weight_sum = 0.0;
        for (tok, w) in &top {
            if let Ok(s) = score_token(table, axis, tok) {
                weighted += w * s;
                weight_sum += w;
            }
        }
        out.push(if weight_sum > 0.0 { Some(weighted / weight_sum) } else { None });
    }
    Ok(out)
}

/// Topic mass per calendar period. For each period the mass of topic k is the
/// sum of theta[d][k] over the period's documents, normalized by document
/// count, so masses across topics sum to 1 per period. Undated documents are
/// excluded and counted.
pub fn topic_timeline(
    model: &TopicModel,
    docs: &DocumentSet,
    binning: Binning,
) -> Result<(Vec<TopicTimeline>, u64), TopicError> {
    let theta_by_id: HashMap<&str, &Vec<f64>> = model
        .doc_ids
        .iter()
        .zip(&model.theta)
        .map(|(id, row)| (id.as_str(), row))
        .collect();

    let mut undated = 0u64;
    let mut periods: HashMap<NaiveDate, (Vec<f64>, u64)> = HashMap::new();
    for doc in &docs.documents {
        let Some(row) = theta_by_id.get(doc.id.as_str()) else { continue };
        match doc.timestamp {
            None => undated += 1,
            Some(date) => {
                let start = binning.period_start(date);
                let entry = periods.entry(start).or_insert_with(|| (vec![0.0; model.k()], 0));
                for (t, &p) in row.iter().enumerate() {
                    entry.0[t] += p;
                }
                entry.1 += 1;
            }
        }
    }
    if periods.is_empty() {
        return Err(TopicError::NoDatedDocuments);
    }

    let mut starts: Vec<NaiveDate> = periods.keys().copied().collect();
    starts.sort();

    let timelines = (0..model.k())
        .map(|topic| TopicTimeline {
            topic,
            bins: starts
                .iter()
                .map(|s| {
                    let (mass, n) = &periods[s];
                    TimelineBin {
                        period_start: *s,
                        mass: mass[topic] / *n as f64,
                        n_docs: *n,
                    }
                })
                .collect(),
        })
        .collect();
    Ok((timelines, undated))
}

// ---------------------------------------------------------------------------
// Model persistence: a binary-free text format with a params header, the
// vocabulary, document ids, then phi and theta rows.
// ---------------------------------------------------------------------------

const MODEL_MAGIC: &str = "corpus-contrast-lda 1";

pub fn save_model(model: &TopicModel, path: impl AsRef<Path>) -> Result<(), TopicError> {
    let path = path.as_ref();
    let io_err = |e: std::io::Error| TopicError::Io { path: path.display().to_string(), source: e };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    let p = &model.params;
    writeln!(w, "{}", MODEL_MAGIC).map_err(io_err)?;
    writeln!(
        w,
        "k {}\nalpha {}\nbeta {}\niterations {}\nburn_in {}\nthinning {}\nseed {}",
        p.k, p.alpha, p.beta, p.iterations, p.burn_in, p.thinning, p.seed
    )
    .map_err(io_err)?;
    writeln!(w, "vocab {}", model.vocab_tokens.len()).map_err(io_err)?;
    for t in &model.vocab_tokens {
        writeln!(w, "{}", t).map_err(io_err)?;
    }
    writeln!(w, "docs {}", model.doc_ids.len()).map_err(io_err)?;
    for id in &model.doc_ids {
        writeln!(w, "{}", id).map_err(io_err)?;
    }
    writeln!(w, "skipped {}", model.skipped_docs.len()).map_err(io_err)?;
    for id in &model.skipped_docs {
        writeln!(w, "{}", id).map_err(io_err)?;
    }
    for row in model.phi.iter().chain(&model.theta) {
        let line: Vec<String> = row.iter().map(|x| format!("{}", x)).collect();
        writeln!(w, "{}", line.join(" ")).map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<TopicModel, TopicError> {
    let path = path.as_ref();
    let io_err = |e: std::io::Error| TopicError::Io { path: path.display().to_string(), source: e };
    let file = File::open(path).map_err(io_err)?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let mut next = |what: &str| -> Result<(usize, String), TopicError> {
        match lines.next() {
            Some((i, Ok(l))) => Ok((i + 1, l)),
            Some((i, Err(e))) => Err(TopicError::Parse { line: i + 1, message: e.to_string() }),
            None => Err(TopicError::Parse { line: 0, message: format!("missing {}", what) }),
        }
    };

    let (line_no, magic) = next("header")?;
    if magic != MODEL_MAGIC {
        return Err(TopicError::Parse { line: line_no, message: "bad model header".into() });
    }

    fn field<T: std::str::FromStr>(line_no: usize, line: &str, key: &str) -> Result<T, TopicError> {
        let rest = line.strip_prefix(key).and_then(|r| r.strip_prefix(' ')).ok_or_else(|| {
            TopicError::Parse { line: line_no, message: format!("expected `{} <value>`", key) }
        })?;
        rest.trim().parse().map_err(|_| TopicError::Parse {
            line: line_no,
            message: format!("bad value for {}", key),
        })
    }

    let (ln, l) = next("k")?;
    let k: usize = field(ln, &l, "k")?;
    let (ln, l) = next("alpha")?;
    let alpha: f64 = field(ln, &l, "alpha")?;
    let (ln, l) = next("beta")?;
    let beta: f64 = field(ln, &l, "beta")?;
    let (ln, l) = next("iterations")?;
    let iterations: usize = field(ln, &l, "iterations")?;
    let (ln, l) = next("burn_in")?;
    let burn_in: usize = field(ln, &l, "burn_in")?;
    let (ln, l) = next("thinning")?;
    let thinning: usize = field(ln, &l, "thinning")?;
    let (ln, l) = next("seed")?;
    let seed: u64 = field(ln, &l, "seed")?;

    let (ln, l) = next("vocab")?;
    let v: usize = field(ln, &l, "vocab")?;
    let mut vocab_tokens = Vec::with_capacity(v);
    for _ in 0..v {
        vocab_tokens.push(next("vocab token")?.1);
    }
    let (ln, l) = next("docs")?;
    let d: usize = field(ln, &l, "docs")?;
    let mut doc_ids = Vec::with_capacity(d);
    for _ in 0..d {
        doc_ids.push(next("doc id")?.1);
    }
    let (ln, l) = next("skipped")?;
    let s: usize = field(ln, &l, "skipped")?;
    let mut skipped_docs = Vec::with_capacity(s);
    for _ in 0..s {
        skipped_docs.push(next("skipped id")?.1);
    }

    let mut read_rows = |n: usize, width: usize, what: &str| -> Result<Vec<Vec<f64>>, TopicError> {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = next(what)?;
            let row: Vec<f64> = l
                .split_whitespace()
                .map(|x| {
                    x.parse().map_err(|_| TopicError::Parse {
                        line: ln,
                        message: format!("bad float in {} row", what),
                    })
                })
                .collect::<Result<_, _>>()?;
            if row.len() != width {
                return Err(TopicError::Parse {
                    line: ln,
                    message: format!("expected {} values in {} row, found {}", width, what, row.len()),
                });
            }
            rows.push(row);
        }
        Ok(rows)
    };
    let phi = read_rows(k, v, "phi")?;
    let theta = read_rows(d, k, "theta")?;

    Ok(TopicModel {
        params: LdaParams { k, alpha, beta, iterations, burn_in, thinning, seed },
        vocab_tokens,
        doc_ids,
        phi,
        theta,
        skipped_docs,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::corpus::Document;
    use crate::prep::build_vocabulary;
    use approx::assert_abs_diff_eq;

    /// Synthetic two-topic corpus with disjoint 30-word vocabularies:
    /// 50 documents per topic, each at least 40 tokens long.
    pub(crate) fn two_topic_corpus(seed: u64) -> (DocumentSet, Vec<usize>) {
        let vocab_a: Vec<String> = (0..30).map(|i| format!("alpha{i:02}")).collect();
        let vocab_b: Vec<String> = (0..30).map(|i| format!("beta{i:02}")).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut set = DocumentSet::new("synthetic");
        let mut truth = Vec::new();
        for di in 0..100 {
            let topic = di % 2;
            let vocab = if topic == 0 { &vocab_a } else { &vocab_b };
            let len = 40 + rng.gen_range(0..10);
            let tokens: Vec<String> =
                (0..len).map(|_| vocab[rng.gen_range(0..vocab.len())].clone()).collect();
            let mut d = Document::new(format!("d{di}"), "synthetic", tokens.join(" "));
            d.tokens = Some(tokens);
            set.documents.push(d);
            truth.push(topic);
        }
        (set, truth)
    }

    /// Best topic-to-truth matching purity for K = 2.
    pub(crate) fn purity_2(model: &TopicModel, truth: &[usize]) -> f64 {
        let n = truth.len();
        let mut direct = 0usize;
        let mut flipped = 0usize;
        for (di, &t) in truth.iter().enumerate() {
            let dom = model.dominant_topic(di).unwrap();
            if dom == t {
                direct += 1;
            } else {
                flipped += 1;
            }
        }
        direct.max(flipped) as f64 / n as f64
    }

    fn quick_params(k: usize) -> LdaParams {
        LdaParams { iterations: 150, burn_in: 50, thinning: 10, ..LdaParams::with_k(k) }
    }

    #[test]
    fn recovers_two_disjoint_topics() {
        let (set, truth) = two_topic_corpus(1);
        let (vocab, _) = build_vocabulary(&set, 1);
        let model = fit_lda(&set, &vocab, &quick_params(2)).unwrap();
        let p = purity_2(&model, &truth);
        assert!(p >= 0.9, "purity = {}", p);
    }

    #[test]
    fn default_k_is_twenty() {
        let p = LdaParams::default();
        assert_eq!(p.k, 20);
        assert_abs_diff_eq!(p.alpha, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn rows_normalize() {
        let (set, _) = two_topic_corpus(2);
        let (vocab, _) = build_vocabulary(&set, 1);
        let model = fit_lda(&set, &vocab, &quick_params(3)).unwrap();
        for row in &model.phi {
            assert_abs_diff_eq!(row.iter().sum::<f64>(), 1.0, epsilon = 1e-9);
            assert!(row.iter().all(|&x| x >= 0.0));
        }
        for row in &model.theta {
            assert_abs_diff_eq!(row.iter().sum::<f64>(), 1.0, epsilon = 1e-9);
            assert!(row.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn fixed_seed_reproduces_model() {
        let (set, _) = two_topic_corpus(3);
        let (vocab, _) = build_vocabulary(&set, 1);
        let m1 = fit_lda(&set, &vocab, &quick_params(2)).unwrap();
        let m2 = fit_lda(&set, &vocab, &quick_params(2)).unwrap();
        assert_eq!(m1.phi, m2.phi);
        assert_eq!(m1.theta, m2.theta);
    }

    #[test]
    fn empty_document_skipped_with_record() {
        let (mut set, _) = two_topic_corpus(4);
        let mut empty = Document::new("empty", "synthetic", "oov words only");
        empty.tokens = Some(vec!["oovword".to_string()]);
        set.documents.push(empty);
        let (vocab, _) = build_vocabulary(&set, 2);
        let model = fit_lda(&set, &vocab, &quick_params(2)).unwrap();
        assert!(model.skipped_docs.contains(&"empty".to_string()));
        assert_eq!(model.doc_ids.len(), 100);
    }

    #[test]
    fn empty_vocabulary_is_fatal() {
        let set = DocumentSet::new("x");
        let (vocab, _) = build_vocabulary(&set, 1);
        assert!(matches!(
            fit_lda(&set, &vocab, &quick_params(2)),
            Err(TopicError::EmptyVocabulary)
        ));
    }

    fn hand_model(phi: Vec<Vec<f64>>, theta: Vec<Vec<f64>>, tokens: &[&str]) -> TopicModel {
        TopicModel {
            params: LdaParams::with_k(phi.len().max(2)),
            vocab_tokens: tokens.iter().map(|s| s.to_string()).collect(),
            doc_ids: (0..theta.len()).map(|i| format!("d{i}")).collect(),
            phi,
            theta,
            skipped_docs: Vec::new(),
        }
    }

    #[test]
    fn top_words_sort_order() {
        let model = hand_model(
            vec![vec![0.3, 0.5, 0.2], vec![0.1, 0.1, 0.8]],
            vec![vec![0.5, 0.5]],
            &["apple", "pear", "quince"],
        );
        let top = model.top_words(0, 3).unwrap();
        let names: Vec<&str> = top.iter().map(|(t, _)| t.as_str()).collect();
        assert_eq!(names, vec!["pear", "apple", "quince"]);
        assert_eq!(model.top_words(0, 1).unwrap()[0].0, "pear");
        assert!(model.top_words(5, 1).is_err());
    }

    #[test]
    fn top_words_tie_breaks_alphabetical() {
        let model = hand_model(
            vec![vec![0.4, 0.4, 0.2], vec![0.1, 0.1, 0.8]],
            vec![vec![0.5, 0.5]],
            &["zebra", "aardvark", "middle"],
        );
        let top = model.top_words(0, 2).unwrap();
        assert_eq!(top[0].0, "aardvark");
        assert_eq!(top[1].0, "zebra");
    }

    #[test]
    fn dominant_topic_rules() {
        let model = hand_model(
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]],
            vec![
                vec![0.1, 0.8, 0.1],
                vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                vec![0.2, 0.3, 0.5],
                vec![0.6, 0.2, 0.2],
                vec![0.25, 0.25, 0.5],
            ],
            &["a", "b"],
        );
        assert_eq!(model.dominant_topic(0).unwrap(), 1);
        assert_eq!(model.dominant_topic(1).unwrap(), 0); // uniform row, tie rule
        // Row-max oracle on the 5-doc fixture.
        for (di, row) in model.theta.iter().enumerate() {
            let expected = row
                .iter()
                .enumerate()
                .rev()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(b.0.cmp(&a.0)))
                .unwrap()
                .0;
            assert_eq!(model.dominant_topic(di).unwrap(), expected);
        }
    }

    #[test]
    fn topic_sentiment_weighted_mean() {
        use crate::embedding::{EmbeddingTable, Provenance};
        use crate::semaxis::build_axis;

        let mut t = EmbeddingTable::new(2, Provenance::Loaded("test".into()));
        t.insert("p", vec![1.0, 0.0]);
        t.insert("n", vec![-1.0, 0.0]);
        // Scores along the axis: plusword -> 0.4, minusword -> -0.4.
        let angle = 0.4f64.acos();
        t.insert("plusword", vec![angle.cos(), angle.sin()]);
        t.insert("minusword", vec![-angle.cos(), angle.sin()]);
        let axis = build_axis(&t, &["p".to_string()], &["n".to_string()]).unwrap();

        let model = hand_model(
            vec![vec![0.75, 0.25], vec![0.25, 0.75]],
            vec![vec![1.0, 0.0]],
            &["plusword", "minusword"],
        );
        let s = topic_sentiment(&model, &t, &axis, 2).unwrap();
        // 0.75 * 0.4 + 0.25 * (-0.4) = 0.2
        assert_abs_diff_eq!(s[0].unwrap(), 0.2, epsilon = 1e-9);

        // All top words sharing one score gives that score.
        let model2 = hand_model(
            vec![vec![0.6, 0.4], vec![0.5, 0.5]],
            vec![vec![1.0, 0.0]],
            &["plusword", "plusword2"],
        );
        let mut t2 = t.clone();
        t2.insert("plusword2", vec![angle.cos(), angle.sin()]);
        let axis2 = build_axis(&t2, &["p".to_string()], &["n".to_string()]).unwrap();
        let s2 = topic_sentiment(&model2, &t2, &axis2, 2).unwrap();
        assert_abs_diff_eq!(s2[0].unwrap(), 0.4, epsilon = 1e-9);

        // Swapping the poles negates every topic score.
        let swapped = build_axis(&t, &["n".to_string()], &["p".to_string()]).unwrap();
        let s_sw = topic_sentiment(&model, &t, &swapped, 2).unwrap();
        assert_abs_diff_eq!(s_sw[0].unwrap(), -s[0].unwrap(), epsilon = 1e-12);

        // No resolved top words -> null.
        let model3 = hand_model(
            vec![vec![0.7, 0.3], vec![0.5, 0.5]],
            vec![vec![1.0, 0.0]],
            &["unknown1", "unknown2"],
        );
        let s3 = topic_sentiment(&model3, &t, &axis, 2).unwrap();
        assert!(s3[0].is_none());
    }

    fn dated_docs(dates: &[(&str, &str)]) -> DocumentSet {
        let mut set = DocumentSet::new("t");
        for (id, date) in dates {
            let mut d = Document::new(*id, "t", "text");
            d.timestamp = Some(date.parse().unwrap());
            set.documents.push(d);
        }
        set
    }

    #[test]
    fn timeline_single_period_is_mean_theta() {
        let model = hand_model(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0.9, 0.1], vec![0.5, 0.5]],
            &["a", "b"],
        );
        let docs = dated_docs(&[("d0", "2018-02-03"), ("d1", "2018-07-20")]);
        let (timelines, undated) = topic_timeline(&model, &docs, Binning::Year).unwrap();
        assert_eq!(undated, 0);
        assert_eq!(timelines[0].bins.len(), 1);
        assert_abs_diff_eq!(timelines[0].bins[0].mass, 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(timelines[1].bins[0].mass, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn timeline_singleton_period_equals_theta_row() {
        let model = hand_model(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0.9, 0.1], vec![0.2, 0.8]],
            &["a", "b"],
        );
        let docs = dated_docs(&[("d0", "2018-02-03"), ("d1", "2019-07-20")]);
        let (timelines, _) = topic_timeline(&model, &docs, Binning::Year).unwrap();
        assert_abs_diff_eq!(timelines[0].bins[0].mass, 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(timelines[1].bins[1].mass, 0.8, epsilon = 1e-12);
        // Masses across topics sum to 1 per period.
        for b in 0..2 {
            let total: f64 = timelines.iter().map(|tl| tl.bins[b].mass).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn timeline_2018_heavy_topic_peaks_in_2018() {
        // Hand-summed theta oracle: topic 0 dominates the 2018 documents.
        let model = hand_model(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![
                vec![0.95, 0.05],
                vec![0.90, 0.10],
                vec![0.10, 0.90],
                vec![0.20, 0.80],
            ],
            &["a", "b"],
        );
        let docs = dated_docs(&[
            ("d0", "2018-01-03"),
            ("d1", "2018-11-20"),
            ("d2", "2019-03-04"),
            ("d3", "2020-06-08"),
        ]);
        let (timelines, _) = topic_timeline(&model, &docs, Binning::Year).unwrap();
        let t0 = &timelines[0];
        assert_eq!(t0.bins[0].period_start, NaiveDate::from_ymd_opt(2018, 1, 1).unwrap());
        assert!(t0.bins.iter().skip(1).all(|b| b.mass < t0.bins[0].mass));
        assert_abs_diff_eq!(t0.bins[0].mass, (0.95 + 0.90) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn timeline_requires_dates() {
        let model = hand_model(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![0.5, 0.5]],
            &["a", "b"],
        );
        let mut docs = DocumentSet::new("t");
        docs.documents.push(Document::new("d0", "t", "x"));
        assert!(matches!(
            topic_timeline(&model, &docs, Binning::Year),
            Err(TopicError::NoDatedDocuments)
        ));
    }

    #[test]
    fn quarter_binning() {
        let b = Binning::Quarter;
        assert_eq!(
            b.period_start("2018-05-20".parse().unwrap()),
            NaiveDate::from_ymd_opt(2018, 4, 1).unwrap()
        );
        assert_eq!(
            b.period_start("2018-12-31".parse().unwrap()),
            NaiveDate::from_ymd_opt(2018, 10, 1).unwrap()
        );
    }

    #[test]
    fn model_save_load_round_trip() {
        let (set, _) = two_topic_corpus(5);
        let (vocab, _) = build_vocabulary(&set, 1);
        let model = fit_lda(&set, &vocab, &quick_params(2)).unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        save_model(&model, f.path()).unwrap();
        let loaded = load_model(f.path()).unwrap();
        assert_eq!(loaded.vocab_tokens, model.vocab_tokens);
        assert_eq!(loaded.doc_ids, model.doc_ids);
        assert_eq!(loaded.params.k, model.params.k);
        assert_eq!(loaded.phi, model.phi);
        assert_eq!(loaded.theta, model.theta);
    }

    #[test]
    fn invalid_params_rejected() {
        let mut p = LdaParams::with_k(2);
        p.burn_in = p.iterations;
        assert!(p.validate().is_err());
        assert!(LdaParams::with_k(1).validate().is_err());
    }
}
