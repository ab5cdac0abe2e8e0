//! Tokenization, stop-word removal, and vocabulary construction.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::DocumentSet;
use crate::error::CorpusError;

/// The bundled English stop-word list, shipped with the crate so results are
/// reproducible across environments.
pub const BUNDLED_ENGLISH_STOPWORDS: &str = include_str!("data/stopwords_en.txt");

/// Standard plus custom stop-words, all lowercase.
#[derive(Debug, Clone, Default)]
pub struct StopList {
    pub standard: HashSet<String>,
    pub custom: HashSet<String>,
}

impl StopList {
    /// The bundled English list with no custom entries.
    pub fn english() -> Self {
        StopList { standard: parse_stoplist(BUNDLED_ENGLISH_STOPWORDS), custom: HashSet::new() }
    }

    pub fn with_custom(mut self, custom: impl IntoIterator<Item = String>) -> Self {
        self.custom.extend(custom.into_iter().map(|t| t.to_lowercase()).filter(|t| !t.is_empty()));
        self
    }

    pub fn contains(&self, token: &str) -> bool {
        self.standard.contains(token) || self.custom.contains(token)
    }
}

fn parse_stoplist(content: &str) -> HashSet<String> {
    content
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

/// Reads a stop-list file: one token per line, `#` starts a comment line.
pub fn load_stoplist(path: impl AsRef<Path>) -> Result<HashSet<String>, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut set = HashSet::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            set.insert(t.to_lowercase());
        }
    }
    Ok(set)
}

/// Lowercases, splits on Unicode whitespace, strips leading and trailing
/// punctuation from each token, and drops tokens left without any
/// alphanumeric character. Intra-word apostrophes and hyphens survive.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split_whitespace()
        .map(|raw| raw.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|t| !t.is_empty())
        .map(|t| t.to_string())
        .collect()
}

/// Order-preserving removal of every stop-word.
pub fn remove_stopwords(tokens: &[String], stops: &StopList) -> Vec<String> {
    tokens.iter().filter(|t| !stops.contains(t)).cloned().collect()
}

/// Tokenizes and stop-filters every document in place.
pub fn prepare_documents(docs: &mut DocumentSet, stops: &StopList) {
    for doc in &mut docs.documents {
        let toks = remove_stopwords(&tokenize(&doc.text), stops);
        doc.tokens = Some(toks);
    }
}

/// Token vocabulary with dense ids assigned by descending corpus frequency,
/// ties broken alphabetically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Vocabulary {
    pub min_count: usize,
    /// token -> (id, corpus frequency)
    entries: HashMap<String, (usize, usize)>,
    /// id -> token, dense in [0, V)
    by_id: Vec<String>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<usize> {
        self.entries.get(token).map(|&(id, _)| id)
    }

    pub fn frequency(&self, token: &str) -> Option<usize> {
        self.entries.get(token).map(|&(_, f)| f)
    }

    pub fn token(&self, id: usize) -> Option<&str> {
        self.by_id.get(id).map(|s| s.as_str())
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    /// Tokens in id order.
    pub fn tokens(&self) -> &[String] {
        &self.by_id
    }

    /// Frequency of the token with the given id.
    pub fn frequency_by_id(&self, id: usize) -> usize {
        self.entries[&self.by_id[id]].1
    }

    /// Sum of retained token frequencies.
    pub fn total_count(&self) -> usize {
        self.entries.values().map(|&(_, f)| f).sum()
    }
}

/// Builds the vocabulary of all tokens with corpus frequency >= `min_count`.
/// Documents must already be tokenized. Returns a warning list alongside the
/// vocabulary (empty corpus is a warning, not an error).
pub fn build_vocabulary(docs: &DocumentSet, min_count: usize) -> (Vocabulary, Vec<String>) {
    build_vocabulary_multi(std::slice::from_ref(&docs), min_count)
}

/// Same as [`build_vocabulary`] but counting over several document sets.
pub fn build_vocabulary_multi(sets: &[&DocumentSet], min_count: usize) -> (Vocabulary, Vec<String>) {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for set in sets {
        for doc in &set.documents {
            for tok in doc.tokens() {
                *counts.entry(tok.clone()).or_insert(0) += 1;
            }
        }
    }
    let mut warnings = Vec::new();
    if counts.is_empty() {
        warnings.push("no tokens found while building vocabulary".to_string());
    }

    let mut kept: Vec<(String, usize)> =
        counts.into_iter().filter(|&(_, f)| f >= min_count).collect();
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let mut entries = HashMap::with_capacity(kept.len());
    let mut by_id = Vec::with_capacity(kept.len());
    for (id, (token, freq)) in kept.into_iter().enumerate() {
        entries.insert(token.clone(), (id, freq));
        by_id.push(token);
    }
    (Vocabulary { min_count, entries, by_id }, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;

    #[test]
    fn tokenize_basic_sentence() {
        assert_eq!(tokenize("Electric cars are great!"), vec!["electric", "cars", "are", "great"]);
    }

    #[test]
    fn tokenize_empty_text() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_keeps_intra_word_marks() {
        // Rule set applied by hand: lowercase, strip edge punctuation, keep
        // internal apostrophes and hyphens, drop pure punctuation.
        assert_eq!(
            tokenize("Model-3's range: 300mi (EPA)"),
            vec!["model-3's", "range", "300mi", "epa"]
        );
    }

    #[test]
    fn tokenize_drops_pure_punctuation() {
        assert_eq!(tokenize("-- ... !!! ok"), vec!["ok"]);
    }

    #[test]
    fn tokenize_idempotent_on_rejoined_output() {
        for text in ["Electric cars are great!", "Model-3's range: 300mi (EPA)", "a--b c"] {
            let once = tokenize(text);
            let again = tokenize(&once.join(" "));
            assert_eq!(once, again);
        }
    }

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(|t| t.to_string()).collect()
    }

    #[test]
    fn stopwords_removed_in_order() {
        let stops = StopList::english();
        assert_eq!(remove_stopwords(&toks("the battery is good"), &stops), toks("battery good"));
    }

    #[test]
    fn no_stopwords_is_identity() {
        let stops = StopList::english();
        let input = toks("battery range charging");
        assert_eq!(remove_stopwords(&input, &stops), input);
    }

    #[test]
    fn custom_stopwords_apply() {
        let stops = StopList::english().with_custom(["josh".to_string()]);
        assert_eq!(remove_stopwords(&toks("josh said range"), &stops), toks("said range"));
    }

    #[test]
    fn stopword_output_disjoint_from_list() {
        let stops = StopList::english().with_custom(["tesla".to_string()]);
        let out = remove_stopwords(&toks("the tesla is a very good car"), &stops);
        assert!(out.iter().all(|t| !stops.contains(t)));
    }

    fn tokenized_set(texts: &[&str]) -> DocumentSet {
        let mut set = DocumentSet::new("t");
        for (i, text) in texts.iter().enumerate() {
            let mut d = Document::new(format!("d{i}"), "t", *text);
            d.tokens = Some(toks(text));
            set.documents.push(d);
        }
        set
    }

    #[test]
    fn vocabulary_respects_min_count() {
        let set = tokenized_set(&["tesla tesla tesla tesla tesla", "tesla tesla tesla tesla tesla once"]);
        let (vocab, _) = build_vocabulary(&set, 5);
        assert!(vocab.contains("tesla"));
        assert_eq!(vocab.frequency("tesla"), Some(10));
        assert!(!vocab.contains("once"));
    }

    #[test]
    fn vocabulary_excludes_rare_tokens() {
        let set = tokenized_set(&["rare"]);
        let (vocab, _) = build_vocabulary(&set, 2);
        assert!(!vocab.contains("rare"));
        assert!(vocab.is_empty());
    }

    #[test]
    fn vocabulary_id_order_matches_count_oracle() {
        // Independent hash-map count + sort oracle over a 6-document fixture.
        let texts = [
            "battery range battery",
            "range charging battery",
            "charging battery",
            "range anxiety",
            "battery",
            "charging range",
        ];
        let set = tokenized_set(&texts);
        let (vocab, _) = build_vocabulary(&set, 1);

        let mut counts: HashMap<&str, usize> = HashMap::new();
        for t in texts {
            for tok in t.split_whitespace() {
                *counts.entry(tok).or_insert(0) += 1;
            }
        }
        let mut expected: Vec<(&str, usize)> = counts.into_iter().collect();
        expected.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

        assert_eq!(vocab.len(), expected.len());
        for (id, (tok, freq)) in expected.iter().enumerate() {
            assert_eq!(vocab.token(id), Some(*tok));
            assert_eq!(vocab.frequency(tok), Some(*freq));
        }
    }

    #[test]
    fn vocabulary_ids_dense_and_total_matches() {
        let set = tokenized_set(&["a b c a", "b a"]);
        let (vocab, _) = build_vocabulary(&set, 1);
        for id in 0..vocab.len() {
            let tok = vocab.token(id).unwrap();
            assert_eq!(vocab.id(tok), Some(id));
        }
        assert_eq!(vocab.total_count(), 6);
    }

    #[test]
    fn empty_corpus_warns() {
        let set = DocumentSet::new("t");
        let (vocab, warnings) = build_vocabulary(&set, 1);
        assert!(vocab.is_empty());
        assert_eq!(warnings.len(), 1);
    }
}
