//! Document collections: loading, phrase filtering, and exact deduplication.
//!
//! The on-disk format is line-delimited JSON, one document per line. Required
//! keys are `id`, `corpus`, and `text`; `timestamp`, `author`, `thread_id`,
//! and `parent_id` are optional. Timestamps are ISO-8601 dates.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::CorpusError;

/// One news article or forum comment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    #[serde(rename = "corpus")]
    pub corpus_tag: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<NaiveDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thread_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<String>,
    /// Filled by the prep stage; absent in raw corpora.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tokens: Option<Vec<String>>,
}

impl Document {
    pub fn new(id: impl Into<String>, corpus_tag: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            corpus_tag: corpus_tag.into(),
            text: text.into(),
            timestamp: None,
            author: None,
            thread_id: None,
            parent_id: None,
            tokens: None,
        }
    }

    /// Tokens if present, otherwise an empty slice.
    pub fn tokens(&self) -> &[String] {
        self.tokens.as_deref().unwrap_or(&[])
    }
}

/// An ordered, immutable collection of documents sharing one corpus tag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocumentSet {
    pub corpus_tag: String,
    pub documents: Vec<Document>,
}

/// Per-line diagnostic produced while loading a corpus file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineDiagnostic {
    pub line: usize,
    pub message: String,
}

/// Result of loading a corpus file: the parseable documents plus diagnostics
/// for every malformed line. Malformed lines are reported, never silently
/// dropped.
#[derive(Debug, Clone)]
pub struct LoadReport {
    pub set: DocumentSet,
    pub diagnostics: Vec<LineDiagnostic>,
    pub warnings: Vec<String>,
}

impl DocumentSet {
    pub fn new(corpus_tag: impl Into<String>) -> Self {
        DocumentSet { corpus_tag: corpus_tag.into(), documents: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Groups documents by `thread_id`, preserving document order within each
    /// thread. Documents without a thread id each form a singleton group.
    pub fn threads(&self) -> Vec<Vec<&Document>> {
        let mut order: Vec<String> = Vec::new();
        let mut groups: std::collections::HashMap<String, Vec<&Document>> =
            std::collections::HashMap::new();
        let mut singletons: Vec<Vec<&Document>> = Vec::new();
        for doc in &self.documents {
            match &doc.thread_id {
                Some(tid) => {
                    if !groups.contains_key(tid) {
                        order.push(tid.clone());
                    }
                    groups.entry(tid.clone()).or_default().push(doc);
                }
                None => singletons.push(vec![doc]),
            }
        }
        let mut out: Vec<Vec<&Document>> =
            order.into_iter().map(|tid| groups.remove(&tid).unwrap()).collect();
        out.append(&mut singletons);
        out
    }
}

/// Loads a line-delimited JSON corpus file. Every malformed line yields a
/// diagnostic naming the line number; duplicate ids are rejected per line.
pub fn load_corpus(path: impl AsRef<Path>, corpus_tag: &str) -> Result<LoadReport, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let reader = BufReader::new(file);

    let mut set = DocumentSet::new(corpus_tag);
    let mut diagnostics = Vec::new();
    let mut warnings = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Document>(&line) {
            Ok(mut doc) => {
                if doc.text.is_empty() {
                    diagnostics.push(LineDiagnostic {
                        line: line_no,
                        message: format!("document {:?} has empty text", doc.id),
                    });
                    continue;
                }
                if !seen_ids.insert(doc.id.clone()) {
                    diagnostics.push(LineDiagnostic {
                        line: line_no,
                        message: format!("duplicate id {:?}", doc.id),
                    });
                    continue;
                }
                doc.corpus_tag = corpus_tag.to_string();
                set.documents.push(doc);
            }
            Err(e) => diagnostics.push(LineDiagnostic { line: line_no, message: e.to_string() }),
        }
    }

    if set.is_empty() {
        warnings.push(format!("corpus file {} produced no documents", path.display()));
    }
    Ok(LoadReport { set, diagnostics, warnings })
}

/// Writes a document set in the same line-delimited JSON format `load_corpus`
/// reads.
pub fn save_corpus(set: &DocumentSet, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut w = BufWriter::new(file);
    for doc in &set.documents {
        serde_json::to_writer(&mut w, doc).map_err(CorpusError::Serialize)?;
        w.write_all(b"\n").map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    }
    w.flush().map_err(|e| CorpusError::Io { path: path.display().to_string(), source: e })?;
    Ok(())
}

fn normalize_ws_lower(text: &str) -> Vec<String> {
    text.to_lowercase().split_whitespace().map(|s| s.to_string()).collect()
}

/// Keeps exactly the documents whose text contains at least one phrase as a
/// contiguous token sequence. Matching is case-insensitive on
/// whitespace-normalized text; order is preserved.
pub fn filter_by_phrases(docs: &DocumentSet, phrases: &[String]) -> Result<DocumentSet, CorpusError> {
    if phrases.is_empty() {
        return Err(CorpusError::Config("phrase list is empty".into()));
    }
    let phrase_tokens: Vec<Vec<String>> = phrases
        .iter()
        .map(|p| {
            let toks = normalize_ws_lower(p);
            if toks.is_empty() {
                Err(CorpusError::Config(format!("empty phrase {:?}", p)))
            } else {
                Ok(toks)
            }
        })
        .collect::<Result<_, _>>()?;

    let mut out = DocumentSet::new(docs.corpus_tag.clone());
    for doc in &docs.documents {
        let toks = normalize_ws_lower(&doc.text);
        let hit = phrase_tokens.iter().any(|p| toks.windows(p.len()).any(|w| w == p.as_slice()));
        if hit {
            out.documents.push(doc.clone());
        }
    }
    Ok(out)
}

/// Normalization used for exact-duplicate detection: Unicode NFC, trim, and
/// collapse of internal whitespace runs to single spaces.
pub fn normalized_text(text: &str) -> String {
    let nfc: String = text.nfc().collect();
    nfc.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Keeps the first occurrence of each normalized text. Returns the deduplicated
/// set and the number of removals.
pub fn remove_exact_duplicates(docs: &DocumentSet) -> (DocumentSet, usize) {
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = DocumentSet::new(docs.corpus_tag.clone());
    let mut removed = 0;
    for doc in &docs.documents {
        if seen.insert(normalized_text(&doc.text)) {
            out.documents.push(doc.clone());
        } else {
            removed += 1;
        }
    }
    (out, removed)
}
