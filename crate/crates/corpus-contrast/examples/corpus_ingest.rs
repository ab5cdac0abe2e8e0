//! Loads a line-delimited corpus, filters by target phrases, and removes
//! exact duplicates.
//!
//! Run with: cargo run --example corpus_ingest

use corpus_contrast::corpus::{filter_by_phrases, load_corpus, remove_exact_duplicates};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/news.jsonl");
    let report = load_corpus(path, "news").expect("fixture corpus should load");

    println!("loaded {} documents from {}", report.set.len(), path);
    for d in &report.diagnostics {
        println!("  line {}: {}", d.line, d.message);
    }

    let phrases = vec!["electric vehicle".to_string(), "charging network".to_string()];
    let filtered = filter_by_phrases(&report.set, &phrases).unwrap();
    println!(
        "{} documents mention {:?}",
        filtered.len(),
        phrases
    );

    let (deduped, removed) = remove_exact_duplicates(&filtered);
    println!("{} after removing {} exact duplicates", deduped.len(), removed);

    let first = &deduped.documents[0];
    println!(
        "\nfirst kept document: {} ({})\n  {}",
        first.id,
        first.timestamp.map(|t| t.to_string()).unwrap_or_default(),
        first.text
    );
}
