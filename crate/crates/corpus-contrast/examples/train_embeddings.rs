//! Trains skip-gram embeddings with negative sampling on a prepared corpus
//! and prints nearest neighbors for a few probe words.
//!
//! Run with: cargo run --release --example train_embeddings

use corpus_contrast::corpus::load_corpus;
use corpus_contrast::embedding::{cosine, train_skipgram, SkipgramParams};
use corpus_contrast::prep::{build_vocabulary, prepare_documents, StopList};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/comments.jsonl");
    let mut set = load_corpus(path, "comments").unwrap().set;
    prepare_documents(&mut set, &StopList::english());

    let (vocab, warnings) = build_vocabulary(&set, 2);
    for w in warnings {
        println!("{w}");
    }
    println!("vocabulary: {} tokens", vocab.len());

    let params = SkipgramParams {
        dimension: 50,
        epochs: 15,
        seed: 42,
        ..Default::default()
    };
    let (table, stats) = train_skipgram(&set, &vocab, &params).unwrap();
    println!(
        "trained {} vectors over {} (center, context) pairs",
        table.len(),
        stats.pairs_trained
    );
    println!(
        "mean loss per epoch: first {:.4}, last {:.4}",
        stats.epoch_losses.first().unwrap(),
        stats.epoch_losses.last().unwrap()
    );

    for probe in ["charging", "battery", "terrible"] {
        let Some(pv) = table.get(probe) else { continue };
        let mut sims: Vec<(&str, f64)> = table
            .sorted_tokens()
            .into_iter()
            .filter(|t| *t != probe)
            .map(|t| (t, cosine(pv, table.get(t).unwrap()).unwrap()))
            .collect();
        sims.sort_by(|a, b| b.1.total_cmp(&a.1));
        let top: Vec<String> =
            sims.iter().take(5).map(|(t, s)| format!("{t} ({s:.2})")).collect();
        println!("nearest to {probe:>9}: {}", top.join(", "));
    }
}
