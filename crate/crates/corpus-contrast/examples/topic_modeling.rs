//! Fits an LDA topic model by collapsed Gibbs sampling and prints top words,
//! topic shares, and a per-year topic timeline.
//!
//! Run with: cargo run --release --example topic_modeling

use corpus_contrast::corpus::load_corpus;
use corpus_contrast::prep::{build_vocabulary, prepare_documents, StopList};
use corpus_contrast::topics::{fit_lda, topic_timeline, Binning, LdaParams};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/comments.jsonl");
    let mut set = load_corpus(path, "comments").unwrap().set;
    prepare_documents(&mut set, &StopList::english());
    let (vocab, _) = build_vocabulary(&set, 1);

    let params = LdaParams {
        iterations: 400,
        burn_in: 100,
        ..LdaParams::with_k(6)
    };
    let model = fit_lda(&set, &vocab, &params).unwrap();
    println!(
        "fit {} topics over {} documents ({} skipped for having no in-vocabulary token)",
        model.k(),
        model.n_docs(),
        model.skipped_docs.len()
    );

    let (share_theta, share_dominant) = model.topic_shares();
    for topic in 0..model.k() {
        let words: Vec<String> = model
            .top_words(topic, 8)
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        println!(
            "topic {topic}: share {:>5.1}% (dominant in {:>5.1}%)  {}",
            share_theta[topic] * 100.0,
            share_dominant[topic] * 100.0,
            words.join(" ")
        );
    }

    let (timelines, undated) = topic_timeline(&model, &set, Binning::Year).unwrap();
    println!("\ntopic mass per year ({undated} undated documents):");
    for tl in &timelines {
        for bin in &tl.bins {
            println!(
                "  topic {}  {}  mass {:.3} over {} documents",
                tl.topic, bin.period_start, bin.mass, bin.n_docs
            );
        }
    }
}
