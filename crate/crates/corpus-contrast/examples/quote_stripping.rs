//! Removes quoted text from threaded comments with Smith-Waterman local
//! alignment against the original post and each comment's predecessor.
//!
//! Run with: cargo run --example quote_stripping

use corpus_contrast::align::{strip_quoted_text, sw_align, AlignmentScoring};
use corpus_contrast::corpus::{load_corpus, Document};

fn main() {
    let scoring = AlignmentScoring::default();

    // Raw alignment on token sequences.
    let target: Vec<&str> = "so about the range anxiety point i disagree".split(' ').collect();
    let reference: Vec<&str> = "the range anxiety point is overblown".split(' ').collect();
    let span = sw_align(&target, &reference, &scoring);
    println!(
        "best local alignment covers target[{}..{}] with score {}: {:?}",
        span.target_start,
        span.target_end,
        span.score,
        &target[span.target_start..span.target_end]
    );

    // Thread cleaning on the bundled comment corpus.
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/comments.jsonl");
    let set = load_corpus(path, "comments").unwrap().set;
    let mut kept = 0;
    let mut removed_tokens = 0;
    let mut dropped = 0;
    for thread in set.threads() {
        let docs: Vec<Document> = thread.into_iter().cloned().collect();
        let (survivors, events) = strip_quoted_text(&docs, &scoring, false);
        kept += survivors.len();
        for e in &events {
            removed_tokens += e.tokens_removed;
            if e.dropped {
                dropped += 1;
            }
        }
    }
    println!(
        "\ncleaned {} comments: {} kept, {} quoted tokens removed, {} dropped",
        set.len(),
        kept,
        removed_tokens,
        dropped
    );
}
