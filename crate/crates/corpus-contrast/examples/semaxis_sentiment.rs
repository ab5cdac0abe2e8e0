//! Scores two corpora along an antonym-seeded semantic axis and tests
//! whether their token-score populations differ.
//!
//! Run with: cargo run --release --example semaxis_sentiment

use corpus_contrast::corpus::load_corpus;
use corpus_contrast::embedding::{train_skipgram, SkipgramParams};
use corpus_contrast::prep::{build_vocabulary, prepare_documents, StopList};
use corpus_contrast::semaxis::{build_axis, score_corpus, score_entities};
use corpus_contrast::stats::{welch_t_test, SampleSummary, StdKind};

fn main() {
    let base = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let positive = ["excellent", "reliable", "love", "impressive", "smooth"].map(String::from);
    let negative =
        ["terrible", "unreliable", "hate", "disappointing", "faulty"].map(String::from);

    let mut summaries = Vec::new();
    for (file, tag) in [("news.jsonl", "news"), ("comments.jsonl", "comments")] {
        let mut set = load_corpus(format!("{base}/{file}"), tag).unwrap().set;
        prepare_documents(&mut set, &StopList::english());
        let (vocab, _) = build_vocabulary(&set, 2);
        let params = SkipgramParams { dimension: 50, epochs: 15, seed: 42, ..Default::default() };
        let (table, _) = train_skipgram(&set, &vocab, &params).unwrap();

        let axis = build_axis(&table, &positive, &negative).unwrap();
        let summary = score_corpus(&table, &axis, &set, false, false).unwrap();
        println!(
            "{:>9}: mean {:+.4}, std {:.4}, {} token occurrences ({} out of vocabulary)",
            tag, summary.mean, summary.std, summary.n_tokens, summary.oov_count
        );

        let makes = ["tesla", "nissan", "chevrolet", "toyota", "ford", "bmw"].map(String::from);
        for e in score_entities(&table, &axis, &makes, &set, 3).unwrap() {
            println!(
                "           {:<10} freq {:>4}  axis score {}",
                e.entity,
                e.frequency,
                e.score.map(|s| format!("{s:+.3}")).unwrap_or_else(|| "n/a".into())
            );
        }
        summaries.push(summary);
    }

    let a = SampleSummary::new(
        summaries[0].mean, summaries[0].std, summaries[0].n_tokens, StdKind::Population,
    )
    .unwrap();
    let b = SampleSummary::new(
        summaries[1].mean, summaries[1].std, summaries[1].n_tokens, StdKind::Population,
    )
    .unwrap();
    let test = welch_t_test(&a, &b).unwrap();
    println!(
        "\nWelch t-test: t = {:.3}, dof = {:.1}, p = {}",
        test.statistic,
        test.dof,
        test.p_display()
    );
}
