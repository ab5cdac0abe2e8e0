//! Trains a logistic-regression sentiment baseline over mean document
//! embeddings and evaluates it against a gold label set.
//!
//! Run with: cargo run --release --example classifier_baseline

use std::collections::HashMap;

use corpus_contrast::classifier::{
    drop_neutral, evaluate, load_labels, mean_predicted_sentiment, split_dataset,
    train_classifier, TrainParams,
};
use corpus_contrast::corpus::{load_corpus, Document};
use corpus_contrast::embedding::{train_skipgram_multi, SkipgramParams};
use corpus_contrast::prep::{build_vocabulary_multi, prepare_documents, StopList};

fn main() {
    let base = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let mut news = load_corpus(format!("{base}/news.jsonl"), "news").unwrap().set;
    let mut comments = load_corpus(format!("{base}/comments.jsonl"), "comments").unwrap().set;
    let stops = StopList::english();
    prepare_documents(&mut news, &stops);
    prepare_documents(&mut comments, &stops);

    let (vocab, _) = build_vocabulary_multi(&[&news, &comments], 2);
    let params = SkipgramParams { dimension: 50, epochs: 15, seed: 42, ..Default::default() };
    let (table, _) = train_skipgram_multi(&[&news, &comments], &vocab, &params).unwrap();

    let index: HashMap<&str, &Document> = news
        .documents
        .iter()
        .chain(&comments.documents)
        .map(|d| (d.id.as_str(), d))
        .collect();

    let labeled = load_labels(format!("{base}/labels_train.jsonl"), false).unwrap();
    let (binary, n_neutral) = drop_neutral(&labeled);
    println!("{} labeled documents, {} neutral dropped", labeled.len(), n_neutral);

    let gold = load_labels(format!("{base}/labels_gold.jsonl"), true).unwrap();
    let (gold, _) = drop_neutral(&gold);
    let gold_ids: std::collections::HashSet<&str> = gold.iter().map(|l| l.id.as_str()).collect();
    let non_gold: Vec<_> =
        binary.into_iter().filter(|l| !gold_ids.contains(l.id.as_str())).collect();

    let (train, validation) = split_dataset(&non_gold, 0.8, 42).unwrap();
    println!("split: {} train, {} validation, {} gold", train.len(), validation.len(), gold.len());

    let pair = |ls: Vec<_>| -> Vec<(_, &Document)> {
        ls.into_iter().filter_map(|l: corpus_contrast::classifier::LabeledDocument| {
            index.get(l.id.as_str()).map(|d| (l, *d))
        }).collect()
    };
    let report = train_classifier(
        &pair(train),
        &table,
        &TrainParams { epochs: 400, learning_rate: 0.3, ..Default::default() },
    )
    .unwrap();
    println!("final training loss {:.4}", report.final_loss);

    let (val_metrics, _) = evaluate(&report.model, &table, &pair(validation)).unwrap();
    let (gold_metrics, _) = evaluate(&report.model, &table, &pair(gold)).unwrap();
    println!(
        "validation accuracy {:.3}; gold accuracy {:.3}, precision {:.3}, recall {:.3}, F1 {:.3}",
        val_metrics.accuracy,
        gold_metrics.accuracy,
        gold_metrics.precision,
        gold_metrics.recall,
        gold_metrics.f1
    );

    let mean_news = mean_predicted_sentiment(&report.model, &table, &news.documents);
    let mean_comments = mean_predicted_sentiment(&report.model, &table, &comments.documents);
    println!(
        "mean predicted sentiment: news {:+.3}, comments {:+.3}",
        mean_news.unwrap(),
        mean_comments.unwrap()
    );
}
