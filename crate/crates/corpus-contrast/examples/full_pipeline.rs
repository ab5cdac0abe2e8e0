//! Runs the whole pipeline from the bundled config: ingest, quote stripping,
//! prep, embedding training, axis sentiment, topics, classifier, and the
//! statistical comparison, then prints the rendered report.
//!
//! Run with: cargo run --release --example full_pipeline

use corpus_contrast::pipeline::{render_report, run_pipeline, PipelineConfig};

fn main() {
    let config_path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/config.toml");
    let (config, hash) = PipelineConfig::from_file(config_path).expect("config should validate");
    let report = run_pipeline(&config, &hash).expect("pipeline should run");

    print!("{}", render_report(&report));
    println!(
        "\nartifacts under {}: report.json, report.txt, plots/, stages/",
        config.output_dir.display()
    );
}
