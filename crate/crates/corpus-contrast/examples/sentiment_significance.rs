//! Statistical toolbox: Welch's t-test on summary statistics, chi-squared on
//! a 2x2 contingency table, and Cohen's kappa for annotator agreement.
//!
//! Run with: cargo run --example sentiment_significance

use corpus_contrast::stats::{
    chi_squared_2x2, cohens_kappa, welch_t_test, SampleSummary, StdKind,
};

fn main() {
    // Two large token-score populations with close means: summary statistics
    // are all the test needs.
    let a = SampleSummary::new(0.10, 0.094, 560_000, StdKind::Population).unwrap();
    let b = SampleSummary::new(0.18, 0.123, 80_000, StdKind::Population).unwrap();
    let t = welch_t_test(&a, &b).unwrap();
    println!(
        "Welch t-test: t = {:.2}, dof = {:.0}, p = {}",
        t.statistic,
        t.dof,
        t.p_display()
    );

    // Prediction counts (positive, negative) for two corpora.
    let counts = [[30, 10], [10, 30]];
    let chi = chi_squared_2x2(counts, false).unwrap();
    println!(
        "chi-squared on {:?}: statistic = {:.3}, p = {}",
        counts,
        chi.statistic,
        chi.p_display()
    );

    // Two annotators labeling the same 12 documents.
    let annotator_a = [1, 1, 1, -1, -1, 0, 0, 1, -1, -1, 1, 0];
    let annotator_b = [1, 1, -1, -1, -1, 0, 1, 1, -1, -1, 1, 0];
    let kappa = cohens_kappa(&annotator_a, &annotator_b).unwrap();
    println!("Cohen's kappa over {} items: {:.3}", annotator_a.len(), kappa);
}
