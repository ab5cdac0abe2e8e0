//! Comparative corpus analytics.
//!
//! Cleans threaded or duplicated text corpora, computes unsupervised
//! token-wise sentiment along user-defined semantic axes, fits LDA topic
//! models with sentiment and time overlays, trains a supervised
//! document-sentiment baseline, and statistically compares two corpora.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod align;
pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod pipeline;
pub mod prep;
pub mod semaxis;
pub mod stats;
pub mod topics;
