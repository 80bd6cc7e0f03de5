//! # scopegate
//!
//! Tools for deciding whether documents harvested from a web archive belong
//! in a curated collection ("in scope") or not.
//!
//! The pipeline has five layers, each in its own module:
//!
//! - [`corpus`]: labeled corpora loaded from a CSV manifest plus pre-extracted
//!   text files, stratified train/dev/test splits and the 2:1 rebalanced
//!   training set.
//! - [`textproc`]: tokenization, document portions (first-X words, first-X
//!   plus last-X words), stopword removal and Porter stemming.
//! - [`features`]: bag-of-words vocabularies and vectors, the fixed-order
//!   structural feature vector, and information-gain ranking.
//! - [`models`]: Gaussian and multinomial naive Bayes, CART decision trees,
//!   random forests and a Pegasos linear SVM behind one contract.
//! - [`eval`]: positive-class precision/recall/F1, the seeded experiment
//!   runner and parameter sweeps.
//!
//! The `scopegate` binary wraps these into `ingest`, `split`, `train`,
//! `evaluate`, `rank`, `predict` and `sweep` commands (see [`cli`]).
//!
//! ```no_run
//! use scopegate::corpus::load_corpus;
//! use scopegate::eval::{run_experiment, ExperimentPlan, FeatureAxis};
//! use scopegate::models::ModelKind;
//! use scopegate::textproc::PortionMode;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let loaded = load_corpus("manifest.csv", "texts/")?;
//! let plan = ExperimentPlan::new(
//!     FeatureAxis::BowPortion(PortionMode::FirstLast(100)),
//!     ModelKind::RandomForest,
//! );
//! let report = run_experiment(&loaded.corpus, &plan)?;
//! println!("F1 = {:.2}", report.f1);
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod config;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod io;
pub mod models;
pub mod seed;
pub mod synth;
pub mod textproc;

pub use corpus::{Corpus, Document, Label};
pub use features::{SparseVector, StructuralFeatures, Vocabulary, WeightingScheme};
pub use models::{ModelKind, TrainedModel};
pub use textproc::{PortionMode, TokenStream};
