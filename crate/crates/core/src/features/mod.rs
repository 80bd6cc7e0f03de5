//! Feature construction: bag-of-words vectors, structural document features
//! and information-gain ranking.

mod selection;
mod space;
mod sparse;
mod structural;
mod vocab;

use thiserror::Error;

pub use selection::{
    entropy_bits, information_gain, rank_structural, rank_terms, ranking_csv, select_top_n, FeatureColumn,
    FeatureRanking, RankedFeature,
};
pub use space::{bow_tokens, BowSettings, FeatureSpace};
pub use sparse::SparseVector;
pub use structural::{
    count_reference_mentions, extract_structural, Slot, StructuralFeatures, STRUCTURAL_ARITY, STRUCTURAL_NAMES,
};
pub use vocab::{build_vocabulary, vectorize, Vocabulary, WeightingScheme};

#[derive(Debug, Error, PartialEq)]
pub enum FeatureError {
    #[error("no term reaches the minimum document frequency of {min_df}")]
    EmptyVocabulary { min_df: usize },
    #[error("vocabulary needs at least one training document")]
    NoDocuments,
    #[error("min_df must be at least 1")]
    BadMinDf,
    #[error("all labels belong to one class; information gain is undefined")]
    SingleClass,
    #[error("document `{0}` has no label")]
    Unlabeled(String),
    #[error("feature `{feature}` has {got} rows, labels have {want}")]
    LengthMismatch { feature: String, got: usize, want: usize },
    #[error("vocabulary file line {line}: {reason}")]
    VocabParse { line: usize, reason: String },
}
