//! Fitted document-to-vector transforms.

use serde::{Deserialize, Serialize};

use super::{
    build_vocabulary, extract_structural, rank_structural, rank_terms, select_top_n, vectorize, FeatureError,
    SparseVector, StructuralFeatures, Vocabulary, WeightingScheme, STRUCTURAL_NAMES,
};
use crate::corpus::{Document, Label};
use crate::textproc::{preprocess, take_portion, tokenize, PortionMode, Stopwords, TokenStream};

/// Settings for fitting a bag-of-words space.
#[derive(Debug, Clone, PartialEq)]
pub struct BowSettings {
    pub portion: PortionMode,
    pub scheme: WeightingScheme,
    pub min_df: usize,
    pub stopwords: Stopwords,
    /// Keep only the `n` highest-IG terms (full-text vocabulary).
    pub top_n: Option<usize>,
}

impl Default for BowSettings {
    fn default() -> Self {
        BowSettings {
            portion: PortionMode::All,
            scheme: WeightingScheme::TfIdf,
            min_df: 5,
            stopwords: Stopwords::default(),
            top_n: None,
        }
    }
}

/// Everything needed to turn a raw document into a model input vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FeatureSpace {
    Bow {
        vocab: Vocabulary,
        scheme: WeightingScheme,
        portion: PortionMode,
        stopwords: Stopwords,
        top_n: Option<usize>,
    },
    Structural {
        /// Selected slot indices, ascending.
        columns: Vec<usize>,
        top_n: Option<usize>,
    },
}

/// Tokenize, cut the portion, then drop stopwords and stem.
pub fn bow_tokens(doc: &Document, portion: PortionMode, stopwords: &Stopwords) -> TokenStream {
    let mut raw = tokenize(&doc.text());
    raw.source_id = doc.id.clone();
    preprocess(&take_portion(&raw, portion), stopwords)
}

fn labels_of(docs: &[&Document]) -> Result<Vec<Label>, FeatureError> {
    docs.iter()
        .map(|d| match d.label {
            Label::Unlabeled => Err(FeatureError::Unlabeled(d.id.clone())),
            l => Ok(l),
        })
        .collect()
}

impl FeatureSpace {
    /// Fit a bag-of-words space on training documents only.
    pub fn fit_bow(train: &[&Document], settings: &BowSettings) -> Result<FeatureSpace, FeatureError> {
        let tokens: Vec<TokenStream> = train
            .iter()
            .map(|d| bow_tokens(d, settings.portion, &settings.stopwords))
            .collect();
        FeatureSpace::fit_bow_tokens(train, &tokens, settings)
    }

    /// As [`FeatureSpace::fit_bow`] with the documents already run through
    /// [`bow_tokens`] under `settings.portion`.
    pub fn fit_bow_tokens(
        train: &[&Document],
        tokens: &[TokenStream],
        settings: &BowSettings,
    ) -> Result<FeatureSpace, FeatureError> {
        let mut vocab = build_vocabulary(tokens, settings.min_df)?;
        if let Some(n) = settings.top_n {
            let ranking = rank_terms(tokens, &labels_of(train)?, &vocab)?;
            let keep = select_top_n(&ranking, n);
            vocab = vocab.restrict(keep.iter().map(String::as_str));
        }
        Ok(FeatureSpace::Bow {
            vocab,
            scheme: settings.scheme,
            portion: settings.portion,
            stopwords: settings.stopwords.clone(),
            top_n: settings.top_n,
        })
    }

    /// Fit a structural space; with `top_n` the slots are IG-ranked on the
    /// training documents and the best `n` kept.
    pub fn fit_structural(train: &[&Document], top_n: Option<usize>) -> Result<FeatureSpace, FeatureError> {
        let rows: Vec<StructuralFeatures> = train.iter().map(|d| extract_structural(d)).collect();
        FeatureSpace::fit_structural_rows(train, &rows, top_n)
    }

    pub fn fit_structural_rows(
        train: &[&Document],
        rows: &[StructuralFeatures],
        top_n: Option<usize>,
    ) -> Result<FeatureSpace, FeatureError> {
        let columns = match top_n {
            None => (0..STRUCTURAL_NAMES.len()).collect(),
            Some(n) => {
                let ranking = rank_structural(rows, &labels_of(train)?)?;
                let mut cols: Vec<usize> = select_top_n(&ranking, n)
                    .iter()
                    .map(|name| STRUCTURAL_NAMES.iter().position(|s| s == name).expect("ranked a known slot"))
                    .collect();
                cols.sort_unstable();
                cols
            }
        };
        Ok(FeatureSpace::Structural { columns, top_n })
    }

    pub fn dim(&self) -> usize {
        match self {
            FeatureSpace::Bow { vocab, .. } => vocab.len(),
            FeatureSpace::Structural { columns, .. } => columns.len(),
        }
    }

    /// Column names in vector order.
    pub fn feature_names(&self) -> Vec<String> {
        match self {
            FeatureSpace::Bow { vocab, .. } => vocab.terms().to_vec(),
            FeatureSpace::Structural { columns, .. } => {
                columns.iter().map(|&c| STRUCTURAL_NAMES[c].to_owned()).collect()
            }
        }
    }

    pub fn transform(&self, doc: &Document) -> SparseVector {
        match self {
            FeatureSpace::Bow {
                vocab,
                scheme,
                portion,
                stopwords,
                ..
            } => vectorize(&bow_tokens(doc, *portion, stopwords), vocab, *scheme),
            FeatureSpace::Structural { .. } => self.transform_structural(&extract_structural(doc)),
        }
    }

    /// Vectorize tokens produced by [`bow_tokens`] with this space's portion
    /// and stopwords. Structural spaces return an empty vector.
    pub fn transform_tokens(&self, tokens: &TokenStream) -> SparseVector {
        match self {
            FeatureSpace::Bow { vocab, scheme, .. } => vectorize(tokens, vocab, *scheme),
            FeatureSpace::Structural { .. } => SparseVector::zeros(self.dim()),
        }
    }

    pub fn transform_structural(&self, features: &StructuralFeatures) -> SparseVector {
        match self {
            FeatureSpace::Structural { columns, .. } => {
                let values: Vec<f64> = columns.iter().map(|&c| features.values()[c]).collect();
                SparseVector::from_dense(&values)
            }
            FeatureSpace::Bow { .. } => SparseVector::zeros(self.dim()),
        }
    }
}
