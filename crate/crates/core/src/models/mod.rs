//! Classical classifiers behind one train / predict contract, plus dev-set
//! grid tuning.
//!
//! All models consume [`SparseVector`] rows. Bag-of-words vectors are sparse
//! by nature; structural feature vectors are stored densely inside the same
//! type via [`SparseVector::from_dense`].

mod forest;
mod naive_bayes;
mod svm;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Document, Label};
use crate::eval::{prf1, ConfusionCounts};
use crate::features::{FeatureSpace, SparseVector};

pub use forest::{ForestParams, RandomForest};
pub use naive_bayes::{GaussianNb, MultinomialNb};
pub use svm::{LinearSvm, SVM_EPOCHS};
pub use tree::{DecisionTree, MaxFeatures, TreeParams};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("training set needs examples of both classes")]
    SingleClassTrainingSet,
    #[error("multinomial naive Bayes needs non-negative feature values (row {row}, column {column})")]
    NegativeWeightForMnb { row: usize, column: usize },
    #[error("input has dimension {got}, model expects {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("training example {0} is unlabeled")]
    Unlabeled(usize),
    #[error("rows and labels differ in length ({rows} vs {labels})")]
    LengthMismatch { rows: usize, labels: usize },
    #[error("hyperparameters {params} are not valid for {kind}")]
    BadHyperparams { kind: ModelKind, params: Hyperparams },
    #[error("hyperparameter grid for {0} is empty")]
    EmptyGrid(ModelKind),
    #[error("model file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    GaussianNb,
    MultinomialNb,
    DecisionTree,
    RandomForest,
    LinearSvm,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::GaussianNb,
        ModelKind::MultinomialNb,
        ModelKind::DecisionTree,
        ModelKind::RandomForest,
        ModelKind::LinearSvm,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ModelKind::GaussianNb => "gnb",
            ModelKind::MultinomialNb => "mnb",
            ModelKind::DecisionTree => "dt",
            ModelKind::RandomForest => "rf",
            ModelKind::LinearSvm => "svm",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        ModelKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| format!("unknown model `{s}` (expected gnb, mnb, dt, rf or svm)"))
    }
}

/// The tuned knob of a model, if it has one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Hyperparams {
    None,
    SvmC(f64),
    Trees(usize),
}

impl fmt::Display for Hyperparams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperparams::None => f.write_str("-"),
            Hyperparams::SvmC(c) => write!(f, "C={c}"),
            Hyperparams::Trees(n) => write!(f, "trees={n}"),
        }
    }
}

/// Candidate values searched on the dev set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperGrid {
    pub svm_c: Vec<f64>,
    pub rf_trees: Vec<usize>,
}

impl Default for HyperGrid {
    fn default() -> Self {
        HyperGrid {
            svm_c: vec![0.01, 0.05, 0.1],
            rf_trees: vec![20, 23, 25, 27, 30],
        }
    }
}

impl HyperGrid {
    /// Grid points for `kind`, ascending.
    pub fn points(&self, kind: ModelKind) -> Vec<Hyperparams> {
        match kind {
            ModelKind::LinearSvm => {
                let mut c = self.svm_c.clone();
                c.sort_by(f64::total_cmp);
                c.dedup();
                c.into_iter().map(Hyperparams::SvmC).collect()
            }
            ModelKind::RandomForest => {
                let mut t = self.rf_trees.clone();
                t.sort_unstable();
                t.dedup();
                t.into_iter().map(Hyperparams::Trees).collect()
            }
            _ => vec![Hyperparams::None],
        }
    }
}

/// Labeled rows ready for training or evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<SparseVector>,
    labels: Vec<Label>,
    dim: usize,
}

impl Dataset {
    /// All rows must share one dimension (the first row's, or `dim` when
    /// there are no rows).
    pub fn new(rows: Vec<SparseVector>, labels: Vec<Label>, dim: usize) -> Result<Dataset> {
        if rows.len() != labels.len() {
            return Err(ModelError::LengthMismatch {
                rows: rows.len(),
                labels: labels.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.dim() != dim) {
            return Err(ModelError::DimensionMismatch { got: r.dim(), want: dim });
        }
        Ok(Dataset { rows, labels, dim })
    }

    pub fn from_dense(rows: &[Vec<f64>], labels: Vec<Label>) -> Result<Dataset> {
        let dim = rows.first().map_or(0, Vec::len);
        Dataset::new(rows.iter().map(|r| SparseVector::from_dense(r)).collect(), labels, dim)
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Positive-class indicator per row; fails unless both classes occur.
    pub fn targets(&self) -> Result<Vec<bool>> {
        let mut seen = [false; 2];
        let mut y = Vec::with_capacity(self.labels.len());
        for (i, l) in self.labels.iter().enumerate() {
            match l {
                Label::InScope => seen[0] = true,
                Label::OutOfScope => seen[1] = true,
                Label::Unlabeled => return Err(ModelError::Unlabeled(i)),
            }
            y.push(l.is_positive());
        }
        if seen != [true, true] {
            return Err(ModelError::SingleClassTrainingSet);
        }
        Ok(y)
    }
}

fn label_of(positive: bool) -> Label {
    if positive {
        Label::InScope
    } else {
        Label::OutOfScope
    }
}

/// A fitted classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classifier {
    GaussianNb(GaussianNb),
    MultinomialNb(MultinomialNb),
    DecisionTree(DecisionTree),
    RandomForest(RandomForest),
    LinearSvm(LinearSvm),
}

impl Classifier {
    pub fn kind(&self) -> ModelKind {
        match self {
            Classifier::GaussianNb(_) => ModelKind::GaussianNb,
            Classifier::MultinomialNb(_) => ModelKind::MultinomialNb,
            Classifier::DecisionTree(_) => ModelKind::DecisionTree,
            Classifier::RandomForest(_) => ModelKind::RandomForest,
            Classifier::LinearSvm(_) => ModelKind::LinearSvm,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Classifier::GaussianNb(m) => m.dim(),
            Classifier::MultinomialNb(m) => m.dim(),
            Classifier::DecisionTree(m) => m.dim(),
            Classifier::RandomForest(m) => m.dim(),
            Classifier::LinearSvm(m) => m.dim(),
        }
    }

    pub fn predict(&self, x: &SparseVector) -> Result<Label> {
        if x.dim() != self.dim() {
            return Err(ModelError::DimensionMismatch {
                got: x.dim(),
                want: self.dim(),
            });
        }
        Ok(label_of(match self {
            Classifier::GaussianNb(m) => m.predict_positive(x),
            Classifier::MultinomialNb(m) => m.predict_positive(x),
            Classifier::DecisionTree(m) => m.predict_positive(x),
            Classifier::RandomForest(m) => m.predict_positive(x),
            Classifier::LinearSvm(m) => m.predict_positive(x),
        }))
    }

    pub fn predict_all(&self, data: &Dataset) -> Result<Vec<Label>> {
        data.rows().iter().map(|x| self.predict(x)).collect()
    }

    /// Confusion counts of this classifier on a labeled dataset.
    pub fn confusion(&self, data: &Dataset) -> Result<ConfusionCounts> {
        let predicted = self.predict_all(data)?;
        Ok(ConfusionCounts::from_labels(data.labels(), &predicted))
    }
}

/// Fit a classifier of `kind`.
///
/// `hyperparams` must match the kind: `SvmC` for the SVM, `Trees` for the
/// forest, `None` otherwise.
pub fn train(kind: ModelKind, data: &Dataset, hyperparams: Hyperparams, seed: u64) -> Result<Classifier> {
    let y = data.targets()?;
    let bad = || ModelError::BadHyperparams {
        kind,
        params: hyperparams,
    };
    Ok(match (kind, hyperparams) {
        (ModelKind::GaussianNb, Hyperparams::None) => Classifier::GaussianNb(GaussianNb::fit(data, &y)),
        (ModelKind::MultinomialNb, Hyperparams::None) => Classifier::MultinomialNb(MultinomialNb::fit(data, &y)?),
        (ModelKind::DecisionTree, Hyperparams::None) => {
            Classifier::DecisionTree(DecisionTree::fit(data, &y, &TreeParams::default(), seed))
        }
        (ModelKind::RandomForest, Hyperparams::Trees(n)) if n >= 1 => Classifier::RandomForest(RandomForest::fit(
            data,
            &y,
            &ForestParams {
                n_trees: n,
                ..ForestParams::default()
            },
            seed,
        )),
        (ModelKind::LinearSvm, Hyperparams::SvmC(c)) if c.is_finite() && c > 0.0 => {
            Classifier::LinearSvm(LinearSvm::fit(data, &y, c, seed))
        }
        _ => return Err(bad()),
    })
}

pub fn predict(model: &Classifier, x: &SparseVector) -> Result<Label> {
    model.predict(x)
}

/// Outcome of dev-set tuning.
#[derive(Debug, Clone, PartialEq)]
pub struct Tuned {
    pub classifier: Classifier,
    pub hyperparams: Hyperparams,
    pub dev_f1: f64,
    /// Dev F1 of every grid point, in grid order.
    pub dev_scores: Vec<(Hyperparams, f64)>,
}

/// Train one model per grid point and keep the one with the best
/// positive-class F1 on `dev`; ties go to the smaller hyperparameter.
pub fn tune(kind: ModelKind, train_set: &Dataset, dev: &Dataset, grid: &HyperGrid, seed: u64) -> Result<Tuned> {
    let points = grid.points(kind);
    if points.is_empty() {
        return Err(ModelError::EmptyGrid(kind));
    }

    // Forest trees are seeded by index, so a smaller forest is a prefix of
    // the largest one and one fit covers the whole grid.
    let largest = match kind {
        ModelKind::RandomForest => Some(train(kind, train_set, *points.last().unwrap(), seed)?),
        _ => None,
    };

    let mut best: Option<Tuned> = None;
    let mut scores = Vec::with_capacity(points.len());
    for hp in points {
        let model = match (&largest, hp) {
            (Some(Classifier::RandomForest(f)), Hyperparams::Trees(n)) => Classifier::RandomForest(f.truncated(n)),
            _ => train(kind, train_set, hp, seed)?,
        };
        let f1 = prf1(&model.confusion(dev)?).f1;
        scores.push((hp, f1));
        if best.as_ref().map_or(true, |b| f1 > b.dev_f1) {
            best = Some(Tuned {
                classifier: model,
                hyperparams: hp,
                dev_f1: f1,
                dev_scores: Vec::new(),
            });
        }
    }
    let mut best = best.expect("grid is non-empty");
    best.dev_scores = scores;
    Ok(best)
}

/// A classifier together with the recipe that turns a raw document into its
/// input vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub classifier: Classifier,
    pub hyperparams: Hyperparams,
    pub feature_space: FeatureSpace,
}

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    #[serde(default)]
    config_fingerprint: String,
    model: TrainedModel,
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        self.classifier.kind()
    }

    pub fn predict_document(&self, doc: &Document) -> Result<Label> {
        self.classifier.predict(&self.feature_space.transform(doc))
    }

    /// Versioned JSON serialization tagged with the configuration
    /// fingerprint that produced the model.
    pub fn to_json(&self, config_fingerprint: &str) -> String {
        serde_json::to_string(&ModelFile {
            format: "scopegate-model".into(),
            version: MODEL_FORMAT_VERSION,
            config_fingerprint: config_fingerprint.to_owned(),
            model: self.clone(),
        })
        .expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<TrainedModel> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
        if file.format != "scopegate-model" || file.version != MODEL_FORMAT_VERSION {
            return Err(ModelError::Format(format!(
                "unsupported model format {} v{}",
                file.format, file.version
            )));
        }
        Ok(file.model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{InScope as P, OutOfScope as N};

    fn line_data() -> Dataset {
        Dataset::from_dense(
            &[vec![-2.0], vec![-1.0], vec![-1.5], vec![1.0], vec![2.0], vec![1.2]],
            vec![N, N, N, P, P, P],
        )
        .unwrap()
    }

    #[test]
    fn single_class_rejected() {
        let d = Dataset::from_dense(&[vec![1.0], vec![2.0]], vec![P, P]).unwrap();
        for kind in ModelKind::ALL {
            let hp = HyperGrid::default().points(kind)[0];
            assert_eq!(train(kind, &d, hp, 0), Err(ModelError::SingleClassTrainingSet));
        }
    }

    #[test]
    fn hyperparams_must_match_kind() {
        let d = line_data();
        assert!(matches!(
            train(ModelKind::LinearSvm, &d, Hyperparams::Trees(3), 0),
            Err(ModelError::BadHyperparams { .. })
        ));
        assert!(matches!(
            train(ModelKind::RandomForest, &d, Hyperparams::Trees(0), 0),
            Err(ModelError::BadHyperparams { .. })
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let m = train(ModelKind::DecisionTree, &line_data(), Hyperparams::None, 0).unwrap();
        assert_eq!(
            m.predict(&SparseVector::zeros(3)),
            Err(ModelError::DimensionMismatch { got: 3, want: 1 })
        );
    }

    #[test]
    fn tune_single_point_and_ties() {
        let d = line_data();
        let grid = HyperGrid {
            svm_c: vec![0.1],
            rf_trees: vec![25, 20],
        };
        let t = tune(ModelKind::LinearSvm, &d, &d, &grid, 1).unwrap();
        assert_eq!(t.hyperparams, Hyperparams::SvmC(0.1));
        // Both forests separate the line perfectly; the smaller wins.
        let t = tune(ModelKind::RandomForest, &d, &d, &grid, 1).unwrap();
        assert_eq!(t.dev_scores.len(), 2);
        assert_eq!(t.dev_scores[0].1, t.dev_scores[1].1);
        assert_eq!(t.hyperparams, Hyperparams::Trees(20));
        let empty = HyperGrid {
            svm_c: vec![],
            rf_trees: vec![],
        };
        assert_eq!(
            tune(ModelKind::LinearSvm, &d, &d, &empty, 1),
            Err(ModelError::EmptyGrid(ModelKind::LinearSvm))
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ModelKind::ALL {
            assert_eq!(k.to_string().parse::<ModelKind>().unwrap(), k);
        }
        assert!("cnn".parse::<ModelKind>().is_err());
    }
}
