use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_metrics, prf1, ConfusionCounts, EvalError, Metrics, Result, StageError};
use crate::config::fingerprint;
use crate::corpus::{rebalance_train, stratified_split, Corpus, Document, SplitRatios};
use crate::features::{bow_tokens, extract_structural, BowSettings, FeatureSpace, SparseVector, STRUCTURAL_ARITY};
use crate::models::{tune, Dataset, HyperGrid, Hyperparams, ModelKind};
use crate::seed;
use crate::textproc::PortionMode;

/// The feature families compared in the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureAxis {
    /// Bag-of-words over the full text.
    BowAll,
    /// Bag-of-words over a document portion.
    BowPortion(PortionMode),
    /// Full-text bag-of-words restricted to the top-N terms by information gain.
    FsBow(usize),
    /// All structural features.
    Structural,
    /// Top-N structural features by information gain.
    FsStructural(usize),
}

impl FeatureAxis {
    /// Row label used in summary tables.
    pub fn family(&self) -> &'static str {
        match self {
            FeatureAxis::BowAll => "BoW-all",
            FeatureAxis::BowPortion(_) => "BoW-PD",
            FeatureAxis::FsBow(_) => "FS-BoW",
            FeatureAxis::Structural => "Str",
            FeatureAxis::FsStructural(_) => "FS-Str",
        }
    }

    pub fn is_structural(&self) -> bool {
        matches!(self, FeatureAxis::Structural | FeatureAxis::FsStructural(_))
    }
}

impl fmt::Display for FeatureAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureAxis::BowAll => f.write_str("bow-all"),
            FeatureAxis::BowPortion(m) => write!(f, "bow-pd:{m}"),
            FeatureAxis::FsBow(n) => write!(f, "fs-bow:{n}"),
            FeatureAxis::Structural => f.write_str("str"),
            FeatureAxis::FsStructural(n) => write!(f, "fs-str:{n}"),
        }
    }
}

impl FromStr for FeatureAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || format!("unknown feature axis `{s}` (expected bow-all, bow-pd:<portion>, fs-bow:<N>, str or fs-str:<N>)");
        let count = |n: &str| n.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(bad);
        match s.as_str() {
            "bow-all" => Ok(FeatureAxis::BowAll),
            "str" => Ok(FeatureAxis::Structural),
            _ => {
                if let Some(m) = s.strip_prefix("bow-pd:") {
                    m.parse().map(FeatureAxis::BowPortion).map_err(|_| bad())
                } else if let Some(n) = s.strip_prefix("fs-bow:") {
                    count(n).map(FeatureAxis::FsBow)
                } else if let Some(n) = s.strip_prefix("fs-str:") {
                    count(n).map(FeatureAxis::FsStructural)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Pipeline phase in which a document was read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    Split,
    Rebalance,
    FeatureFit,
    Train,
    Tune,
    Test,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Split => "split",
            Stage::Rebalance => "rebalance",
            Stage::FeatureFit => "feature fitting",
            Stage::Train => "training",
            Stage::Tune => "tuning",
            Stage::Test => "test evaluation",
        })
    }
}

/// One read of a document's content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Access {
    pub seed: u64,
    pub stage: Stage,
    pub doc_id: String,
}

/// Thread-safe record of document reads, in order per seed.
#[derive(Debug, Default)]
pub struct AccessLog {
    entries: Mutex<Vec<Access>>,
}

impl AccessLog {
    pub fn new() -> AccessLog {
        AccessLog::default()
    }

    fn record(&self, seed: u64, stage: Stage, docs: &[&Document]) {
        let mut e = self.entries.lock().expect("access log poisoned");
        e.extend(docs.iter().map(|d| Access {
            seed,
            stage,
            doc_id: d.id.clone(),
        }));
    }

    pub fn entries(&self) -> Vec<Access> {
        self.entries.lock().expect("access log poisoned").clone()
    }
}

/// What to run: one feature axis, one model family, several seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub axis: FeatureAxis,
    pub model: ModelKind,
    pub seeds: Vec<u64>,
    pub ratios: SplitRatios,
    /// Negative:positive ratio of the rebalanced training set.
    pub target_neg_to_pos: f64,
    /// Weighting, min_df and stopwords for bag-of-words axes. The portion is
    /// taken from the axis.
    pub bow: BowSettings,
    pub grid: HyperGrid,
    /// Extra labeled positives for rebalancing.
    pub positive_pool: Option<Corpus>,
    /// Also tune every other model family and record its dev F1.
    pub audit_families: bool,
}

impl ExperimentPlan {
    /// Defaults: seeds 1, 2, 3; 60/20/20 split; 2:1 rebalancing; tf-idf with
    /// min_df 5 and the built-in stopwords; default grid.
    pub fn new(axis: FeatureAxis, model: ModelKind) -> ExperimentPlan {
        ExperimentPlan {
            axis,
            model,
            seeds: vec![1, 2, 3],
            ratios: SplitRatios::default(),
            target_neg_to_pos: 2.0,
            bow: BowSettings::default(),
            grid: HyperGrid::default(),
            positive_pool: None,
            audit_families: false,
        }
    }

    /// Canonical `key=value` description of everything that affects results.
    pub fn describe(&self) -> String {
        let stopwords: Vec<&str> = self.bow.stopwords.iter().collect();
        let pool: Vec<&str> = self
            .positive_pool
            .as_ref()
            .map(|p| p.documents().iter().map(|d| d.id.as_str()).collect())
            .unwrap_or_default();
        format!(
            "axis={}\nmodel={}\nseeds={:?}\nratios={},{},{}\ntarget={}\nscheme={}\nmin_df={}\nstopwords={}\nsvm_c={:?}\nrf_trees={:?}\npool={}\n",
            self.axis,
            self.model,
            self.seeds,
            self.ratios.train,
            self.ratios.dev,
            self.ratios.test,
            self.target_neg_to_pos,
            self.bow.scheme,
            self.bow.min_df,
            fingerprint(&stopwords.join("\n")),
            self.grid.svm_c,
            self.grid.rf_trees,
            fingerprint(&pool.join("\n")),
        )
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(&self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedResult {
    pub seed: u64,
    pub metrics: Metrics,
    pub counts: ConfusionCounts,
    pub hyperparams: Hyperparams,
    pub dev_f1: f64,
    /// Best dev F1 of each audited model family.
    pub family_dev_f1: Vec<(ModelKind, f64)>,
    /// `(negative, positive)` documents in the rebalanced training set.
    pub train_counts: (usize, usize),
    pub feature_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub axis: FeatureAxis,
    pub model: ModelKind,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub per_seed: Vec<SeedResult>,
    pub fingerprint: String,
}

impl EvalReport {
    pub fn metrics(&self) -> Metrics {
        Metrics {
            precision: self.precision,
            recall: self.recall,
            f1: self.f1,
        }
    }
}

pub fn run_experiment(corpus: &Corpus, plan: &ExperimentPlan) -> Result<EvalReport> {
    run_experiment_audited(corpus, plan, &AccessLog::new())
}

/// [`run_experiment`] recording every document read in `log`.
pub fn run_experiment_audited(corpus: &Corpus, plan: &ExperimentPlan, log: &AccessLog) -> Result<EvalReport> {
    if plan.seeds.is_empty() {
        return Err(EvalError::NoSeeds);
    }
    let per_seed = plan
        .seeds
        .par_iter()
        .map(|&s| run_seed(corpus, plan, s, log))
        .collect::<Result<Vec<_>>>()?;
    let mean = mean_metrics(&per_seed.iter().map(|r| r.metrics).collect::<Vec<_>>());
    Ok(EvalReport {
        axis: plan.axis,
        model: plan.model,
        precision: mean.precision,
        recall: mean.recall,
        f1: mean.f1,
        per_seed,
        fingerprint: plan.fingerprint(),
    })
}

/// Fitted features for one seed, able to vectorize further documents.
struct Featurizer {
    space: FeatureSpace,
}

impl Featurizer {
    fn portion(axis: FeatureAxis) -> PortionMode {
        match axis {
            FeatureAxis::BowPortion(m) => m,
            _ => PortionMode::All,
        }
    }

    fn fit(plan: &ExperimentPlan, train: &[&Document]) -> std::result::Result<(Featurizer, Vec<SparseVector>), StageError> {
        let space;
        let vectors;
        if plan.axis.is_structural() {
            let rows: Vec<_> = train.iter().map(|d| extract_structural(d)).collect();
            let top_n = match plan.axis {
                FeatureAxis::FsStructural(n) => Some(n.min(STRUCTURAL_ARITY)),
                _ => None,
            };
            space = FeatureSpace::fit_structural_rows(train, &rows, top_n)?;
            vectors = rows.iter().map(|r| space.transform_structural(r)).collect();
        } else {
            let settings = BowSettings {
                portion: Featurizer::portion(plan.axis),
                top_n: match plan.axis {
                    FeatureAxis::FsBow(n) => Some(n),
                    _ => None,
                },
                ..plan.bow.clone()
            };
            let tokens: Vec<_> = train
                .iter()
                .map(|d| bow_tokens(d, settings.portion, &settings.stopwords))
                .collect();
            space = FeatureSpace::fit_bow_tokens(train, &tokens, &settings)?;
            vectors = tokens.iter().map(|t| space.transform_tokens(t)).collect();
        }
        Ok((Featurizer { space }, vectors))
    }

    fn dataset(&self, docs: &[&Document]) -> std::result::Result<Dataset, StageError> {
        let rows = docs.iter().map(|d| self.space.transform(d)).collect();
        let labels = docs.iter().map(|d| d.label).collect();
        Ok(Dataset::new(rows, labels, self.space.dim())?)
    }
}

fn run_seed(corpus: &Corpus, plan: &ExperimentPlan, s: u64, log: &AccessLog) -> Result<SeedResult> {
    let at = |stage: Stage| move |e: StageError| EvalError::Stage { seed: s, stage, source: e };

    let split = stratified_split(corpus, plan.ratios, s).map_err(|e| at(Stage::Split)(e.into()))?;
    let empty_pool = Corpus::new("pool", Vec::new()).expect("empty corpus has no duplicates");
    let pool = plan.positive_pool.as_ref().unwrap_or(&empty_pool);
    let train_set = rebalance_train(&split, pool, plan.target_neg_to_pos, s).map_err(|e| at(Stage::Rebalance)(e.into()))?;

    let train: Vec<&Document> = train_set.documents.iter().collect();
    log.record(s, Stage::FeatureFit, &train);
    let (featurizer, train_rows) = Featurizer::fit(plan, &train).map_err(at(Stage::FeatureFit))?;
    let train_data = Dataset::new(
        train_rows,
        train.iter().map(|d| d.label).collect(),
        featurizer.space.dim(),
    )
    .map_err(|e| at(Stage::Train)(e.into()))?;

    let dev: Vec<&Document> = split.dev.documents().iter().collect();
    log.record(s, Stage::Tune, &dev);
    let dev_data = featurizer.dataset(&dev).map_err(at(Stage::Tune))?;
    let model_seed = seed::derive(s, seed::stream::MODEL);
    let tuned = tune(plan.model, &train_data, &dev_data, &plan.grid, model_seed).map_err(|e| at(Stage::Tune)(e.into()))?;

    let mut family_dev_f1 = vec![(plan.model, tuned.dev_f1)];
    if plan.audit_families {
        for kind in ModelKind::ALL.into_iter().filter(|&k| k != plan.model) {
            // A family that cannot train on these features (MNB on negative
            // sentinels) is recorded with F1 0.
            let f1 = tune(kind, &train_data, &dev_data, &plan.grid, model_seed).map_or(0.0, |t| t.dev_f1);
            family_dev_f1.push((kind, f1));
        }
        family_dev_f1.sort_by_key(|(k, _)| *k);
    }

    let test: Vec<&Document> = split.test.documents().iter().collect();
    log.record(s, Stage::Test, &test);
    let test_data = featurizer.dataset(&test).map_err(at(Stage::Test))?;
    let counts = tuned
        .classifier
        .confusion(&test_data)
        .map_err(|e| at(Stage::Test)(e.into()))?;

    let c = train_set.class_counts();
    Ok(SeedResult {
        seed: s,
        metrics: prf1(&counts),
        counts,
        hyperparams: tuned.hyperparams,
        dev_f1: tuned.dev_f1,
        family_dev_f1,
        train_counts: (c.negative, c.positive),
        feature_dim: featurizer.space.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_names_round_trip() {
        for a in [
            FeatureAxis::BowAll,
            FeatureAxis::BowPortion(PortionMode::FirstLast(100)),
            FeatureAxis::BowPortion(PortionMode::First(7)),
            FeatureAxis::FsBow(300),
            FeatureAxis::Structural,
            FeatureAxis::FsStructural(10),
        ] {
            assert_eq!(a.to_string().parse::<FeatureAxis>().unwrap(), a);
        }
        assert!("fs-str:0".parse::<FeatureAxis>().is_err());
        assert!("cnn".parse::<FeatureAxis>().is_err());
    }
}
