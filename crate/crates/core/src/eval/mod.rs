//! Positive-class metrics, the seeded experiment runner and sweeps.

mod experiment;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CorpusError, Label};
use crate::features::FeatureError;
use crate::models::ModelError;

pub use experiment::{
    run_experiment, run_experiment_audited, Access, AccessLog, EvalReport, ExperimentPlan, FeatureAxis, SeedResult,
    Stage,
};
pub use sweep::{summary_table, sweep, SweepAxis, SweepReport, SweepRow};

/// Binary confusion counts with the in-scope class as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl ConfusionCounts {
    /// Count agreement between gold and predicted labels, pairwise.
    /// Unlabeled gold entries are not counted.
    pub fn from_labels(gold: &[Label], predicted: &[Label]) -> ConfusionCounts {
        assert_eq!(gold.len(), predicted.len(), "gold and predicted lengths differ");
        let mut c = ConfusionCounts::default();
        for (g, p) in gold.iter().zip(predicted) {
            match (g, p.is_positive()) {
                (Label::InScope, true) => c.tp += 1,
                (Label::InScope, false) => c.fn_ += 1,
                (Label::OutOfScope, true) => c.fp += 1,
                (Label::OutOfScope, false) => c.tn += 1,
                (Label::Unlabeled, _) => {}
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    /// Precision and recall combined by their harmonic mean (0 when both are 0).
    pub fn from_precision_recall(precision: f64, recall: f64) -> Metrics {
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Metrics { precision, recall, f1 }
    }

    /// The three values at two decimals, as printed in report tables.
    pub fn rounded(&self) -> (String, String, String) {
        (
            format!("{:.2}", self.precision),
            format!("{:.2}", self.recall),
            format!("{:.2}", self.f1),
        )
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Positive-class precision, recall and F1; empty denominators give 0.
pub fn prf1(counts: &ConfusionCounts) -> Metrics {
    Metrics::from_precision_recall(ratio(counts.tp, counts.tp + counts.fp), ratio(counts.tp, counts.tp + counts.fn_))
}

/// Arithmetic mean of per-run metrics, component-wise.
pub fn mean_metrics(runs: &[Metrics]) -> Metrics {
    let n = runs.len().max(1) as f64;
    Metrics {
        precision: runs.iter().map(|m| m.precision).sum::<f64>() / n,
        recall: runs.iter().map(|m| m.recall).sum::<f64>() / n,
        f1: runs.iter().map(|m| m.f1).sum::<f64>() / n,
    }
}

/// What went wrong, by module.
#[derive(Debug, Error)]
pub enum StageError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("seed {seed}, {stage}: {source}")]
    Stage {
        seed: u64,
        stage: Stage,
        #[source]
        source: StageError,
    },
    #[error("experiment plan needs at least one seed")]
    NoSeeds,
    #[error("sweep axis has no values")]
    BadAxis,
}

pub type Result<T> = std::result::Result<T, EvalError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_and_perfect() {
        let none = prf1(&ConfusionCounts { tp: 0, fp: 0, fn_: 5, tn: 3 });
        assert_eq!((none.precision, none.recall, none.f1), (0.0, 0.0, 0.0));
        let all = prf1(&ConfusionCounts { tp: 10, fp: 0, fn_: 0, tn: 0 });
        assert_eq!((all.precision, all.recall, all.f1), (1.0, 1.0, 1.0));
    }

    #[test]
    fn published_row_rounds() {
        let m = Metrics::from_precision_recall(0.90, 0.83);
        assert!((m.f1 - 1.494 / 1.73).abs() < 1e-12);
        assert_eq!(m.rounded().2, "0.86");
    }

    #[test]
    fn counts_from_labels() {
        use Label::{InScope as P, OutOfScope as N};
        let c = ConfusionCounts::from_labels(&[P, P, N, N, N], &[P, N, P, N, N]);
        assert_eq!(c, ConfusionCounts { tp: 1, fp: 1, fn_: 1, tn: 2 });
        assert_eq!(c.total(), 5);
    }
}
