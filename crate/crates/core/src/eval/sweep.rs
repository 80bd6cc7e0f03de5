use rayon::prelude::*;

use super::{run_experiment, EvalError, EvalReport, ExperimentPlan, FeatureAxis, Result};
use crate::corpus::Corpus;
use crate::features::STRUCTURAL_ARITY;
use crate::textproc::PortionMode;

/// Values swept over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepAxis {
    /// First-X and first-last-X bag-of-words for every X, plus full text.
    Portion(Vec<usize>),
    /// Top-N bag-of-words terms for every N, plus the full vocabulary.
    TopTerms(Vec<usize>),
    /// Top-N structural features for every N, plus all of them.
    TopStructural(Vec<usize>),
}

impl SweepAxis {
    /// `(axis value label, feature axis)` in report order.
    pub fn points(&self) -> Vec<(String, FeatureAxis)> {
        match self {
            SweepAxis::Portion(xs) => xs
                .iter()
                .flat_map(|&x| [PortionMode::First(x), PortionMode::FirstLast(x)])
                .map(|m| (m.to_string(), FeatureAxis::BowPortion(m)))
                .chain([("all".to_string(), FeatureAxis::BowAll)])
                .collect(),
            SweepAxis::TopTerms(ns) => ns
                .iter()
                .map(|&n| (n.to_string(), FeatureAxis::FsBow(n)))
                .chain([("all".to_string(), FeatureAxis::BowAll)])
                .collect(),
            SweepAxis::TopStructural(ns) => ns
                .iter()
                .map(|&n| (n.to_string(), FeatureAxis::FsStructural(n)))
                .chain([(format!("all-{STRUCTURAL_ARITY}"), FeatureAxis::Structural)])
                .collect(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            SweepAxis::Portion(v) | SweepAxis::TopTerms(v) | SweepAxis::TopStructural(v) => v.is_empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: String,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

impl SweepReport {
    /// `axis,seed,precision,recall,f1,model,hyperparams`, one line per seed
    /// plus a `mean` line per axis value, preceded by `# config-fingerprint=`
    /// when `fingerprint` is given.
    pub fn to_csv(&self, fingerprint: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(fp) = fingerprint {
            out.push_str(&format!("# config-fingerprint={fp}\n"));
        }
        out.push_str("axis,seed,precision,recall,f1,model,hyperparams\n");
        for row in &self.rows {
            let r = &row.report;
            for s in &r.per_seed {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    csv_field(&row.value),
                    s.seed,
                    s.metrics.precision,
                    s.metrics.recall,
                    s.metrics.f1,
                    r.model,
                    csv_field(&s.hyperparams.to_string())
                ));
            }
            out.push_str(&format!(
                "{},mean,{},{},{},{},-\n",
                csv_field(&row.value),
                r.precision,
                r.recall,
                r.f1,
                r.model
            ));
        }
        out
    }

    /// Fixed-width table of mean Pr / Re / F1 at two decimals.
    pub fn summary(&self) -> String {
        summary_table(self.rows.iter().map(|r| (format!("{} {}", r.report.axis.family(), r.value), &r.report)))
    }
}

/// Two-decimal table with one line per labeled report.
pub fn summary_table<'a>(rows: impl IntoIterator<Item = (String, &'a EvalReport)>) -> String {
    let rows: Vec<(String, &EvalReport)> = rows.into_iter().collect();
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max("features".len());
    let mut out = format!("{:<width$}  model  Pr    Re    F1\n", "features");
    for (label, r) in rows {
        let (p, re, f) = r.metrics().rounded();
        out.push_str(&format!("{label:<width$}  {:<5}  {p}  {re}  {f}\n", r.model.to_string()));
    }
    out
}

/// Run `base` once per sweep point, replacing its feature axis.
pub fn sweep(corpus: &Corpus, axis: &SweepAxis, base: &ExperimentPlan) -> Result<SweepReport> {
    if axis.is_empty() {
        return Err(EvalError::BadAxis);
    }
    let rows = axis
        .points()
        .into_par_iter()
        .map(|(value, feature_axis)| {
            let plan = ExperimentPlan {
                axis: feature_axis,
                ..base.clone()
            };
            run_experiment(corpus, &plan).map(|report| SweepRow { value, report })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(SweepAxis::Portion(vec![100, 300]).points().len(), 5);
        let s = SweepAxis::TopStructural(vec![10, 20, 30]).points();
        assert_eq!(s.len(), 4);
        assert_eq!(s[3].0, format!("all-{STRUCTURAL_ARITY}"));
    }
}
