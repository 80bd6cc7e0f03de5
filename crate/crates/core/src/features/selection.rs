//! Information-gain feature ranking.

use std::collections::HashSet;

use super::{FeatureError, StructuralFeatures, Vocabulary, STRUCTURAL_NAMES};
use crate::corpus::Label;
use crate::textproc::TokenStream;

/// Shannon entropy (bits) of a distribution given by counts.
pub fn entropy_bits(counts: &[f64]) -> f64 {
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / total;
            -p * p.log2()
        })
        .sum()
}

/// Class counts `[positive, negative]`.
type Counts = [f64; 2];

fn split_gain(class_entropy: f64, left: Counts, right: Counts) -> f64 {
    let nl = left[0] + left[1];
    let nr = right[0] + right[1];
    let n = nl + nr;
    let cond = (nl / n) * entropy_bits(&left) + (nr / n) * entropy_bits(&right);
    (class_entropy - cond).max(0.0)
}

/// One column of a feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureColumn {
    /// Presence / absence.
    Binary(Vec<bool>),
    /// Discretized by the single threshold that maximizes information gain.
    Numeric(Vec<f64>),
}

impl FeatureColumn {
    fn len(&self) -> usize {
        match self {
            FeatureColumn::Binary(v) => v.len(),
            FeatureColumn::Numeric(v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedFeature {
    pub feature: String,
    pub ig_bits: f64,
    /// Split threshold for numeric features (`value <= threshold` on the left).
    pub threshold: Option<f64>,
}

/// Features sorted by descending information gain, ties broken by name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureRanking {
    pub entries: Vec<RankedFeature>,
}

impl FeatureRanking {
    fn from_unsorted(mut entries: Vec<RankedFeature>) -> Self {
        entries.sort_by(|a, b| b.ig_bits.total_cmp(&a.ig_bits).then_with(|| a.feature.cmp(&b.feature)));
        FeatureRanking { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.feature.as_str())
    }
}

fn class_counts(labels: &[Label]) -> Result<Counts, FeatureError> {
    let mut c = [0.0; 2];
    for (i, l) in labels.iter().enumerate() {
        match l {
            Label::InScope => c[0] += 1.0,
            Label::OutOfScope => c[1] += 1.0,
            Label::Unlabeled => return Err(FeatureError::Unlabeled(format!("row {i}"))),
        }
    }
    if c[0] == 0.0 || c[1] == 0.0 {
        return Err(FeatureError::SingleClass);
    }
    Ok(c)
}

fn binary_gain(h: f64, totals: Counts, present: Counts) -> f64 {
    split_gain(h, present, [totals[0] - present[0], totals[1] - present[1]])
}

/// Best single-threshold gain for a numeric column; returns (gain, threshold).
fn numeric_gain(h: f64, totals: Counts, values: &[f64], labels: &[Label]) -> (f64, Option<f64>) {
    let mut rows: Vec<(f64, bool)> = values.iter().zip(labels).map(|(v, l)| (*v, l.is_positive())).collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = (0.0, None);
    let mut left = [0.0; 2];
    for i in 0..rows.len() {
        left[if rows[i].1 { 0 } else { 1 }] += 1.0;
        if i + 1 == rows.len() || rows[i].0 == rows[i + 1].0 {
            continue;
        }
        let right = [totals[0] - left[0], totals[1] - left[1]];
        let g = split_gain(h, left, right);
        if best.1.is_none() || g > best.0 {
            best = (g, Some((rows[i].0 + rows[i + 1].0) / 2.0));
        }
    }
    best
}

/// Rank named feature columns by information gain `H(Y) - H(Y | f)` in bits.
pub fn information_gain(columns: &[(String, FeatureColumn)], labels: &[Label]) -> Result<FeatureRanking, FeatureError> {
    let totals = class_counts(labels)?;
    let h = entropy_bits(&totals);
    let mut entries = Vec::with_capacity(columns.len());
    for (name, col) in columns {
        if col.len() != labels.len() {
            return Err(FeatureError::LengthMismatch {
                feature: name.clone(),
                got: col.len(),
                want: labels.len(),
            });
        }
        let (ig_bits, threshold) = match col {
            FeatureColumn::Binary(present) => {
                let mut p = [0.0; 2];
                for (&x, l) in present.iter().zip(labels) {
                    if x {
                        p[if l.is_positive() { 0 } else { 1 }] += 1.0;
                    }
                }
                (binary_gain(h, totals, p), None)
            }
            FeatureColumn::Numeric(values) => numeric_gain(h, totals, values, labels),
        };
        entries.push(RankedFeature {
            feature: name.clone(),
            ig_bits,
            threshold,
        });
    }
    Ok(FeatureRanking::from_unsorted(entries))
}

/// Rank vocabulary terms by the information gain of their presence in each
/// (preprocessed) document.
pub fn rank_terms(docs: &[TokenStream], labels: &[Label], vocab: &Vocabulary) -> Result<FeatureRanking, FeatureError> {
    if docs.len() != labels.len() {
        return Err(FeatureError::LengthMismatch {
            feature: "documents".into(),
            got: docs.len(),
            want: labels.len(),
        });
    }
    let totals = class_counts(labels)?;
    let h = entropy_bits(&totals);
    let mut present = vec![[0.0f64; 2]; vocab.len()];
    for (doc, label) in docs.iter().zip(labels) {
        let distinct: HashSet<usize> = doc.tokens.iter().filter_map(|t| vocab.index_of(t)).collect();
        for i in distinct {
            present[i][if label.is_positive() { 0 } else { 1 }] += 1.0;
        }
    }
    let entries = present
        .iter()
        .enumerate()
        .map(|(i, p)| RankedFeature {
            feature: vocab.term(i).to_owned(),
            ig_bits: binary_gain(h, totals, *p),
            threshold: None,
        })
        .collect();
    Ok(FeatureRanking::from_unsorted(entries))
}

/// Rank the structural slots, each discretized by its best threshold.
pub fn rank_structural(rows: &[StructuralFeatures], labels: &[Label]) -> Result<FeatureRanking, FeatureError> {
    let columns: Vec<(String, FeatureColumn)> = STRUCTURAL_NAMES
        .iter()
        .enumerate()
        .map(|(j, name)| {
            (
                (*name).to_owned(),
                FeatureColumn::Numeric(rows.iter().map(|r| r.values()[j]).collect()),
            )
        })
        .collect();
    information_gain(&columns, labels)
}

/// The first `n` feature names of `ranking`.
pub fn select_top_n(ranking: &FeatureRanking, n: usize) -> Vec<String> {
    ranking.entries.iter().take(n).map(|e| e.feature.clone()).collect()
}

/// `rank,feature,ig_bits` CSV.
pub fn ranking_csv(ranking: &FeatureRanking) -> String {
    let mut out = String::from("rank,feature,ig_bits\n");
    for (i, e) in ranking.entries.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", i + 1, e.feature, e.ig_bits));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{InScope as P, OutOfScope as N};

    fn bin(name: &str, v: &[u8]) -> (String, FeatureColumn) {
        (name.into(), FeatureColumn::Binary(v.iter().map(|&x| x == 1).collect()))
    }

    #[test]
    fn analytic_anchors() {
        let labels = [P, P, N, N];
        let r = information_gain(&[bin("perfect", &[1, 1, 0, 0]), bin("indep", &[1, 0, 1, 0])], &labels).unwrap();
        assert_eq!(r.entries[0].feature, "perfect");
        assert!((r.entries[0].ig_bits - 1.0).abs() < 1e-12);
        assert!(r.entries[1].ig_bits.abs() < 1e-12);
    }

    #[test]
    fn eight_row_example() {
        let labels = [P, P, P, P, N, N, N, N];
        let r = information_gain(&[bin("f", &[1, 1, 1, 0, 0, 0, 1, 0])], &labels).unwrap();
        // H(Y) = 1; H(Y|f) = 2 * 0.5 * H(3/4, 1/4).
        let h34 = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        let want = 1.0 - h34;
        assert!((r.entries[0].ig_bits - want).abs() < 1e-12);
        assert!((r.entries[0].ig_bits - 0.1887).abs() < 1e-4);
    }

    #[test]
    fn single_class_is_an_error() {
        assert_eq!(information_gain(&[bin("f", &[1, 0])], &[P, P]), Err(FeatureError::SingleClass));
    }

    #[test]
    fn numeric_threshold() {
        let labels = [N, N, P, P];
        let cols = [("x".to_string(), FeatureColumn::Numeric(vec![1.0, 2.0, 5.0, 7.0]))];
        let r = information_gain(&cols, &labels).unwrap();
        assert!((r.entries[0].ig_bits - 1.0).abs() < 1e-12);
        assert_eq!(r.entries[0].threshold, Some(3.5));

        let flat = [("c".to_string(), FeatureColumn::Numeric(vec![2.0; 4]))];
        let r = information_gain(&flat, &labels).unwrap();
        assert_eq!((r.entries[0].ig_bits, r.entries[0].threshold), (0.0, None));
    }

    #[test]
    fn ties_and_top_n() {
        let labels = [P, N];
        let r = information_gain(&[bin("b", &[1, 0]), bin("a", &[1, 0]), bin("z", &[1, 1])], &labels).unwrap();
        assert_eq!(r.names().collect::<Vec<_>>(), ["a", "b", "z"]);
        assert_eq!(select_top_n(&r, 1), ["a"]);
        assert_eq!(select_top_n(&r, 10).len(), 3);
        assert!(ranking_csv(&r).starts_with("rank,feature,ig_bits\n1,a,1\n2,b,1\n3,z,0\n"));
    }
}
