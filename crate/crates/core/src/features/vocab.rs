use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FeatureError, SparseVector};
use crate::textproc::TokenStream;

/// How bag-of-words counts become vector weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum WeightingScheme {
    /// Term counts divided by the number of in-vocabulary tokens (L1 = 1).
    Tf,
    /// Counts times `ln((1 + D) / (1 + df)) + 1`, then L2-normalized.
    #[default]
    TfIdf,
}

impl fmt::Display for WeightingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightingScheme::Tf => "tf",
            WeightingScheme::TfIdf => "tfidf",
        })
    }
}

impl FromStr for WeightingScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tf" => Ok(WeightingScheme::Tf),
            "tfidf" | "tf-idf" => Ok(WeightingScheme::TfIdf),
            other => Err(format!("unknown weighting scheme `{other}` (expected tf or tfidf)")),
        }
    }
}

/// Term to column mapping learned from training documents. Columns follow
/// lexicographic term order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawVocabulary")]
pub struct Vocabulary {
    terms: Vec<String>,
    doc_freq: Vec<usize>,
    num_docs: usize,
    min_df: usize,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Vocabulary {
    fn from_sorted(terms: Vec<String>, doc_freq: Vec<usize>, num_docs: usize, min_df: usize) -> Vocabulary {
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Vocabulary {
            terms,
            doc_freq,
            num_docs,
            min_df,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn doc_freq(&self, index: usize) -> usize {
        self.doc_freq[index]
    }

    /// Number of training documents the frequencies were counted over.
    pub fn num_docs(&self) -> usize {
        self.num_docs
    }

    pub fn min_df(&self) -> usize {
        self.min_df
    }

    pub fn idf(&self, index: usize) -> f64 {
        ((1.0 + self.num_docs as f64) / (1.0 + self.doc_freq[index] as f64)).ln() + 1.0
    }

    /// Sub-vocabulary containing only `keep` (unknown terms are ignored),
    /// with document statistics preserved.
    pub fn restrict<'a>(&self, keep: impl IntoIterator<Item = &'a str>) -> Vocabulary {
        let mut idx: Vec<usize> = keep.into_iter().filter_map(|t| self.index_of(t)).collect();
        idx.sort_unstable();
        idx.dedup();
        Vocabulary::from_sorted(
            idx.iter().map(|&i| self.terms[i].clone()).collect(),
            idx.iter().map(|&i| self.doc_freq[i]).collect(),
            self.num_docs,
            self.min_df,
        )
    }

    /// `term<TAB>index<TAB>df` lines preceded by a comment carrying the
    /// document count and min_df.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# docs={} min_df={}\n", self.num_docs, self.min_df);
        for (i, (t, df)) in self.terms.iter().zip(&self.doc_freq).enumerate() {
            out.push_str(&format!("{t}\t{i}\t{df}\n"));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Vocabulary, FeatureError> {
        let mut num_docs = None;
        let mut min_df = 1;
        let mut rows: Vec<(usize, String, usize)> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let bad = |reason: &str| FeatureError::VocabParse {
                line: n + 1,
                reason: reason.to_owned(),
            };
            if let Some(comment) = line.strip_prefix('#') {
                for kv in comment.split_whitespace() {
                    match kv.split_once('=') {
                        Some(("docs", v)) => num_docs = Some(v.parse().map_err(|_| bad("bad docs count"))?),
                        Some(("min_df", v)) => min_df = v.parse().map_err(|_| bad("bad min_df"))?,
                        _ => {}
                    }
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            let (Some(term), Some(idx), Some(df), None) = (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad("expected term<TAB>index<TAB>df"));
            };
            let idx = idx.parse().map_err(|_| bad("bad index"))?;
            let df = df.parse().map_err(|_| bad("bad df"))?;
            rows.push((idx, term.to_owned(), df));
        }
        rows.sort_by_key(|r| r.0);
        if rows.iter().enumerate().any(|(i, r)| r.0 != i) {
            return Err(FeatureError::VocabParse {
                line: 0,
                reason: "indices must be dense 0..V-1".into(),
            });
        }
        if rows.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(FeatureError::VocabParse {
                line: 0,
                reason: "terms must be unique and in lexicographic index order".into(),
            });
        }
        let max_df = rows.iter().map(|r| r.2).max().unwrap_or(0);
        let num_docs = num_docs.unwrap_or(max_df);
        let (terms, dfs) = rows.into_iter().map(|(_, t, df)| (t, df)).unzip();
        Ok(Vocabulary::from_sorted(terms, dfs, num_docs, min_df))
    }
}

#[derive(Deserialize)]
struct RawVocabulary {
    terms: Vec<String>,
    doc_freq: Vec<usize>,
    num_docs: usize,
    min_df: usize,
}

impl From<RawVocabulary> for Vocabulary {
    fn from(r: RawVocabulary) -> Self {
        Vocabulary::from_sorted(r.terms, r.doc_freq, r.num_docs, r.min_df)
    }
}

/// Count document frequencies over `train_docs` and keep the terms that
/// appear in at least `min_df` documents.
pub fn build_vocabulary(train_docs: &[TokenStream], min_df: usize) -> Result<Vocabulary, FeatureError> {
    if train_docs.is_empty() {
        return Err(FeatureError::NoDocuments);
    }
    if min_df == 0 {
        return Err(FeatureError::BadMinDf);
    }
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in train_docs {
        let distinct: HashSet<&str> = doc.tokens.iter().map(String::as_str).collect();
        for t in distinct {
            *df.entry(t).or_default() += 1;
        }
    }
    let (terms, dfs): (Vec<String>, Vec<usize>) = df
        .into_iter()
        .filter(|(_, n)| *n >= min_df)
        .map(|(t, n)| (t.to_owned(), n))
        .unzip();
    if terms.is_empty() {
        return Err(FeatureError::EmptyVocabulary { min_df });
    }
    Ok(Vocabulary::from_sorted(terms, dfs, train_docs.len(), min_df))
}

/// Bag-of-words vector for `doc`; out-of-vocabulary tokens are ignored.
pub fn vectorize(doc: &TokenStream, vocab: &Vocabulary, scheme: WeightingScheme) -> SparseVector {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for t in &doc.tokens {
        if let Some(i) = vocab.index_of(t) {
            *counts.entry(i).or_default() += 1;
        }
    }
    let total: usize = counts.values().sum();
    if total == 0 {
        return SparseVector::zeros(vocab.len());
    }
    match scheme {
        WeightingScheme::Tf => SparseVector::new(
            vocab.len(),
            counts.into_iter().map(|(i, c)| (i, c as f64 / total as f64)),
        ),
        WeightingScheme::TfIdf => {
            let mut v = SparseVector::new(
                vocab.len(),
                counts.into_iter().map(|(i, c)| (i, c as f64 * vocab.idf(i))),
            );
            let norm = v.l2_norm();
            v.scale(1.0 / norm);
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(tokens: &[&str]) -> TokenStream {
        TokenStream::new("d", tokens.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn min_df_threshold() {
        let mut docs: Vec<TokenStream> = (0..6).map(|_| ts(&["report", "x"])).collect();
        docs[0].tokens.push("rare".into());
        let v = build_vocabulary(&docs, 5).unwrap();
        assert_eq!(v.index_of("report"), Some(0));
        assert_eq!(v.doc_freq(0), 6);
        assert_eq!(v.index_of("rare"), None);
        assert_eq!(v, build_vocabulary(&docs, 5).unwrap());
    }

    #[test]
    fn rare_term_in_large_corpus_excluded() {
        let mut docs: Vec<TokenStream> = (0..2000).map(|_| ts(&["common"])).collect();
        for d in docs.iter_mut().take(4) {
            d.tokens.push("seldom".into());
        }
        let v = build_vocabulary(&docs, 5).unwrap();
        assert!(v.index_of("seldom").is_none());
        assert!(v.index_of("common").is_some());
    }

    #[test]
    fn empty_vocabulary_error() {
        assert_eq!(
            build_vocabulary(&[ts(&["a"])], 5),
            Err(FeatureError::EmptyVocabulary { min_df: 5 })
        );
        assert_eq!(build_vocabulary(&[], 5), Err(FeatureError::NoDocuments));
    }

    #[test]
    fn tf_weights() {
        let vocab = build_vocabulary(&[ts(&["a", "b"])], 1).unwrap();
        let v = vectorize(&ts(&["a", "a", "b", "zzz"]), &vocab, WeightingScheme::Tf);
        assert_eq!(v.entries(), &[(0, 2.0 / 3.0), (1, 1.0 / 3.0)]);
        assert!(vectorize(&ts(&["q"]), &vocab, WeightingScheme::Tf).is_empty());
    }

    #[test]
    fn tfidf_ratio_matches_hand_computation() {
        let vocab = build_vocabulary(&[ts(&["a", "b"]), ts(&["a"]), ts(&["a"])], 1).unwrap();
        let v = vectorize(&ts(&["a", "b"]), &vocab, WeightingScheme::TfIdf);
        let (wa, wb) = (v.get(0), v.get(1));
        // idf(a) = ln(4/4) + 1 = 1, idf(b) = ln(4/2) + 1.
        let expected = (4.0f64 / 2.0).ln() + 1.0;
        assert!((wb / wa - expected).abs() < 1e-12);
        assert!((wb / wa - 1.693).abs() < 1e-3);
        assert!((v.l2_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tsv_round_trip_and_restrict() {
        let vocab = build_vocabulary(&[ts(&["b", "a", "c"]), ts(&["a"])], 1).unwrap();
        let back = Vocabulary::from_tsv(&vocab.to_tsv()).unwrap();
        assert_eq!(back, vocab);
        let sub = vocab.restrict(["c", "a", "nope"]);
        assert_eq!(sub.terms(), ["a", "c"]);
        assert_eq!(sub.doc_freq(0), 2);
        assert_eq!(sub.num_docs(), 2);
        assert!(Vocabulary::from_tsv("a\t1\t3\n").is_err());
    }
}
