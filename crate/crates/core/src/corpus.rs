//! Labeled corpora, stratified splits and training-set rebalancing.
//!
//! A corpus is described by a CSV manifest with the header
//! `id,label,text_file,page_count,file_size_kb` and a directory of UTF-8 text
//! files whose pages are separated by a single form feed (U+000C).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed;

pub const MANIFEST_HEADER: [&str; 5] = ["id", "label", "text_file", "page_count", "file_size_kb"];
pub const PAGE_DELIMITER: char = '\u{000C}';

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("text file for document `{id}` is missing or unreadable: {path}")]
    MissingTextFile { id: String, path: PathBuf },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("malformed manifest row at line {line}: {reason}")]
    MalformedManifestRow { line: u64, reason: String },
    #[error("manifest header must be `{}`", MANIFEST_HEADER.join(","))]
    BadHeader,
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("class {0} has no documents")]
    EmptyClass(Label),
    #[error("document `{0}` has no label")]
    Unlabeled(String),
    #[error("split ratios must be non-negative and sum to 1 (got {0}, {1}, {2})")]
    BadRatios(f64, f64, f64),
    #[error("target negative:positive ratio must be positive (got {0})")]
    BadTargetRatio(f64),
    #[error("pool document `{0}` also appears in the dev or test set")]
    PoolOverlap(String),
    #[error("pool document `{0}` is not labeled in_scope")]
    PoolLabel(String),
    #[error("manifest {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, CorpusError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    OutOfScope,
    InScope,
    Unlabeled,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::InScope => "in_scope",
            Label::OutOfScope => "out_of_scope",
            Label::Unlabeled => "",
        }
    }

    /// Parses a manifest label. The empty string means unlabeled; anything
    /// other than `in_scope` / `out_of_scope` is rejected.
    pub fn parse(s: &str) -> Option<Label> {
        match s.trim() {
            "in_scope" => Some(Label::InScope),
            "out_of_scope" => Some(Label::OutOfScope),
            "" => Some(Label::Unlabeled),
            _ => None,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Label::InScope
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unlabeled => f.write_str("unlabeled"),
            other => f.write_str(other.as_str()),
        }
    }
}

/// One corpus item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub label: Label,
    pub pages: Vec<String>,
    pub page_count: u32,
    pub file_size_kb: f64,
    /// Manifest path of the text file, relative to the text directory.
    pub text_file: Option<String>,
}

impl Document {
    /// Build a document from page-delimited text. `page_count` falls back to
    /// the number of form-feed separated pages when not given.
    pub fn from_text(
        id: impl Into<String>,
        label: Label,
        text: &str,
        page_count: Option<u32>,
        file_size_kb: f64,
    ) -> Document {
        let pages = split_pages(text);
        let page_count = page_count.unwrap_or(pages.len().max(1) as u32);
        Document {
            id: id.into(),
            label,
            pages,
            page_count,
            file_size_kb,
            text_file: None,
        }
    }

    /// Full text with pages rejoined by form feeds.
    pub fn text(&self) -> String {
        self.pages.join("\u{000C}")
    }

    pub fn has_text(&self) -> bool {
        self.pages.iter().any(|p| !p.trim().is_empty())
    }
}

fn split_pages(text: &str) -> Vec<String> {
    let body = text.strip_suffix(PAGE_DELIMITER).unwrap_or(text);
    body.split(PAGE_DELIMITER).map(str::to_owned).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub positive: usize,
    pub negative: usize,
    pub unlabeled: usize,
}

impl ClassCounts {
    pub fn of<'a>(docs: impl IntoIterator<Item = &'a Document>) -> ClassCounts {
        let mut c = ClassCounts::default();
        for d in docs {
            match d.label {
                Label::InScope => c.positive += 1,
                Label::OutOfScope => c.negative += 1,
                Label::Unlabeled => c.unlabeled += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.positive + self.negative + self.unlabeled
    }
}

/// A named collection of documents with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    name: String,
    documents: Vec<Document>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, documents: Vec<Document>) -> Result<Corpus> {
        let mut seen = HashSet::with_capacity(documents.len());
        for d in &documents {
            if !seen.insert(d.id.as_str()) {
                return Err(CorpusError::DuplicateId(d.id.clone()));
            }
        }
        Ok(Corpus {
            name: name.into(),
            documents,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn class_counts(&self) -> ClassCounts {
        ClassCounts::of(&self.documents)
    }

    pub fn ids(&self) -> HashSet<&str> {
        self.documents.iter().map(|d| d.id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    fn require_labels(&self) -> Result<()> {
        match self.documents.iter().find(|d| d.label == Label::Unlabeled) {
            Some(d) => Err(CorpusError::Unlabeled(d.id.clone())),
            None => Ok(()),
        }
    }
}

/// Result of [`load_corpus`]: the corpus plus the ids skipped because their
/// text file was empty.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedCorpus {
    pub corpus: Corpus,
    pub skipped: Vec<String>,
}

/// Load a corpus from a manifest and the directory holding its text files.
pub fn load_corpus(manifest_path: impl AsRef<Path>, text_dir: impl AsRef<Path>) -> Result<LoadedCorpus> {
    let manifest_path = manifest_path.as_ref();
    let text_dir = text_dir.as_ref();
    let csv_err = |source| CorpusError::Csv {
        path: manifest_path.to_owned(),
        source,
    };

    let file = fs::File::open(manifest_path).map_err(|source| CorpusError::Io {
        path: manifest_path.to_owned(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .has_headers(true)
        .comment(Some(b'#'))
        .from_reader(file);

    let header = reader.headers().map_err(csv_err)?;
    if header.iter().map(str::trim).ne(MANIFEST_HEADER.iter().copied()) {
        return Err(CorpusError::BadHeader);
    }

    let name = manifest_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut documents = Vec::new();
    let mut skipped = Vec::new();
    let mut seen = HashSet::new();

    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row = ManifestRow::parse(&record, line)?;
        if !seen.insert(row.id.clone()) {
            return Err(CorpusError::DuplicateId(row.id));
        }

        let path = text_dir.join(&row.text_file);
        let bytes = fs::read(&path).map_err(|_| CorpusError::MissingTextFile {
            id: row.id.clone(),
            path: path.clone(),
        })?;
        let text = String::from_utf8(bytes).map_err(|_| CorpusError::MalformedManifestRow {
            line,
            reason: format!("text file {} is not valid UTF-8", path.display()),
        })?;

        let file_size_kb = row.file_size_kb.unwrap_or(text.len() as f64 / 1024.0);
        let mut doc = Document::from_text(row.id, row.label, &text, row.page_count, file_size_kb);
        doc.text_file = Some(row.text_file);
        if doc.has_text() {
            documents.push(doc);
        } else {
            skipped.push(doc.id);
        }
    }

    if documents.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(LoadedCorpus {
        corpus: Corpus::new(name, documents)?,
        skipped,
    })
}

struct ManifestRow {
    id: String,
    label: Label,
    text_file: String,
    page_count: Option<u32>,
    file_size_kb: Option<f64>,
}

impl ManifestRow {
    fn parse(record: &csv::StringRecord, line: u64) -> Result<ManifestRow> {
        let bad = |reason: String| CorpusError::MalformedManifestRow { line, reason };
        if record.len() != MANIFEST_HEADER.len() {
            return Err(bad(format!("expected 5 fields, found {}", record.len())));
        }
        let field = |i: usize| record.get(i).unwrap_or("").trim();

        let id = field(0);
        if id.is_empty() {
            return Err(bad("empty id".into()));
        }
        let label = Label::parse(field(1)).ok_or_else(|| bad(format!("unknown label `{}`", field(1))))?;
        let text_file = field(2);
        if text_file.is_empty() {
            return Err(bad("empty text_file".into()));
        }
        let page_count = match field(3) {
            "" => None,
            s => match s.parse::<u32>() {
                Ok(n) if n >= 1 => Some(n),
                _ => return Err(bad(format!("page_count `{s}` is not a positive integer"))),
            },
        };
        let file_size_kb = match field(4) {
            "" => None,
            s => match s.parse::<f64>() {
                Ok(v) if v.is_finite() && v >= 0.0 => Some(v),
                _ => return Err(bad(format!("file_size_kb `{s}` is not a non-negative number"))),
            },
        };
        Ok(ManifestRow {
            id: id.to_owned(),
            label,
            text_file: text_file.to_owned(),
            page_count,
            file_size_kb,
        })
    }
}

/// Render documents as a manifest. Documents without a recorded text file
/// reference `<id>.txt`.
pub fn manifest_csv<'a>(docs: impl IntoIterator<Item = &'a Document>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(MANIFEST_HEADER).expect("in-memory write");
    for d in docs {
        let text_file = d.text_file.clone().unwrap_or_else(|| format!("{}.txt", d.id));
        w.write_record([
            d.id.as_str(),
            d.label.as_str(),
            text_file.as_str(),
            &d.page_count.to_string(),
            &d.file_size_kb.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        SplitRatios {
            train: 0.6,
            dev: 0.2,
            test: 0.2,
        }
    }
}

impl SplitRatios {
    pub fn new(train: f64, dev: f64, test: f64) -> Result<SplitRatios> {
        let r = SplitRatios { train, dev, test };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.train, self.dev, self.test];
        let ok = parts.iter().all(|p| p.is_finite() && *p >= 0.0) && (parts.iter().sum::<f64>() - 1.0).abs() <= 1e-9;
        if ok {
            Ok(())
        } else {
            Err(CorpusError::BadRatios(self.train, self.dev, self.test))
        }
    }

    fn as_array(&self) -> [f64; 3] {
        [self.train, self.dev, self.test]
    }
}

/// Largest-remainder allocation of `n` items over `ratios`; ties in the
/// remainder go to the earlier part.
pub fn allocate(n: usize, ratios: &[f64]) -> Vec<usize> {
    let exact: Vec<f64> = ratios.iter().map(|r| r * n as f64).collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..ratios.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(n.saturating_sub(assigned)) {
        counts[i] += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train: Corpus,
    pub dev: Corpus,
    pub test: Corpus,
    pub seed: u64,
}

/// Split `corpus` into train/dev/test with each class allocated
/// proportionally after a seeded per-class shuffle.
pub fn stratified_split(corpus: &Corpus, ratios: SplitRatios, seed: u64) -> Result<Split> {
    ratios.validate()?;
    corpus.require_labels()?;

    let mut parts: [Vec<usize>; 3] = Default::default();
    for (label, stream) in [
        (Label::InScope, seed::stream::SPLIT_POSITIVE),
        (Label::OutOfScope, seed::stream::SPLIT_NEGATIVE),
    ] {
        let mut idx: Vec<usize> = corpus
            .documents
            .iter()
            .enumerate()
            .filter(|(_, d)| d.label == label)
            .map(|(i, _)| i)
            .collect();
        if idx.is_empty() {
            return Err(CorpusError::EmptyClass(label));
        }
        idx.shuffle(&mut seed::rng(seed, stream));
        let counts = allocate(idx.len(), &ratios.as_array());
        let mut rest = idx.as_slice();
        for (part, n) in parts.iter_mut().zip(counts) {
            let (take, tail) = rest.split_at(n);
            part.extend_from_slice(take);
            rest = tail;
        }
    }

    let build = |suffix: &str, idx: &mut Vec<usize>| {
        idx.sort_unstable();
        let docs = idx.iter().map(|&i| corpus.documents[i].clone()).collect();
        Corpus::new(format!("{}-{}", corpus.name, suffix), docs)
    };
    let [mut tr, mut dv, mut te] = parts;
    Ok(Split {
        train: build("train", &mut tr)?,
        dev: build("dev", &mut dv)?,
        test: build("test", &mut te)?,
        seed,
    })
}

/// Training documents after rebalancing. Oversampled positives may repeat
/// ids, so this is a plain list rather than a [`Corpus`].
#[derive(Debug, Clone, PartialEq)]
pub struct TrainSet {
    pub documents: Vec<Document>,
    pub neg_to_pos_ratio: f64,
    pub added_from_pool: usize,
    pub oversampled: usize,
}

impl TrainSet {
    pub fn class_counts(&self) -> ClassCounts {
        ClassCounts::of(&self.documents)
    }

    /// The training documents unchanged.
    pub fn from_corpus(train: &Corpus) -> TrainSet {
        let c = train.class_counts();
        TrainSet {
            documents: train.documents.clone(),
            neg_to_pos_ratio: ratio(c.negative, c.positive),
            added_from_pool: 0,
            oversampled: 0,
        }
    }
}

fn ratio(neg: usize, pos: usize) -> f64 {
    if pos == 0 {
        f64::INFINITY
    } else {
        neg as f64 / pos as f64
    }
}

/// Add positives to `split.train` until negatives outnumber positives by
/// `target_neg_to_pos`. Positives come from `positive_pool` first (sampled
/// without replacement); if the pool runs dry the remainder is drawn with
/// replacement from all available positives. Negatives are never removed.
pub fn rebalance_train(
    split: &Split,
    positive_pool: &Corpus,
    target_neg_to_pos: f64,
    seed: u64,
) -> Result<TrainSet> {
    if !(target_neg_to_pos.is_finite() && target_neg_to_pos > 0.0) {
        return Err(CorpusError::BadTargetRatio(target_neg_to_pos));
    }
    split.train.require_labels()?;
    let held_out: HashSet<&str> = split.dev.ids().union(&split.test.ids()).copied().collect();
    let train_ids = split.train.ids();

    let mut candidates = Vec::new();
    for d in &positive_pool.documents {
        if held_out.contains(d.id.as_str()) {
            return Err(CorpusError::PoolOverlap(d.id.clone()));
        }
        if d.label != Label::InScope {
            return Err(CorpusError::PoolLabel(d.id.clone()));
        }
        if !train_ids.contains(d.id.as_str()) {
            candidates.push(d);
        }
    }

    let counts = split.train.class_counts();
    let target_pos = (counts.negative as f64 / target_neg_to_pos).floor() as usize;
    let mut documents = split.train.documents.clone();
    if counts.positive >= target_pos {
        return Ok(TrainSet {
            documents,
            neg_to_pos_ratio: ratio(counts.negative, counts.positive),
            added_from_pool: 0,
            oversampled: 0,
        });
    }

    let mut rng = seed::rng(seed, seed::stream::REBALANCE);
    let need = target_pos - counts.positive;
    candidates.shuffle(&mut rng);
    let from_pool = need.min(candidates.len());
    documents.extend(candidates[..from_pool].iter().map(|d| (*d).clone()));

    let oversampled = need - from_pool;
    if oversampled > 0 {
        let positives: Vec<Document> = documents.iter().filter(|d| d.label.is_positive()).cloned().collect();
        if positives.is_empty() {
            return Err(CorpusError::EmptyClass(Label::InScope));
        }
        for _ in 0..oversampled {
            let pick = rng.gen_range(0..positives.len());
            documents.push(positives[pick].clone());
        }
    }

    Ok(TrainSet {
        documents,
        neg_to_pos_ratio: ratio(counts.negative, target_pos),
        added_from_pool: from_pool,
        oversampled,
    })
}

/// Map of id -> label, used when reporting predictions against gold labels.
pub fn label_index(corpus: &Corpus) -> HashMap<&str, Label> {
    corpus.documents.iter().map(|d| (d.id.as_str(), d.label)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, label: Label) -> Document {
        Document::from_text(id, label, "some text", Some(1), 1.0)
    }

    fn corpus(pos: usize, neg: usize) -> Corpus {
        let mut docs = Vec::new();
        for i in 0..pos {
            docs.push(doc(&format!("p{i}"), Label::InScope));
        }
        for i in 0..neg {
            docs.push(doc(&format!("n{i}"), Label::OutOfScope));
        }
        Corpus::new("t", docs).unwrap()
    }

    #[test]
    fn pages_split_on_form_feed() {
        let d = Document::from_text("a", Label::InScope, "one\u{c}two\u{c}three\u{c}", None, 0.0);
        assert_eq!(d.pages, vec!["one", "two", "three"]);
        assert_eq!(d.page_count, 3);
        let d = Document::from_text("a", Label::InScope, "one\u{c}two", Some(9), 0.0);
        assert_eq!(d.page_count, 9);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = Corpus::new("x", vec![doc("doc1", Label::InScope), doc("doc1", Label::OutOfScope)]);
        assert!(matches!(err, Err(CorpusError::DuplicateId(id)) if id == "doc1"));
    }

    #[test]
    fn label_parsing_is_strict() {
        assert_eq!(Label::parse("in_scope"), Some(Label::InScope));
        assert_eq!(Label::parse("out_of_scope"), Some(Label::OutOfScope));
        assert_eq!(Label::parse(""), Some(Label::Unlabeled));
        assert_eq!(Label::parse("relevant"), None);
        assert_eq!(Label::parse("In_Scope"), None);
    }

    #[test]
    fn allocation_largest_remainder() {
        assert_eq!(allocate(416, &[0.6, 0.2, 0.2]), vec![250, 83, 83]);
        assert_eq!(allocate(1449, &[0.6, 0.2, 0.2]), vec![869, 290, 290]);
        assert_eq!(allocate(10, &[0.5, 0.25, 0.25]), vec![5, 3, 2]);
        assert_eq!(allocate(0, &[0.6, 0.2, 0.2]), vec![0, 0, 0]);
    }

    #[test]
    fn split_small_corpus() {
        let c = corpus(10, 10);
        let s = stratified_split(&c, SplitRatios::new(0.5, 0.25, 0.25).unwrap(), 3).unwrap();
        assert_eq!(s.train.class_counts().positive, 5);
        assert_eq!(s.train.class_counts().negative, 5);
        for part in [&s.dev, &s.test] {
            let cc = part.class_counts();
            assert!((2..=3).contains(&cc.positive) && (2..=3).contains(&cc.negative));
        }
        assert_eq!(s, stratified_split(&c, SplitRatios::new(0.5, 0.25, 0.25).unwrap(), 3).unwrap());
    }

    #[test]
    fn split_errors() {
        assert!(matches!(
            stratified_split(&corpus(0, 5), SplitRatios::default(), 1),
            Err(CorpusError::EmptyClass(Label::InScope))
        ));
        assert!(matches!(SplitRatios::new(0.5, 0.2, 0.2), Err(CorpusError::BadRatios(..))));
        let mut docs = corpus(2, 2).documents;
        docs.push(doc("u", Label::Unlabeled));
        let c = Corpus::new("u", docs).unwrap();
        assert!(matches!(stratified_split(&c, SplitRatios::default(), 1), Err(CorpusError::Unlabeled(_))));
    }

    fn split_of(train: Corpus) -> Split {
        Split {
            train,
            dev: Corpus::new("d", vec![doc("dev1", Label::InScope)]).unwrap(),
            test: Corpus::new("t", vec![doc("test1", Label::OutOfScope)]).unwrap(),
            seed: 0,
        }
    }

    #[test]
    fn rebalance_from_pool() {
        let split = split_of(corpus(72, 981));
        let pool_docs = (0..500).map(|i| doc(&format!("pool{i}"), Label::InScope)).collect();
        let pool = Corpus::new("pool", pool_docs).unwrap();
        let ts = rebalance_train(&split, &pool, 2.0, 11).unwrap();
        let c = ts.class_counts();
        assert_eq!((c.negative, c.positive), (981, 490));
        assert_eq!(ts.added_from_pool, 418);
        assert_eq!(ts.oversampled, 0);
    }

    #[test]
    fn rebalance_fixed_point() {
        let split = split_of(corpus(50, 100));
        let ts = rebalance_train(&split, &corpus(0, 0), 2.0, 1).unwrap();
        assert_eq!(ts.documents, split.train.documents);
    }

    #[test]
    fn rebalance_oversamples_when_pool_empty() {
        let split = split_of(corpus(10, 100));
        let ts = rebalance_train(&split, &corpus(0, 0), 2.0, 5).unwrap();
        let c = ts.class_counts();
        assert_eq!((c.negative, c.positive), (100, 50));
        assert_eq!(ts.oversampled, 40);
    }

    #[test]
    fn rebalance_rejects_overlap_and_bad_labels() {
        let split = split_of(corpus(1, 10));
        let pool = Corpus::new("p", vec![doc("test1", Label::InScope)]).unwrap();
        assert!(matches!(rebalance_train(&split, &pool, 2.0, 0), Err(CorpusError::PoolOverlap(id)) if id == "test1"));
        let pool = Corpus::new("p", vec![doc("x", Label::OutOfScope)]).unwrap();
        assert!(matches!(rebalance_train(&split, &pool, 2.0, 0), Err(CorpusError::PoolLabel(_))));
        assert!(matches!(rebalance_train(&split, &corpus(0, 0), 0.0, 0), Err(CorpusError::BadTargetRatio(_))));
    }

    #[test]
    fn manifest_round_trip_text() {
        let mut d = doc("a", Label::InScope);
        d.text_file = Some("a.txt".into());
        let csv = manifest_csv([&d, &doc("b", Label::Unlabeled)]);
        assert_eq!(
            csv,
            "id,label,text_file,page_count,file_size_kb\na,in_scope,a.txt,1,1\nb,,b.txt,1,1\n"
        );
    }
}
