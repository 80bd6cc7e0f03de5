//! The `scopegate` command line.
//!
//! Every command reads an optional INI config (`--config`), applies flag
//! overrides, prints the resulting config fingerprint and writes its outputs
//! atomically under the output directory. Exit codes: 0 success, 1
//! evaluation failure, 2 input error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{ConfigError, RunConfig};
use crate::corpus::{load_corpus, manifest_csv, rebalance_train, stratified_split, Corpus, Label};
use crate::eval::{run_experiment, summary_table, sweep, FeatureAxis};
use crate::features::{
    extract_structural, rank_structural, rank_terms, ranking_csv, BowSettings, FeatureSpace, StructuralFeatures,
};
use crate::io::write_atomic;
use crate::models::{tune, Dataset, TrainedModel};
use crate::seed;
use crate::textproc::PortionMode;

#[derive(Debug, Parser)]
#[command(name = "scopegate", version, about = "Classify archived documents as in scope or out of scope")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a corpus, report class balance and skipped documents, write a normalized manifest.
    Ingest(Overrides),
    /// Write train/dev/test (and rebalanced train) manifests for every seed.
    Split(Overrides),
    /// Tune a model on the first seed's split and save it.
    Train(Overrides),
    /// Run the seeded experiment for the configured axis and model.
    Evaluate(Overrides),
    /// Rank features by information gain over the labeled corpus.
    Rank(Overrides),
    /// Label every document of a manifest with a saved model.
    Predict {
        #[command(flatten)]
        overrides: Overrides,
        /// Model file written by `train`.
        #[arg(long = "model", id = "model_file")]
        model: PathBuf,
    },
    /// Run the experiment once per value of the configured sweep axis.
    Sweep(Overrides),
}

/// Config file plus per-key overrides.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// INI config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<String>,
    #[arg(long)]
    pub text_dir: Option<String>,
    #[arg(long)]
    pub pool_manifest: Option<String>,
    #[arg(long)]
    pub pool_text_dir: Option<String>,
    /// Train,dev,test fractions.
    #[arg(long)]
    pub ratios: Option<String>,
    /// Comma-separated seeds.
    #[arg(long, visible_alias = "seed")]
    pub seeds: Option<String>,
    /// Negative:positive ratio of the rebalanced training set.
    #[arg(long)]
    pub target_ratio: Option<String>,
    /// bow-all, bow-pd:<portion>, fs-bow:<N>, str or fs-str:<N>.
    #[arg(long)]
    pub axis: Option<String>,
    /// tf or tfidf.
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long)]
    pub min_df: Option<String>,
    /// Stopword file; outranks SCOPEGATE_STOPWORDS.
    #[arg(long)]
    pub stopwords: Option<String>,
    /// gnb, mnb, dt, rf or svm.
    #[arg(long = "model-kind")]
    pub model: Option<String>,
    #[arg(long)]
    pub svm_c: Option<String>,
    #[arg(long)]
    pub rf_trees: Option<String>,
    #[arg(long)]
    pub audit_families: Option<String>,
    /// portion, top-terms or top-structural.
    #[arg(long)]
    pub sweep_axis: Option<String>,
    #[arg(long)]
    pub portion_sizes: Option<String>,
    #[arg(long)]
    pub top_terms: Option<String>,
    #[arg(long)]
    pub top_structural: Option<String>,
    #[arg(long)]
    pub output_dir: Option<String>,
}

impl Overrides {
    /// Load the config file (or defaults) and apply the flags.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let pairs = [
            ("corpus.manifest", &self.manifest),
            ("corpus.text_dir", &self.text_dir),
            ("corpus.pool_manifest", &self.pool_manifest),
            ("corpus.pool_text_dir", &self.pool_text_dir),
            ("split.ratios", &self.ratios),
            ("split.seeds", &self.seeds),
            ("split.target_ratio", &self.target_ratio),
            ("features.axis", &self.axis),
            ("features.scheme", &self.scheme),
            ("features.min_df", &self.min_df),
            ("features.stopwords", &self.stopwords),
            ("models.model", &self.model),
            ("models.svm_c", &self.svm_c),
            ("models.rf_trees", &self.rf_trees),
            ("models.audit_families", &self.audit_families),
            ("sweep.axis", &self.sweep_axis),
            ("sweep.portion_sizes", &self.portion_sizes),
            ("sweep.top_terms", &self.top_terms),
            ("sweep.top_structural", &self.top_structural),
            ("output.dir", &self.output_dir),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                c.set(key, v)?;
            }
        }
        if self.stopwords.is_some() {
            c.stopwords_from_flag = true;
        }
        Ok(c)
    }
}

/// A failed command: message plus process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(stage: &str, e: impl std::fmt::Display) -> CliError {
        CliError {
            code: 2,
            message: format!("{stage}: {e}"),
        }
    }

    fn evaluation(stage: &str, e: impl std::fmt::Display) -> CliError {
        CliError {
            code: 1,
            message: format!("{stage}: {e}"),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

type CliResult<T> = Result<T, CliError>;

struct Session {
    config: RunConfig,
    fingerprint: String,
}

impl Session {
    fn new(overrides: &Overrides) -> CliResult<Session> {
        let config = overrides.resolve().map_err(|e| CliError::input("config", e))?;
        let fingerprint = config.fingerprint();
        println!("config-fingerprint: {fingerprint}");
        Ok(Session { config, fingerprint })
    }

    fn corpus(&self) -> CliResult<Corpus> {
        let manifest = self
            .config
            .manifest
            .as_ref()
            .ok_or_else(|| CliError::input("corpus", "no manifest given (--manifest or [corpus] manifest)"))?;
        let text_dir = self.text_dir(manifest, &self.config.text_dir);
        let loaded = load_corpus(manifest, &text_dir).map_err(|e| CliError::input("corpus", e))?;
        if !loaded.skipped.is_empty() {
            eprintln!("skipped {} document(s) with empty text: {}", loaded.skipped.len(), loaded.skipped.join(", "));
        }
        Ok(loaded.corpus)
    }

    fn pool(&self) -> CliResult<Option<Corpus>> {
        let Some(manifest) = &self.config.pool_manifest else {
            return Ok(None);
        };
        let dir = self
            .config
            .pool_text_dir
            .clone()
            .unwrap_or_else(|| self.text_dir(manifest, &self.config.text_dir));
        let loaded = load_corpus(manifest, &dir).map_err(|e| CliError::input("positive pool", e))?;
        Ok(Some(loaded.corpus))
    }

    /// The configured text directory, or the manifest's own directory.
    fn text_dir(&self, manifest: &Path, configured: &Option<PathBuf>) -> PathBuf {
        configured
            .clone()
            .unwrap_or_else(|| manifest.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    fn write(&self, name: &str, contents: &str) -> CliResult<PathBuf> {
        let dir = &self.config.output_dir;
        std::fs::create_dir_all(dir).map_err(|e| CliError::input("output", format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        write_atomic(&path, contents.as_bytes()).map_err(|e| CliError::input("output", format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        Ok(path)
    }

    fn tag(&self) -> String {
        format!("# config-fingerprint={}\n", self.fingerprint)
    }

    fn plan(&self) -> CliResult<crate::eval::ExperimentPlan> {
        let mut plan = self.config.plan().map_err(|e| CliError::input("config", e))?;
        plan.positive_pool = self.pool()?;
        Ok(plan)
    }
}

/// Run one command.
pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Ingest(o) => ingest(&Session::new(o)?),
        Command::Split(o) => split(&Session::new(o)?),
        Command::Train(o) => train(&Session::new(o)?),
        Command::Evaluate(o) => evaluate(&Session::new(o)?),
        Command::Rank(o) => rank(&Session::new(o)?),
        Command::Predict { overrides, model } => predict(&Session::new(overrides)?, model),
        Command::Sweep(o) => run_sweep(&Session::new(o)?),
    }
}

fn ingest(s: &Session) -> CliResult<()> {
    let corpus = s.corpus()?;
    if corpus.is_empty() {
        return Err(CliError::input("corpus", crate::corpus::CorpusError::EmptyCorpus));
    }
    let c = corpus.class_counts();
    println!("documents: {}", c.total());
    println!(
        "in_scope: {} ({:.0}%)",
        c.positive,
        100.0 * c.positive as f64 / c.total() as f64
    );
    println!("out_of_scope: {}", c.negative);
    if c.unlabeled > 0 {
        println!("unlabeled: {}", c.unlabeled);
    }
    s.write("manifest.csv", &(s.tag() + &manifest_csv(corpus.documents())))?;
    Ok(())
}

fn split(s: &Session) -> CliResult<()> {
    let corpus = s.corpus()?;
    let pool = s.pool()?;
    let empty = Corpus::new("pool", Vec::new()).expect("empty corpus");
    for &seed in &s.config.seeds {
        let sp = stratified_split(&corpus, s.config.ratios, seed).map_err(|e| CliError::input("split", e))?;
        let train2 = rebalance_train(&sp, pool.as_ref().unwrap_or(&empty), s.config.target_ratio, seed)
            .map_err(|e| CliError::input("rebalance", e))?;
        for (name, docs) in [
            ("train", sp.train.documents()),
            ("dev", sp.dev.documents()),
            ("test", sp.test.documents()),
            ("train2", &train2.documents[..]),
        ] {
            let c = crate::corpus::ClassCounts::of(docs);
            println!("seed {seed} {name}: {} out_of_scope / {} in_scope", c.negative, c.positive);
            s.write(&format!("split-{seed}/{name}.csv"), &(s.tag() + &manifest_csv(docs)))?;
        }
    }
    Ok(())
}

fn portion_of(axis: FeatureAxis) -> PortionMode {
    match axis {
        FeatureAxis::BowPortion(m) => m,
        _ => PortionMode::All,
    }
}

fn train(s: &Session) -> CliResult<()> {
    let corpus = s.corpus()?;
    let plan = s.plan()?;
    let seed = s.config.seeds[0];
    let sp = stratified_split(&corpus, plan.ratios, seed).map_err(|e| CliError::input("split", e))?;
    let empty = Corpus::new("pool", Vec::new()).expect("empty corpus");
    let train2 = rebalance_train(&sp, plan.positive_pool.as_ref().unwrap_or(&empty), plan.target_neg_to_pos, seed)
        .map_err(|e| CliError::input("rebalance", e))?;
    let train_docs: Vec<_> = train2.documents.iter().collect();

    let space = match plan.axis {
        FeatureAxis::Structural => FeatureSpace::fit_structural(&train_docs, None),
        FeatureAxis::FsStructural(n) => FeatureSpace::fit_structural(&train_docs, Some(n)),
        axis => FeatureSpace::fit_bow(
            &train_docs,
            &BowSettings {
                portion: portion_of(axis),
                top_n: match axis {
                    FeatureAxis::FsBow(n) => Some(n),
                    _ => None,
                },
                ..plan.bow.clone()
            },
        ),
    }
    .map_err(|e| CliError::evaluation("features", e))?;

    let dataset = |docs: &[&crate::corpus::Document]| {
        Dataset::new(
            docs.iter().map(|d| space.transform(d)).collect(),
            docs.iter().map(|d| d.label).collect(),
            space.dim(),
        )
    };
    let train_data = dataset(&train_docs).map_err(|e| CliError::evaluation("train", e))?;
    let dev_docs: Vec<_> = sp.dev.documents().iter().collect();
    let dev_data = dataset(&dev_docs).map_err(|e| CliError::evaluation("tune", e))?;
    let tuned = tune(
        plan.model,
        &train_data,
        &dev_data,
        &plan.grid,
        seed::derive(seed, seed::stream::MODEL),
    )
    .map_err(|e| CliError::evaluation("tune", e))?;
    println!(
        "model {} {} dev F1 {:.2} on {} features",
        plan.model,
        tuned.hyperparams,
        tuned.dev_f1,
        space.dim()
    );
    if let FeatureSpace::Bow { vocab, .. } = &space {
        s.write("vocabulary.tsv", &(s.tag() + &vocab.to_tsv()))?;
    }
    let model = TrainedModel {
        classifier: tuned.classifier,
        hyperparams: tuned.hyperparams,
        feature_space: space,
    };
    s.write("model.json", &model.to_json(&s.fingerprint))?;
    Ok(())
}

fn evaluate(s: &Session) -> CliResult<()> {
    let corpus = s.corpus()?;
    let plan = s.plan()?;
    let report = run_experiment(&corpus, &plan).map_err(|e| CliError::evaluation("evaluate", e))?;
    let mut csv = s.tag() + "axis,seed,precision,recall,f1,model,hyperparams\n";
    for r in &report.per_seed {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            report.axis, r.seed, r.metrics.precision, r.metrics.recall, r.metrics.f1, report.model, r.hyperparams
        ));
    }
    csv.push_str(&format!(
        "{},mean,{},{},{},{},-\n",
        report.axis, report.precision, report.recall, report.f1, report.model
    ));
    s.write("report.csv", &csv)?;
    if plan.audit_families {
        let mut dev = s.tag() + "seed,model,dev_f1\n";
        for r in &report.per_seed {
            for (k, f1) in &r.family_dev_f1 {
                dev.push_str(&format!("{},{k},{f1}\n", r.seed));
            }
        }
        s.write("family_dev_f1.csv", &dev)?;
    }
    let summary = summary_table([(report.axis.family().to_string(), &report)]);
    print!("{summary}");
    s.write("summary.txt", &(s.tag() + &summary))?;
    Ok(())
}

fn rank(s: &Session) -> CliResult<()> {
    let corpus = s.corpus()?;
    let docs: Vec<_> = corpus.documents().iter().filter(|d| d.label != Label::Unlabeled).collect();
    let labels: Vec<Label> = docs.iter().map(|d| d.label).collect();
    let ranking = if s.config.axis.is_structural() {
        let rows: Vec<StructuralFeatures> = docs.iter().map(|d| extract_structural(d)).collect();
        rank_structural(&rows, &labels)
    } else {
        let stopwords = s.config.load_stopwords().map_err(|e| CliError::input("config", e))?;
        let tokens: Vec<_> = docs
            .iter()
            .map(|d| crate::features::bow_tokens(d, portion_of(s.config.axis), &stopwords))
            .collect();
        crate::features::build_vocabulary(&tokens, s.config.min_df)
            .and_then(|vocab| rank_terms(&tokens, &labels, &vocab))
    }
    .map_err(|e| CliError::evaluation("rank", e))?;
    for e in ranking.entries.iter().take(10) {
        println!("{:<24} {:.4}", e.feature, e.ig_bits);
    }
    s.write("ranking.csv", &(s.tag() + &ranking_csv(&ranking)))?;
    Ok(())
}

fn predict(s: &Session, model_path: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(model_path)
        .map_err(|e| CliError::input("model", format!("{}: {e}", model_path.display())))?;
    let model = TrainedModel::from_json(&text).map_err(|e| CliError::input("model", e))?;
    let corpus = s.corpus()?;
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(["id", "label", "predicted"]).expect("in-memory write");
    let mut positive = 0;
    for d in corpus.documents() {
        let p = model
            .predict_document(d)
            .map_err(|e| CliError::evaluation("predict", format!("{}: {e}", d.id)))?;
        positive += usize::from(p.is_positive());
        w.write_record([d.id.as_str(), d.label.as_str(), p.as_str()]).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    println!("{} documents, {positive} predicted in_scope", corpus.len());
    s.write("predictions.csv", &(s.tag() + &body))?;
    Ok(())
}

fn run_sweep(s: &Session) -> CliResult<()> {
    let corpus = s.corpus()?;
    let plan = s.plan()?;
    let report = sweep(&corpus, &s.config.sweep_axis(), &plan).map_err(|e| CliError::evaluation("sweep", e))?;
    s.write("sweep.csv", &report.to_csv(Some(&s.fingerprint)))?;
    let summary = report.summary();
    print!("{summary}");
    s.write("sweep_summary.txt", &(s.tag() + &summary))?;
    Ok(())
}
