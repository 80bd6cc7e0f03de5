//! Run configuration: an INI file with one section per module, overridden by
//! command-line flags.
//!
//! ```ini
//! [corpus]
//! manifest = data/manifest.csv
//! text_dir = data/text
//!
//! [split]
//! ratios = 0.6,0.2,0.2
//! seeds = 1,2,3
//!
//! [features]
//! axis = bow-pd:first-last-100
//!
//! [models]
//! model = rf
//! ```
//!
//! Every key has a default. Flags use the key name in kebab case
//! (`min_df` becomes `--min-df`).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ini::Ini;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::SplitRatios;
use crate::eval::{ExperimentPlan, FeatureAxis, SweepAxis};
use crate::features::{BowSettings, WeightingScheme};
use crate::models::{HyperGrid, ModelKind};
use crate::textproc::{Stopwords, DEFAULT_PORTION_SIZES, STOPWORDS_ENV};

/// Top-N term counts swept by default.
pub const DEFAULT_TOP_TERMS: [usize; 5] = [300, 500, 1000, 2000, 3000];
/// Top-N structural feature counts swept by default.
pub const DEFAULT_TOP_STRUCTURAL: [usize; 3] = [10, 20, 30];

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("config file {path}: {reason}")]
    File { path: PathBuf, reason: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("config key `{key}`: {reason}")]
    BadValue { key: String, reason: String },
    #[error("stopword file {path}: {reason}")]
    Stopwords { path: PathBuf, reason: String },
}

pub type Result<T> = std::result::Result<T, ConfigError>;

/// Which values `sweep` iterates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Portion,
    TopTerms,
    TopStructural,
}

impl SweepKind {
    fn parse(s: &str) -> Option<SweepKind> {
        match s {
            "portion" => Some(SweepKind::Portion),
            "top-terms" => Some(SweepKind::TopTerms),
            "top-structural" => Some(SweepKind::TopStructural),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SweepKind::Portion => "portion",
            SweepKind::TopTerms => "top-terms",
            SweepKind::TopStructural => "top-structural",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub manifest: Option<PathBuf>,
    pub text_dir: Option<PathBuf>,
    pub pool_manifest: Option<PathBuf>,
    pub pool_text_dir: Option<PathBuf>,
    pub ratios: SplitRatios,
    pub seeds: Vec<u64>,
    pub target_ratio: f64,
    pub axis: FeatureAxis,
    pub scheme: WeightingScheme,
    pub min_df: usize,
    pub stopwords: Option<PathBuf>,
    /// Set when the stopword file came from a flag, which outranks the
    /// environment variable.
    pub stopwords_from_flag: bool,
    pub model: ModelKind,
    pub svm_c: Vec<f64>,
    pub rf_trees: Vec<usize>,
    pub audit_families: bool,
    pub sweep: SweepKind,
    pub portion_sizes: Vec<usize>,
    pub top_terms: Vec<usize>,
    pub top_structural: Vec<usize>,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let grid = HyperGrid::default();
        RunConfig {
            manifest: None,
            text_dir: None,
            pool_manifest: None,
            pool_text_dir: None,
            ratios: SplitRatios::default(),
            seeds: vec![1, 2, 3],
            target_ratio: 2.0,
            axis: FeatureAxis::BowPortion(crate::textproc::PortionMode::FirstLast(100)),
            scheme: WeightingScheme::TfIdf,
            min_df: 5,
            stopwords: None,
            stopwords_from_flag: false,
            model: ModelKind::RandomForest,
            svm_c: grid.svm_c,
            rf_trees: grid.rf_trees,
            audit_families: false,
            sweep: SweepKind::Portion,
            portion_sizes: DEFAULT_PORTION_SIZES.to_vec(),
            top_terms: DEFAULT_TOP_TERMS.to_vec(),
            top_structural: DEFAULT_TOP_STRUCTURAL.to_vec(),
            output_dir: PathBuf::from("out"),
        }
    }
}

/// Every accepted `section.key`.
pub const KEYS: [&str; 20] = [
    "corpus.manifest",
    "corpus.text_dir",
    "corpus.pool_manifest",
    "corpus.pool_text_dir",
    "split.ratios",
    "split.seeds",
    "split.target_ratio",
    "features.axis",
    "features.scheme",
    "features.min_df",
    "features.stopwords",
    "models.model",
    "models.svm_c",
    "models.rf_trees",
    "models.audit_families",
    "sweep.axis",
    "sweep.portion_sizes",
    "sweep.top_terms",
    "sweep.top_structural",
    "output.dir",
];

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| ConfigError::BadValue {
                key: key.to_owned(),
                reason: format!("`{s}` is not valid"),
            })
        })
        .collect()
}

fn one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse().map_err(|e: T::Err| ConfigError::BadValue {
        key: key.to_owned(),
        reason: e.to_string(),
    })
}

fn path(value: &str) -> Option<PathBuf> {
    let v = value.trim();
    (!v.is_empty()).then(|| PathBuf::from(v))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn show(p: &Option<PathBuf>) -> String {
    p.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
}

impl RunConfig {
    pub fn from_ini_str(text: &str) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        c.merge_ini_str(text, Path::new("<string>"))?;
        Ok(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<RunConfig> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.to_owned(),
            reason: e.to_string(),
        })?;
        let mut c = RunConfig::default();
        c.merge_ini_str(&text, path)?;
        Ok(c)
    }

    fn merge_ini_str(&mut self, text: &str, origin: &Path) -> Result<()> {
        let ini = Ini::load_from_str(text).map_err(|e| ConfigError::File {
            path: origin.to_owned(),
            reason: e.to_string(),
        })?;
        for (section, props) in ini.iter() {
            for (key, value) in props.iter() {
                let full = match section {
                    Some(s) => format!("{s}.{key}"),
                    None => key.to_owned(),
                };
                self.set(&full, value)?;
            }
        }
        Ok(())
    }

    /// Assign one `section.key`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "corpus.manifest" => self.manifest = path(value),
            "corpus.text_dir" => self.text_dir = path(value),
            "corpus.pool_manifest" => self.pool_manifest = path(value),
            "corpus.pool_text_dir" => self.pool_text_dir = path(value),
            "split.ratios" => {
                let r: Vec<f64> = list(key, value)?;
                let [train, dev, test] = r[..] else {
                    return Err(ConfigError::BadValue {
                        key: key.into(),
                        reason: "expected three fractions".into(),
                    });
                };
                self.ratios = SplitRatios::new(train, dev, test).map_err(|e| ConfigError::BadValue {
                    key: key.into(),
                    reason: e.to_string(),
                })?;
            }
            "split.seeds" => self.seeds = self.non_empty(key, list(key, value)?)?,
            "split.target_ratio" => {
                let r: f64 = one(key, value)?;
                if !(r.is_finite() && r > 0.0) {
                    return Err(ConfigError::BadValue {
                        key: key.into(),
                        reason: "must be positive".into(),
                    });
                }
                self.target_ratio = r;
            }
            "features.axis" => self.axis = one(key, value)?,
            "features.scheme" => self.scheme = one(key, value)?,
            "features.min_df" => {
                self.min_df = one(key, value)?;
                if self.min_df == 0 {
                    return Err(ConfigError::BadValue {
                        key: key.into(),
                        reason: "must be at least 1".into(),
                    });
                }
            }
            "features.stopwords" => self.stopwords = path(value),
            "models.model" => self.model = one(key, value)?,
            "models.svm_c" => self.svm_c = self.non_empty(key, list(key, value)?)?,
            "models.rf_trees" => self.rf_trees = self.non_empty(key, list(key, value)?)?,
            "models.audit_families" => self.audit_families = one(key, value)?,
            "sweep.axis" => {
                self.sweep = SweepKind::parse(value.trim()).ok_or_else(|| ConfigError::BadValue {
                    key: key.into(),
                    reason: "expected portion, top-terms or top-structural".into(),
                })?
            }
            "sweep.portion_sizes" => self.portion_sizes = list(key, value)?,
            "sweep.top_terms" => self.top_terms = list(key, value)?,
            "sweep.top_structural" => self.top_structural = list(key, value)?,
            "output.dir" => self.output_dir = path(value).unwrap_or_else(|| PathBuf::from(".")),
            _ => return Err(ConfigError::UnknownKey(key.to_owned())),
        }
        Ok(())
    }

    fn non_empty<T>(&self, key: &str, v: Vec<T>) -> Result<Vec<T>> {
        if v.is_empty() {
            Err(ConfigError::BadValue {
                key: key.into(),
                reason: "needs at least one value".into(),
            })
        } else {
            Ok(v)
        }
    }

    /// Stopword file in effect: flag, then `SCOPEGATE_STOPWORDS`, then the
    /// config file. `None` means the built-in list.
    pub fn effective_stopwords_path(&self, env: Option<&str>) -> Option<PathBuf> {
        if self.stopwords_from_flag {
            return self.stopwords.clone();
        }
        match env.filter(|s| !s.trim().is_empty()) {
            Some(p) => Some(PathBuf::from(p)),
            None => self.stopwords.clone(),
        }
    }

    pub fn load_stopwords(&self) -> Result<Stopwords> {
        let env = std::env::var(STOPWORDS_ENV).ok();
        match self.effective_stopwords_path(env.as_deref()) {
            None => Ok(Stopwords::default()),
            Some(p) => Stopwords::load(&p).map_err(|e| ConfigError::Stopwords {
                path: p,
                reason: e.to_string(),
            }),
        }
    }

    /// Canonical INI rendering of every result-affecting field (the output
    /// directory is left out).
    pub fn to_ini(&self) -> String {
        let env = std::env::var(STOPWORDS_ENV).ok();
        let stopwords = self.effective_stopwords_path(env.as_deref());
        let mut s = String::new();
        let _ = writeln!(s, "[corpus]");
        let _ = writeln!(s, "manifest = {}", show(&self.manifest));
        let _ = writeln!(s, "text_dir = {}", show(&self.text_dir));
        let _ = writeln!(s, "pool_manifest = {}", show(&self.pool_manifest));
        let _ = writeln!(s, "pool_text_dir = {}", show(&self.pool_text_dir));
        let _ = writeln!(s, "\n[split]");
        let _ = writeln!(s, "ratios = {},{},{}", self.ratios.train, self.ratios.dev, self.ratios.test);
        let _ = writeln!(s, "seeds = {}", join(&self.seeds));
        let _ = writeln!(s, "target_ratio = {}", self.target_ratio);
        let _ = writeln!(s, "\n[features]");
        let _ = writeln!(s, "axis = {}", self.axis);
        let _ = writeln!(s, "scheme = {}", self.scheme);
        let _ = writeln!(s, "min_df = {}", self.min_df);
        let _ = writeln!(s, "stopwords = {}", show(&stopwords));
        let _ = writeln!(s, "\n[models]");
        let _ = writeln!(s, "model = {}", self.model);
        let _ = writeln!(s, "svm_c = {}", join(&self.svm_c));
        let _ = writeln!(s, "rf_trees = {}", join(&self.rf_trees));
        let _ = writeln!(s, "audit_families = {}", self.audit_families);
        let _ = writeln!(s, "\n[sweep]");
        let _ = writeln!(s, "axis = {}", self.sweep.name());
        let _ = writeln!(s, "portion_sizes = {}", join(&self.portion_sizes));
        let _ = writeln!(s, "top_terms = {}", join(&self.top_terms));
        let _ = writeln!(s, "top_structural = {}", join(&self.top_structural));
        s
    }

    /// Short hash of [`RunConfig::to_ini`].
    pub fn fingerprint(&self) -> String {
        fingerprint(&self.to_ini())
    }

    pub fn grid(&self) -> HyperGrid {
        HyperGrid {
            svm_c: self.svm_c.clone(),
            rf_trees: self.rf_trees.clone(),
        }
    }

    pub fn sweep_axis(&self) -> SweepAxis {
        match self.sweep {
            SweepKind::Portion => SweepAxis::Portion(self.portion_sizes.clone()),
            SweepKind::TopTerms => SweepAxis::TopTerms(self.top_terms.clone()),
            SweepKind::TopStructural => SweepAxis::TopStructural(self.top_structural.clone()),
        }
    }

    /// Experiment plan for this configuration (without a positive pool).
    pub fn plan(&self) -> Result<ExperimentPlan> {
        let mut plan = ExperimentPlan::new(self.axis, self.model);
        plan.seeds = self.seeds.clone();
        plan.ratios = self.ratios;
        plan.target_neg_to_pos = self.target_ratio;
        plan.bow = BowSettings {
            scheme: self.scheme,
            min_df: self.min_df,
            stopwords: self.load_stopwords()?,
            ..BowSettings::default()
        };
        plan.grid = self.grid();
        plan.audit_families = self.audit_families;
        Ok(plan)
    }
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn fingerprint(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).fold(String::with_capacity(16), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::PortionMode;

    #[test]
    fn file_values_and_flag_overrides() {
        let mut c = RunConfig::from_ini_str(
            "[features]\naxis = bow-pd:first-300\nmin_df = 3\n[models]\nmodel = svm\nsvm_c = 0.5, 1\n",
        )
        .unwrap();
        assert_eq!(c.axis, FeatureAxis::BowPortion(PortionMode::First(300)));
        assert_eq!(c.min_df, 3);
        assert_eq!(c.svm_c, vec![0.5, 1.0]);
        c.set("features.min_df", "7").unwrap();
        assert_eq!(c.min_df, 7);
        assert_eq!(c.seeds, vec![1, 2, 3]);
    }

    #[test]
    fn rejects_unknown_and_bad_values() {
        assert_eq!(
            RunConfig::from_ini_str("[models]\ncolor = red\n"),
            Err(ConfigError::UnknownKey("models.color".into()))
        );
        assert!(RunConfig::from_ini_str("[split]\nratios = 0.5,0.5,0.5\n").is_err());
        assert!(RunConfig::from_ini_str("[split]\nseeds =\n").is_err());
    }

    #[test]
    fn canonical_rendering_round_trips() {
        let mut c = RunConfig::default();
        c.set("split.seeds", "4,5").unwrap();
        let back = RunConfig::from_ini_str(&c.to_ini()).unwrap();
        assert_eq!(back.fingerprint(), c.fingerprint());
        assert_ne!(RunConfig::default().fingerprint(), c.fingerprint());
        assert_eq!(c.fingerprint().len(), 16);
    }

    #[test]
    fn stopword_precedence() {
        let mut c = RunConfig::from_ini_str("[features]\nstopwords = cfg.txt\n").unwrap();
        assert_eq!(c.effective_stopwords_path(None), Some("cfg.txt".into()));
        assert_eq!(c.effective_stopwords_path(Some("env.txt")), Some("env.txt".into()));
        c.stopwords = Some("flag.txt".into());
        c.stopwords_from_flag = true;
        assert_eq!(c.effective_stopwords_path(Some("env.txt")), Some("flag.txt".into()));
    }
}
