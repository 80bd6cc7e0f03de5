//! Tokenization, document portions and bag-of-words preprocessing.

mod porter;
mod stopwords;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use porter::stem as porter_stem;
pub use stopwords::{Stopwords, DEFAULT_STOPWORDS, STOPWORDS_ENV};

/// Ordered tokens of one document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenStream {
    pub tokens: Vec<String>,
    pub source_id: String,
}

impl TokenStream {
    pub fn new(source_id: impl Into<String>, tokens: Vec<String>) -> Self {
        TokenStream {
            tokens,
            source_id: source_id.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Lowercase, split on whitespace and trim punctuation from both ends of each
/// token. Interior hyphens, apostrophes and digits are kept.
pub fn tokenize(text: &str) -> TokenStream {
    TokenStream::new(String::new(), tokenize_words(text).collect())
}

pub(crate) fn tokenize_words(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split_whitespace().filter_map(|raw| {
        let t = raw.trim_matches(|c: char| !c.is_alphanumeric());
        (!t.is_empty()).then(|| t.to_lowercase())
    })
}

/// Which part of a document feeds the bag-of-words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PortionMode {
    All,
    First(usize),
    FirstLast(usize),
}

/// Portion sizes swept by default.
pub const DEFAULT_PORTION_SIZES: [usize; 6] = [100, 300, 500, 700, 1000, 2000];

impl PortionMode {
    /// Indices of the tokens kept from a stream of `len` tokens, ascending
    /// and without repeats.
    pub fn indices(self, len: usize) -> Vec<usize> {
        match self {
            PortionMode::All => (0..len).collect(),
            PortionMode::First(x) => (0..x.min(len)).collect(),
            PortionMode::FirstLast(x) => {
                if len < 2 * x {
                    (0..len).collect()
                } else {
                    (0..x).chain(len - x..len).collect()
                }
            }
        }
    }
}

impl fmt::Display for PortionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortionMode::All => f.write_str("all"),
            PortionMode::First(x) => write!(f, "first-{x}"),
            PortionMode::FirstLast(x) => write!(f, "first-last-{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid portion `{0}` (expected all, first-<X> or first-last-<X> with X > 0)")]
pub struct ParsePortionError(String);

impl FromStr for PortionMode {
    type Err = ParsePortionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePortionError(s.to_owned());
        let s = s.trim();
        if s == "all" {
            return Ok(PortionMode::All);
        }
        let (ctor, n): (fn(usize) -> PortionMode, &str) = if let Some(n) = s.strip_prefix("first-last-") {
            (PortionMode::FirstLast, n)
        } else if let Some(n) = s.strip_prefix("first-") {
            (PortionMode::First, n)
        } else {
            return Err(err());
        };
        match n.parse::<usize>() {
            Ok(x) if x > 0 => Ok(ctor(x)),
            _ => Err(err()),
        }
    }
}

/// Select the portion of `stream` described by `mode`. For
/// `FirstLast(x)` on a stream shorter than `2x` the whole stream is returned,
/// so no token is ever emitted twice.
pub fn take_portion(stream: &TokenStream, mode: PortionMode) -> TokenStream {
    let tokens = match mode {
        PortionMode::All => stream.tokens.clone(),
        _ => mode
            .indices(stream.len())
            .into_iter()
            .map(|i| stream.tokens[i].clone())
            .collect(),
    };
    TokenStream::new(stream.source_id.clone(), tokens)
}

fn has_alphanumeric(token: &str) -> bool {
    token.chars().any(char::is_alphanumeric)
}

/// Stopword and punctuation removal without stemming.
pub fn filter_tokens(stream: &TokenStream, stopwords: &Stopwords) -> TokenStream {
    let tokens = stream
        .tokens
        .iter()
        .filter(|t| has_alphanumeric(t) && !stopwords.contains(t))
        .cloned()
        .collect();
    TokenStream::new(stream.source_id.clone(), tokens)
}

/// Remove stopwords and purely non-alphanumeric tokens, then Porter-stem what
/// remains.
pub fn preprocess(stream: &TokenStream, stopwords: &Stopwords) -> TokenStream {
    let tokens = stream
        .tokens
        .iter()
        .filter(|t| has_alphanumeric(t) && !stopwords.contains(t))
        .map(|t| porter_stem(t))
        .collect();
    TokenStream::new(stream.source_id.clone(), tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &[&str]) -> TokenStream {
        TokenStream::new("t", s.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("This paper, results!").tokens, ["this", "paper", "results"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("state-of-the-art 2008").tokens, ["state-of-the-art", "2008"]);
        assert_eq!(tokenize("  -- (TX) ...").tokens, ["tx"]);
    }

    #[test]
    fn portion_examples() {
        let ten = toks(&["a"; 10]);
        assert_eq!(take_portion(&ten, PortionMode::FirstLast(100)), ten);

        let letters: Vec<String> = ('a'..='z').map(String::from).collect();
        let s = TokenStream::new("t", letters);
        assert_eq!(take_portion(&s, PortionMode::First(3)).tokens, ["a", "b", "c"]);
    }

    #[test]
    fn first_last_slices() {
        let t: Vec<String> = (0..300).map(|i| i.to_string()).collect();
        let s = TokenStream::new("t", t.clone());
        let got = take_portion(&s, PortionMode::FirstLast(100)).tokens;
        let want: Vec<String> = t[0..100].iter().chain(&t[200..300]).cloned().collect();
        assert_eq!(got.len(), 200);
        assert_eq!(got, want);
    }

    #[test]
    fn portion_parse_display() {
        for m in [PortionMode::All, PortionMode::First(7), PortionMode::FirstLast(100)] {
            assert_eq!(m.to_string().parse::<PortionMode>().unwrap(), m);
        }
        assert!("first-0".parse::<PortionMode>().is_err());
        assert!("last-5".parse::<PortionMode>().is_err());
    }

    #[test]
    fn preprocess_examples() {
        let sw = Stopwords::from_words(["the"]);
        assert_eq!(preprocess(&toks(&["the", "programs"]), &sw).tokens, ["program"]);
        assert_eq!(preprocess(&toks(&["studies", "studying"]), &sw).tokens, ["studi", "studi"]);
        assert!(preprocess(&toks(&[]), &sw).is_empty());
        assert_eq!(preprocess(&toks(&["--", "§", "tx"]), &sw).tokens, ["tx"]);
    }
}
