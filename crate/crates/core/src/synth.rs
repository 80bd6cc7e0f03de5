//! Seeded synthetic corpora for demos and tests.

use std::io;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{manifest_csv, Corpus, Document, Label, PAGE_DELIMITER};
use crate::io::write_atomic;
use crate::seed;

const SYNTH_STREAM: u64 = 0x5157;

const ONSETS: [&str; 12] = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t"];
const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];

/// Deterministic pronounceable nonsense word number `i` (three syllables).
pub fn pseudo_word(i: usize) -> String {
    let mut w = String::new();
    let mut k = i;
    for _ in 0..3 {
        w.push_str(ONSETS[k % ONSETS.len()]);
        k /= ONSETS.len();
        w.push_str(VOWELS[k % VOWELS.len()]);
        k /= VOWELS.len();
    }
    w.push_str(ONSETS[k % ONSETS.len()]);
    w
}

/// Shape of a corpus whose class signal sits only at the document edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedSpec {
    pub n_docs: usize,
    pub positive_fraction: f64,
    /// Tokens in the head and in the tail.
    pub edge_tokens: usize,
    pub body_tokens: usize,
    /// Distinct signal words per class.
    pub signal_words: usize,
    /// Signal words of the document's own class planted in each edge.
    pub signals_per_edge: usize,
    /// Signal words of both classes scattered through the body.
    pub body_signals: usize,
    /// Filler vocabulary size.
    pub filler_words: usize,
}

impl Default for PlantedSpec {
    fn default() -> Self {
        PlantedSpec {
            n_docs: 600,
            positive_fraction: 0.3,
            edge_tokens: 100,
            body_tokens: 2000,
            signal_words: 12,
            signals_per_edge: 6,
            body_signals: 40,
            filler_words: 400,
        }
    }
}

/// Documents whose label is determined by signal words planted in the first
/// and last `edge_tokens` positions. The body between them repeats signal
/// words of both classes in a random per-document mix, so full-text counts
/// are a noisy view of the label.
pub fn planted_corpus(spec: &PlantedSpec, master_seed: u64) -> Corpus {
    let mut rng = seed::rng(master_seed, SYNTH_STREAM);
    let filler: Vec<String> = (0..spec.filler_words).map(pseudo_word).collect();
    let signal = |class: usize, j: usize| format!("{}{}", pseudo_word(spec.filler_words + j), ["x", "z"][class]);
    let n_pos = (spec.n_docs as f64 * spec.positive_fraction).round() as usize;

    let docs = (0..spec.n_docs)
        .map(|i| {
            let positive = i < n_pos;
            let own = if positive { 0 } else { 1 };
            let edge = |rng: &mut ChaCha8Rng| {
                let mut toks: Vec<String> =
                    (0..spec.edge_tokens).map(|_| filler.choose(rng).unwrap().clone()).collect();
                for _ in 0..spec.signals_per_edge.min(spec.edge_tokens) {
                    let at = rng.gen_range(0..toks.len());
                    toks[at] = signal(own, rng.gen_range(0..spec.signal_words));
                }
                toks
            };
            let head = edge(&mut rng);
            let tail = edge(&mut rng);
            let mut body: Vec<String> = (0..spec.body_tokens).map(|_| filler.choose(&mut rng).unwrap().clone()).collect();
            let mix: f64 = rng.gen();
            for _ in 0..spec.body_signals.min(spec.body_tokens) {
                let class = if rng.gen::<f64>() < mix { 0 } else { 1 };
                let at = rng.gen_range(0..body.len());
                body[at] = signal(class, rng.gen_range(0..spec.signal_words));
            }
            let words: Vec<String> = head.into_iter().chain(body).chain(tail).collect();
            let text = paginate(&words, 250);
            let label = if positive { Label::InScope } else { Label::OutOfScope };
            let kb = text.len() as f64 / 1024.0;
            Document::from_text(format!("doc{i:04}"), label, &text, None, kb)
        })
        .collect();
    Corpus::new("planted", docs).expect("generated ids are unique")
}

/// Lines of 10 words, `per_page` words per page.
fn paginate(words: &[String], per_page: usize) -> String {
    words
        .chunks(per_page)
        .map(|page| page.chunks(10).map(|l| l.join(" ")).collect::<Vec<_>>().join("\n"))
        .collect::<Vec<_>>()
        .join(&PAGE_DELIMITER.to_string())
}

const SCHOLARLY_TOPICS: [&str; 10] = [
    "measurement", "sediment", "population", "network", "soil", "policy", "signal", "habitat", "protein", "survey",
];
const OTHER_TOPICS: [&str; 10] = [
    "parking", "calendar", "menu", "event", "ticket", "holiday", "contest", "meeting", "office", "hours",
];
const SURNAMES: [&str; 8] = ["Smith", "Garcia", "Chen", "Patel", "Okafor", "Novak", "Silva", "Kim"];

fn sentence(rng: &mut ChaCha8Rng, topics: &[&str], filler: &[String], len: usize) -> String {
    let mut words: Vec<String> = (0..len)
        .map(|k| {
            if k % 4 == 0 {
                topics.choose(rng).unwrap().to_string()
            } else {
                filler.choose(rng).unwrap().clone()
            }
        })
        .collect();
    if let Some(first) = words.first_mut() {
        let mut c = first.chars();
        if let Some(h) = c.next() {
            *first = h.to_uppercase().chain(c).collect();
        }
    }
    words.join(" ") + "."
}

/// Research-article-like positives (sections, citations, a reference list)
/// against flyer- and notice-like negatives.
pub fn scholarly_corpus(n_docs: usize, positive_fraction: f64, master_seed: u64) -> Corpus {
    let mut rng = seed::rng(master_seed, SYNTH_STREAM + 1);
    let filler: Vec<String> = (0..300).map(pseudo_word).collect();
    let n_pos = (n_docs as f64 * positive_fraction).round() as usize;
    let docs = (0..n_docs)
        .map(|i| {
            let text = if i < n_pos {
                article(&mut rng, &filler)
            } else {
                notice(&mut rng, &filler)
            };
            let label = if i < n_pos { Label::InScope } else { Label::OutOfScope };
            let kb = text.len() as f64 / 1024.0;
            Document::from_text(format!("s{i:04}"), label, &text, None, kb)
        })
        .collect();
    Corpus::new("scholarly", docs).expect("generated ids are unique")
}

fn article(rng: &mut ChaCha8Rng, filler: &[String]) -> String {
    let n_refs = rng.gen_range(8..30);
    let mut pages = Vec::new();
    let mut p1 = vec![
        sentence(rng, &SCHOLARLY_TOPICS, filler, 8),
        "Abstract".to_string(),
        sentence(rng, &SCHOLARLY_TOPICS, filler, 30),
        "1. Introduction".to_string(),
    ];
    for _ in 0..rng.gen_range(4..8) {
        let cite = if rng.gen_bool(0.5) {
            format!("[{}]", rng.gen_range(1..=n_refs))
        } else {
            format!("({} {})", SURNAMES.choose(rng).unwrap(), rng.gen_range(1990..2020))
        };
        p1.push(format!("{} {cite}", sentence(rng, &SCHOLARLY_TOPICS, filler, 14)));
    }
    p1.push(format!("In this paper we {}", sentence(rng, &SCHOLARLY_TOPICS, filler, 10)));
    pages.push(p1.join("\n"));
    for _ in 0..rng.gen_range(1..4) {
        let lines: Vec<String> = (0..rng.gen_range(10..20))
            .map(|_| {
                let s = sentence(rng, &SCHOLARLY_TOPICS, filler, 12);
                if rng.gen_bool(0.3) {
                    format!("{s} [{}]", rng.gen_range(1..=n_refs))
                } else {
                    s
                }
            })
            .collect();
        pages.push(lines.join("\n"));
    }
    let mut last = vec!["5. Conclusion".to_string(), sentence(rng, &SCHOLARLY_TOPICS, filler, 20)];
    if rng.gen_bool(0.6) {
        last.push("Acknowledgments".into());
        last.push(sentence(rng, &SCHOLARLY_TOPICS, filler, 10));
    }
    last.push("References".into());
    for r in 1..=n_refs {
        last.push(format!(
            "[{r}] {}, {}. {} ({}).",
            SURNAMES.choose(rng).unwrap(),
            filler.choose(rng).unwrap(),
            sentence(rng, &SCHOLARLY_TOPICS, filler, 6),
            rng.gen_range(1990..2020)
        ));
    }
    pages.push(last.join("\n"));
    pages.join(&PAGE_DELIMITER.to_string())
}

fn notice(rng: &mut ChaCha8Rng, filler: &[String]) -> String {
    let mut pages = Vec::new();
    for _ in 0..rng.gen_range(1..3) {
        let mut lines = vec![OTHER_TOPICS.choose(rng).unwrap().to_uppercase()];
        for _ in 0..rng.gen_range(5..25) {
            let len = rng.gen_range(3..12);
            let mut s = sentence(rng, &OTHER_TOPICS, filler, len);
            if rng.gen_bool(0.15) {
                s = format!("Call {}-{:04} or visit room {}", rng.gen_range(200..999), rng.gen_range(0..9999), rng.gen_range(1..400));
            }
            if rng.gen_bool(0.05) {
                s.push_str(&format!(" (since {})", rng.gen_range(1950..2020)));
            }
            lines.push(s);
        }
        if rng.gen_bool(0.2) {
            lines.push("Introduction".into());
            lines.push(sentence(rng, &OTHER_TOPICS, filler, 10));
        }
        pages.push(lines.join("\n"));
    }
    pages.join(&PAGE_DELIMITER.to_string())
}

/// Write `corpus` as `manifest.csv` plus one `<id>.txt` per document under
/// `dir`. Returns the manifest path and the text directory.
pub fn write_corpus(corpus: &Corpus, dir: impl AsRef<Path>) -> io::Result<(PathBuf, PathBuf)> {
    let dir = dir.as_ref();
    let text_dir = dir.join("text");
    std::fs::create_dir_all(&text_dir)?;
    for d in corpus.documents() {
        let name = d.text_file.clone().unwrap_or_else(|| format!("{}.txt", d.id));
        write_atomic(text_dir.join(name), d.text().as_bytes())?;
    }
    let manifest = dir.join("manifest.csv");
    write_atomic(&manifest, manifest_csv(corpus.documents()).as_bytes())?;
    Ok((manifest, text_dir))
}
