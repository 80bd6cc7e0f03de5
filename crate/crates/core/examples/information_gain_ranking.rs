//! Rank vocabulary terms and structural slots by information gain.

use scopegate::features::{
    bow_tokens, build_vocabulary, extract_structural, rank_structural, rank_terms, select_top_n, FeatureRanking,
};
use scopegate::synth::scholarly_corpus;
use scopegate::textproc::{PortionMode, Stopwords};
use scopegate::Label;

fn show(title: &str, ranking: &FeatureRanking, n: usize) {
    println!("{title}");
    for e in ranking.entries.iter().take(n) {
        let threshold = e.threshold.map(|t| format!(" (split at {t:.4})")).unwrap_or_default();
        println!("  {:<22} {:.4} bits{threshold}", e.feature, e.ig_bits);
    }
}

pub fn run_example() -> Result<(FeatureRanking, FeatureRanking), Box<dyn std::error::Error>> {
    let corpus = scholarly_corpus(120, 0.3, 4);
    let docs = corpus.documents();
    let labels: Vec<Label> = docs.iter().map(|d| d.label).collect();

    let stopwords = Stopwords::default();
    let tokens: Vec<_> = docs.iter().map(|d| bow_tokens(d, PortionMode::All, &stopwords)).collect();
    let vocab = build_vocabulary(&tokens, 5)?;
    let terms = rank_terms(&tokens, &labels, &vocab)?;
    show(&format!("top terms of {}:", vocab.len()), &terms, 8);

    let rows: Vec<_> = docs.iter().map(extract_structural).collect();
    let structural = rank_structural(&rows, &labels)?;
    show("top structural features:", &structural, 8);
    println!("FS-Str:10 keeps {:?}", select_top_n(&structural, 10));
    Ok((terms, structural))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
