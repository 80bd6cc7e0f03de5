//! Structural features of one research-article-like and one notice-like
//! document.

use scopegate::features::{extract_structural, StructuralFeatures, STRUCTURAL_NAMES};
use scopegate::synth::scholarly_corpus;

pub fn run_example() -> Vec<StructuralFeatures> {
    let corpus = scholarly_corpus(4, 0.5, 3);
    let article = &corpus.documents()[0];
    let notice = &corpus.documents()[3];
    let rows = vec![extract_structural(article), extract_structural(notice)];

    println!("{:<22} {:>12} {:>12}", "feature", article.id, notice.id);
    for (j, name) in STRUCTURAL_NAMES.iter().enumerate() {
        println!("{name:<22} {:>12.4} {:>12.4}", rows[0].values()[j], rows[1].values()[j]);
    }
    rows
}

#[allow(dead_code)]
fn main() {
    run_example();
}
