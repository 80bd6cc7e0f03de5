//! Tokenize a short text, cut a portion, drop stopwords and stem.

use scopegate::textproc::{porter_stem, preprocess, take_portion, tokenize, PortionMode, Stopwords};

pub fn run_example() -> Vec<String> {
    let text = "In this paper we study the running times of connected networks. \
                Results: networks converge quickly, and the conclusions follow.";
    let raw = tokenize(text);
    println!("tokens ({}): {:?}", raw.len(), raw.tokens);

    let edges = take_portion(&raw, PortionMode::FirstLast(4));
    println!("first-last-4: {:?}", edges.tokens);

    let stopwords = Stopwords::default();
    let processed = preprocess(&raw, &stopwords);
    println!("preprocessed: {:?}", processed.tokens);

    for w in ["caresses", "ponies", "relational", "generalizations"] {
        println!("{w:>16} -> {}", porter_stem(w));
    }
    processed.tokens
}

#[allow(dead_code)]
fn main() {
    run_example();
}
