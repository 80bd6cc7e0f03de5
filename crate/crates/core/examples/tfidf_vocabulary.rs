//! Build a pruned vocabulary from training documents and vectorize with
//! each weighting scheme.

use scopegate::features::{build_vocabulary, vectorize, WeightingScheme};
use scopegate::textproc::{preprocess, tokenize, Stopwords, TokenStream};

pub fn run_example() -> Result<usize, Box<dyn std::error::Error>> {
    let texts = [
        "soil samples were measured at each site",
        "soil moisture and soil carbon were measured",
        "the survey measured habitat and soil",
        "habitat survey of the river site",
        "river samples measured for carbon",
        "parking permits for the river site",
    ];
    let stopwords = Stopwords::default();
    let docs: Vec<TokenStream> = texts.iter().map(|t| preprocess(&tokenize(t), &stopwords)).collect();

    let vocab = build_vocabulary(&docs, 2)?;
    println!("{} terms with df >= 2:", vocab.len());
    for (i, term) in vocab.terms().iter().enumerate() {
        println!("  {term:<10} df={} idf={:.3}", vocab.doc_freq(i), vocab.idf(i));
    }

    for scheme in [WeightingScheme::Tf, WeightingScheme::TfIdf] {
        let v = vectorize(&docs[1], &vocab, scheme);
        let shown: Vec<String> = v.iter().map(|(i, w)| format!("{}={w:.3}", vocab.term(i))).collect();
        println!("{:>5}: {}", scheme.to_string(), shown.join(" "));
    }
    Ok(vocab.len())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
