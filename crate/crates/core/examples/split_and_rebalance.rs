//! Stratified 60/20/20 split followed by rebalancing the training part to
//! two negatives per positive, with and without a pool of extra positives.

use scopegate::corpus::{rebalance_train, stratified_split, Corpus, SplitRatios, TrainSet};
use scopegate::synth::scholarly_corpus;

pub fn run_example() -> Result<Vec<TrainSet>, Box<dyn std::error::Error>> {
    let corpus = scholarly_corpus(300, 0.15, 8);
    let split = stratified_split(&corpus, SplitRatios::default(), 1)?;
    for (name, part) in [("train", &split.train), ("dev", &split.dev), ("test", &split.test)] {
        let c = part.class_counts();
        println!("{name:<5} {:>4} negative {:>4} positive", c.negative, c.positive);
    }

    // Pool ids must not collide with the corpus.
    let extra = scholarly_corpus(40, 1.0, 99);
    let pool_docs = extra
        .documents()
        .iter()
        .map(|d| {
            let mut d = d.clone();
            d.id = format!("pool-{}", d.id);
            d
        })
        .collect();
    let pool = Corpus::new("pool", pool_docs)?;
    let empty = Corpus::new("none", Vec::new())?;

    let mut out = Vec::new();
    for (name, p) in [("oversampling only", &empty), ("with pool", &pool)] {
        let t = rebalance_train(&split, p, 2.0, 1)?;
        let c = t.class_counts();
        println!(
            "train-2 {name:<17} {:>4} negative {:>4} positive (pool {}, oversampled {})",
            c.negative, c.positive, t.added_from_pool, t.oversampled
        );
        out.push(t);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
