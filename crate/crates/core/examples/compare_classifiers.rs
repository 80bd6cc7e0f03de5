//! Train every classifier family on the same bag-of-words features and score
//! them on a held-out split.

use scopegate::corpus::{stratified_split, SplitRatios};
use scopegate::eval::prf1;
use scopegate::features::{BowSettings, FeatureSpace};
use scopegate::models::{train, Dataset, Hyperparams, ModelKind};
use scopegate::synth::{planted_corpus, PlantedSpec};
use scopegate::textproc::PortionMode;
use scopegate::Document;

fn dataset(space: &FeatureSpace, docs: &[&Document]) -> Result<Dataset, Box<dyn std::error::Error>> {
    let rows = docs.iter().map(|d| space.transform(d)).collect();
    Ok(Dataset::new(rows, docs.iter().map(|d| d.label).collect(), space.dim())?)
}

pub fn run_example() -> Result<Vec<(ModelKind, f64)>, Box<dyn std::error::Error>> {
    let spec = PlantedSpec {
        n_docs: 300,
        body_tokens: 800,
        ..PlantedSpec::default()
    };
    let corpus = planted_corpus(&spec, 5);
    let split = stratified_split(&corpus, SplitRatios::default(), 1)?;
    let train_docs: Vec<&Document> = split.train.documents().iter().collect();
    let test_docs: Vec<&Document> = split.test.documents().iter().collect();

    let settings = BowSettings {
        portion: PortionMode::FirstLast(100),
        ..BowSettings::default()
    };
    let space = FeatureSpace::fit_bow(&train_docs, &settings)?;
    let train_data = dataset(&space, &train_docs)?;
    let test_data = dataset(&space, &test_docs)?;
    println!("{} training rows, {} features", train_data.len(), space.dim());

    let mut scores = Vec::new();
    for kind in ModelKind::ALL {
        let hp = match kind {
            ModelKind::LinearSvm => Hyperparams::SvmC(1.0),
            ModelKind::RandomForest => Hyperparams::Trees(25),
            _ => Hyperparams::None,
        };
        let model = train(kind, &train_data, hp, 7)?;
        let m = prf1(&model.confusion(&test_data)?);
        println!("{kind:<4} P={:.2} R={:.2} F1={:.2}", m.precision, m.recall, m.f1);
        scores.push((kind, m.f1));
    }
    Ok(scores)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
