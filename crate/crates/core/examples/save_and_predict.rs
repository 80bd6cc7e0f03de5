//! Fit features and a classifier, save them as JSON, reload and label new
//! documents.

use scopegate::corpus::{stratified_split, SplitRatios};
use scopegate::features::FeatureSpace;
use scopegate::models::{train, Dataset, Hyperparams, ModelKind, TrainedModel};
use scopegate::synth::scholarly_corpus;
use scopegate::{Document, Label};

pub fn run_example() -> Result<Vec<(String, Label, Label)>, Box<dyn std::error::Error>> {
    let corpus = scholarly_corpus(200, 0.3, 12);
    let split = stratified_split(&corpus, SplitRatios::default(), 2)?;
    let train_docs: Vec<&Document> = split.train.documents().iter().collect();

    let space = FeatureSpace::fit_structural(&train_docs, Some(10))?;
    let rows = train_docs.iter().map(|d| space.transform(d)).collect();
    let data = Dataset::new(rows, train_docs.iter().map(|d| d.label).collect(), space.dim())?;
    let classifier = train(ModelKind::RandomForest, &data, Hyperparams::Trees(25), 3)?;
    let model = TrainedModel {
        classifier,
        hyperparams: Hyperparams::Trees(25),
        feature_space: space,
    };

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("model.json");
    std::fs::write(&path, model.to_json("example"))?;
    let loaded = TrainedModel::from_json(&std::fs::read_to_string(&path)?)?;
    println!("saved {} bytes to {}", std::fs::metadata(&path)?.len(), path.display());
    println!("features: {:?}", loaded.feature_space.feature_names());

    let mut out = Vec::new();
    for doc in split.test.documents().iter().take(8) {
        let predicted = loaded.predict_document(doc)?;
        println!("{:<6} gold={:<12} predicted={}", doc.id, doc.label.as_str(), predicted.as_str());
        out.push((doc.id.clone(), doc.label, predicted));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
