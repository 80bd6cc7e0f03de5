use scopegate::corpus::{stratified_split, SplitRatios};
use scopegate::features::{BowSettings, FeatureSpace};
use scopegate::models::{train, Dataset, Hyperparams, LinearSvm, ModelKind, TrainedModel, SVM_EPOCHS};
use scopegate::synth::{planted_corpus, PlantedSpec};
use scopegate::{Document, Label};

fn small_corpus() -> scopegate::Corpus {
    planted_corpus(
        &PlantedSpec {
            n_docs: 120,
            body_tokens: 300,
            ..PlantedSpec::default()
        },
        8,
    )
}

#[test]
fn pegasos_objective_ends_below_start() {
    let corpus = small_corpus();
    let docs: Vec<&Document> = corpus.documents().iter().collect();
    let space = FeatureSpace::fit_bow(&docs, &BowSettings::default()).unwrap();
    let data = Dataset::new(
        docs.iter().map(|d| space.transform(d)).collect(),
        docs.iter().map(|d| d.label).collect(),
        space.dim(),
    )
    .unwrap();
    let y = data.targets().unwrap();
    for c in [0.05, 1.0, 10.0] {
        let (m, trace) = LinearSvm::fit_traced(&data, &y, c, 5, SVM_EPOCHS);
        assert_eq!(trace.len(), SVM_EPOCHS + 1);
        assert!(trace.last().unwrap() <= &trace[0], "C={c}: {trace:?}");
        assert!((m.objective(&data, &y) - trace.last().unwrap()).abs() < 1e-12);
    }
}

#[test]
fn every_model_survives_json() {
    let corpus = small_corpus();
    let split = stratified_split(&corpus, SplitRatios::default(), 1).unwrap();
    let train_docs: Vec<&Document> = split.train.documents().iter().collect();
    let space = FeatureSpace::fit_bow(&train_docs, &BowSettings::default()).unwrap();
    let data = Dataset::new(
        train_docs.iter().map(|d| space.transform(d)).collect(),
        train_docs.iter().map(|d| d.label).collect(),
        space.dim(),
    )
    .unwrap();
    for kind in ModelKind::ALL {
        let hp = match kind {
            ModelKind::LinearSvm => Hyperparams::SvmC(1.0),
            ModelKind::RandomForest => Hyperparams::Trees(7),
            _ => Hyperparams::None,
        };
        let model = TrainedModel {
            classifier: train(kind, &data, hp, 3).unwrap(),
            hyperparams: hp,
            feature_space: space.clone(),
        };
        let json = model.to_json("abc");
        assert!(json.contains("\"config_fingerprint\":\"abc\""));
        let back = TrainedModel::from_json(&json).unwrap();
        assert_eq!(back, model, "{kind}");
        for d in split.test.documents() {
            assert_eq!(back.predict_document(d).unwrap(), model.predict_document(d).unwrap());
        }
    }
}

#[test]
fn rejects_foreign_json() {
    assert!(TrainedModel::from_json("{\"format\":\"other\",\"version\":1}").is_err());
    assert!(TrainedModel::from_json("not json").is_err());
}

#[test]
fn unlabeled_rows_cannot_train() {
    let data = Dataset::from_dense(&[vec![1.0], vec![2.0]], vec![Label::InScope, Label::Unlabeled]).unwrap();
    assert!(train(ModelKind::DecisionTree, &data, Hyperparams::None, 0).is_err());
}
