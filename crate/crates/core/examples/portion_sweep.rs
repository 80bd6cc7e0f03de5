//! Sweep the portion size and print per-seed rows as CSV plus a summary.

use scopegate::eval::{sweep, ExperimentPlan, FeatureAxis, SweepAxis, SweepReport};
use scopegate::models::ModelKind;
use scopegate::synth::{planted_corpus, PlantedSpec};

pub fn run_example() -> Result<SweepReport, Box<dyn std::error::Error>> {
    let spec = PlantedSpec {
        n_docs: 240,
        body_tokens: 1000,
        ..PlantedSpec::default()
    };
    let corpus = planted_corpus(&spec, 21);
    let base = ExperimentPlan::new(FeatureAxis::BowAll, ModelKind::DecisionTree);
    let report = sweep(&corpus, &SweepAxis::Portion(vec![50, 100, 300]), &base)?;
    print!("{}", report.to_csv(None));
    print!("{}", report.summary());
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
