//! Bag-of-words over the first and last 100 words versus the full text, on a
//! synthetic corpus whose class signal sits only at the document edges.

use std::time::Instant;

use scopegate::eval::{run_experiment, summary_table, EvalReport, ExperimentPlan, FeatureAxis};
use scopegate::models::ModelKind;
use scopegate::synth::{planted_corpus, PlantedSpec};
use scopegate::textproc::PortionMode;

pub fn run_example() -> Result<(EvalReport, EvalReport), Box<dyn std::error::Error>> {
    let corpus = planted_corpus(&PlantedSpec::default(), 42);
    let run = |axis| run_experiment(&corpus, &ExperimentPlan::new(axis, ModelKind::RandomForest));
    let start = Instant::now();
    let edges = run(FeatureAxis::BowPortion(PortionMode::FirstLast(100)))?;
    let full = run(FeatureAxis::BowAll)?;
    print!(
        "{}",
        summary_table([("BoW-PD first-last-100".to_string(), &edges), ("BoW-all".to_string(), &full)])
    );
    println!("({:.1}s)", start.elapsed().as_secs_f64());
    Ok((edges, full))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
