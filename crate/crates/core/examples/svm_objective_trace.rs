//! Per-epoch primal objective of the Pegasos linear SVM on a noisy 2-D set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scopegate::models::{Dataset, LinearSvm};
use scopegate::Label;

pub fn run_example() -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for _ in 0..300 {
        let positive = rng.gen_bool(0.4);
        let centre = if positive { 1.0 } else { -1.0 };
        rows.push(vec![centre + rng.gen_range(-1.2..1.2), centre + rng.gen_range(-1.2..1.2)]);
        labels.push(if positive { Label::InScope } else { Label::OutOfScope });
    }
    let data = Dataset::from_dense(&rows, labels)?;
    let y = data.targets()?;

    let (svm, trace) = LinearSvm::fit_traced(&data, &y, 1.0, 11, 20);
    for (epoch, obj) in trace.iter().enumerate() {
        println!("epoch {epoch:>2}  objective {obj:.5}");
    }
    let correct = data.rows().iter().zip(&y).filter(|(x, &t)| svm.predict_positive(x) == t).count();
    println!("w = {:?}, b = {:.4}, training accuracy {:.3}", svm.weights(), svm.bias(), correct as f64 / y.len() as f64);
    Ok(trace)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
