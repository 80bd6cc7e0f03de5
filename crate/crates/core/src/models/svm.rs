//! Linear SVM trained by Pegasos stochastic subgradient descent.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::features::SparseVector;
use crate::seed;

pub const SVM_EPOCHS: usize = 50;

/// Below this the scale factor is folded back into the weights.
const MIN_SCALE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    weights: Vec<f64>,
    bias: f64,
    lambda: f64,
}

/// `w = scale * v`.
struct ScaledWeights {
    v: Vec<f64>,
    scale: f64,
}

impl ScaledWeights {
    fn dot(&self, x: &SparseVector) -> f64 {
        self.scale * x.dot_dense(&self.v)
    }

    fn shrink(&mut self, factor: f64) {
        if factor <= 0.0 {
            self.v.iter_mut().for_each(|w| *w = 0.0);
            self.scale = 1.0;
            return;
        }
        self.scale *= factor;
        if self.scale < MIN_SCALE {
            self.v.iter_mut().for_each(|w| *w *= self.scale);
            self.scale = 1.0;
        }
    }

    fn add(&mut self, x: &SparseVector, step: f64) {
        let s = step / self.scale;
        for (j, v) in x.iter() {
            self.v[j] += s * v;
        }
    }

    fn snapshot(&self, bias: f64, lambda: f64) -> LinearSvm {
        LinearSvm {
            weights: self.v.iter().map(|w| w * self.scale).collect(),
            bias,
            lambda,
        }
    }
}

/// Bias minimizing `sum max(0, 1 - y_i (s_i + b))` for scores `s_i`. The loss
/// is piecewise linear with kinks at `y_i - s_i`, so a minimizer is a kink;
/// among equal minima the midpoint of the flat stretch is taken.
fn best_bias(scores: &[f64], y: &[bool]) -> f64 {
    // Positives contribute (p - b) for p > b, negatives (b - q) for q < b.
    let mut p: Vec<f64> = scores.iter().zip(y).filter(|(_, &t)| t).map(|(s, _)| 1.0 - s).collect();
    let mut q: Vec<f64> = scores.iter().zip(y).filter(|(_, &t)| !t).map(|(s, _)| -1.0 - s).collect();
    if p.is_empty() || q.is_empty() {
        return if p.is_empty() { -1.0 } else { 1.0 };
    }
    p.sort_by(f64::total_cmp);
    q.sort_by(f64::total_cmp);
    let prefix = |v: &[f64]| {
        let mut acc = vec![0.0];
        for x in v {
            acc.push(acc.last().unwrap() + x);
        }
        acc
    };
    let (sp, sq) = (prefix(&p), prefix(&q));
    let loss = |b: f64| {
        let ip = p.partition_point(|&x| x <= b);
        let iq = q.partition_point(|&x| x < b);
        (sp[p.len()] - sp[ip]) - b * (p.len() - ip) as f64 + b * iq as f64 - sq[iq]
    };
    let mut best = loss(p[0]);
    let (mut lo, mut hi) = (p[0], p[0]);
    for &b in p.iter().chain(&q) {
        let l = loss(b);
        if l < best - 1e-12 * best.abs().max(1.0) {
            best = l;
            lo = b;
            hi = b;
        } else if (l - best).abs() <= 1e-12 * best.abs().max(1.0) {
            lo = f64::min(lo, b);
            hi = f64::max(hi, b);
        }
    }
    (lo + hi) / 2.0
}

impl LinearSvm {
    /// `lambda = 1 / (c * n)`, step size `1 / (lambda * t)`, [`SVM_EPOCHS`]
    /// passes over a seeded shuffle of the rows. The bias is not regularized:
    /// after each pass it is set to the exact hinge-loss minimizer for the
    /// current weights.
    pub fn fit(data: &Dataset, y: &[bool], c: f64, seed: u64) -> LinearSvm {
        LinearSvm::fit_traced(data, y, c, seed, SVM_EPOCHS).0
    }

    /// Fit for `epochs` passes, returning the model and the objective before
    /// training and after every epoch.
    pub fn fit_traced(data: &Dataset, y: &[bool], c: f64, seed: u64, epochs: usize) -> (LinearSvm, Vec<f64>) {
        let n = data.len();
        let lambda = 1.0 / (c * n as f64);
        let mut w = ScaledWeights {
            v: vec![0.0; data.dim()],
            scale: 1.0,
        };
        let mut bias = 0.0;
        let mut rng = seed::rng(seed, seed::stream::SVM_SHUFFLE);
        let mut order: Vec<usize> = (0..n).collect();
        let mut trace = vec![w.snapshot(bias, lambda).objective(data, y)];
        let mut t = 0u64;
        for _ in 0..epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                t += 1;
                let eta = 1.0 / (lambda * t as f64);
                let sign = if y[i] { 1.0 } else { -1.0 };
                let below_margin = sign * (w.dot(&data.rows()[i]) + bias) < 1.0;
                w.shrink(1.0 - 1.0 / t as f64);
                if below_margin {
                    w.add(&data.rows()[i], eta * sign);
                }
            }
            let scores: Vec<f64> = data.rows().iter().map(|x| w.dot(x)).collect();
            bias = best_bias(&scores, y);
            trace.push(w.snapshot(bias, lambda).objective(data, y));
        }
        (w.snapshot(bias, lambda), trace)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn decision(&self, x: &SparseVector) -> f64 {
        x.dot_dense(&self.weights) + self.bias
    }

    /// Positive iff the decision value is strictly positive.
    pub fn predict_positive(&self, x: &SparseVector) -> bool {
        self.decision(x) > 0.0
    }

    /// `lambda/2 * |w|^2 + mean hinge loss`.
    pub fn objective(&self, data: &Dataset, y: &[bool]) -> f64 {
        let norm2 = self.weights.iter().map(|w| w * w).sum::<f64>();
        let hinge: f64 = data
            .rows()
            .iter()
            .zip(y)
            .map(|(x, &pos)| {
                let sign = if pos { 1.0 } else { -1.0 };
                (1.0 - sign * self.decision(x)).max(0.0)
            })
            .sum();
        0.5 * self.lambda * norm2 + hinge / data.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label::{InScope as P, OutOfScope as N};

    #[test]
    fn xor_is_not_separable() {
        let d = Dataset::from_dense(
            &[vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]],
            vec![N, N, P, P],
        )
        .unwrap();
        let y = d.targets().unwrap();
        for c in [0.01, 0.1, 1.0, 10.0] {
            let m = LinearSvm::fit(&d, &y, c, 3);
            let correct = d.rows().iter().zip(&y).filter(|(x, &p)| m.predict_positive(x) == p).count();
            assert!(correct <= 3);
        }
    }

    #[test]
    fn bias_minimizes_hinge() {
        let scores = [0.3, -0.2, 1.5, -2.0, 0.1, 0.0, 0.7];
        let y = [true, false, true, false, false, true, false];
        let loss = |b: f64| -> f64 {
            scores
                .iter()
                .zip(&y)
                .map(|(s, &p)| (1.0 - if p { 1.0 } else { -1.0 } * (s + b)).max(0.0))
                .sum()
        };
        let b = best_bias(&scores, &y);
        let grid_min = (-4000..=4000).map(|k| loss(k as f64 / 1000.0)).fold(f64::INFINITY, f64::min);
        assert!(loss(b) <= grid_min + 1e-12);
        assert_eq!(best_bias(&[0.0, 1.0], &[true, true]), 1.0);
    }

    #[test]
    fn separable_line() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![if i < 10 { -1.0 - i as f64 / 10.0 } else { 1.0 + i as f64 / 10.0 }]).collect();
        let labels = (0..20).map(|i| if i < 10 { N } else { P }).collect();
        let d = Dataset::from_dense(&rows, labels).unwrap();
        let y = d.targets().unwrap();
        let (m, trace) = LinearSvm::fit_traced(&d, &y, 1.0, 0, SVM_EPOCHS);
        assert!(d.rows().iter().zip(&y).all(|(x, &p)| m.predict_positive(x) == p));
        assert_eq!(trace.len(), SVM_EPOCHS + 1);
        assert!((trace[0] - 1.0).abs() < 1e-12);
        assert!(trace.last().unwrap() <= &trace[0]);
    }
}
