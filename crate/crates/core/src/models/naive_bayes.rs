//! Gaussian and multinomial naive Bayes for two classes.
//!
//! Class index 0 is the positive (in-scope) class, 1 the negative class.

use serde::{Deserialize, Serialize};

use super::{Dataset, ModelError, Result};
use crate::features::SparseVector;

fn softmax2(a: f64, b: f64) -> [f64; 2] {
    let m = a.max(b);
    let (ea, eb) = ((a - m).exp(), (b - m).exp());
    let z = ea + eb;
    [ea / z, eb / z]
}

fn class_index(positive: bool) -> usize {
    if positive {
        0
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    log_prior: [f64; 2],
    mean: [Vec<f64>; 2],
    var: [Vec<f64>; 2],
    /// Log-likelihood of the all-zero vector per class.
    zero_loglik: [f64; 2],
    dim: usize,
}

impl GaussianNb {
    /// Per-class means and variances; every variance is raised by
    /// `1e-9 * (largest per-feature variance over all rows)`.
    pub fn fit(data: &Dataset, y: &[bool]) -> GaussianNb {
        let d = data.dim();
        let mut n = [0.0f64; 2];
        let mut sum = [vec![0.0; d], vec![0.0; d]];
        for (row, &pos) in data.rows().iter().zip(y) {
            let c = class_index(pos);
            n[c] += 1.0;
            for (j, v) in row.iter() {
                sum[c][j] += v;
            }
        }
        let mean: [Vec<f64>; 2] = [0, 1].map(|c| sum[c].iter().map(|s| s / n[c]).collect());

        // Second pass over deviations keeps the variance numerically stable.
        let mut sq = [vec![0.0; d], vec![0.0; d]];
        let mut all_mean = vec![0.0; d];
        for j in 0..d {
            all_mean[j] = (sum[0][j] + sum[1][j]) / (n[0] + n[1]);
        }
        let mut all_sq = vec![0.0; d];
        let mut nonzero_count = [vec![0.0; d], vec![0.0; d]];
        for (row, &pos) in data.rows().iter().zip(y) {
            let c = class_index(pos);
            for (j, v) in row.iter() {
                sq[c][j] += (v - mean[c][j]).powi(2);
                all_sq[j] += (v - all_mean[j]).powi(2);
                nonzero_count[c][j] += 1.0;
            }
        }
        // Implicit zeros contribute mean^2 each.
        for j in 0..d {
            for c in 0..2 {
                sq[c][j] += (n[c] - nonzero_count[c][j]) * mean[c][j].powi(2);
            }
            let zeros = n[0] + n[1] - nonzero_count[0][j] - nonzero_count[1][j];
            all_sq[j] += zeros * all_mean[j].powi(2);
        }
        let max_var = all_sq.iter().map(|s| s / (n[0] + n[1])).fold(0.0, f64::max);
        let epsilon = if max_var > 0.0 { 1e-9 * max_var } else { 1e-9 };
        let var: [Vec<f64>; 2] = [0, 1].map(|c| sq[c].iter().map(|s| s / n[c] + epsilon).collect());

        let total = n[0] + n[1];
        let log_prior = [(n[0] / total).ln(), (n[1] / total).ln()];
        let zero_loglik = [0, 1].map(|c| {
            (0..d)
                .map(|j| -0.5 * (2.0 * std::f64::consts::PI * var[c][j]).ln() - mean[c][j].powi(2) / (2.0 * var[c][j]))
                .sum()
        });
        GaussianNb {
            log_prior,
            mean,
            var,
            zero_loglik,
            dim: d,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn joint_log(&self, x: &SparseVector) -> [f64; 2] {
        [0, 1].map(|c| {
            let mut ll = self.log_prior[c] + self.zero_loglik[c];
            for (j, v) in x.iter() {
                let (m, s2) = (self.mean[c][j], self.var[c][j]);
                ll += (m * m - (v - m).powi(2)) / (2.0 * s2);
            }
            ll
        })
    }

    /// Posterior `[P(in scope | x), P(out of scope | x)]`.
    pub fn posterior(&self, x: &SparseVector) -> [f64; 2] {
        let j = self.joint_log(x);
        softmax2(j[0], j[1])
    }

    pub fn predict_positive(&self, x: &SparseVector) -> bool {
        let j = self.joint_log(x);
        j[0] > j[1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultinomialNb {
    log_prior: [f64; 2],
    log_theta: [Vec<f64>; 2],
    dim: usize,
}

impl MultinomialNb {
    /// Laplace (add-one) smoothed feature likelihoods over non-negative
    /// feature weights.
    pub fn fit(data: &Dataset, y: &[bool]) -> Result<MultinomialNb> {
        let d = data.dim();
        let mut n = [0.0f64; 2];
        let mut count = [vec![0.0; d], vec![0.0; d]];
        for (i, (row, &pos)) in data.rows().iter().zip(y).enumerate() {
            let c = class_index(pos);
            n[c] += 1.0;
            for (j, v) in row.iter() {
                if v < 0.0 {
                    return Err(ModelError::NegativeWeightForMnb { row: i, column: j });
                }
                count[c][j] += v;
            }
        }
        let log_theta = [0, 1].map(|c| {
            let total: f64 = count[c].iter().sum::<f64>() + d as f64;
            count[c].iter().map(|x| ((x + 1.0) / total).ln()).collect()
        });
        let total = n[0] + n[1];
        Ok(MultinomialNb {
            log_prior: [(n[0] / total).ln(), (n[1] / total).ln()],
            log_theta,
            dim: d,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn joint_log(&self, x: &SparseVector) -> [f64; 2] {
        [0, 1].map(|c| self.log_prior[c] + x.iter().map(|(j, v)| v * self.log_theta[c][j]).sum::<f64>())
    }

    /// Posterior `[P(in scope | x), P(out of scope | x)]`.
    pub fn posterior(&self, x: &SparseVector) -> [f64; 2] {
        let j = self.joint_log(x);
        softmax2(j[0], j[1])
    }

    pub fn predict_positive(&self, x: &SparseVector) -> bool {
        let j = self.joint_log(x);
        j[0] > j[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label::{InScope as P, OutOfScope as N};

    #[test]
    fn gnb_matches_dense_formula() {
        let rows = vec![vec![0.0, 1.0], vec![2.0, 0.0], vec![5.0, 3.0], vec![6.0, 0.0], vec![7.0, 4.0]];
        let d = Dataset::from_dense(&rows, vec![N, N, P, P, P]).unwrap();
        let y = d.targets().unwrap();
        let m = GaussianNb::fit(&d, &y);
        assert!((m.mean[0][0] - 6.0).abs() < 1e-12);
        assert!((m.var[1][0] - 1.0).abs() < 1e-6);
        let x = SparseVector::from_dense(&[3.0, 0.0]);
        // Dense log-likelihood for comparison.
        let dense = |c: usize| -> f64 {
            m.log_prior[c]
                + (0..2)
                    .map(|j| {
                        let (mu, s2) = (m.mean[c][j], m.var[c][j]);
                        -0.5 * (2.0 * std::f64::consts::PI * s2).ln() - (x.get(j) - mu).powi(2) / (2.0 * s2)
                    })
                    .sum::<f64>()
        };
        let j = m.joint_log(&x);
        assert!((j[0] - dense(0)).abs() < 1e-9);
        assert!((j[1] - dense(1)).abs() < 1e-9);
    }

    #[test]
    fn mnb_prior_dominates_equal_likelihoods() {
        let rows = vec![vec![1.0, 1.0]; 4];
        let d = Dataset::from_dense(&rows, vec![P, P, P, N]).unwrap();
        let m = MultinomialNb::fit(&d, &d.targets().unwrap()).unwrap();
        let x = SparseVector::from_dense(&[2.0, 1.0]);
        assert!(m.predict_positive(&x));
        let p = m.posterior(&x);
        assert!((p[0] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn mnb_rejects_negative_weights() {
        let d = Dataset::from_dense(&[vec![1.0, -1.0], vec![1.0, 0.0]], vec![P, N]).unwrap();
        assert_eq!(
            MultinomialNb::fit(&d, &d.targets().unwrap()),
            Err(ModelError::NegativeWeightForMnb { row: 0, column: 1 })
        );
    }
}
