//! Bagged CART forests with majority voting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{DecisionTree, MaxFeatures, TreeParams};
use super::Dataset;
use crate::features::SparseVector;
use crate::seed;

#[derive(Debug, Clone, PartialEq)]
pub struct ForestParams {
    pub n_trees: usize,
    /// Draw a bootstrap sample of the training-set size for each tree.
    pub bootstrap: bool,
    pub max_features: MaxFeatures,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 25,
            bootstrap: true,
            max_features: MaxFeatures::Sqrt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
    dim: usize,
}

impl RandomForest {
    /// Tree `t` is grown from the seed derived from `(seed, t)`, so training
    /// order does not matter and trees can be built in parallel.
    pub fn fit(data: &Dataset, y: &[bool], params: &ForestParams, seed: u64) -> RandomForest {
        let tree_params = TreeParams {
            max_features: params.max_features,
        };
        let n = data.len();
        let trees = (0..params.n_trees)
            .into_par_iter()
            .map(|t| {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed::derive_indexed(seed, seed::stream::FOREST_TREE, t as u64));
                let weights = if params.bootstrap {
                    let mut w = vec![0.0; n];
                    for _ in 0..n {
                        w[rng.gen_range(0..n)] += 1.0;
                    }
                    w
                } else {
                    vec![1.0; n]
                };
                DecisionTree::fit_weighted(data, y, &weights, &tree_params, rng)
            })
            .collect();
        RandomForest { trees, dim: data.dim() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }

    /// The forest made of the first `n` trees.
    pub fn truncated(&self, n: usize) -> RandomForest {
        RandomForest {
            trees: self.trees[..n.min(self.trees.len())].to_vec(),
            dim: self.dim,
        }
    }

    /// `(positive votes, negative votes)`.
    pub fn votes(&self, x: &SparseVector) -> (usize, usize) {
        let pos = self.trees.iter().filter(|t| t.predict_positive(x)).count();
        (pos, self.trees.len() - pos)
    }

    /// Majority vote; an even split goes to the negative class.
    pub fn predict_positive(&self, x: &SparseVector) -> bool {
        let (pos, neg) = self.votes(x);
        pos > neg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label::{InScope as P, OutOfScope as N};

    fn data() -> Dataset {
        let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64, (i % 7) as f64, ((i * 3) % 5) as f64]).collect();
        let labels = (0..40).map(|i| if i >= 20 { P } else { N }).collect();
        Dataset::from_dense(&rows, labels).unwrap()
    }

    #[test]
    fn prefix_property() {
        let d = data();
        let y = d.targets().unwrap();
        let big = RandomForest::fit(&d, &y, &ForestParams { n_trees: 6, ..Default::default() }, 9);
        let small = RandomForest::fit(&d, &y, &ForestParams { n_trees: 4, ..Default::default() }, 9);
        assert_eq!(big.truncated(4), small);
    }

    #[test]
    fn even_vote_is_negative() {
        let d = Dataset::from_dense(&[vec![0.0], vec![1.0]], vec![N, P]).unwrap();
        let y = d.targets().unwrap();
        let yes = DecisionTree::fit(&d, &y, &TreeParams::default(), 0);
        let flipped = [true, false];
        let no = DecisionTree::fit(&d, &flipped, &TreeParams::default(), 0);
        let f = RandomForest {
            trees: vec![yes.clone(), no.clone(), yes, no],
            dim: 1,
        };
        let x = SparseVector::from_dense(&[1.0]);
        assert_eq!(f.votes(&x), (2, 2));
        assert!(!f.predict_positive(&x));
    }
}
