//! CART decision trees with Gini impurity.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::features::SparseVector;
use crate::seed;

/// Number of features examined at each split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxFeatures {
    All,
    /// `ceil(sqrt(d))`.
    Sqrt,
}

impl MaxFeatures {
    fn count(self, dim: usize) -> usize {
        match self {
            MaxFeatures::All => dim,
            MaxFeatures::Sqrt => (dim as f64).sqrt().ceil() as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeParams {
    pub max_features: MaxFeatures,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_features: MaxFeatures::All,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Node {
    Leaf {
        positive: bool,
        /// Weighted class counts `[positive, negative]` of training rows.
        counts: [f64; 2],
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    dim: usize,
}

fn gini_weighted(c: [f64; 2]) -> f64 {
    let n = c[0] + c[1];
    if n <= 0.0 {
        return 0.0;
    }
    n - (c[0] * c[0] + c[1] * c[1]) / n
}

fn midpoint(a: f64, b: f64) -> f64 {
    let m = a + (b - a) / 2.0;
    if m >= b {
        a
    } else {
        m
    }
}

struct Candidate {
    feature: usize,
    threshold: f64,
    score: f64,
}

/// Nonzero entry of a row inside the node being split.
#[derive(Clone, Copy)]
struct Entry {
    feature: usize,
    value: f64,
    positive: bool,
    weight: f64,
}

struct Builder<'a> {
    rows: &'a [SparseVector],
    y: &'a [bool],
    weights: &'a [f64],
    dim: usize,
    max_features: usize,
    sample_features: bool,
    rng: Option<ChaCha8Rng>,
    perm: Vec<usize>,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn class_counts(&self, members: &[usize]) -> [f64; 2] {
        let mut c = [0.0; 2];
        for &r in members {
            c[if self.y[r] { 0 } else { 1 }] += self.weights[r];
        }
        c
    }

    fn leaf(counts: [f64; 2]) -> Node {
        Node::Leaf {
            positive: counts[0] > counts[1],
            counts,
        }
    }

    fn build(&mut self, members: Vec<usize>) {
        // (node slot, members)
        let mut stack = vec![(0usize, members)];
        self.nodes.push(Builder::leaf([0.0; 2]));
        while let Some((slot, members)) = stack.pop() {
            let counts = self.class_counts(&members);
            let total = counts[0] + counts[1];
            if counts[0] == 0.0 || counts[1] == 0.0 || total < 2.0 {
                self.nodes[slot] = Builder::leaf(counts);
                continue;
            }
            let Some(best) = self.best_split(&members, counts) else {
                self.nodes[slot] = Builder::leaf(counts);
                continue;
            };
            let (l, r): (Vec<usize>, Vec<usize>) = members
                .iter()
                .partition(|&&m| self.rows[m].get(best.feature) <= best.threshold);
            let left = self.nodes.len();
            self.nodes.push(Builder::leaf([0.0; 2]));
            let right = self.nodes.len();
            self.nodes.push(Builder::leaf([0.0; 2]));
            self.nodes[slot] = Node::Split {
                feature: best.feature,
                threshold: best.threshold,
                left,
                right,
            };
            stack.push((right, r));
            stack.push((left, l));
        }
    }

    fn best_split(&mut self, members: &[usize], totals: [f64; 2]) -> Option<Candidate> {
        let mut entries: Vec<Entry> = members
            .iter()
            .flat_map(|&m| {
                let (positive, weight) = (self.y[m], self.weights[m]);
                self.rows[m].iter().map(move |(feature, value)| Entry {
                    feature,
                    value,
                    positive,
                    weight,
                })
            })
            .collect();
        entries.sort_unstable_by(|a, b| a.feature.cmp(&b.feature).then(a.value.total_cmp(&b.value)));

        // Features with a nonzero value somewhere in the node, with their
        // entry ranges. Anything else is constant zero here.
        let mut groups: Vec<(usize, usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=entries.len() {
            if i == entries.len() || entries[i].feature != entries[start].feature {
                groups.push((entries[start].feature, start, i));
                start = i;
            }
        }

        let parent = gini_weighted(totals);
        let mut best: Option<Candidate> = None;
        let consider = |feature: usize, best: &mut Option<Candidate>| -> bool {
            let Ok(g) = groups.binary_search_by_key(&feature, |g| g.0) else {
                return false;
            };
            let (_, s, e) = groups[g];
            match evaluate_feature(&entries[s..e], totals, parent) {
                Some((threshold, score)) => {
                    if best.as_ref().map_or(true, |b| score > b.score) {
                        *best = Some(Candidate {
                            feature,
                            threshold,
                            score,
                        });
                    }
                    true
                }
                None => false,
            }
        };

        if self.sample_features {
            let rng = self.rng.as_mut().expect("sampling tree has an rng");
            let mut valid = false;
            for i in 0..self.dim {
                let j = rng.gen_range(i..self.dim);
                self.perm.swap(i, j);
                valid |= consider(self.perm[i], &mut best);
                if i + 1 >= self.max_features && valid {
                    break;
                }
            }
        } else {
            for &(feature, _, _) in &groups {
                consider(feature, &mut best);
            }
        }
        best
    }
}

/// Best threshold on one feature given the node's nonzero entries sorted by
/// value. Rows absent from `entries` have value zero. Returns
/// `(threshold, impurity decrease)` or `None` if the feature is constant.
fn evaluate_feature(entries: &[Entry], totals: [f64; 2], parent: f64) -> Option<(f64, f64)> {
    let mut nonzero = [0.0; 2];
    for e in entries {
        nonzero[if e.positive { 0 } else { 1 }] += e.weight;
    }
    let zeros = [totals[0] - nonzero[0], totals[1] - nonzero[1]];
    let has_zeros = zeros[0] + zeros[1] > 1e-12;

    // Distinct values in ascending order with their class weights.
    let mut groups: Vec<(f64, [f64; 2])> = Vec::new();
    let mut push = |v: f64, c: [f64; 2]| match groups.last_mut() {
        Some(last) if last.0 == v => {
            last.1[0] += c[0];
            last.1[1] += c[1];
        }
        _ => groups.push((v, c)),
    };
    let mut zero_done = !has_zeros;
    for e in entries {
        if !zero_done && e.value > 0.0 {
            push(0.0, zeros);
            zero_done = true;
        }
        let mut c = [0.0; 2];
        c[if e.positive { 0 } else { 1 }] = e.weight;
        push(e.value, c);
    }
    if !zero_done {
        push(0.0, zeros);
    }
    if groups.len() < 2 {
        return None;
    }

    let mut left = [0.0; 2];
    let mut best: Option<(f64, f64)> = None;
    for w in groups.windows(2) {
        left[0] += w[0].1[0];
        left[1] += w[0].1[1];
        let right = [totals[0] - left[0], totals[1] - left[1]];
        let score = parent - gini_weighted(left) - gini_weighted(right);
        if best.map_or(true, |b| score > b.1) {
            best = Some((midpoint(w[0].0, w[1].0), score));
        }
    }
    best
}

impl DecisionTree {
    /// Fit on all rows with unit weight.
    pub fn fit(data: &Dataset, y: &[bool], params: &TreeParams, seed: u64) -> DecisionTree {
        let weights = vec![1.0; data.len()];
        DecisionTree::fit_weighted(data, y, &weights, params, seed::rng(seed, seed::stream::MODEL))
    }

    /// Fit with per-row integer multiplicities (bootstrap counts). Rows with
    /// zero weight are ignored. `rng` drives feature sampling.
    pub fn fit_weighted(
        data: &Dataset,
        y: &[bool],
        weights: &[f64],
        params: &TreeParams,
        rng: ChaCha8Rng,
    ) -> DecisionTree {
        let dim = data.dim();
        let max_features = params.max_features.count(dim).max(1);
        let sample_features = max_features < dim;
        let mut b = Builder {
            rows: data.rows(),
            y,
            weights,
            dim,
            max_features,
            sample_features,
            rng: sample_features.then_some(rng),
            perm: (0..dim).collect(),
            nodes: Vec::new(),
        };
        let members: Vec<usize> = (0..data.len()).filter(|&i| weights[i] > 0.0).collect();
        b.build(members);
        DecisionTree { nodes: b.nodes, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn predict_positive(&self, x: &SparseVector) -> bool {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { positive, .. } => return *positive,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if x.get(*feature) <= *threshold { *left } else { *right },
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        fn depth(nodes: &[Node], i: usize) -> usize {
            match &nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + depth(nodes, *left).max(depth(nodes, *right)),
            }
        }
        depth(&self.nodes, 0)
    }

    /// Weighted class counts of every leaf.
    pub fn leaf_counts(&self) -> Vec<[f64; 2]> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Leaf { counts, .. } => Some(*counts),
                _ => None,
            })
            .collect()
    }

    /// Root split `(feature, threshold)`, if the root is not a leaf.
    pub fn root_split(&self) -> Option<(usize, f64)> {
        match &self.nodes[0] {
            Node::Split { feature, threshold, .. } => Some((*feature, *threshold)),
            Node::Leaf { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label::{InScope as P, OutOfScope as N};

    #[test]
    fn separable_line_single_split() {
        let d = Dataset::from_dense(&[vec![-1.0], vec![-3.0], vec![1.0], vec![4.0]], vec![N, N, P, P]).unwrap();
        let y = d.targets().unwrap();
        let t = DecisionTree::fit(&d, &y, &TreeParams::default(), 0);
        let (f, thr) = t.root_split().unwrap();
        assert_eq!(f, 0);
        assert!(thr > -1.0 && thr < 1.0);
        assert_eq!(t.node_count(), 3);
        for (row, &pos) in d.rows().iter().zip(&y) {
            assert_eq!(t.predict_positive(row), pos);
        }
    }

    #[test]
    fn xor_is_learned() {
        let d = Dataset::from_dense(
            &[vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]],
            vec![N, N, P, P],
        )
        .unwrap();
        let y = d.targets().unwrap();
        let t = DecisionTree::fit(&d, &y, &TreeParams::default(), 0);
        assert!(d.rows().iter().zip(&y).all(|(r, &p)| t.predict_positive(r) == p));
        assert_eq!(t.depth(), 2);
    }

    #[test]
    fn negative_values_and_zero_group() {
        // Sentinel -1 below zero, positives above.
        let d = Dataset::from_dense(&[vec![-1.0], vec![0.0], vec![0.5], vec![0.7]], vec![N, N, P, P]).unwrap();
        let y = d.targets().unwrap();
        let t = DecisionTree::fit(&d, &y, &TreeParams::default(), 0);
        assert_eq!(t.root_split().unwrap().1, 0.25);
    }

    #[test]
    fn identical_rows_stop_growth() {
        let d = Dataset::from_dense(&[vec![1.0], vec![1.0], vec![1.0]], vec![N, P, N]).unwrap();
        let y = d.targets().unwrap();
        let t = DecisionTree::fit(&d, &y, &TreeParams::default(), 0);
        assert_eq!(t.node_count(), 1);
        assert!(!t.predict_positive(&SparseVector::from_dense(&[1.0])));
    }
}
