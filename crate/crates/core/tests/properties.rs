use proptest::prelude::*;

use scopegate::corpus::{rebalance_train, stratified_split, Corpus, Document, Label, SplitRatios};
use scopegate::features::{information_gain, vectorize, build_vocabulary, FeatureColumn, WeightingScheme};
use scopegate::models::{Dataset, DecisionTree, ForestParams, GaussianNb, MaxFeatures, RandomForest, TreeParams};
use scopegate::textproc::{take_portion, tokenize, PortionMode, TokenStream};
use scopegate::SparseVector;

fn corpus(pos: usize, neg: usize) -> Corpus {
    let docs = (0..pos + neg)
        .map(|i| {
            let label = if i < pos { Label::InScope } else { Label::OutOfScope };
            Document::from_text(format!("d{i}"), label, "x", None, 1.0)
        })
        .collect();
    Corpus::new("p", docs).unwrap()
}

fn labels(y: &[bool]) -> Vec<Label> {
    y.iter().map(|&p| if p { Label::InScope } else { Label::OutOfScope }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_partitions_each_class(pos in 1usize..60, neg in 1usize..200, seed in any::<u64>()) {
        let c = corpus(pos, neg);
        let s = stratified_split(&c, SplitRatios::default(), seed).unwrap();
        let total: usize = [&s.train, &s.dev, &s.test].iter().map(|p| p.len()).sum();
        prop_assert_eq!(total, c.len());
        let mut ids: Vec<String> = [&s.train, &s.dev, &s.test]
            .iter()
            .flat_map(|p| p.documents().iter().map(|d| d.id.clone()))
            .collect();
        ids.sort();
        ids.dedup();
        prop_assert_eq!(ids.len(), c.len());
        prop_assert_eq!(stratified_split(&c, SplitRatios::default(), seed).unwrap(), s);
    }

    #[test]
    fn rebalance_never_removes_negatives(pos in 2usize..30, neg in 10usize..200, seed in any::<u64>()) {
        let c = corpus(pos, neg);
        let s = stratified_split(&c, SplitRatios::default(), seed).unwrap();
        let empty = Corpus::new("e", Vec::new()).unwrap();
        let t = rebalance_train(&s, &empty, 2.0, seed).unwrap();
        let before = s.train.class_counts();
        let after = t.class_counts();
        prop_assert_eq!(after.negative, before.negative);
        prop_assert_eq!(after.positive, before.positive.max(before.negative / 2));
        let test_ids = s.test.ids();
        prop_assert!(t.documents.iter().all(|d| !test_ids.contains(d.id.as_str())));
    }

    #[test]
    fn portion_is_a_subsequence(len in 0usize..300, x in 1usize..200, first_last in any::<bool>()) {
        let stream = TokenStream::new("d", (0..len).map(|i| i.to_string()).collect());
        let mode = if first_last { PortionMode::FirstLast(x) } else { PortionMode::First(x) };
        let idx = mode.indices(len);
        prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(take_portion(&stream, mode).len(), idx.len());
        prop_assert_eq!(take_portion(&stream, PortionMode::All), stream);
    }

    #[test]
    fn tokenize_is_idempotent(text in "[a-zA-Z0-9 ,.;:'!?()\\-\n]{0,200}") {
        let once = tokenize(&text);
        let again = tokenize(&once.tokens.join(" "));
        prop_assert_eq!(once.tokens, again.tokens);
    }

    #[test]
    fn information_gain_bounds_and_permutation(
        rows in prop::collection::vec((any::<bool>(), any::<bool>(), 0u8..5), 4..40),
        rot in 0usize..40,
    ) {
        let mut y: Vec<bool> = rows.iter().map(|r| r.0).collect();
        y[0] = true;
        y[1] = false;
        let bin: Vec<bool> = rows.iter().map(|r| r.1).collect();
        let num: Vec<f64> = rows.iter().map(|r| r.2 as f64).collect();
        let cols = |b: Vec<bool>, n: Vec<f64>| vec![("b".to_string(), FeatureColumn::Binary(b)), ("n".to_string(), FeatureColumn::Numeric(n))];
        let r = information_gain(&cols(bin.clone(), num.clone()), &labels(&y)).unwrap();
        let pos = y.iter().filter(|&&p| p).count() as f64 / y.len() as f64;
        let h = -(pos * pos.log2() + (1.0 - pos) * (1.0 - pos).log2());
        for e in &r.entries {
            prop_assert!(e.ig_bits >= 0.0 && e.ig_bits <= h + 1e-12);
        }
        let k = rot % y.len();
        let rotate = |v: &mut Vec<_>| v.rotate_left(k);
        let (mut y2, mut b2, mut n2) = (y.clone(), bin, num);
        rotate(&mut y2);
        b2.rotate_left(k);
        n2.rotate_left(k);
        let r2 = information_gain(&cols(b2, n2), &labels(&y2)).unwrap();
        for (a, b) in r.entries.iter().zip(&r2.entries) {
            prop_assert_eq!(&a.feature, &b.feature);
            prop_assert!((a.ig_bits - b.ig_bits).abs() < 1e-12);
        }
    }

    #[test]
    fn weighting_norms(docs in prop::collection::vec(prop::collection::vec(0u8..8, 1..30), 2..12)) {
        let streams: Vec<TokenStream> = docs
            .iter()
            .map(|d| TokenStream::new("d", d.iter().map(|w| format!("w{w}")).collect()))
            .collect();
        let vocab = build_vocabulary(&streams, 1).unwrap();
        for s in &streams {
            let tf = vectorize(s, &vocab, WeightingScheme::Tf);
            let tfidf = vectorize(s, &vocab, WeightingScheme::TfIdf);
            prop_assert!((tf.l1_norm() - 1.0).abs() < 1e-9);
            prop_assert!((tfidf.l2_norm() - 1.0).abs() < 1e-9);
            prop_assert!(tf.iter().all(|(_, v)| v > 0.0));
        }
    }

    #[test]
    fn gnb_scale_invariant(
        rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 3), 6..30),
        factor in 0.5f64..20.0,
    ) {
        let y: Vec<bool> = (0..rows.len()).map(|i| i % 2 == 0).collect();
        let data = Dataset::from_dense(&rows, labels(&y)).unwrap();
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v * factor).collect()).collect();
        let sdata = Dataset::from_dense(&scaled, labels(&y)).unwrap();
        let a = GaussianNb::fit(&data, &y);
        let b = GaussianNb::fit(&sdata, &y);
        for (x, sx) in data.rows().iter().zip(sdata.rows()) {
            let (pa, pb) = (a.posterior(x), b.posterior(sx));
            prop_assert!((pa[0] + pa[1] - 1.0).abs() < 1e-9);
            prop_assert!((pa[0] - pb[0]).abs() < 1e-6, "{:?} vs {:?}", pa, pb);
        }
    }

    #[test]
    fn single_full_tree_forest_is_the_tree(
        rows in prop::collection::vec(prop::collection::vec(0u8..4, 3), 4..40),
        seed in any::<u64>(),
    ) {
        let dense: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
        let y: Vec<bool> = rows.iter().map(|r| r[0] + r[1] > 3).collect();
        let data = Dataset::from_dense(&dense, labels(&y)).unwrap();
        let params = ForestParams { n_trees: 1, bootstrap: false, max_features: MaxFeatures::All };
        let forest = RandomForest::fit(&data, &y, &params, seed);
        let tree = DecisionTree::fit(&data, &y, &TreeParams::default(), seed);
        for x in data.rows() {
            prop_assert_eq!(forest.predict_positive(x), tree.predict_positive(x));
        }
        let probe = SparseVector::from_dense(&[1.5, 2.5, 0.5]);
        prop_assert_eq!(forest.predict_positive(&probe), tree.predict_positive(&probe));
    }
}
