//! Divide-and-conquer decision tree induction with gain-ratio split selection.
//!
//! Symbolic features split one branch per vocabulary value (or, with grouping
//! enabled, one branch per block of values); numeric features split into
//! `<= threshold` and `> threshold`. Thresholds are always attained training
//! values. Trees are pruned bottom-up with a pessimistic error estimate: the
//! upper limit of a binomial confidence interval on each leaf's error rate.

use serde::{Deserialize, Serialize};

use crate::corpus::{ClassCounts, Classification, Dataset, Example, FeatureValue};
use crate::encoded::{Column, Encoded};
use crate::error::{Error, Result};
use crate::model::Classifier;

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassMode {
    /// Discourse vs sentential; training data must not contain `unknown`.
    #[default]
    TwoClass,
    ThreeClass,
}

impl ClassMode {
    /// Rejects datasets whose gold labels the mode cannot represent.
    pub fn check(self, d: &Dataset) -> Result<()> {
        if self == ClassMode::TwoClass && d.class_counts().get(Classification::Unknown) > 0 {
            return Err(Error::Fit(
                "two-class training data contains unknown examples".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeOptions {
    /// A split is admissible only if at least two branches receive this many examples.
    pub min_branch_support: usize,
    pub pruning_confidence: f64,
    pub grouping_enabled: bool,
    pub classes: ClassMode,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            min_branch_support: 2,
            pruning_confidence: 0.25,
            grouping_enabled: false,
            classes: ClassMode::TwoClass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SplitTest {
    /// One branch per vocabulary value, in vocabulary order.
    Symbolic {
        feature: String,
        values: Vec<String>,
    },
    /// One branch per block; blocks partition the vocabulary.
    Grouped {
        feature: String,
        blocks: Vec<Vec<String>>,
    },
    /// Branch 0 is `<= threshold`, branch 1 is `> threshold`.
    Numeric { feature: String, threshold: u32 },
}

impl SplitTest {
    pub fn feature(&self) -> &str {
        match self {
            SplitTest::Symbolic { feature, .. }
            | SplitTest::Grouped { feature, .. }
            | SplitTest::Numeric { feature, .. } => feature,
        }
    }

    pub fn branch_count(&self) -> usize {
        match self {
            SplitTest::Symbolic { values, .. } => values.len(),
            SplitTest::Grouped { blocks, .. } => blocks.len(),
            SplitTest::Numeric { .. } => 2,
        }
    }

    pub fn branch_of(&self, value: &FeatureValue) -> Result<usize> {
        let mismatch = || Error::Validation {
            feature: self.feature().to_string(),
            value: value.to_string(),
        };
        match (self, value) {
            (SplitTest::Symbolic { values, .. }, FeatureValue::Symbolic(v)) => {
                values.iter().position(|x| x == v).ok_or_else(mismatch)
            }
            (SplitTest::Grouped { blocks, .. }, FeatureValue::Symbolic(v)) => blocks
                .iter()
                .position(|b| b.iter().any(|x| x == v))
                .ok_or_else(mismatch),
            (SplitTest::Numeric { threshold, .. }, FeatureValue::Numeric(n)) => {
                Ok(if n <= threshold { 0 } else { 1 })
            }
            _ => Err(mismatch()),
        }
    }

    pub fn branch_for(&self, e: &Example) -> Result<usize> {
        self.branch_of(e.require(self.feature())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DecisionTree {
    Leaf {
        class: Classification,
        /// Training examples reaching the leaf.
        support: usize,
        /// Of those, how many the leaf misclassifies.
        errors: usize,
    },
    Node {
        test: SplitTest,
        children: Vec<DecisionTree>,
        /// Training class distribution at this node.
        counts: ClassCounts,
    },
}

impl DecisionTree {
    pub fn leaf(class: Classification) -> Self {
        DecisionTree::Leaf {
            class,
            support: 0,
            errors: 0,
        }
    }

    fn leaf_from(counts: &ClassCounts) -> Self {
        let class = counts.majority();
        DecisionTree::Leaf {
            class,
            support: counts.total(),
            errors: counts.total() - counts.get(class),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, DecisionTree::Leaf { .. })
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecisionTree::Leaf { .. } => 1,
            DecisionTree::Node { children, .. } => {
                1 + children.iter().map(DecisionTree::node_count).sum::<usize>()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf { .. } => 0,
            DecisionTree::Node { children, .. } => {
                1 + children.iter().map(DecisionTree::depth).max().unwrap_or(0)
            }
        }
    }

    /// Features tested anywhere in the tree, in first-visit order.
    pub fn features_used(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_features(&mut out);
        out
    }

    fn collect_features(&self, out: &mut Vec<String>) {
        if let DecisionTree::Node { test, children, .. } = self {
            if !out.iter().any(|f| f == test.feature()) {
                out.push(test.feature().to_string());
            }
            for c in children {
                c.collect_features(out);
            }
        }
    }

    pub fn predict(&self, e: &Example) -> Result<Classification> {
        let mut node = self;
        loop {
            match node {
                DecisionTree::Leaf { class, .. } => return Ok(*class),
                DecisionTree::Node { test, children, .. } => {
                    node = &children[test.branch_for(e)?]
                }
            }
        }
    }
}

impl Classifier for DecisionTree {
    fn predict(&self, e: &Example) -> Result<Classification> {
        DecisionTree::predict(self, e)
    }
}

pub fn predict_tree(t: &DecisionTree, e: &Example) -> Result<Classification> {
    t.predict(e)
}

/// Shannon entropy in bits of a class distribution.
pub fn entropy(counts: &ClassCounts) -> Result<f64> {
    if counts.total() == 0 {
        return Err(Error::UndefinedInput(
            "entropy of an empty distribution".into(),
        ));
    }
    Ok(entropy_of(&counts.0))
}

fn entropy_of(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Gain ratio of a partition given per-branch class counts; 0 when every
/// example lands in the same branch.
fn gain_ratio_of(parent: &ClassCounts, branches: &[ClassCounts]) -> f64 {
    let n = parent.total() as f64;
    if n == 0.0 {
        return 0.0;
    }
    let remainder: f64 = branches
        .iter()
        .filter(|b| b.total() > 0)
        .map(|b| b.total() as f64 / n * entropy_of(&b.0))
        .sum();
    let gain = entropy_of(&parent.0) - remainder;
    let sizes: Vec<usize> = branches.iter().map(ClassCounts::total).collect();
    let split_info = entropy_of(&sizes);
    if split_info <= EPS {
        0.0
    } else {
        (gain / split_info).max(0.0)
    }
}

/// Gain ratio of `t` on `d`.
pub fn gain_ratio(d: &Dataset, t: &SplitTest) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::UndefinedInput(
            "gain ratio of an empty dataset".into(),
        ));
    }
    let mut branches = vec![ClassCounts::default(); t.branch_count()];
    for e in d.examples() {
        branches[t.branch_for(e)?].add(e.gold);
    }
    Ok(gain_ratio_of(&d.class_counts(), &branches))
}

/// Candidate cut points for a numeric feature: every distinct attained value
/// except the largest.
pub fn candidate_thresholds(d: &Dataset, feature: &str) -> Result<Vec<u32>> {
    let decl = d
        .schema()
        .get(feature)
        .ok_or_else(|| Error::SchemaMismatch(format!("feature {feature} is not declared")))?;
    if !decl.is_numeric() {
        return Err(Error::SchemaMismatch(format!(
            "feature {feature} is not numeric"
        )));
    }
    let values: Vec<u32> = d
        .examples()
        .iter()
        .map(|e| e.numeric(feature))
        .collect::<Result<_>>()?;
    Ok(thresholds_of(values))
}

fn thresholds_of(mut values: Vec<u32>) -> Vec<u32> {
    values.sort_unstable();
    values.dedup();
    values.pop();
    values
}

struct Candidate {
    test: SplitTest,
    ratio: f64,
}

fn admissible(branches: &[ClassCounts], min_support: usize) -> bool {
    branches
        .iter()
        .filter(|b| b.total() >= min_support.max(1))
        .count()
        >= 2
}

fn consider(best: &mut Option<Candidate>, test: SplitTest, ratio: f64) {
    // strict improvement keeps the earliest candidate on ties
    if best.as_ref().is_none_or(|b| ratio > b.ratio + EPS) {
        *best = Some(Candidate { test, ratio });
    }
}

fn best_split(
    enc: &Encoded,
    idx: &[usize],
    parent: &ClassCounts,
    opts: &TreeOptions,
) -> Option<SplitTest> {
    let mut best: Option<Candidate> = None;
    for (f, column) in enc.columns.iter().enumerate() {
        let feature = &enc.names[f];
        match column {
            Column::Symbolic { vocab, codes } => {
                let mut per_value = vec![ClassCounts::default(); vocab.len()];
                for &i in idx {
                    per_value[codes[i]].add(enc.classes[i]);
                }
                if opts.grouping_enabled {
                    if let Some((blocks, ratio)) =
                        group_values(parent, &per_value, opts.min_branch_support)
                    {
                        let blocks = blocks
                            .into_iter()
                            .map(|b| b.into_iter().map(|v| vocab[v].clone()).collect())
                            .collect();
                        consider(
                            &mut best,
                            SplitTest::Grouped {
                                feature: feature.clone(),
                                blocks,
                            },
                            ratio,
                        );
                    }
                } else if admissible(&per_value, opts.min_branch_support) {
                    let ratio = gain_ratio_of(parent, &per_value);
                    consider(
                        &mut best,
                        SplitTest::Symbolic {
                            feature: feature.clone(),
                            values: vocab.clone(),
                        },
                        ratio,
                    );
                }
            }
            Column::Numeric { values } => {
                let mut sorted: Vec<(u32, Classification)> =
                    idx.iter().map(|&i| (values[i], enc.classes[i])).collect();
                sorted.sort_by_key(|&(v, _)| v);
                let mut below = ClassCounts::default();
                let mut above = *parent;
                for (j, &(v, class)) in sorted.iter().enumerate() {
                    below.add(class);
                    above.0[class.index()] -= 1;
                    let next = match sorted.get(j + 1) {
                        Some(&(w, _)) if w != v => w,
                        _ => continue,
                    };
                    debug_assert!(next > v);
                    let branches = [below, above];
                    if admissible(&branches, opts.min_branch_support) {
                        let ratio = gain_ratio_of(parent, &branches);
                        consider(
                            &mut best,
                            SplitTest::Numeric {
                                feature: feature.clone(),
                                threshold: v,
                            },
                            ratio,
                        );
                    }
                }
            }
        }
    }
    best.map(|c| c.test)
}

/// Greedy value grouping: starting from one block per observed value,
/// repeatedly merge the pair of blocks giving the highest gain ratio while
/// that improves on the current partition. Unobserved values join the largest
/// block. Returns the blocks (as vocabulary indices) and their gain ratio.
fn group_values(
    parent: &ClassCounts,
    per_value: &[ClassCounts],
    min_support: usize,
) -> Option<(Vec<Vec<usize>>, f64)> {
    let mut blocks: Vec<Vec<usize>> = (0..per_value.len())
        .filter(|&v| per_value[v].total() > 0)
        .map(|v| vec![v])
        .collect();
    if blocks.len() < 2 {
        return None;
    }
    let block_counts = |blocks: &[Vec<usize>]| -> Vec<ClassCounts> {
        blocks
            .iter()
            .map(|b| {
                let mut c = ClassCounts::default();
                for &v in b {
                    for k in 0..3 {
                        c.0[k] += per_value[v].0[k];
                    }
                }
                c
            })
            .collect()
    };
    let mut current = gain_ratio_of(parent, &block_counts(&blocks));
    while blocks.len() > 2 {
        let mut best: Option<(usize, usize, f64)> = None;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let mut merged = blocks.clone();
                let moved = merged.remove(b);
                merged[a].extend(moved);
                let ratio = gain_ratio_of(parent, &block_counts(&merged));
                if best.is_none_or(|(_, _, r)| ratio > r + EPS) {
                    best = Some((a, b, ratio));
                }
            }
        }
        match best {
            Some((a, b, ratio)) if ratio > current + EPS => {
                let moved = blocks.remove(b);
                blocks[a].extend(moved);
                current = ratio;
            }
            _ => break,
        }
    }
    let counts = block_counts(&blocks);
    if !admissible(&counts, min_support) {
        return None;
    }
    let largest = (0..blocks.len())
        .max_by(|&a, &b| counts[a].total().cmp(&counts[b].total()).then(b.cmp(&a)))
        .expect("at least two blocks");
    for (v, c) in per_value.iter().enumerate() {
        if c.total() == 0 {
            blocks[largest].push(v);
        }
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    Some((blocks, current))
}

fn grow(enc: &Encoded, idx: &[usize], opts: &TreeOptions) -> Result<DecisionTree> {
    let counts = enc.counts(idx);
    if counts.is_pure() {
        return Ok(DecisionTree::leaf_from(&counts));
    }
    let Some(test) = best_split(enc, idx, &counts, opts) else {
        return Ok(DecisionTree::leaf_from(&counts));
    };
    let f = enc
        .names
        .iter()
        .position(|n| n == test.feature())
        .expect("feature of split");
    let mut parts = vec![Vec::new(); test.branch_count()];
    for &i in idx {
        let branch = test.branch_of(&enc.value(f, i))?;
        parts[branch].push(i);
    }
    let majority = counts.majority();
    let children = parts
        .iter()
        .map(|part| {
            if part.is_empty() {
                Ok(DecisionTree::leaf(majority))
            } else {
                grow(enc, part, opts)
            }
        })
        .collect::<Result<_>>()?;
    Ok(DecisionTree::Node {
        test,
        children,
        counts,
    })
}

/// Grows an unpruned tree on `d`.
pub fn induce_tree(d: &Dataset, opts: &TreeOptions) -> Result<DecisionTree> {
    if d.is_empty() {
        return Err(Error::Fit(
            "cannot induce a tree from an empty dataset".into(),
        ));
    }
    opts.classes.check(d)?;
    let enc = Encoded::new(d.schema(), d.examples())?;
    let idx: Vec<usize> = (0..d.len()).collect();
    grow(&enc, &idx, opts)
}

/// Upper limit of the one-sided binomial confidence interval for an error
/// probability after observing `errors` mistakes in `n` trials: the `p` at
/// which observing at most `errors` mistakes has probability `cf`.
pub fn error_upper_bound(errors: usize, n: usize, cf: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if errors >= n {
        return 1.0;
    }
    if errors == 0 {
        return 1.0 - cf.powf(1.0 / n as f64);
    }
    let nf = n as f64;
    // ln C(n, k) for k = 0..=errors
    let mut ln_choose = Vec::with_capacity(errors + 1);
    let mut acc = 0.0;
    ln_choose.push(acc);
    for k in 1..=errors {
        acc += ((nf - k as f64 + 1.0) / k as f64).ln();
        ln_choose.push(acc);
    }
    let cdf = |p: f64| -> f64 {
        let (lp, lq) = (p.ln(), (1.0 - p).ln());
        ln_choose
            .iter()
            .enumerate()
            .map(|(k, lc)| (lc + k as f64 * lp + (nf - k as f64) * lq).exp())
            .sum()
    };
    let (mut lo, mut hi) = (errors as f64 / nf, 1.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) > cf {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn estimated_errors(support: usize, errors: usize, cf: f64) -> f64 {
    support as f64 * error_upper_bound(errors, support, cf)
}

fn prune_node(t: &DecisionTree, cf: f64) -> (DecisionTree, f64) {
    match t {
        DecisionTree::Leaf {
            support, errors, ..
        } => (t.clone(), estimated_errors(*support, *errors, cf)),
        DecisionTree::Node {
            test,
            children,
            counts,
        } => {
            let (children, estimates): (Vec<_>, Vec<_>) =
                children.iter().map(|c| prune_node(c, cf)).unzip();
            let subtree: f64 = estimates.iter().sum();
            let leaf = DecisionTree::leaf_from(counts);
            let DecisionTree::Leaf {
                support,
                errors,
                class,
            } = leaf
            else {
                unreachable!()
            };
            let as_leaf = estimated_errors(support, errors, cf);
            let uniform = children
                .iter()
                .all(|c| matches!(c, DecisionTree::Leaf { class: k, .. } if *k == class));
            if uniform || as_leaf <= subtree + EPS {
                (leaf, as_leaf)
            } else {
                (
                    DecisionTree::Node {
                        test: test.clone(),
                        children,
                        counts: *counts,
                    },
                    subtree,
                )
            }
        }
    }
}

/// Bottom-up pessimistic pruning: a subtree becomes a leaf whenever the
/// leaf's estimated error does not exceed the subtree's.
pub fn prune_tree(t: &DecisionTree, opts: &TreeOptions) -> DecisionTree {
    prune_node(t, opts.pruning_confidence).0
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::corpus::{Example, FeatureDecl, FeatureSchema, JudgePair};
    use Classification::*;

    fn numeric_dataset(rows: &[(u32, Classification)]) -> Dataset {
        let schema = FeatureSchema::new(vec![FeatureDecl::numeric(
            "P-P",
            "position in intonational phrase",
            1,
        )])
        .unwrap();
        let examples = rows
            .iter()
            .enumerate()
            .map(|(i, &(v, c))| {
                let values = BTreeMap::from([("P-P".to_string(), FeatureValue::Numeric(v))]);
                Example::new(&schema, format!("e{i}"), values, JudgePair::agreeing(c)).unwrap()
            })
            .collect();
        Dataset::new(schema, examples).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert!((entropy(&ClassCounts([5, 5, 0])).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(entropy(&ClassCounts([10, 0, 0])).unwrap(), 0.0);
        // -(p log2 p + q log2 q) with p = 341/878, evaluated independently
        let p: f64 = 341.0 / 878.0;
        let expected = -(p * p.log2() + (1.0 - p) * (1.0 - p).log2());
        let got = entropy(&ClassCounts([341, 537, 0])).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 0.9637).abs() < 5e-4, "{got}");
        assert!(entropy(&ClassCounts::default()).is_err());
    }

    #[test]
    fn gain_ratio_examples() {
        let separating = numeric_dataset(&[
            (1, Discourse),
            (1, Discourse),
            (2, Sentential),
            (2, Sentential),
        ]);
        let test = SplitTest::Numeric {
            feature: "P-P".into(),
            threshold: 1,
        };
        assert!((gain_ratio(&separating, &test).unwrap() - 1.0).abs() < 1e-12);

        let all_left = SplitTest::Numeric {
            feature: "P-P".into(),
            threshold: 5,
        };
        assert_eq!(gain_ratio(&separating, &all_left).unwrap(), 0.0);

        let mixed = numeric_dataset(&[
            (1, Discourse),
            (1, Discourse),
            (1, Discourse),
            (1, Sentential),
            (2, Discourse),
            (2, Sentential),
            (2, Sentential),
            (2, Sentential),
        ]);
        let ratio = gain_ratio(&mixed, &test).unwrap();
        assert!((ratio - 0.1887).abs() < 1e-4, "{ratio}");
    }

    #[test]
    fn thresholds() {
        assert_eq!(thresholds_of(vec![9, 1, 2, 2]), [1, 2]);
        assert!(thresholds_of(vec![4, 4]).is_empty());
        assert_eq!(
            thresholds_of((1..=20).collect()),
            (1..=19).collect::<Vec<_>>()
        );
        let d = numeric_dataset(&[(1, Discourse), (9, Sentential), (2, Sentential)]);
        assert_eq!(candidate_thresholds(&d, "P-P").unwrap(), [1, 2]);
    }

    #[test]
    fn upper_bound_matches_published_c45_values() {
        // worked values from the C4.5 pruning example (CF = 25%)
        assert!((error_upper_bound(0, 6, 0.25) - 0.206).abs() < 5e-4);
        assert!((error_upper_bound(0, 9, 0.25) - 0.143).abs() < 5e-4);
        assert!((error_upper_bound(0, 1, 0.25) - 0.750).abs() < 5e-4);
        assert_eq!(error_upper_bound(3, 3, 0.25), 1.0);
        assert_eq!(error_upper_bound(0, 0, 0.25), 0.0);
    }

    #[test]
    fn upper_bound_is_beta_quantile() {
        use statrs::distribution::{Beta, ContinuousCDF};
        for (e, n) in [(1, 16), (2, 10), (5, 40), (7, 9)] {
            let oracle = Beta::new(e as f64 + 1.0, (n - e) as f64)
                .unwrap()
                .inverse_cdf(0.75);
            assert!(
                (error_upper_bound(e, n, 0.25) - oracle).abs() < 1e-6,
                "{e}/{n}"
            );
        }
    }

    #[test]
    fn single_class_gives_leaf() {
        let d = numeric_dataset(&[(1, Sentential), (3, Sentential)]);
        let t = induce_tree(&d, &TreeOptions::default()).unwrap();
        assert_eq!(
            t,
            DecisionTree::Leaf {
                class: Sentential,
                support: 2,
                errors: 0
            }
        );
    }

    #[test]
    fn empty_dataset_is_a_fit_error() {
        let d = numeric_dataset(&[]);
        assert!(matches!(
            induce_tree(&d, &TreeOptions::default()),
            Err(Error::Fit(_))
        ));
    }

    #[test]
    fn two_class_mode_rejects_unknown() {
        let d = numeric_dataset(&[(1, Unknown), (2, Discourse)]);
        assert!(induce_tree(&d, &TreeOptions::default()).is_err());
        let opts = TreeOptions {
            classes: ClassMode::ThreeClass,
            min_branch_support: 1,
            ..TreeOptions::default()
        };
        let t = induce_tree(&d, &opts).unwrap();
        assert_eq!(t.predict(&d.examples()[0]).unwrap(), Unknown);
    }

    #[test]
    fn pruning_collapses_uniform_children() {
        let t = DecisionTree::Node {
            test: SplitTest::Numeric {
                feature: "P-P".into(),
                threshold: 1,
            },
            children: vec![
                DecisionTree::Leaf {
                    class: Discourse,
                    support: 3,
                    errors: 1,
                },
                DecisionTree::Leaf {
                    class: Discourse,
                    support: 5,
                    errors: 0,
                },
            ],
            counts: ClassCounts([7, 1, 0]),
        };
        let pruned = prune_tree(&t, &TreeOptions::default());
        assert_eq!(
            pruned,
            DecisionTree::Leaf {
                class: Discourse,
                support: 8,
                errors: 1
            }
        );
        let leaf = DecisionTree::leaf(Sentential);
        assert_eq!(prune_tree(&leaf, &TreeOptions::default()), leaf);
    }

    #[test]
    fn grouping_merges_values() {
        // three observed values, two of which behave identically
        let parent = ClassCounts([6, 6, 0]);
        let per_value = [
            ClassCounts([3, 0, 0]),
            ClassCounts([3, 0, 0]),
            ClassCounts([0, 6, 0]),
            ClassCounts::default(),
        ];
        let (blocks, ratio) = group_values(&parent, &per_value, 1).unwrap();
        // the unobserved value joins the first of the equally large blocks
        assert_eq!(blocks, vec![vec![0, 1, 3], vec![2]]);
        assert!((ratio - 1.0).abs() < 1e-12);
    }
}
