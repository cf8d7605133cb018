//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cuephrase::corpus::{
    build_canonical_schema, Classification, Dataset, Example, FeatureDecl, FeatureSchema,
    FeatureValue, JudgeLabel, JudgePair,
};
use cuephrase::ingest::synthetic::{generate_synthetic, SyntheticSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TERNARY: [&str; 3] = ["a", "b", "c"];

/// Rows of feature-value indices with a sentential flag.
pub type Row = (Vec<usize>, bool);

pub fn ternary_schema(k: usize) -> FeatureSchema {
    FeatureSchema::new(
        (0..k)
            .map(|i| FeatureDecl::symbolic(&format!("f{i}"), &format!("feature {i}"), &TERNARY))
            .collect(),
    )
    .unwrap()
}

pub fn class_of(sentential: bool) -> Classification {
    if sentential {
        Classification::Sentential
    } else {
        Classification::Discourse
    }
}

pub fn ternary_dataset(k: usize, rows: &[Row]) -> Dataset {
    let schema = ternary_schema(k);
    let examples = rows
        .iter()
        .enumerate()
        .map(|(i, (xs, s))| {
            let values: BTreeMap<String, FeatureValue> = xs
                .iter()
                .enumerate()
                .map(|(f, &v)| (format!("f{f}"), FeatureValue::sym(TERNARY[v])))
                .collect();
            Example::new(
                &schema,
                format!("r{i}"),
                values,
                JudgePair::agreeing(class_of(*s)),
            )
            .unwrap()
        })
        .collect();
    Dataset::new(schema, examples).unwrap()
}

/// Rows whose labels are a function of the feature vector, so no two rows
/// with equal features disagree.
pub fn consistent_rows(seed: u64, k: usize, n: usize) -> Vec<Row> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table: Vec<bool> = (0..27).map(|_| rng.gen_bool(0.5)).collect();
    (0..n)
        .map(|_| {
            let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..3)).collect();
            let code = xs.iter().fold(0, |acc, v| acc * 3 + v);
            (xs, table[code])
        })
        .collect()
}

fn majority_errors(rows: &[&Row]) -> usize {
    let s = rows.iter().filter(|r| r.1).count();
    s.min(rows.len() - s)
}

/// Fewest training errors any tree of depth at most `depth` can make, found
/// by trying every feature at every node.
pub fn optimal_tree_errors(rows: &[&Row], k: usize, depth: usize) -> usize {
    let mut best = majority_errors(rows);
    if depth == 0 || best == 0 {
        return best;
    }
    for f in 0..k {
        let total: usize = (0..3)
            .map(|v| {
                let part: Vec<&Row> = rows.iter().copied().filter(|r| r.0[f] == v).collect();
                optimal_tree_errors(&part, k, depth - 1)
            })
            .sum();
        best = best.min(total);
    }
    best
}

/// Literal over a ternary feature: (feature, value, equal?).
pub type Literal = (usize, usize, bool);

fn literal_holds(xs: &[usize], (f, v, eq): Literal) -> bool {
    (xs[f] == v) == eq
}

/// Whether some conjunction of at most `max_len` literals holds on exactly
/// the target rows.
pub fn conjunctively_expressible(rows: &[Row], k: usize, max_len: usize) -> bool {
    let literals: Vec<Literal> = (0..k)
        .flat_map(|f| (0..3).flat_map(move |v| [(f, v, true), (f, v, false)]))
        .collect();
    fn search(
        rows: &[Row],
        literals: &[Literal],
        chosen: &mut Vec<Literal>,
        start: usize,
        max_len: usize,
    ) -> bool {
        let exact = rows
            .iter()
            .all(|(xs, s)| chosen.iter().all(|&l| literal_holds(xs, l)) == *s);
        if exact {
            return true;
        }
        if chosen.len() == max_len {
            return false;
        }
        for i in start..literals.len() {
            chosen.push(literals[i]);
            if search(rows, literals, chosen, i + 1, max_len) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    search(rows, &literals, &mut Vec::new(), 0, max_len)
}

/// Canonical-schema dataset with arbitrary judge pairs and some
/// untranscribed examples.
pub fn random_canonical_dataset(seed: u64, n: usize) -> Dataset {
    let mut spec = SyntheticSpec::planted_position(n, 0.2);
    spec.planted_rules.clear();
    spec.value_priors.clear();
    spec.untranscribed_rate = 0.1;
    let d = generate_synthetic(&spec, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let labels = [
        JudgeLabel::Discourse,
        JudgeLabel::Sentential,
        JudgeLabel::Ambiguous,
    ];
    let schema = build_canonical_schema();
    let examples = d
        .examples()
        .iter()
        .map(|e| {
            let judges = JudgePair::new(labels[rng.gen_range(0..3)], labels[rng.gen_range(0..3)]);
            Example::new(&schema, e.id.clone(), e.values.clone(), judges).unwrap()
        })
        .collect();
    Dataset::new(schema, examples).unwrap()
}
