//! Separate-and-conquer induction of ordered if-then rules.
//!
//! Rules are learned one target class at a time. Each rule starts empty and
//! greedily gains the literal with the highest FOIL information gain until it
//! covers no negatives, reaches `max_rule_length`, or no literal helps. Covered
//! positives are then removed and the next rule is grown from the rest.
//! Examples no rule covers fall to the default class.

use serde::{Deserialize, Serialize};

use crate::corpus::{
    ClassCounts, Classification, Condition, Dataset, Example, FeatureSchema, FeatureValue, Operator,
};
use crate::encoded::{Column, Encoded};
use crate::error::{Error, Result};
use crate::model::Classifier;
use crate::tree::ClassMode;

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConflictStrategy {
    FirstMatch,
    #[default]
    MostAccurate,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetClasses {
    /// Every class except the most frequent one; that one becomes the default.
    #[default]
    Auto,
    Explicit(Vec<Classification>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleOptions {
    pub target_classes: TargetClasses,
    pub max_rule_length: usize,
    pub min_coverage: usize,
    pub conflict_strategy: ConflictStrategy,
    pub classes: ClassMode,
}

impl Default for RuleOptions {
    fn default() -> Self {
        RuleOptions {
            target_classes: TargetClasses::Auto,
            max_rule_length: 6,
            min_coverage: 2,
            conflict_strategy: ConflictStrategy::MostAccurate,
            classes: ClassMode::TwoClass,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub positives: usize,
    pub negatives: usize,
}

impl Coverage {
    /// Fraction of covered training examples that carry the rule's class.
    pub fn accuracy(&self) -> f64 {
        let covered = self.positives + self.negatives;
        if covered == 0 {
            0.0
        } else {
            self.positives as f64 / covered as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub tests: Vec<Condition>,
    pub class: Classification,
    pub coverage: Coverage,
}

impl Rule {
    pub fn fires(&self, e: &Example) -> Result<bool> {
        for t in &self.tests {
            if !t.matches(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
    pub default: Classification,
    pub conflict_strategy: ConflictStrategy,
}

impl RuleSet {
    pub fn predict(&self, e: &Example) -> Result<Classification> {
        let mut chosen: Option<&Rule> = None;
        for rule in &self.rules {
            if !rule.fires(e)? {
                continue;
            }
            match self.conflict_strategy {
                ConflictStrategy::FirstMatch => return Ok(rule.class),
                ConflictStrategy::MostAccurate => {
                    if chosen.is_none_or(|c| rule.coverage.accuracy() > c.coverage.accuracy() + EPS)
                    {
                        chosen = Some(rule);
                    }
                }
            }
        }
        Ok(chosen.map_or(self.default, |r| r.class))
    }
}

impl Classifier for RuleSet {
    fn predict(&self, e: &Example) -> Result<Classification> {
        RuleSet::predict(self, e)
    }
}

pub fn predict_rules(rs: &RuleSet, e: &Example) -> Result<Classification> {
    rs.predict(e)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Literal {
    Eq(usize, usize),
    Ne(usize, usize),
    Le(usize, u32),
    Ge(usize, u32),
}

impl Literal {
    fn matches(self, enc: &Encoded, row: usize) -> bool {
        match (self, &enc.columns[self.feature()]) {
            (Literal::Eq(_, code), Column::Symbolic { codes, .. }) => codes[row] == code,
            (Literal::Ne(_, code), Column::Symbolic { codes, .. }) => codes[row] != code,
            (Literal::Le(_, t), Column::Numeric { values }) => values[row] <= t,
            (Literal::Ge(_, t), Column::Numeric { values }) => values[row] >= t,
            _ => false,
        }
    }

    fn feature(self) -> usize {
        match self {
            Literal::Eq(f, _) | Literal::Ne(f, _) | Literal::Le(f, _) | Literal::Ge(f, _) => f,
        }
    }

    fn to_condition(self, enc: &Encoded) -> Condition {
        let name = &enc.names[self.feature()];
        let vocab = |code: usize| match &enc.columns[self.feature()] {
            Column::Symbolic { vocab, .. } => vocab[code].clone(),
            Column::Numeric { .. } => unreachable!("symbolic literal on numeric column"),
        };
        match self {
            Literal::Eq(_, c) => {
                Condition::new(name, Operator::Eq, FeatureValue::Symbolic(vocab(c)))
            }
            Literal::Ne(_, c) => {
                Condition::new(name, Operator::Ne, FeatureValue::Symbolic(vocab(c)))
            }
            Literal::Le(_, t) => Condition::le(name, t),
            Literal::Ge(_, t) => Condition::ge(name, t),
        }
    }
}

/// FOIL information gain of narrowing (p0, n0) coverage to (p1, n1).
pub fn foil_gain(p0: usize, n0: usize, p1: usize, n1: usize) -> f64 {
    if p1 == 0 || p0 == 0 {
        return 0.0;
    }
    let before = (p0 as f64 / (p0 + n0) as f64).log2();
    let after = (p1 as f64 / (p1 + n1) as f64).log2();
    p1 as f64 * (after - before)
}

/// Positive and negative coverage of every candidate literal over the
/// covered rows, in a fixed order: features by schema index; for symbolic
/// features `=` by vocabulary order then `!=`; for numeric features `<=` by
/// ascending threshold then `>=`.
fn candidates(enc: &Encoded, pos: &[usize], neg: &[usize]) -> Vec<(Literal, usize, usize)> {
    let mut out = Vec::new();
    for (f, column) in enc.columns.iter().enumerate() {
        match column {
            Column::Symbolic { vocab, codes } => {
                let mut p = vec![0usize; vocab.len()];
                let mut n = vec![0usize; vocab.len()];
                for &i in pos {
                    p[codes[i]] += 1;
                }
                for &i in neg {
                    n[codes[i]] += 1;
                }
                for v in 0..vocab.len() {
                    out.push((Literal::Eq(f, v), p[v], n[v]));
                }
                for v in 0..vocab.len() {
                    out.push((Literal::Ne(f, v), pos.len() - p[v], neg.len() - n[v]));
                }
            }
            Column::Numeric { values } => {
                // (value, is_positive) sorted ascending
                let mut rows: Vec<(u32, bool)> = pos
                    .iter()
                    .map(|&i| (values[i], true))
                    .chain(neg.iter().map(|&i| (values[i], false)))
                    .collect();
                rows.sort_unstable();
                let mut distinct: Vec<(u32, usize, usize)> = Vec::new();
                for (v, positive) in rows {
                    match distinct.last_mut() {
                        Some((last, p, n)) if *last == v => {
                            if positive {
                                *p += 1
                            } else {
                                *n += 1
                            }
                        }
                        _ => distinct.push((v, positive as usize, (!positive) as usize)),
                    }
                }
                if distinct.len() < 2 {
                    continue;
                }
                let (mut p_le, mut n_le) = (0, 0);
                for &(v, p, n) in &distinct[..distinct.len() - 1] {
                    p_le += p;
                    n_le += n;
                    out.push((Literal::Le(f, v), p_le, n_le));
                }
                let (mut p_ge, mut n_ge) = (pos.len(), neg.len());
                for w in distinct.windows(2) {
                    p_ge -= w[0].1;
                    n_ge -= w[0].2;
                    out.push((Literal::Ge(f, w[1].0), p_ge, n_ge));
                }
            }
        }
    }
    out
}

fn grow_literals(enc: &Encoded, pos: &[usize], neg: &[usize], opts: &RuleOptions) -> Vec<Literal> {
    let mut pos = pos.to_vec();
    let mut neg = neg.to_vec();
    let mut literals = Vec::new();
    while !neg.is_empty() && literals.len() < opts.max_rule_length {
        let mut best: Option<(Literal, f64)> = None;
        for (lit, p1, n1) in candidates(enc, &pos, &neg) {
            if p1 < opts.min_coverage.max(1) {
                continue;
            }
            let gain = foil_gain(pos.len(), neg.len(), p1, n1);
            if gain > EPS && best.is_none_or(|(_, g)| gain > g + EPS) {
                best = Some((lit, gain));
            }
        }
        let Some((lit, _)) = best else { break };
        pos.retain(|&i| lit.matches(enc, i));
        neg.retain(|&i| lit.matches(enc, i));
        literals.push(lit);
    }
    literals
}

fn covers(enc: &Encoded, literals: &[Literal], row: usize) -> bool {
    literals.iter().all(|l| l.matches(enc, row))
}

fn coverage_on(enc: &Encoded, literals: &[Literal], class: Classification) -> Coverage {
    let mut c = Coverage::default();
    for row in 0..enc.len() {
        if covers(enc, literals, row) {
            if enc.classes[row] == class {
                c.positives += 1;
            } else {
                c.negatives += 1;
            }
        }
    }
    c
}

/// Grows one rule for `class` from positive and negative examples.
pub fn grow_rule(
    schema: &FeatureSchema,
    class: Classification,
    pos: &[Example],
    neg: &[Example],
    opts: &RuleOptions,
) -> Result<Rule> {
    if pos.is_empty() {
        return Err(Error::Fit(
            "cannot grow a rule without positive examples".into(),
        ));
    }
    let enc = Encoded::new(schema, pos.iter().chain(neg.iter()))?;
    let pos_idx: Vec<usize> = (0..pos.len()).collect();
    let neg_idx: Vec<usize> = (pos.len()..pos.len() + neg.len()).collect();
    let literals = grow_literals(&enc, &pos_idx, &neg_idx, opts);
    let mut coverage = Coverage::default();
    for row in 0..enc.len() {
        if covers(&enc, &literals, row) {
            if row < pos.len() {
                coverage.positives += 1;
            } else {
                coverage.negatives += 1;
            }
        }
    }
    Ok(Rule {
        tests: literals.iter().map(|l| l.to_condition(&enc)).collect(),
        class,
        coverage,
    })
}

/// Resolves the classes to learn rules for and the default class.
fn plan(counts: &ClassCounts, targets: &TargetClasses) -> (Vec<Classification>, Classification) {
    match targets {
        TargetClasses::Auto => {
            let default = counts.majority();
            let mut targets: Vec<Classification> = Classification::ALL
                .into_iter()
                .filter(|&c| c != default && counts.get(c) > 0)
                .collect();
            targets.sort_by_key(|&c| (counts.get(c), c.tie_rank()));
            (targets, default)
        }
        TargetClasses::Explicit(list) => {
            let mut targets: Vec<Classification> = Vec::new();
            for &c in list {
                if !targets.contains(&c) {
                    targets.push(c);
                }
            }
            let mut rest = *counts;
            for &c in &targets {
                rest.0[c.index()] = 0;
            }
            let default = if rest.total() > 0 {
                rest.majority()
            } else {
                counts.majority()
            };
            (targets, default)
        }
    }
}

/// Learns an ordered ruleset from `d`.
pub fn induce_rules(d: &Dataset, opts: &RuleOptions) -> Result<RuleSet> {
    if d.is_empty() {
        return Err(Error::Fit(
            "cannot induce rules from an empty dataset".into(),
        ));
    }
    opts.classes.check(d)?;
    let enc = Encoded::new(d.schema(), d.examples())?;
    let (targets, default) = plan(&d.class_counts(), &opts.target_classes);

    let mut rules = Vec::new();
    for class in targets {
        let mut remaining: Vec<usize> = (0..enc.len())
            .filter(|&i| enc.classes[i] == class)
            .collect();
        let neg: Vec<usize> = (0..enc.len())
            .filter(|&i| enc.classes[i] != class)
            .collect();
        while !remaining.is_empty() {
            let literals = grow_literals(&enc, &remaining, &neg, opts);
            let p = remaining
                .iter()
                .filter(|&&i| covers(&enc, &literals, i))
                .count();
            let n = neg.iter().filter(|&&i| covers(&enc, &literals, i)).count();
            // a rule must cover enough new positives and be right more often than not
            if p < opts.min_coverage.max(1) || p <= n {
                break;
            }
            remaining.retain(|&i| !covers(&enc, &literals, i));
            rules.push(Rule {
                tests: literals.iter().map(|l| l.to_condition(&enc)).collect(),
                class,
                coverage: coverage_on(&enc, &literals, class),
            });
        }
    }
    Ok(RuleSet {
        rules,
        default,
        conflict_strategy: opts.conflict_strategy,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::corpus::{FeatureDecl, JudgePair};
    use Classification::*;

    fn schema() -> FeatureSchema {
        FeatureSchema::new(vec![
            FeatureDecl::numeric("P-P", "position in intonational phrase", 1),
            FeatureDecl::symbolic("O-P*", "preceding orthography*", &["true", "false", "NA"]),
        ])
        .unwrap()
    }

    fn example(i: usize, pp: u32, op: &str, class: Classification) -> Example {
        let values = BTreeMap::from([
            ("P-P".to_string(), FeatureValue::Numeric(pp)),
            ("O-P*".to_string(), FeatureValue::sym(op)),
        ]);
        Example::new(
            &schema(),
            format!("e{i}"),
            values,
            JudgePair::agreeing(class),
        )
        .unwrap()
    }

    #[test]
    fn foil_gain_values() {
        assert_eq!(foil_gain(4, 4, 0, 1), 0.0);
        // keeping all 4 positives while dropping all negatives: 4 * (0 - log2 0.5)
        assert!((foil_gain(4, 4, 4, 0) - 4.0).abs() < 1e-12);
        assert!(foil_gain(4, 4, 2, 2) == 0.0);
    }

    #[test]
    fn single_threshold_rule() {
        let pos: Vec<_> = (0..4)
            .map(|i| example(i, 2 + i as u32, "false", Sentential))
            .collect();
        let neg: Vec<_> = (0..4)
            .map(|i| example(10 + i, 1, "true", Discourse))
            .collect();
        let opts = RuleOptions {
            min_coverage: 1,
            ..RuleOptions::default()
        };
        let rule = grow_rule(&schema(), Sentential, &pos, &neg, &opts).unwrap();
        assert_eq!(rule.tests, [Condition::ge("P-P", 2)]);
        assert_eq!(
            rule.coverage,
            Coverage {
                positives: 4,
                negatives: 0
            }
        );
    }

    #[test]
    fn no_negatives_gives_empty_rule() {
        let pos: Vec<_> = (0..3).map(|i| example(i, 2, "false", Sentential)).collect();
        let rule = grow_rule(&schema(), Sentential, &pos, &[], &RuleOptions::default()).unwrap();
        assert!(rule.tests.is_empty());
        assert_eq!(rule.coverage.positives, 3);
    }

    #[test]
    fn inseparable_examples_stop_growth() {
        let pos = vec![
            example(0, 2, "false", Sentential),
            example(1, 2, "false", Sentential),
        ];
        let neg = vec![example(2, 2, "false", Discourse)];
        let rule = grow_rule(&schema(), Sentential, &pos, &neg, &RuleOptions::default()).unwrap();
        assert!(rule.tests.is_empty());
        assert_eq!(rule.coverage.negatives, 1);
    }

    #[test]
    fn single_class_dataset_has_no_rules() {
        let d = Dataset::new(
            schema(),
            (0..5).map(|i| example(i, 1, "true", Discourse)).collect(),
        )
        .unwrap();
        let rs = induce_rules(&d, &RuleOptions::default()).unwrap();
        assert!(rs.rules.is_empty());
        assert_eq!(rs.default, Discourse);
    }

    #[test]
    fn orthography_rule_with_discourse_default() {
        let mut examples = Vec::new();
        for i in 0..30 {
            let (op, class) = match i % 3 {
                0 => ("false", Sentential),
                1 => ("true", Discourse),
                _ => ("NA", Discourse),
            };
            examples.push(example(i, 1 + (i % 4) as u32, op, class));
        }
        let d = Dataset::new(schema(), examples)
            .unwrap()
            .project_names(&["O-P*".to_string()])
            .unwrap();
        let rs = induce_rules(&d, &RuleOptions::default()).unwrap();
        assert_eq!(rs.rules.len(), 1);
        assert_eq!(rs.rules[0].tests, [Condition::eq("O-P*", "false")]);
        assert_eq!(rs.rules[0].class, Sentential);
        assert_eq!(rs.default, Discourse);
    }

    fn two_rule_set(strategy: ConflictStrategy) -> RuleSet {
        RuleSet {
            rules: vec![
                Rule {
                    tests: vec![Condition::ge("P-P", 2)],
                    class: Discourse,
                    coverage: Coverage {
                        positives: 6,
                        negatives: 4,
                    },
                },
                Rule {
                    tests: vec![Condition::eq("O-P*", "false")],
                    class: Sentential,
                    coverage: Coverage {
                        positives: 9,
                        negatives: 1,
                    },
                },
            ],
            default: Discourse,
            conflict_strategy: strategy,
        }
    }

    #[test]
    fn conflict_strategies() {
        let e = example(0, 3, "false", Sentential);
        assert_eq!(
            two_rule_set(ConflictStrategy::MostAccurate)
                .predict(&e)
                .unwrap(),
            Sentential
        );
        assert_eq!(
            two_rule_set(ConflictStrategy::FirstMatch)
                .predict(&e)
                .unwrap(),
            Discourse
        );
        let none = example(1, 1, "true", Sentential);
        assert_eq!(
            two_rule_set(ConflictStrategy::FirstMatch)
                .predict(&none)
                .unwrap(),
            Discourse
        );
    }

    #[test]
    fn explicit_targets_choose_default_among_the_rest() {
        let counts = ClassCounts([10, 3, 4]);
        let (targets, default) = plan(&counts, &TargetClasses::Explicit(vec![Discourse]));
        assert_eq!(targets, [Discourse]);
        assert_eq!(default, Unknown);
        let (targets, default) = plan(&counts, &TargetClasses::Auto);
        assert_eq!(default, Discourse);
        assert_eq!(targets, [Sentential, Unknown]);
    }
}
