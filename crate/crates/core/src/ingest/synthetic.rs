//! Seeded synthetic corpora.
//!
//! [`generate_synthetic`] draws features from per-feature priors and labels
//! each example with the first planted rule it satisfies, optionally flipping
//! the label to another class. [`PaperShapedPreset`] instead fixes the exact
//! judge-pair and token counts of the original multiple cue phrase corpus and
//! draws features conditioned on the class.

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{
    accent_star_of, build_canonical_schema, orthography_star_of, Classification, Condition,
    Dataset, Example, FeatureSchema, FeatureValue, JudgeLabel, JudgePair, ACCENT, ACCENT_STAR, I_L,
    I_P, NA, O_P, O_P_STAR, O_S, O_S_STAR, P_L, P_P, TEXTUAL_FEATURES, TOKEN, TOKENS,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ValuePrior {
    Weighted(Vec<(FeatureValue, f64)>),
    /// Uniform over an inclusive integer range.
    Uniform {
        lo: u32,
        hi: u32,
    },
}

impl ValuePrior {
    pub fn symbolic(weights: &[(&str, f64)]) -> Self {
        ValuePrior::Weighted(
            weights
                .iter()
                .map(|(v, w)| (FeatureValue::sym(v), *w))
                .collect(),
        )
    }

    pub fn numeric(weights: &[(u32, f64)]) -> Self {
        ValuePrior::Weighted(
            weights
                .iter()
                .map(|(v, w)| (FeatureValue::Numeric(*v), *w))
                .collect(),
        )
    }

    /// `first` with probability `p`, otherwise uniform over `rest_lo..=rest_hi`.
    fn spike(first: u32, p: f64, rest_lo: u32, rest_hi: u32) -> Self {
        let rest = (rest_hi - rest_lo + 1) as f64;
        let mut w = vec![(first, p)];
        w.extend((rest_lo..=rest_hi).map(|v| (v, (1.0 - p) / rest)));
        ValuePrior::numeric(&w)
    }

    fn validate(&self, schema: &FeatureSchema, feature: &str) -> Result<()> {
        let decl = schema
            .get(feature)
            .ok_or_else(|| Error::Spec(format!("prior for unknown feature {feature}")))?;
        match self {
            ValuePrior::Weighted(weights) => {
                check_weights(
                    weights.iter().map(|(_, w)| *w),
                    &format!("prior of {feature}"),
                )?;
                for (v, _) in weights {
                    decl.validate(v).map_err(|e| Error::Spec(e.to_string()))?;
                }
            }
            ValuePrior::Uniform { lo, hi } => {
                decl.validate(&FeatureValue::Numeric(*lo))
                    .map_err(|e| Error::Spec(e.to_string()))?;
                if lo > hi {
                    return Err(Error::Spec(format!(
                        "empty range {lo}..={hi} for {feature}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn sample(&self, rng: &mut impl Rng) -> FeatureValue {
        match self {
            ValuePrior::Weighted(weights) => {
                let index =
                    WeightedIndex::new(weights.iter().map(|(_, w)| *w)).expect("validated weights");
                weights[index.sample(rng)].0.clone()
            }
            ValuePrior::Uniform { lo, hi } => FeatureValue::Numeric(rng.gen_range(*lo..=*hi)),
        }
    }
}

fn check_weights(weights: impl Iterator<Item = f64>, what: &str) -> Result<()> {
    let mut any_positive = false;
    for w in weights {
        if !(w >= 0.0 && w.is_finite()) {
            return Err(Error::Spec(format!(
                "{what}: weight {w} is not a non-negative number"
            )));
        }
        any_positive |= w > 0.0;
    }
    if !any_positive {
        return Err(Error::Spec(format!("{what}: no positive weight")));
    }
    Ok(())
}

/// Priors used for features a spec leaves unconstrained. Textual features
/// never draw NA here; NA comes only from untranscribed examples.
pub fn default_prior(schema: &FeatureSchema, feature: &str) -> ValuePrior {
    match feature {
        P_L => ValuePrior::Uniform { lo: 1, hi: 20 },
        P_P => ValuePrior::Uniform { lo: 1, hi: 10 },
        I_L => ValuePrior::Uniform { lo: 1, hi: 10 },
        I_P => ValuePrior::Uniform { lo: 1, hi: 5 },
        _ => {
            let vocab = schema
                .get(feature)
                .and_then(|d| d.vocabulary())
                .expect("symbolic canonical feature");
            let values: Vec<(&str, f64)> = vocab
                .iter()
                .filter(|v| *v != NA)
                .map(|v| (v.as_str(), 1.0))
                .collect();
            ValuePrior::symbolic(&values)
        }
    }
}

/// Conjunctive condition and the class it plants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedRule {
    /// Empty means "always".
    pub conditions: Vec<Condition>,
    pub class: Classification,
}

impl PlantedRule {
    pub fn new(conditions: Vec<Condition>, class: Classification) -> Self {
        PlantedRule { conditions, class }
    }

    fn matches(&self, values: &BTreeMap<String, FeatureValue>) -> bool {
        self.conditions
            .iter()
            .all(|c| values.get(&c.feature).is_some_and(|v| c.matches_value(v)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub total_count: usize,
    /// Class distribution for examples no planted rule matches.
    pub class_weights: Vec<(Classification, f64)>,
    pub token_weights: Vec<(String, f64)>,
    pub planted_rules: Vec<PlantedRule>,
    pub noise_rate: f64,
    pub value_priors: BTreeMap<String, ValuePrior>,
    /// Probability that an example's textual features are all NA.
    pub untranscribed_rate: f64,
}

impl SyntheticSpec {
    /// "P-P >= 2 then sentential, otherwise discourse" with P-P = 1 drawn 60%
    /// of the time, so sentential is the minority class.
    pub fn planted_position(total_count: usize, noise_rate: f64) -> Self {
        SyntheticSpec {
            total_count,
            class_weights: vec![
                (Classification::Discourse, 1.0),
                (Classification::Sentential, 1.0),
            ],
            token_weights: TOKENS.iter().map(|t| (t.to_string(), 1.0)).collect(),
            planted_rules: vec![
                PlantedRule::new(vec![Condition::ge(P_P, 2)], Classification::Sentential),
                PlantedRule::new(vec![], Classification::Discourse),
            ],
            noise_rate,
            value_priors: BTreeMap::from([(P_P.to_string(), ValuePrior::spike(1, 0.6, 2, 10))]),
            untranscribed_rate: 0.0,
        }
    }

    pub fn validate(&self, schema: &FeatureSchema) -> Result<()> {
        check_weights(self.class_weights.iter().map(|(_, w)| *w), "class weights")?;
        check_weights(self.token_weights.iter().map(|(_, w)| *w), "token weights")?;
        let token_decl = schema.get(TOKEN).expect("canonical schema has T");
        for (t, _) in &self.token_weights {
            token_decl
                .validate(&FeatureValue::sym(t))
                .map_err(|e| Error::Spec(e.to_string()))?;
        }
        for (name, rate) in [
            ("noise rate", self.noise_rate),
            ("untranscribed rate", self.untranscribed_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::Spec(format!("{name} {rate} outside [0, 1]")));
            }
        }
        for rule in &self.planted_rules {
            for c in &rule.conditions {
                c.validate(schema).map_err(|e| Error::Spec(e.to_string()))?;
            }
        }
        for (feature, prior) in &self.value_priors {
            prior.validate(schema, feature)?;
        }
        Ok(())
    }

    /// Classes an example can end up with, in class order.
    fn label_universe(&self) -> Vec<Classification> {
        Classification::ALL
            .into_iter()
            .filter(|c| {
                self.class_weights.iter().any(|(k, w)| k == c && *w > 0.0)
                    || self.planted_rules.iter().any(|r| r.class == *c)
            })
            .collect()
    }
}

/// Fills in derived features and keeps phrase lengths at least as large as
/// the positions inside them.
fn finish_values(values: &mut BTreeMap<String, FeatureValue>) {
    let num =
        |values: &BTreeMap<String, FeatureValue>, k: &str| values[k].as_numeric().expect("numeric");
    let il = num(values, I_L).max(num(values, I_P));
    values.insert(I_L.into(), FeatureValue::Numeric(il));
    let pl = num(values, P_L).max(num(values, P_P)).max(il);
    values.insert(P_L.into(), FeatureValue::Numeric(pl));

    for (base, derived, map) in [
        (
            ACCENT,
            ACCENT_STAR,
            accent_star_of as fn(&str) -> Option<&'static str>,
        ),
        (O_P, O_P_STAR, orthography_star_of),
        (O_S, O_S_STAR, orthography_star_of),
    ] {
        let v =
            map(values[base].as_symbolic().expect("symbolic")).expect("base value in vocabulary");
        values.insert(derived.into(), FeatureValue::sym(v));
    }
}

fn draw_values(
    schema: &FeatureSchema,
    priors: &BTreeMap<String, ValuePrior>,
    token: &str,
    untranscribed: bool,
    rng: &mut impl Rng,
) -> BTreeMap<String, FeatureValue> {
    let mut values = BTreeMap::new();
    for name in schema.names() {
        let value = if name == TOKEN {
            FeatureValue::sym(token)
        } else if untranscribed && TEXTUAL_FEATURES.contains(&name) {
            FeatureValue::sym(NA)
        } else {
            match priors.get(name) {
                Some(prior) => prior.sample(rng),
                None => default_prior(schema, name).sample(rng),
            }
        };
        values.insert(name.to_string(), value);
    }
    finish_values(&mut values);
    values
}

/// Draws `spec.total_count` examples over the canonical schema.
pub fn generate_synthetic(spec: &SyntheticSpec, seed: u64) -> Result<Dataset> {
    let schema = build_canonical_schema();
    spec.validate(&schema)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes =
        WeightedIndex::new(spec.class_weights.iter().map(|(_, w)| *w)).expect("validated");
    let tokens = WeightedIndex::new(spec.token_weights.iter().map(|(_, w)| *w)).expect("validated");
    let universe = spec.label_universe();

    let mut examples = Vec::with_capacity(spec.total_count);
    for i in 0..spec.total_count {
        let token = &spec.token_weights[tokens.sample(&mut rng)].0;
        let untranscribed = rng.gen_bool(spec.untranscribed_rate);
        let values = draw_values(&schema, &spec.value_priors, token, untranscribed, &mut rng);
        let mut class = match spec.planted_rules.iter().find(|r| r.matches(&values)) {
            Some(rule) => rule.class,
            None => spec.class_weights[classes.sample(&mut rng)].0,
        };
        if rng.gen_bool(spec.noise_rate) {
            let others: Vec<Classification> =
                universe.iter().copied().filter(|&c| c != class).collect();
            if let Some(&flipped) = others.choose(&mut rng) {
                class = flipped;
            }
        }
        examples.push(Example::new(
            &schema,
            format!("s{i:05}"),
            values,
            JudgePair::agreeing(class),
        )?);
    }
    Dataset::new(schema, examples)
}

/// Class-conditional feature priors loosely following the prosodic and
/// textual tendencies of discourse and sentential usages.
fn class_profile(class: Classification) -> BTreeMap<String, ValuePrior> {
    let mut p = BTreeMap::new();
    let mut put = |k: &str, v: ValuePrior| {
        p.insert(k.to_string(), v);
    };
    match class {
        Classification::Discourse => {
            put(
                P_P,
                ValuePrior::numeric(&[(1, 0.8), (2, 0.08), (3, 0.05), (4, 0.04), (5, 0.03)]),
            );
            put(I_P, ValuePrior::numeric(&[(1, 0.9), (2, 0.05), (3, 0.05)]));
            put(P_L, ValuePrior::Uniform { lo: 1, hi: 14 });
            put(I_L, ValuePrior::Uniform { lo: 1, hi: 6 });
            put(
                "I-C",
                ValuePrior::symbolic(&[("only", 0.4), ("only cue phrases", 0.15), ("other", 0.45)]),
            );
            put(
                ACCENT,
                ValuePrior::symbolic(&[
                    ("H*", 0.12),
                    ("L*", 0.25),
                    ("L*+H", 0.05),
                    ("L+H*", 0.08),
                    ("H*+L", 0.10),
                    ("H+L*", 0.03),
                    ("deaccented", 0.32),
                    ("ambiguous", 0.05),
                ]),
            );
            put(
                "C-P",
                ValuePrior::symbolic(&[("true", 0.3), ("false", 0.7)]),
            );
            put(
                "C-S",
                ValuePrior::symbolic(&[("true", 0.3), ("false", 0.7)]),
            );
            put(
                O_P,
                ValuePrior::symbolic(&[
                    ("comma", 0.2),
                    ("dash", 0.05),
                    ("period", 0.25),
                    ("paragraph", 0.3),
                    ("false", 0.2),
                ]),
            );
            put(
                O_S,
                ValuePrior::symbolic(&[
                    ("comma", 0.25),
                    ("dash", 0.05),
                    ("period", 0.05),
                    ("false", 0.65),
                ]),
            );
            put(
                "POS",
                pos_prior(&[
                    ("adverb", 0.5),
                    ("coordinating conjunction", 0.15),
                    ("subordinating conjunction", 0.1),
                ]),
            );
        }
        _ => {
            put(P_P, ValuePrior::spike(1, 0.15, 2, 12));
            put(I_P, ValuePrior::spike(1, 0.35, 2, 8));
            put(P_L, ValuePrior::Uniform { lo: 2, hi: 20 });
            put(I_L, ValuePrior::Uniform { lo: 2, hi: 12 });
            put(
                "I-C",
                ValuePrior::symbolic(&[
                    ("only", 0.03),
                    ("only cue phrases", 0.02),
                    ("other", 0.95),
                ]),
            );
            put(
                ACCENT,
                ValuePrior::symbolic(&[
                    ("H*", 0.35),
                    ("L*", 0.08),
                    ("L*+H", 0.04),
                    ("L+H*", 0.10),
                    ("H*+L", 0.10),
                    ("H+L*", 0.03),
                    ("deaccented", 0.25),
                    ("ambiguous", 0.05),
                ]),
            );
            put(
                "C-P",
                ValuePrior::symbolic(&[("true", 0.15), ("false", 0.85)]),
            );
            put(
                "C-S",
                ValuePrior::symbolic(&[("true", 0.1), ("false", 0.9)]),
            );
            put(
                O_P,
                ValuePrior::symbolic(&[
                    ("comma", 0.08),
                    ("dash", 0.02),
                    ("period", 0.05),
                    ("paragraph", 0.02),
                    ("false", 0.83),
                ]),
            );
            put(
                O_S,
                ValuePrior::symbolic(&[
                    ("comma", 0.15),
                    ("dash", 0.03),
                    ("period", 0.12),
                    ("false", 0.7),
                ]),
            );
            put(
                "POS",
                pos_prior(&[
                    ("adverb", 0.2),
                    ("coordinating conjunction", 0.3),
                    ("preposition", 0.15),
                    ("subordinating conjunction", 0.1),
                    ("article", 0.05),
                ]),
            );
        }
    }
    p
}

/// Listed part-of-speech weights, with 0.02 for every other tag.
fn pos_prior(listed: &[(&str, f64)]) -> ValuePrior {
    let schema = build_canonical_schema();
    let vocab = schema
        .get("POS")
        .and_then(|d| d.vocabulary())
        .expect("POS vocabulary");
    let weights: Vec<(&str, f64)> = vocab
        .iter()
        .filter(|v| *v != NA)
        .map(|v| {
            let w = listed
                .iter()
                .find(|(k, _)| k == v)
                .map_or(0.02, |(_, w)| *w);
            (v.as_str(), w)
        })
        .collect();
    ValuePrior::symbolic(&weights)
}

fn draw_profiled(
    schema: &FeatureSchema,
    class: Classification,
    token: &str,
    untranscribed: bool,
    rng: &mut impl Rng,
) -> BTreeMap<String, FeatureValue> {
    let profile_class = match class {
        Classification::Unknown if rng.gen_bool(0.5) => Classification::Discourse,
        Classification::Unknown => Classification::Sentential,
        c => c,
    };
    draw_values(
        schema,
        &class_profile(profile_class),
        token,
        untranscribed,
        rng,
    )
}

/// Corpus with the judge-pair counts of the multiple cue phrase corpus
/// (953 examples, 878 classifiable, 509 non-conjuncts of which 495 are
/// classifiable) and its published token frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaperShapedPreset {
    /// Examples whose textual features are all NA.
    pub untranscribed: usize,
}

impl Default for PaperShapedPreset {
    fn default() -> Self {
        PaperShapedPreset { untranscribed: 39 }
    }
}

/// Judge-pair counts for all cue phrases and for non-conjuncts, in
/// [`JudgePair::table_order`].
pub const ALL_PAIR_COUNTS: [usize; 9] = [341, 537, 59, 5, 0, 0, 0, 5, 6];
pub const NON_CONJUNCT_PAIR_COUNTS: [usize; 9] = [202, 293, 11, 1, 0, 0, 0, 0, 2];

impl PaperShapedPreset {
    fn slots(&self, rng: &mut impl Rng) -> Vec<(String, JudgePair)> {
        use JudgeLabel::{Ambiguous as Q, Discourse as D, Sentential as S};
        let pairs = JudgePair::table_order();

        // non-conjunct token counts: the most frequent non-conjunct and the
        // four rarest are fixed, the remaining 432 are spread evenly
        let fixed: [(&str, usize); 5] = [
            ("now", 69),
            ("essentially", 2),
            ("otherwise", 2),
            ("since", 2),
            ("therefore", 2),
        ];
        let others: Vec<&str> = TOKENS
            .iter()
            .copied()
            .filter(|t| !["and", "or", "but"].contains(t) && !fixed.iter().any(|(f, _)| f == t))
            .collect();
        let mut token_counts: Vec<(&str, usize)> = fixed.to_vec();
        for (i, t) in others.iter().enumerate() {
            token_counts.push((t, if i < 16 { 17 } else { 16 }));
        }

        // the non-conjunct unknowns whose tokens are known
        let known: [(&str, JudgePair); 14] = [
            ("actually", JudgePair::new(Q, Q)),
            ("actually", JudgePair::new(Q, Q)),
            ("actually", JudgePair::new(Q, Q)),
            ("because", JudgePair::new(Q, Q)),
            ("because", JudgePair::new(Q, Q)),
            ("essentially", JudgePair::new(Q, Q)),
            ("essentially", JudgePair::new(Q, Q)),
            ("generally", JudgePair::new(Q, Q)),
            ("indeed", JudgePair::new(Q, Q)),
            ("like", JudgePair::new(Q, Q)),
            ("now", JudgePair::new(Q, Q)),
            ("like", JudgePair::new(D, S)),
            ("like", JudgePair::new(Q, S)),
            ("otherwise", JudgePair::new(Q, S)),
        ];
        let mut slots: Vec<(String, JudgePair)> =
            known.iter().map(|(t, p)| (t.to_string(), *p)).collect();
        let mut open: Vec<String> = Vec::new();
        for (t, n) in token_counts {
            let taken = known.iter().filter(|(k, _)| *k == t).count();
            open.extend(std::iter::repeat_n(t.to_string(), n - taken));
        }
        open.shuffle(rng);
        let (dd, ss) = (NON_CONJUNCT_PAIR_COUNTS[0], NON_CONJUNCT_PAIR_COUNTS[1]);
        debug_assert_eq!(open.len(), dd + ss);
        for (i, t) in open.into_iter().enumerate() {
            slots.push((t, if i < dd { pairs[0] } else { pairs[1] }));
        }

        // conjuncts take whatever the full-corpus counts leave over
        let mut conjuncts: Vec<String> = [("and", 320), ("or", 40), ("but", 84)]
            .iter()
            .flat_map(|(t, n)| std::iter::repeat_n(t.to_string(), *n))
            .collect();
        conjuncts.shuffle(rng);
        let mut conjunct_pairs = Vec::new();
        for (k, pair) in pairs.iter().enumerate() {
            let n = ALL_PAIR_COUNTS[k] - NON_CONJUNCT_PAIR_COUNTS[k];
            conjunct_pairs.extend(std::iter::repeat_n(*pair, n));
        }
        debug_assert_eq!(conjunct_pairs.len(), conjuncts.len());
        slots.extend(conjuncts.into_iter().zip(conjunct_pairs));
        slots
    }

    pub fn generate(&self, seed: u64) -> Result<Dataset> {
        let schema = build_canonical_schema();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots = self.slots(&mut rng);
        if self.untranscribed > slots.len() {
            return Err(Error::Spec(format!(
                "{} untranscribed examples exceed the corpus size",
                self.untranscribed
            )));
        }
        slots.shuffle(&mut rng);
        let mut untranscribed = vec![false; slots.len()];
        for i in rand::seq::index::sample(&mut rng, slots.len(), self.untranscribed) {
            untranscribed[i] = true;
        }
        let examples = slots
            .into_iter()
            .enumerate()
            .map(|(i, (token, judges))| {
                let class = crate::corpus::classify_judgment(judges);
                let values = draw_profiled(&schema, class, &token, untranscribed[i], &mut rng);
                Example::new(&schema, format!("p{i:04}"), values, judges)
            })
            .collect::<Result<_>>()?;
        Dataset::new(schema, examples)
    }
}

pub fn paper_shaped(seed: u64) -> Result<Dataset> {
    PaperShapedPreset::default().generate(seed)
}

/// 100 examples of "now", all classifiable (55 discourse, 45 sentential),
/// drawn from the same class profiles as the paper-shaped corpus. The
/// corpus carries no P-L or I-L column.
pub fn now_preset(seed: u64) -> Result<Dataset> {
    let schema = build_canonical_schema();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes: Vec<Classification> = std::iter::repeat_n(Classification::Discourse, 55)
        .chain(std::iter::repeat_n(Classification::Sentential, 45))
        .collect();
    classes.shuffle(&mut rng);
    let examples = classes
        .into_iter()
        .enumerate()
        .map(|(i, class)| {
            let values = draw_profiled(&schema, class, "now", false, &mut rng);
            Example::new(
                &schema,
                format!("n{i:03}"),
                values,
                JudgePair::agreeing(class),
            )
        })
        .collect::<Result<_>>()?;
    let kept: Vec<String> = schema
        .names()
        .filter(|n| *n != P_L && *n != I_L)
        .map(str::to_string)
        .collect();
    Dataset::new(schema, examples)?.project_names(&kept)
}
