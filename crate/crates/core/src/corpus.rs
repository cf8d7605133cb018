//! Feature schema, class labels, examples and the named feature-set registry.
//!
//! Every cue phrase occurrence is an [`Example`]: a value for each declared
//! feature, the labels assigned by the two judges and the class derived from
//! them. Datasets are immutable once built; filtering and projection return
//! new datasets and preserve example order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const P_L: &str = "P-L";
pub const P_P: &str = "P-P";
pub const I_L: &str = "I-L";
pub const I_P: &str = "I-P";
pub const I_C: &str = "I-C";
pub const ACCENT: &str = "A";
pub const ACCENT_STAR: &str = "A*";
pub const C_P: &str = "C-P";
pub const C_S: &str = "C-S";
pub const O_P: &str = "O-P";
pub const O_P_STAR: &str = "O-P*";
pub const O_S: &str = "O-S";
pub const O_S_STAR: &str = "O-S*";
pub const POS: &str = "POS";
pub const TOKEN: &str = "T";

/// Symbolic value meaning "not applicable" (untranscribed examples).
pub const NA: &str = "NA";

pub const PROSODIC_FEATURES: [&str; 7] = [P_L, P_P, I_L, I_P, I_C, ACCENT, ACCENT_STAR];
pub const TEXTUAL_FEATURES: [&str; 7] = [C_P, C_S, O_P, O_P_STAR, O_S, O_S_STAR, POS];

pub const TOKENS: [&str; 34] = [
    "actually",
    "also",
    "although",
    "and",
    "basically",
    "because",
    "but",
    "essentially",
    "except",
    "finally",
    "first",
    "further",
    "generally",
    "however",
    "indeed",
    "like",
    "look",
    "next",
    "no",
    "now",
    "ok",
    "or",
    "otherwise",
    "right",
    "say",
    "second",
    "see",
    "similarly",
    "since",
    "so",
    "then",
    "therefore",
    "well",
    "yes",
];

/// Tokens removed by [`Dataset::filter_non_conjuncts`].
pub const CONJUNCTS: [&str; 3] = ["and", "or", "but"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Discourse,
    Sentential,
    Unknown,
}

impl Classification {
    pub const ALL: [Classification; 3] = [
        Classification::Discourse,
        Classification::Sentential,
        Classification::Unknown,
    ];

    /// Fixed preference order used to break frequency ties.
    pub const TIE_ORDER: [Classification; 3] = [
        Classification::Sentential,
        Classification::Discourse,
        Classification::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Discourse => "discourse",
            Classification::Sentential => "sentential",
            Classification::Unknown => "unknown",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Classification::Discourse => 0,
            Classification::Sentential => 1,
            Classification::Unknown => 2,
        }
    }

    pub(crate) fn tie_rank(self) -> usize {
        match self {
            Classification::Sentential => 0,
            Classification::Discourse => 1,
            Classification::Unknown => 2,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "discourse" => Ok(Classification::Discourse),
            "sentential" => Ok(Classification::Sentential),
            "unknown" => Ok(Classification::Unknown),
            other => Err(Error::Usage(format!("unknown class {other:?}"))),
        }
    }
}

/// Per-class tallies indexed by [`Classification::index`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts(pub [usize; 3]);

impl ClassCounts {
    pub fn of<'a>(classes: impl IntoIterator<Item = &'a Classification>) -> Self {
        let mut counts = ClassCounts::default();
        for c in classes {
            counts.add(*c);
        }
        counts
    }

    pub fn add(&mut self, class: Classification) {
        self.0[class.index()] += 1;
    }

    pub fn get(&self, class: Classification) -> usize {
        self.0[class.index()]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Most frequent class; ties go sentential, then discourse, then unknown.
    pub fn majority(&self) -> Classification {
        Classification::TIE_ORDER
            .into_iter()
            .max_by(|a, b| {
                self.get(*a)
                    .cmp(&self.get(*b))
                    .then(b.tie_rank().cmp(&a.tie_rank()))
            })
            .expect("three classes")
    }

    pub fn is_pure(&self) -> bool {
        self.0.iter().filter(|&&c| c > 0).count() <= 1
    }
}

/// One judge's call on a cue phrase: discourse, sentential or ambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JudgeLabel {
    #[serde(rename = "D")]
    Discourse,
    #[serde(rename = "S")]
    Sentential,
    #[serde(rename = "?")]
    Ambiguous,
}

impl JudgeLabel {
    pub const ALL: [JudgeLabel; 3] = [
        JudgeLabel::Discourse,
        JudgeLabel::Sentential,
        JudgeLabel::Ambiguous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            JudgeLabel::Discourse => "D",
            JudgeLabel::Sentential => "S",
            JudgeLabel::Ambiguous => "?",
        }
    }
}

impl fmt::Display for JudgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for JudgeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(JudgeLabel::Discourse),
            "S" => Ok(JudgeLabel::Sentential),
            "?" => Ok(JudgeLabel::Ambiguous),
            other => Err(Error::Validation {
                feature: "judge".into(),
                value: other.into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JudgePair {
    pub first: JudgeLabel,
    pub second: JudgeLabel,
}

impl JudgePair {
    pub fn new(first: JudgeLabel, second: JudgeLabel) -> Self {
        JudgePair { first, second }
    }

    /// The agreeing pair that yields `class` (`?/?` for unknown).
    pub fn agreeing(class: Classification) -> Self {
        let label = match class {
            Classification::Discourse => JudgeLabel::Discourse,
            Classification::Sentential => JudgeLabel::Sentential,
            Classification::Unknown => JudgeLabel::Ambiguous,
        };
        JudgePair::new(label, label)
    }

    /// All nine pairs in the column order of the judgement table:
    /// D/D, S/S, ?/?, D/S, S/D, D/?, S/?, ?/D, ?/S.
    pub fn table_order() -> [JudgePair; 9] {
        use JudgeLabel::*;
        [
            JudgePair::new(Discourse, Discourse),
            JudgePair::new(Sentential, Sentential),
            JudgePair::new(Ambiguous, Ambiguous),
            JudgePair::new(Discourse, Sentential),
            JudgePair::new(Sentential, Discourse),
            JudgePair::new(Discourse, Ambiguous),
            JudgePair::new(Sentential, Ambiguous),
            JudgePair::new(Ambiguous, Discourse),
            JudgePair::new(Ambiguous, Sentential),
        ]
    }
}

impl fmt::Display for JudgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.first, self.second)
    }
}

/// Only agreement on discourse or on sentential yields a definite class.
pub fn classify_judgment(pair: JudgePair) -> Classification {
    match (pair.first, pair.second) {
        (JudgeLabel::Discourse, JudgeLabel::Discourse) => Classification::Discourse,
        (JudgeLabel::Sentential, JudgeLabel::Sentential) => Classification::Sentential,
        _ => Classification::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureKind {
    Symbolic(Vec<String>),
    /// Non-negative integers no smaller than `min`.
    Numeric {
        min: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureDecl {
    pub name: String,
    /// Descriptive name used when rendering models.
    pub long_name: String,
    pub kind: FeatureKind,
}

impl FeatureDecl {
    pub fn symbolic(name: &str, long_name: &str, values: &[&str]) -> Self {
        FeatureDecl {
            name: name.into(),
            long_name: long_name.into(),
            kind: FeatureKind::Symbolic(values.iter().map(|v| v.to_string()).collect()),
        }
    }

    pub fn numeric(name: &str, long_name: &str, min: u32) -> Self {
        FeatureDecl {
            name: name.into(),
            long_name: long_name.into(),
            kind: FeatureKind::Numeric { min },
        }
    }

    pub fn vocabulary(&self) -> Option<&[String]> {
        match &self.kind {
            FeatureKind::Symbolic(values) => Some(values),
            FeatureKind::Numeric { .. } => None,
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, FeatureKind::Numeric { .. })
    }

    pub fn validate(&self, value: &FeatureValue) -> Result<()> {
        let ok = match (&self.kind, value) {
            (FeatureKind::Symbolic(vocab), FeatureValue::Symbolic(token)) => {
                vocab.iter().any(|v| v == token)
            }
            (FeatureKind::Numeric { min }, FeatureValue::Numeric(n)) => n >= min,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Validation {
                feature: self.name.clone(),
                value: value.to_string(),
            })
        }
    }

    /// Parses a raw field according to this declaration.
    pub fn parse_value(&self, raw: &str) -> Result<FeatureValue> {
        let value = match self.kind {
            FeatureKind::Symbolic(_) => FeatureValue::Symbolic(raw.to_string()),
            FeatureKind::Numeric { .. } => match raw.parse::<u32>() {
                Ok(n) => FeatureValue::Numeric(n),
                Err(_) => {
                    return Err(Error::Validation {
                        feature: self.name.clone(),
                        value: raw.into(),
                    })
                }
            },
        };
        self.validate(&value)?;
        Ok(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    features: Vec<FeatureDecl>,
}

impl FeatureSchema {
    pub fn new(features: Vec<FeatureDecl>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for decl in &features {
            if !seen.insert(decl.name.as_str()) {
                return Err(Error::SchemaMismatch(format!(
                    "duplicate feature {}",
                    decl.name
                )));
            }
            if let FeatureKind::Symbolic(vocab) = &decl.kind {
                if vocab.is_empty() {
                    return Err(Error::SchemaMismatch(format!(
                        "feature {} has an empty vocabulary",
                        decl.name
                    )));
                }
                let distinct: BTreeSet<_> = vocab.iter().collect();
                if distinct.len() != vocab.len() {
                    return Err(Error::SchemaMismatch(format!(
                        "feature {} has duplicate vocabulary values",
                        decl.name
                    )));
                }
            }
        }
        Ok(FeatureSchema { features })
    }

    pub fn features(&self) -> &[FeatureDecl] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    pub fn get(&self, name: &str) -> Option<&FeatureDecl> {
        self.features.iter().find(|f| f.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|f| f.name.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Keeps only `names`, in this schema's order.
    pub fn restrict(&self, names: &[String]) -> Result<FeatureSchema> {
        for name in names {
            if !self.contains(name) {
                return Err(Error::SchemaMismatch(format!(
                    "feature {name} is not declared"
                )));
            }
        }
        Ok(FeatureSchema {
            features: self
                .features
                .iter()
                .filter(|f| names.contains(&f.name))
                .cloned()
                .collect(),
        })
    }
}

/// The fifteen prosodic, textual and lexical features in canonical order.
pub fn build_canonical_schema() -> FeatureSchema {
    let schema = FeatureSchema::new(vec![
        FeatureDecl::numeric(P_L, "length of intonational phrase", 1),
        FeatureDecl::numeric(P_P, "position in intonational phrase", 1),
        FeatureDecl::numeric(I_L, "length of intermediate phrase", 1),
        FeatureDecl::numeric(I_P, "position in intermediate phrase", 1),
        FeatureDecl::symbolic(
            I_C,
            "composition of intermediate phrase",
            &["only", "only cue phrases", "other"],
        ),
        FeatureDecl::symbolic(
            ACCENT,
            "accent",
            &[
                "H*",
                "L*",
                "L*+H",
                "L+H*",
                "H*+L",
                "H+L*",
                "deaccented",
                "ambiguous",
            ],
        ),
        FeatureDecl::symbolic(
            ACCENT_STAR,
            "accent*",
            &["H*", "L*", "complex", "deaccented", "ambiguous"],
        ),
        FeatureDecl::symbolic(C_P, "preceding cue phrase", &["true", "false", NA]),
        FeatureDecl::symbolic(C_S, "succeeding cue phrase", &["true", "false", NA]),
        FeatureDecl::symbolic(
            O_P,
            "preceding orthography",
            &["comma", "dash", "period", "paragraph", "false", NA],
        ),
        FeatureDecl::symbolic(O_P_STAR, "preceding orthography*", &["true", "false", NA]),
        FeatureDecl::symbolic(
            O_S,
            "succeeding orthography",
            &["comma", "dash", "period", "false", NA],
        ),
        FeatureDecl::symbolic(O_S_STAR, "succeeding orthography*", &["true", "false", NA]),
        FeatureDecl::symbolic(
            POS,
            "part-of-speech",
            &[
                "article",
                "coordinating conjunction",
                "cardinal numeral",
                "subordinating conjunction",
                "preposition",
                "adjective",
                "singular or mass noun",
                "singular proper noun",
                "intensifier",
                "adverb",
                "verb base form",
                NA,
            ],
        ),
        FeatureDecl::symbolic(TOKEN, "token", &TOKENS),
    ]);
    schema.expect("canonical schema is well-formed")
}

/// Abstraction of accent values into the coarser accent* vocabulary.
pub fn accent_star_of(accent: &str) -> Option<&'static str> {
    Some(match accent {
        "H*" => "H*",
        "L*" => "L*",
        "L*+H" | "L+H*" | "H*+L" | "H+L*" => "complex",
        "deaccented" => "deaccented",
        "ambiguous" => "ambiguous",
        _ => return None,
    })
}

/// Abstraction of an orthography value into true/false/NA.
pub fn orthography_star_of(orthography: &str) -> Option<&'static str> {
    Some(match orthography {
        "comma" | "dash" | "period" | "paragraph" => "true",
        "false" => "false",
        NA => NA,
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureValue {
    Symbolic(String),
    Numeric(u32),
}

impl FeatureValue {
    pub fn sym(token: &str) -> Self {
        FeatureValue::Symbolic(token.to_string())
    }

    pub fn as_symbolic(&self) -> Option<&str> {
        match self {
            FeatureValue::Symbolic(s) => Some(s),
            FeatureValue::Numeric(_) => None,
        }
    }

    pub fn as_numeric(&self) -> Option<u32> {
        match self {
            FeatureValue::Numeric(n) => Some(*n),
            FeatureValue::Symbolic(_) => None,
        }
    }
}

impl fmt::Display for FeatureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureValue::Symbolic(s) => f.write_str(s),
            FeatureValue::Numeric(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Operator {
    pub fn symbol(self) -> &'static str {
        match self {
            Operator::Eq => "=",
            Operator::Ne => "≠",
            Operator::Le => "≤",
            Operator::Ge => "≥",
        }
    }
}

/// A single `feature operator value` test, used by rule antecedents and by
/// planted generator rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub feature: String,
    pub op: Operator,
    pub value: FeatureValue,
}

impl Condition {
    pub fn new(feature: &str, op: Operator, value: FeatureValue) -> Self {
        Condition {
            feature: feature.into(),
            op,
            value,
        }
    }

    pub fn eq(feature: &str, value: &str) -> Self {
        Condition::new(feature, Operator::Eq, FeatureValue::sym(value))
    }

    pub fn ne(feature: &str, value: &str) -> Self {
        Condition::new(feature, Operator::Ne, FeatureValue::sym(value))
    }

    pub fn le(feature: &str, value: u32) -> Self {
        Condition::new(feature, Operator::Le, FeatureValue::Numeric(value))
    }

    pub fn ge(feature: &str, value: u32) -> Self {
        Condition::new(feature, Operator::Ge, FeatureValue::Numeric(value))
    }

    /// Checks that the operator suits the feature kind and the value is legal.
    pub fn validate(&self, schema: &FeatureSchema) -> Result<()> {
        let decl = schema.get(&self.feature).ok_or_else(|| {
            Error::SchemaMismatch(format!("feature {} is not declared", self.feature))
        })?;
        let op_ok = match self.op {
            Operator::Eq | Operator::Ne => !decl.is_numeric(),
            Operator::Le | Operator::Ge => decl.is_numeric(),
        };
        if !op_ok {
            return Err(Error::SchemaMismatch(format!(
                "operator {} cannot test feature {}",
                self.op.symbol(),
                self.feature
            )));
        }
        if decl.is_numeric() {
            // thresholds need not be attainable values
            self.value
                .as_numeric()
                .map(|_| ())
                .ok_or_else(|| Error::Validation {
                    feature: self.feature.clone(),
                    value: self.value.to_string(),
                })
        } else {
            decl.validate(&self.value)
        }
    }

    pub fn matches(&self, example: &Example) -> Result<bool> {
        let actual = example.require(&self.feature)?;
        Ok(self.matches_value(actual))
    }

    pub fn matches_value(&self, actual: &FeatureValue) -> bool {
        match (self.op, actual, &self.value) {
            (Operator::Eq, a, v) => a == v,
            (Operator::Ne, a, v) => a != v,
            (Operator::Le, FeatureValue::Numeric(a), FeatureValue::Numeric(v)) => a <= v,
            (Operator::Ge, FeatureValue::Numeric(a), FeatureValue::Numeric(v)) => a >= v,
            _ => false,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.feature, self.op.symbol(), self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example {
    pub id: String,
    pub values: BTreeMap<String, FeatureValue>,
    pub judges: JudgePair,
    pub gold: Classification,
    /// The cue phrase itself; mirrors feature T when it is present.
    pub token: String,
}

impl Example {
    /// Builds an example, deriving the gold class from the judges and the
    /// token from feature T.
    pub fn new(
        schema: &FeatureSchema,
        id: impl Into<String>,
        values: BTreeMap<String, FeatureValue>,
        judges: JudgePair,
    ) -> Result<Self> {
        let token = match values.get(TOKEN) {
            Some(FeatureValue::Symbolic(t)) => t.clone(),
            _ => String::new(),
        };
        let example = Example {
            id: id.into(),
            values,
            judges,
            gold: classify_judgment(judges),
            token,
        };
        example.validate(schema)?;
        Ok(example)
    }

    pub fn validate(&self, schema: &FeatureSchema) -> Result<()> {
        if self.id.is_empty() || self.id.contains([',', '\n', '\r']) {
            return Err(Error::InvalidExample(format!(
                "bad example id {:?}",
                self.id
            )));
        }
        if self.gold != classify_judgment(self.judges) {
            return Err(Error::InvalidExample(format!(
                "example {}: class {} disagrees with judges {}",
                self.id, self.gold, self.judges
            )));
        }
        for decl in schema.features() {
            let value = self.values.get(&decl.name).ok_or_else(|| {
                Error::SchemaMismatch(format!("example {} lacks feature {}", self.id, decl.name))
            })?;
            decl.validate(value)?;
        }
        if self.values.len() != schema.len() {
            let extra = self
                .values
                .keys()
                .find(|k| !schema.contains(k))
                .cloned()
                .unwrap_or_default();
            return Err(Error::SchemaMismatch(format!(
                "example {} has undeclared feature {extra}",
                self.id
            )));
        }
        if let Some(FeatureValue::Symbolic(t)) = self.values.get(TOKEN) {
            if *t != self.token {
                return Err(Error::InvalidExample(format!(
                    "example {}: token {:?} differs from feature T {t:?}",
                    self.id, self.token
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, feature: &str) -> Option<&FeatureValue> {
        self.values.get(feature)
    }

    pub fn require(&self, feature: &str) -> Result<&FeatureValue> {
        self.values.get(feature).ok_or_else(|| {
            Error::SchemaMismatch(format!("example {} lacks feature {feature}", self.id))
        })
    }

    pub fn symbolic(&self, feature: &str) -> Result<&str> {
        self.require(feature)?
            .as_symbolic()
            .ok_or_else(|| Error::SchemaMismatch(format!("feature {feature} is not symbolic")))
    }

    pub fn numeric(&self, feature: &str) -> Result<u32> {
        self.require(feature)?
            .as_numeric()
            .ok_or_else(|| Error::SchemaMismatch(format!("feature {feature} is not numeric")))
    }

    pub fn is_conjunct(&self) -> bool {
        CONJUNCTS.contains(&self.token.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dataset {
    schema: FeatureSchema,
    examples: Vec<Example>,
}

impl Dataset {
    pub fn new(schema: FeatureSchema, examples: Vec<Example>) -> Result<Self> {
        for e in &examples {
            e.validate(&schema)?;
        }
        Ok(Dataset { schema, examples })
    }

    pub fn empty(schema: FeatureSchema) -> Self {
        Dataset {
            schema,
            examples: Vec::new(),
        }
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn class_counts(&self) -> ClassCounts {
        ClassCounts::of(self.examples.iter().map(|e| &e.gold))
    }

    /// Subset of examples selected by index, in the given order.
    pub fn select(&self, indices: &[usize]) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            examples: indices.iter().map(|&i| self.examples[i].clone()).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(&Example) -> bool) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            examples: self.examples.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    /// Examples both judges placed in the same definite class.
    pub fn filter_classifiable(&self) -> Dataset {
        self.filter(|e| e.gold != Classification::Unknown)
    }

    /// Examples whose token is not "and", "or" or "but".
    pub fn filter_non_conjuncts(&self) -> Dataset {
        self.filter(|e| !e.is_conjunct())
    }

    /// Restricts every example to the members of `fs`.
    pub fn project(&self, fs: &FeatureSet) -> Result<Dataset> {
        self.project_names(&fs.members)
    }

    pub fn project_names(&self, names: &[String]) -> Result<Dataset> {
        let schema = self.schema.restrict(names)?;
        let examples = self
            .examples
            .iter()
            .map(|e| Example {
                values: e
                    .values
                    .iter()
                    .filter(|(k, _)| schema.contains(k))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect(),
                ..e.clone()
            })
            .collect();
        Ok(Dataset { schema, examples })
    }
}

/// Free-function form of [`Dataset::filter_classifiable`].
pub fn filter_classifiable(d: &Dataset) -> Dataset {
    d.filter_classifiable()
}

/// Free-function form of [`Dataset::filter_non_conjuncts`].
pub fn filter_non_conjuncts(d: &Dataset) -> Dataset {
    d.filter_non_conjuncts()
}

pub fn project(d: &Dataset, fs: &FeatureSet) -> Result<Dataset> {
    d.project(fs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Prosodic,
    Textual,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSet {
    pub name: String,
    /// Member feature names in canonical order.
    pub members: Vec<String>,
    pub tokenized: bool,
}

impl FeatureSet {
    fn from_names(name: &str, members: &[&str]) -> FeatureSet {
        let canonical = build_canonical_schema();
        let members: Vec<String> = canonical
            .names()
            .filter(|n| members.contains(n))
            .map(str::to_string)
            .collect();
        FeatureSet {
            name: name.into(),
            tokenized: members.iter().any(|m| m == TOKEN),
            members,
        }
    }

    pub fn contains(&self, feature: &str) -> bool {
        self.members.iter().any(|m| m == feature)
    }

    /// The "+" variant: members plus the token feature.
    pub fn with_token(&self) -> FeatureSet {
        if self.tokenized {
            return self.clone();
        }
        let mut names: Vec<&str> = self.members.iter().map(String::as_str).collect();
        names.push(TOKEN);
        FeatureSet::from_names(&format!("{}+", self.name), &names)
    }

    /// Drops `excluded` features, keeping the name; `None` when nothing remains.
    pub fn without(&self, excluded: &[&str]) -> Option<FeatureSet> {
        let members: Vec<String> = self
            .members
            .iter()
            .filter(|m| !excluded.contains(&m.as_str()))
            .cloned()
            .collect();
        if members.is_empty() {
            return None;
        }
        Some(FeatureSet {
            name: self.name.clone(),
            tokenized: members.iter().any(|m| m == TOKEN),
            members,
        })
    }

    /// Prosodic, textual or mixed, ignoring the token feature.
    pub fn modality(&self) -> Modality {
        let prosodic = self
            .members
            .iter()
            .any(|m| PROSODIC_FEATURES.contains(&m.as_str()));
        let textual = self
            .members
            .iter()
            .any(|m| TEXTUAL_FEATURES.contains(&m.as_str()));
        match (prosodic, textual) {
            (true, false) => Modality::Prosodic,
            (false, true) => Modality::Textual,
            _ => Modality::Mixed,
        }
    }
}

/// The 14 single, 13 multiple and 27 tokenized feature sets.
#[derive(Debug, Clone)]
pub struct FeatureSetRegistry {
    sets: Vec<FeatureSet>,
}

impl FeatureSetRegistry {
    pub fn standard() -> Self {
        let singles = PROSODIC_FEATURES
            .iter()
            .chain(TEXTUAL_FEATURES.iter())
            .map(|f| FeatureSet::from_names(f, &[f]));

        let multiples: [(&str, &[&str]); 13] = [
            ("prosody", &[P_L, P_P, I_L, I_P, I_C, ACCENT, ACCENT_STAR]),
            ("hl93features", &[I_P, I_C, ACCENT, ACCENT_STAR]),
            ("phrasing", &[P_L, P_P, I_L, I_P, I_C]),
            ("length", &[P_L, I_L]),
            ("position", &[P_P, I_P]),
            ("intonational", &[P_L, P_P]),
            ("intermediate", &[I_L, I_P, I_C]),
            ("text", &[C_P, C_S, O_P, O_P_STAR, O_S, O_S_STAR, POS]),
            ("adjacency", &[C_P, C_S]),
            ("orthography", &[O_P, O_P_STAR, O_S, O_S_STAR]),
            ("preceding", &[C_P, O_P, O_P_STAR]),
            ("succeeding", &[C_S, O_S, O_S_STAR]),
            (
                "speech-text",
                &[
                    P_L,
                    P_P,
                    I_L,
                    I_P,
                    I_C,
                    ACCENT,
                    ACCENT_STAR,
                    C_P,
                    C_S,
                    O_P,
                    O_P_STAR,
                    O_S,
                    O_S_STAR,
                    POS,
                ],
            ),
        ];

        let mut sets: Vec<FeatureSet> = singles
            .chain(
                multiples
                    .iter()
                    .map(|(name, members)| FeatureSet::from_names(name, members)),
            )
            .collect();
        let tokenized: Vec<FeatureSet> = sets.iter().map(FeatureSet::with_token).collect();
        sets.extend(tokenized);
        FeatureSetRegistry { sets }
    }

    pub fn all(&self) -> &[FeatureSet] {
        &self.sets
    }

    /// The 27 sets without the token feature, singles first.
    pub fn non_tokenized(&self) -> impl Iterator<Item = &FeatureSet> {
        self.sets.iter().filter(|s| !s.tokenized)
    }

    pub fn tokenized(&self) -> impl Iterator<Item = &FeatureSet> {
        self.sets.iter().filter(|s| s.tokenized)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.sets.iter().position(|s| s.name == name)
    }

    pub fn resolve(&self, name: &str) -> Result<&FeatureSet> {
        self.sets
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownFeatureSet {
                name: name.into(),
                valid: self.sets.iter().map(|s| s.name.clone()).collect(),
            })
    }
}

pub fn resolve_feature_set(name: &str) -> Result<FeatureSet> {
    FeatureSetRegistry::standard().resolve(name).cloned()
}
