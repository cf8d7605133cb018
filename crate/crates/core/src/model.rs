//! Common interface over learned and hand-built classifiers.

use serde::{Deserialize, Serialize};

use crate::baselines::{DefaultClassModel, Hl93Prosodic, Hl93Textual};
use crate::corpus::{Classification, Dataset, Example};
use crate::error::Result;
use crate::rules::{induce_rules, RuleOptions, RuleSet};
use crate::tree::{induce_tree, prune_tree, DecisionTree, TreeOptions};

pub trait Classifier {
    fn predict(&self, e: &Example) -> Result<Classification>;

    fn predict_all(&self, d: &Dataset) -> Result<Vec<Classification>> {
        d.examples().iter().map(|e| self.predict(e)).collect()
    }
}

/// Anything that fits a classifier from scratch on a training set.
pub trait Learner: Sync {
    type Model: Classifier + Send;

    fn fit(&self, train: &Dataset) -> Result<Self::Model>;
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TreeLearner {
    pub options: TreeOptions,
    /// Return the unpruned tree instead of the pruned one.
    pub unpruned: bool,
}

impl Learner for TreeLearner {
    type Model = DecisionTree;

    fn fit(&self, train: &Dataset) -> Result<DecisionTree> {
        let tree = induce_tree(train, &self.options)?;
        Ok(if self.unpruned {
            tree
        } else {
            prune_tree(&tree, &self.options)
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RuleLearner {
    pub options: RuleOptions,
}

impl Learner for RuleLearner {
    type Model = RuleSet;

    fn fit(&self, train: &Dataset) -> Result<RuleSet> {
        induce_rules(train, &self.options)
    }
}

/// A serializable model of any kind the toolkit produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "model", rename_all = "snake_case")]
pub enum Model {
    Tree(DecisionTree),
    Rules(RuleSet),
    Hl93Prosodic(Hl93Prosodic),
    Hl93Textual(Hl93Textual),
    DefaultClass(DefaultClassModel),
}

impl Classifier for Model {
    fn predict(&self, e: &Example) -> Result<Classification> {
        match self {
            Model::Tree(t) => t.predict(e),
            Model::Rules(r) => r.predict(e),
            Model::Hl93Prosodic(m) => m.predict(e),
            Model::Hl93Textual(m) => m.predict(e),
            Model::DefaultClass(m) => Ok(m.predict(e)),
        }
    }
}

impl From<DecisionTree> for Model {
    fn from(t: DecisionTree) -> Self {
        Model::Tree(t)
    }
}

impl From<RuleSet> for Model {
    fn from(r: RuleSet) -> Self {
        Model::Rules(r)
    }
}

/// On-disk form of a trained model together with the feature set it was trained on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub feature_set: String,
    pub three_class: bool,
    #[serde(flatten)]
    pub model: Model,
}
