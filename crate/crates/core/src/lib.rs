//! Learning classifiers that tell discourse from sentential uses of cue
//! phrases, from prosodic and textual features.

pub mod baselines;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod experiments;
pub mod ingest;
pub mod model;
pub mod rules;
pub mod tree;

mod encoded;

pub use corpus::{Classification, Dataset, Example, FeatureSchema, FeatureSet, FeatureValue};
pub use error::{Error, Result};
pub use model::{Classifier, Learner, Model, ModelFile, RuleLearner, TreeLearner};
