//! Hand-built reference models: the manual prosodic and textual decision
//! procedures and the majority-class baseline.

use serde::{Deserialize, Serialize};

use crate::corpus::{Classification, Dataset, Example, ACCENT_STAR, I_C, I_P, NA, O_P_STAR};
use crate::error::{Error, Result};
use crate::model::{Classifier, Learner};

/// Result of walking the manual prosodic model: the numbered line that
/// decided, or `None` for an initial, accent-ambiguous cue phrase in a larger
/// intermediate phrase, which the model does not cover.
pub fn hl93_prosodic_line(e: &Example) -> Result<Option<(u8, Classification)>> {
    use Classification::*;
    let composition = e.symbolic(I_C)?;
    if composition == "only" || composition == "only cue phrases" {
        return Ok(Some((1, Discourse)));
    }
    if e.numeric(I_P)? != 1 {
        return Ok(Some((8, Sentential)));
    }
    Ok(match e.symbolic(ACCENT_STAR)? {
        "deaccented" => Some((4, Discourse)),
        "L*" => Some((5, Discourse)),
        "H*" => Some((6, Sentential)),
        "complex" => Some((7, Sentential)),
        _ => None,
    })
}

/// The manual prosodic model. Uncovered cases fall to sentential.
pub fn hl93_prosodic(e: &Example) -> Result<Classification> {
    Ok(hl93_prosodic_line(e)?.map_or(Classification::Sentential, |(_, c)| c))
}

/// Like [`hl93_prosodic`] but uncovered cases are an error.
pub fn hl93_prosodic_strict(e: &Example) -> Result<Classification> {
    hl93_prosodic_line(e)?.map(|(_, c)| c).ok_or_else(|| {
        Error::UnmappedCase(format!(
            "example {}: ambiguous accent at initial position of a larger intermediate phrase",
            e.id
        ))
    })
}

/// The manual textual model: preceding orthography means discourse.
pub fn hl93_textual(e: &Example) -> Result<Classification> {
    match e.symbolic(O_P_STAR)? {
        "true" | NA => Ok(Classification::Discourse),
        _ => Ok(Classification::Sentential),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hl93Prosodic {
    pub strict: bool,
}

impl Classifier for Hl93Prosodic {
    fn predict(&self, e: &Example) -> Result<Classification> {
        if self.strict {
            hl93_prosodic_strict(e)
        } else {
            hl93_prosodic(e)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hl93Textual;

impl Classifier for Hl93Textual {
    fn predict(&self, e: &Example) -> Result<Classification> {
        hl93_textual(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefaultClassModel {
    pub majority: Classification,
}

impl DefaultClassModel {
    pub fn predict(&self, _e: &Example) -> Classification {
        self.majority
    }
}

impl Classifier for DefaultClassModel {
    fn predict(&self, e: &Example) -> Result<Classification> {
        Ok(DefaultClassModel::predict(self, e))
    }
}

/// Majority class of `train`; ties go to sentential.
pub fn fit_default_class(train: &Dataset) -> Result<DefaultClassModel> {
    if train.is_empty() {
        return Err(Error::Fit("default class of an empty training set".into()));
    }
    Ok(DefaultClassModel {
        majority: train.class_counts().majority(),
    })
}

/// Learner that ignores its training data and returns a fixed model.
#[derive(Debug, Clone, Default)]
pub struct FixedLearner<M>(pub M);

impl<M: Classifier + Clone + Send + Sync> Learner for FixedLearner<M> {
    type Model = M;

    fn fit(&self, _train: &Dataset) -> Result<M> {
        Ok(self.0.clone())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DefaultClassLearner;

impl Learner for DefaultClassLearner {
    type Model = DefaultClassModel;

    fn fit(&self, train: &Dataset) -> Result<DefaultClassModel> {
        fit_default_class(train)
    }
}
