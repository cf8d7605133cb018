//! Error estimation and significance testing.
//!
//! Holdout error rates get a normal-approximation interval of two standard
//! errors. Cross-validated error rates get a t interval over the fold errors.
//! One error rate is significantly lower than another when its interval lies
//! entirely below the other's.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Classification, Dataset};
use crate::error::{Error, Result};
use crate::model::{Classifier, Learner};

/// Standard errors either side of a holdout estimate.
pub const HOLDOUT_MULTIPLIER: f64 = 2.0;

/// Two-sided 95% critical values of Student's t for 1..=30 degrees of freedom.
const T_975: [f64; 30] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160,
    2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
    2.052, 2.048, 2.045, 2.042,
];

/// 97.5th percentile of Student's t. Beyond 30 degrees of freedom the df=30
/// value is used, which slightly overstates the margin.
pub fn t_quantile_975(df: usize) -> Result<f64> {
    match df {
        0 => Err(Error::Usage(
            "t quantile needs at least one degree of freedom".into(),
        )),
        1..=30 => Ok(T_975[df - 1]),
        _ => Ok(T_975[29]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalMethod {
    HoldoutNormal,
    CvT,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub point: f64,
    pub margin: f64,
    pub method: IntervalMethod,
    /// Test-set size for holdout intervals, fold count for CV intervals.
    pub n_or_folds: usize,
}

impl ConfidenceInterval {
    pub fn lower(&self) -> f64 {
        self.point - self.margin
    }

    pub fn upper(&self) -> f64 {
        self.point + self.margin
    }
}

pub fn error_rate(predictions: &[Classification], gold: &[Classification]) -> Result<f64> {
    if predictions.len() != gold.len() {
        return Err(Error::Usage(format!(
            "{} predictions for {} gold labels",
            predictions.len(),
            gold.len()
        )));
    }
    if gold.is_empty() {
        return Err(Error::Usage("error rate of an empty test set".into()));
    }
    let wrong = predictions.iter().zip(gold).filter(|(p, g)| p != g).count();
    Ok(wrong as f64 / gold.len() as f64)
}

/// Misclassified count of `model` on `test`.
pub fn count_errors<M: Classifier + ?Sized>(model: &M, test: &Dataset) -> Result<usize> {
    let mut wrong = 0;
    for e in test.examples() {
        if model.predict(e)? != e.gold {
            wrong += 1;
        }
    }
    Ok(wrong)
}

pub fn holdout_interval(e: f64, n: usize) -> Result<ConfidenceInterval> {
    if n == 0 {
        return Err(Error::Usage(
            "holdout interval needs a non-empty test set".into(),
        ));
    }
    if !(0.0..=1.0).contains(&e) {
        return Err(Error::Usage(format!("error rate {e} outside [0, 1]")));
    }
    Ok(ConfidenceInterval {
        point: e,
        margin: HOLDOUT_MULTIPLIER * (e * (1.0 - e) / n as f64).sqrt(),
        method: IntervalMethod::HoldoutNormal,
        n_or_folds: n,
    })
}

/// Error rate and holdout interval of `model` on `test`.
pub fn holdout_evaluate<M: Classifier + ?Sized>(
    model: &M,
    test: &Dataset,
) -> Result<ConfidenceInterval> {
    if test.is_empty() {
        return Err(Error::Usage(
            "holdout evaluation on an empty test set".into(),
        ));
    }
    let wrong = count_errors(model, test)?;
    holdout_interval(wrong as f64 / test.len() as f64, test.len())
}

pub fn significantly_lower(a: &ConfidenceInterval, b: &ConfidenceInterval) -> bool {
    a.upper() < b.lower()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CvOptions {
    pub folds: usize,
    pub seed: u64,
    /// Deal each class across folds separately instead of a plain shuffle.
    pub stratified: bool,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions {
            folds: 10,
            seed: 0,
            stratified: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FoldResult<M> {
    pub index: usize,
    /// Dataset positions of the held-out examples, ascending.
    pub test_indices: Vec<usize>,
    pub errors: usize,
    pub error: f64,
    pub model: M,
}

impl<M> FoldResult<M> {
    pub fn test_size(&self) -> usize {
        self.test_indices.len()
    }
}

#[derive(Debug, Clone)]
pub struct CvReport<M> {
    pub folds: Vec<FoldResult<M>>,
    pub mean_error: f64,
    /// Sample standard deviation of the fold errors.
    pub std_dev: f64,
}

/// Splits `0..n` into `opts.folds` disjoint test folds whose sizes differ by
/// at most one. Each fold is returned in ascending order.
pub fn fold_assignment(d: &Dataset, opts: &CvOptions) -> Result<Vec<Vec<usize>>> {
    let (n, k) = (d.len(), opts.folds);
    if k < 2 {
        return Err(Error::Usage(format!(
            "cross-validation needs at least 2 folds, got {k}"
        )));
    }
    if n < k {
        return Err(Error::Usage(format!("{n} examples cannot fill {k} folds")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let order: Vec<usize> = if opts.stratified {
        let mut order = Vec::with_capacity(n);
        for class in Classification::ALL {
            let mut members: Vec<usize> =
                (0..n).filter(|&i| d.examples()[i].gold == class).collect();
            members.shuffle(&mut rng);
            order.extend(members);
        }
        order
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        order
    };
    let mut folds = vec![Vec::with_capacity(n / k + 1); k];
    if opts.stratified {
        // deal round-robin so every class is spread evenly
        for (j, &i) in order.iter().enumerate() {
            folds[j % k].push(i);
        }
    } else {
        let (base, extra) = (n / k, n % k);
        let mut start = 0;
        for (f, fold) in folds.iter_mut().enumerate() {
            let size = base + usize::from(f < extra);
            fold.extend_from_slice(&order[start..start + size]);
            start += size;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// k-fold cross-validation with a plain seeded shuffle.
pub fn cross_validate<L: Learner>(
    learner: &L,
    d: &Dataset,
    k: usize,
    seed: u64,
) -> Result<CvReport<L::Model>> {
    cross_validate_with(
        learner,
        d,
        &CvOptions {
            folds: k,
            seed,
            stratified: false,
        },
    )
}

/// Each fold trains a fresh model on the other folds and tests on itself.
/// Folds run in parallel; results are kept in fold order.
pub fn cross_validate_with<L: Learner>(
    learner: &L,
    d: &Dataset,
    opts: &CvOptions,
) -> Result<CvReport<L::Model>> {
    let folds = fold_assignment(d, opts)?;
    let results: Vec<FoldResult<L::Model>> = folds
        .par_iter()
        .enumerate()
        .map(|(index, test_indices)| {
            let mut in_test = vec![false; d.len()];
            for &i in test_indices {
                in_test[i] = true;
            }
            let train_indices: Vec<usize> = (0..d.len()).filter(|&i| !in_test[i]).collect();
            let model = learner.fit(&d.select(&train_indices))?;
            let test = d.select(test_indices);
            let errors = count_errors(&model, &test)?;
            Ok(FoldResult {
                index,
                test_indices: test_indices.clone(),
                errors,
                error: errors as f64 / test.len() as f64,
                model,
            })
        })
        .collect::<Result<_>>()?;
    let errors: Vec<f64> = results.iter().map(|f| f.error).collect();
    let (mean_error, std_dev) = mean_and_sample_sd(&errors);
    Ok(CvReport {
        folds: results,
        mean_error,
        std_dev,
    })
}

fn mean_and_sample_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Interval from fold errors alone.
pub fn cv_interval_from_errors(fold_errors: &[f64]) -> Result<ConfidenceInterval> {
    let k = fold_errors.len();
    if k < 2 {
        return Err(Error::Usage(format!(
            "CV interval needs at least 2 folds, got {k}"
        )));
    }
    let (mean, sd) = mean_and_sample_sd(fold_errors);
    Ok(ConfidenceInterval {
        point: mean,
        margin: t_quantile_975(k - 1)? * sd / (k as f64).sqrt(),
        method: IntervalMethod::CvT,
        n_or_folds: k,
    })
}

pub fn cv_interval<M>(report: &CvReport<M>) -> Result<ConfidenceInterval> {
    let errors: Vec<f64> = report.folds.iter().map(|f| f.error).collect();
    cv_interval_from_errors(&errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Classification::*;

    #[test]
    fn error_rate_basics() {
        assert_eq!(
            error_rate(&[Discourse, Sentential], &[Discourse, Sentential]).unwrap(),
            0.0
        );
        assert_eq!(
            error_rate(&[Unknown, Sentential], &[Discourse, Sentential]).unwrap(),
            0.5
        );
        assert!(error_rate(&[Discourse], &[]).is_err());
        assert!(error_rate(&[], &[]).is_err());
    }

    #[test]
    fn holdout_margins() {
        let ci = holdout_interval(0.388, 878).unwrap();
        assert!((ci.margin - 0.0329).abs() < 5e-4, "{}", ci.margin);
        assert!((holdout_interval(0.147, 495).unwrap().margin - 0.0318).abs() < 5e-4);
        assert_eq!(holdout_interval(0.0, 40).unwrap().margin, 0.0);
        assert!(holdout_interval(0.1, 0).is_err());
    }

    #[test]
    fn cv_margin_from_fold_errors() {
        let errors = [0.1, 0.1, 0.1, 0.1, 0.1, 0.2, 0.2, 0.2, 0.2, 0.2];
        let ci = cv_interval_from_errors(&errors).unwrap();
        // sample sd = sqrt(10 * 0.05^2 / 9)
        let sd = (10.0 * 0.0025f64 / 9.0).sqrt();
        assert!((sd - 0.0527).abs() < 1e-4);
        assert!((ci.margin - 2.262 * sd / 10f64.sqrt()).abs() < 1e-12);
        assert!((ci.margin - 0.0377).abs() < 1e-4);
        assert!(cv_interval_from_errors(&[0.3; 10]).unwrap().margin < 1e-12);
        assert!(cv_interval_from_errors(&[0.3]).is_err());
    }

    #[test]
    fn t_table_lookup() {
        assert_eq!(t_quantile_975(9).unwrap(), 2.262);
        assert_eq!(t_quantile_975(1).unwrap(), 12.706);
        assert_eq!(t_quantile_975(100).unwrap(), 2.042);
        assert!(t_quantile_975(0).is_err());
    }

    #[test]
    fn significance_rule() {
        let iv = |point, margin| ConfidenceInterval {
            point,
            margin,
            method: IntervalMethod::HoldoutNormal,
            n_or_folds: 100,
        };
        assert!(significantly_lower(&iv(0.246, 0.030), &iv(0.388, 0.032)));
        assert!(!significantly_lower(&iv(0.3, 0.05), &iv(0.3, 0.05)));
        assert!(!significantly_lower(&iv(0.388, 0.032), &iv(0.246, 0.030)));
    }
}
