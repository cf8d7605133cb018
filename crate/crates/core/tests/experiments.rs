use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use cuephrase::baselines::{fit_default_class, DefaultClassModel};
use cuephrase::corpus::{Classification, Dataset, TOKEN};
use cuephrase::eval::ConfidenceInterval;
use cuephrase::experiments::{
    parse_report_csv, render_report, run_experiment, run_with_learner, ExperimentConfig,
    ExperimentData, ExperimentSet, Flag, LearnerKind, ReportFormat, Subset,
};
use cuephrase::ingest::synthetic::{now_preset, paper_shaped};
use cuephrase::model::{Learner, TreeLearner};
use cuephrase::tree::{ClassMode, TreeOptions};
use cuephrase::{Classifier, Error};

/// Majority-class learner that counts its invocations and remembers whether
/// each training set carried the token feature.
#[derive(Default)]
struct Recording {
    calls: AtomicUsize,
    saw_token: Mutex<Vec<bool>>,
}

impl Learner for Recording {
    type Model = DefaultClassModel;

    fn fit(&self, train: &Dataset) -> cuephrase::Result<DefaultClassModel> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.saw_token
            .lock()
            .unwrap()
            .push(train.schema().contains(TOKEN));
        fit_default_class(train)
    }
}

fn cv_data(seed: u64) -> ExperimentData {
    ExperimentData {
        main: paper_shaped(seed).unwrap(),
        train: None,
    }
}

#[test]
fn set_two_sweep_invokes_learner_per_set_and_fold() {
    let mut config = ExperimentConfig::new(ExperimentSet::Two, LearnerKind::Tree);
    config.subsets = vec![Subset::Classifiable];
    let sets = config.resolved_feature_sets().unwrap();
    assert_eq!(sets.len(), 27);
    let learner = Recording::default();
    let table = run_with_learner(&config, &cv_data(1), &learner, "count", Some(&sets)).unwrap();
    assert_eq!(learner.calls.load(Ordering::SeqCst), 27 * 10);
    assert!(learner.saw_token.lock().unwrap().iter().all(|t| !t));
    let names: Vec<&str> = table
        .rows
        .iter()
        .filter(|r| !r.reference)
        .map(|r| r.feature_set.as_str())
        .collect();
    let expected: Vec<&str> = sets.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, expected);
}

#[test]
fn set_three_models_see_the_token() {
    let mut config = ExperimentConfig::new(ExperimentSet::Three, LearnerKind::Tree);
    config.subsets = vec![Subset::ClassifiableNonConjuncts];
    config.folds = 5;
    let sets = config.resolved_feature_sets().unwrap();
    let learner = Recording::default();
    run_with_learner(&config, &cv_data(2), &learner, "count", Some(&sets)).unwrap();
    assert_eq!(learner.calls.load(Ordering::SeqCst), 27 * 5);
    assert!(learner.saw_token.lock().unwrap().iter().all(|&t| t));
}

#[test]
fn reports_are_reproducible_and_flags_are_sound() {
    let mut config = ExperimentConfig::new(ExperimentSet::Two, LearnerKind::Rules);
    config.feature_sets = vec!["prosody".into(), "O-P*".into(), "speech-text".into()];
    config.seed = 7;
    let data = cv_data(3);
    let a = run_experiment(&config, &data).unwrap();
    let b = run_experiment(&config, &data).unwrap();
    for format in [ReportFormat::Text, ReportFormat::Csv] {
        assert_eq!(
            render_report(&a, format).unwrap(),
            render_report(&b, format).unwrap()
        );
    }
    let refs: Vec<_> = a.rows.iter().filter(|r| r.reference).collect();
    assert_eq!(refs.len(), 2);
    // flags come only from non-overlap with some reference interval
    for row in a.rows.iter().filter(|r| !r.reference) {
        for (col, cell) in row.cells.iter().enumerate() {
            let against = |f: fn(&_, &_) -> bool| {
                refs.iter()
                    .any(|r| f(&cell.interval, &r.cells[col].interval))
            };
            match cell.flag {
                Flag::Better => {
                    assert!(against(|m: &ConfidenceInterval, r: &ConfidenceInterval| m
                        .upper()
                        < r.lower()))
                }
                Flag::Worse => {
                    assert!(against(|m: &ConfidenceInterval, r: &ConfidenceInterval| r
                        .upper()
                        < m.lower()))
                }
                Flag::None => {}
            }
        }
    }
    let mut other_seed = config.clone();
    other_seed.seed = 8;
    let c = run_experiment(&other_seed, &data).unwrap();
    assert_ne!(
        render_report(&a, ReportFormat::Csv).unwrap(),
        render_report(&c, ReportFormat::Csv).unwrap()
    );
}

#[test]
fn csv_report_round_trips() {
    let mut config = ExperimentConfig::new(ExperimentSet::Two, LearnerKind::Tree);
    config.feature_sets = vec!["P-P".into(), "A".into()];
    let table = run_experiment(&config, &cv_data(4)).unwrap();
    let records = parse_report_csv(&render_report(&table, ReportFormat::Csv).unwrap()).unwrap();
    let mut it = records.iter();
    for row in &table.rows {
        for (column, cell) in table.columns.iter().zip(&row.cells) {
            let r = it.next().unwrap();
            assert_eq!(
                (&r.feature_set, &r.column, r.reference, r.flag),
                (&row.feature_set, column, row.reference, cell.flag)
            );
            assert_eq!(r.error, cell.interval.point);
            assert_eq!(r.margin, cell.interval.margin);
        }
    }
    assert!(it.next().is_none());
}

#[test]
fn set_one_trains_on_the_now_corpus() {
    let data = ExperimentData {
        main: paper_shaped(5).unwrap(),
        train: Some(now_preset(5).unwrap()),
    };
    let config = ExperimentConfig::new(ExperimentSet::One, LearnerKind::Tree);
    let table = run_experiment(&config, &data).unwrap();
    let columns: Vec<&str> = table.columns.iter().map(String::as_str).collect();
    assert_eq!(
        columns,
        ["classifiable (n=878)", "classifiable-non-conjuncts (n=495)"]
    );
    assert!(table
        .rows
        .iter()
        .all(|r| r.feature_set != "P-L" && r.feature_set != "length"));
    assert!(table.rows.iter().any(|r| r.feature_set == "prosody"));
    // holdout intervals use the test subset sizes
    assert!(table
        .rows
        .iter()
        .all(|r| r.cells[0].interval.n_or_folds == 878));

    let mut textual = config.clone();
    textual.feature_sets = vec!["text".into()];
    assert!(matches!(
        run_experiment(&textual, &data),
        Err(Error::Config(_))
    ));
}

#[test]
fn set_four_is_three_class() {
    let d = paper_shaped(6).unwrap();
    let mut config = ExperimentConfig::new(ExperimentSet::Four, LearnerKind::Tree);
    config.feature_sets = vec!["speech-text+".into()];
    let table = run_experiment(
        &config,
        &ExperimentData {
            main: d.clone(),
            train: None,
        },
    )
    .unwrap();
    assert_eq!(table.columns, ["all (n=953)"]);

    // a three-class learner may predict unknown; a two-class one cannot train here
    let three = TreeLearner {
        options: TreeOptions {
            classes: ClassMode::ThreeClass,
            min_branch_support: 1,
            ..TreeOptions::default()
        },
        unpruned: true,
    };
    let t = three
        .fit(
            &d.project(&cuephrase::corpus::resolve_feature_set("speech-text+").unwrap())
                .unwrap(),
        )
        .unwrap();
    let predicted = t.predict_all(&d).unwrap();
    assert!(predicted.contains(&Classification::Unknown));
    assert!(TreeLearner::default().fit(&d).is_err());
}

#[test]
fn baseline_learners_report_one_row() {
    for learner in [
        LearnerKind::BaselineProsodic,
        LearnerKind::BaselineTextual,
        LearnerKind::BaselineDefault,
    ] {
        let config = ExperimentConfig::new(ExperimentSet::Two, learner);
        let table = run_experiment(&config, &cv_data(7)).unwrap();
        assert_eq!(table.rows.iter().filter(|r| !r.reference).count(), 1);
    }
}
