//! The four experiment sets and their report tables.
//!
//! Set 1 trains on one corpus and tests on another, with prosodic feature
//! sets only. Set 2 cross-validates every non-tokenized feature set, Set 3
//! every tokenized one, and Set 4 cross-validates in three-class mode over
//! the full corpus including unknown examples.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{DefaultClassLearner, FixedLearner, Hl93Prosodic, Hl93Textual};
use crate::corpus::{
    Dataset, FeatureSet, FeatureSetRegistry, Modality, ACCENT_STAR, I_C, I_L, I_P, O_P_STAR, P_L,
};
use crate::error::{Error, Result};
use crate::eval::{
    cross_validate_with, cv_interval, holdout_evaluate, significantly_lower, ConfidenceInterval,
    CvOptions,
};
use crate::model::{Classifier, Learner, RuleLearner, TreeLearner};
use crate::rules::RuleOptions;
use crate::tree::{ClassMode, TreeOptions};

/// Features the Set 1 training corpus does not carry.
pub const SET1_MASK: [&str; 2] = [P_L, I_L];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExperimentSet {
    One,
    Two,
    Three,
    Four,
}

impl ExperimentSet {
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn class_mode(self) -> ClassMode {
        if self == ExperimentSet::Four {
            ClassMode::ThreeClass
        } else {
            ClassMode::TwoClass
        }
    }

    pub fn default_subsets(self) -> Vec<Subset> {
        match self {
            ExperimentSet::Four => vec![Subset::All],
            _ => vec![Subset::Classifiable, Subset::ClassifiableNonConjuncts],
        }
    }

    /// Registry names swept when the configuration names none.
    pub fn default_feature_sets(self) -> Vec<String> {
        let registry = FeatureSetRegistry::standard();
        let names = |sets: Vec<&FeatureSet>| sets.into_iter().map(|s| s.name.clone()).collect();
        match self {
            ExperimentSet::One => names(
                registry
                    .non_tokenized()
                    .filter(|s| {
                        s.modality() == Modality::Prosodic && s.without(&SET1_MASK).is_some()
                    })
                    .collect(),
            ),
            ExperimentSet::Two => names(registry.non_tokenized().collect()),
            ExperimentSet::Three => names(registry.tokenized().collect()),
            ExperimentSet::Four => names(registry.all().iter().collect()),
        }
    }
}

impl TryFrom<u8> for ExperimentSet {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(ExperimentSet::One),
            2 => Ok(ExperimentSet::Two),
            3 => Ok(ExperimentSet::Three),
            4 => Ok(ExperimentSet::Four),
            _ => Err(Error::Config(format!(
                "no experiment set {n}; expected 1 to 4"
            ))),
        }
    }
}

impl fmt::Display for ExperimentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LearnerKind {
    Tree,
    Rules,
    BaselineProsodic,
    BaselineTextual,
    BaselineDefault,
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 5] = [
        LearnerKind::Tree,
        LearnerKind::Rules,
        LearnerKind::BaselineProsodic,
        LearnerKind::BaselineTextual,
        LearnerKind::BaselineDefault,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LearnerKind::Tree => "tree",
            LearnerKind::Rules => "rules",
            LearnerKind::BaselineProsodic => "baseline-prosodic",
            LearnerKind::BaselineTextual => "baseline-textual",
            LearnerKind::BaselineDefault => "baseline-default",
        }
    }

    pub fn is_baseline(self) -> bool {
        !matches!(self, LearnerKind::Tree | LearnerKind::Rules)
    }
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LearnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LearnerKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown learner {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subset {
    All,
    Classifiable,
    ClassifiableNonConjuncts,
}

impl Subset {
    pub fn as_str(self) -> &'static str {
        match self {
            Subset::All => "all",
            Subset::Classifiable => "classifiable",
            Subset::ClassifiableNonConjuncts => "classifiable-non-conjuncts",
        }
    }

    pub fn apply(self, d: &Dataset) -> Dataset {
        match self {
            Subset::All => d.clone(),
            Subset::Classifiable => d.filter_classifiable(),
            Subset::ClassifiableNonConjuncts => d.filter_classifiable().filter_non_conjuncts(),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub set: ExperimentSet,
    pub learner: LearnerKind,
    /// Registry names; empty means the set's default sweep.
    pub feature_sets: Vec<String>,
    /// Empty means the set's default subsets.
    pub subsets: Vec<Subset>,
    pub folds: usize,
    pub seed: u64,
    pub stratified: bool,
    pub tree_options: TreeOptions,
    pub rule_options: RuleOptions,
}

impl ExperimentConfig {
    pub fn new(set: ExperimentSet, learner: LearnerKind) -> Self {
        ExperimentConfig {
            set,
            learner,
            feature_sets: Vec::new(),
            subsets: Vec::new(),
            folds: 10,
            seed: 0,
            stratified: false,
            tree_options: TreeOptions::default(),
            rule_options: RuleOptions::default(),
        }
    }

    pub fn subsets(&self) -> Vec<Subset> {
        if self.subsets.is_empty() {
            self.set.default_subsets()
        } else {
            self.subsets.clone()
        }
    }

    /// Resolves and checks the feature sets the run will sweep, in order.
    pub fn resolved_feature_sets(&self) -> Result<Vec<FeatureSet>> {
        let registry = FeatureSetRegistry::standard();
        let names = if self.feature_sets.is_empty() {
            self.set.default_feature_sets()
        } else {
            self.feature_sets.clone()
        };
        let mut out = Vec::with_capacity(names.len());
        for name in &names {
            let fs = registry.resolve(name)?;
            let fs = match self.set {
                ExperimentSet::One => {
                    if fs.tokenized || fs.modality() != Modality::Prosodic {
                        return Err(Error::Config(format!(
                            "set 1 uses prosodic feature sets only; {name} is not one"
                        )));
                    }
                    fs.without(&SET1_MASK).ok_or_else(|| {
                        Error::Config(format!(
                            "feature set {name} is empty once P-L and I-L are removed"
                        ))
                    })?
                }
                ExperimentSet::Two if fs.tokenized => {
                    return Err(Error::Config(format!(
                        "set 2 uses non-tokenized feature sets; {name} is tokenized"
                    )))
                }
                ExperimentSet::Three => fs.with_token(),
                _ => fs.clone(),
            };
            out.push(fs);
        }
        Ok(out)
    }

    pub fn validate(&self, data: &ExperimentData) -> Result<()> {
        match (self.set, &data.train) {
            (ExperimentSet::One, None) => {
                return Err(Error::Config(
                    "set 1 needs a separate training corpus".into(),
                ))
            }
            (ExperimentSet::One, Some(train)) if train == &data.main => {
                return Err(Error::Config(
                    "set 1 training and test corpora must differ".into(),
                ))
            }
            (ExperimentSet::One, _) => {}
            (set, Some(_)) => {
                return Err(Error::Config(format!(
                    "set {set} cross-validates one corpus and takes no training corpus"
                )))
            }
            (_, None) => {}
        }
        if self.set != ExperimentSet::One && self.folds < 2 {
            return Err(Error::Config(format!(
                "need at least 2 folds, got {}",
                self.folds
            )));
        }
        for subset in self.subsets() {
            match (self.set, subset) {
                (ExperimentSet::Four, Subset::All) => {}
                (ExperimentSet::Four, s) => {
                    return Err(Error::Config(format!("set 4 runs on subset all, not {s}")))
                }
                (set, Subset::All) => {
                    return Err(Error::Config(format!(
                        "set {set} is two-class and cannot include unknown examples"
                    )))
                }
                _ => {}
            }
        }
        if !self.learner.is_baseline() {
            self.resolved_feature_sets()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentData {
    /// Corpus tested on (Set 1) or cross-validated (Sets 2 to 4).
    pub main: Dataset,
    /// Training corpus for Set 1.
    pub train: Option<Dataset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    #[default]
    None,
    /// Significantly lower error than the reference.
    Better,
    /// Significantly higher error than the reference.
    Worse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub interval: ConfidenceInterval,
    pub flag: Flag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub feature_set: String,
    pub learner: String,
    /// Reference rows are the manual models other rows are compared with.
    pub reference: bool,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTable {
    pub title: String,
    /// Column labels, one per cell.
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
}

impl ReportTable {
    pub fn empty(title: &str, columns: Vec<String>) -> Self {
        ReportTable {
            title: title.into(),
            columns,
            rows: Vec::new(),
        }
    }
}

const MANUAL_PROSODIC: &str = "manual prosodic";
const MANUAL_TEXTUAL: &str = "manual textual";

fn has_features(d: &Dataset, names: &[&str]) -> bool {
    names.iter().all(|n| d.schema().contains(n))
}

/// Holdout intervals of the manual models on each test subset, when the
/// corpus carries the features they read.
fn reference_rows(tests: &[Dataset]) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let Some(first) = tests.first() else {
        return Ok(rows);
    };
    let specs: [(&str, &[&str], &(dyn Classifier + Sync)); 2] = [
        (
            MANUAL_PROSODIC,
            &[I_C, I_P, ACCENT_STAR],
            &Hl93Prosodic { strict: false },
        ),
        (MANUAL_TEXTUAL, &[O_P_STAR], &Hl93Textual),
    ];
    for (name, needs, model) in specs {
        if !has_features(first, needs) {
            continue;
        }
        let cells = tests
            .iter()
            .map(|t| {
                Ok(Cell {
                    interval: holdout_evaluate(model, t)?,
                    flag: Flag::None,
                })
            })
            .collect::<Result<_>>()?;
        rows.push(ReportRow {
            feature_set: name.into(),
            learner: "manual".into(),
            reference: true,
            cells,
        });
    }
    Ok(rows)
}

fn flag_against(model: &ConfidenceInterval, reference: &ConfidenceInterval) -> Flag {
    if significantly_lower(model, reference) {
        Flag::Better
    } else if significantly_lower(reference, model) {
        Flag::Worse
    } else {
        Flag::None
    }
}

/// Prosodic rows compare with the manual prosodic model, textual rows with
/// the manual textual model and mixed rows with whichever manual model has
/// the lower error on that subset.
fn apply_flags(row: &mut ReportRow, modality: Modality, refs: &[ReportRow]) {
    let find = |name: &str| refs.iter().find(|r| r.feature_set == name);
    for (col, cell) in row.cells.iter_mut().enumerate() {
        let reference = match modality {
            Modality::Prosodic => find(MANUAL_PROSODIC).map(|r| r.cells[col].interval),
            Modality::Textual => find(MANUAL_TEXTUAL).map(|r| r.cells[col].interval),
            Modality::Mixed => refs
                .iter()
                .map(|r| r.cells[col].interval)
                .min_by(|a, b| a.point.total_cmp(&b.point)),
        };
        if let Some(reference) = reference {
            cell.flag = flag_against(&cell.interval, &reference);
        }
    }
}

fn evaluate_one<L: Learner>(
    config: &ExperimentConfig,
    learner: &L,
    train: Option<&Dataset>,
    tests: &[Dataset],
    fs: Option<&FeatureSet>,
) -> Result<Vec<Cell>> {
    let view = |d: &Dataset| match fs {
        Some(fs) => d.project(fs),
        None => Ok(d.clone()),
    };
    let cv = CvOptions {
        folds: config.folds,
        seed: config.seed,
        stratified: config.stratified,
    };
    let model = match train {
        Some(train) => Some(learner.fit(&view(train)?)?),
        None => None,
    };
    tests
        .iter()
        .map(|t| {
            let t = view(t)?;
            let interval = match &model {
                Some(m) => holdout_evaluate(m, &t)?,
                None => cv_interval(&cross_validate_with(learner, &t, &cv)?)?,
            };
            Ok(Cell {
                interval,
                flag: Flag::None,
            })
        })
        .collect()
}

/// Runs a configuration with an explicit learner, one row per feature set
/// (or a single unprojected row when `feature_sets` is `None`).
pub fn run_with_learner<L: Learner>(
    config: &ExperimentConfig,
    data: &ExperimentData,
    learner: &L,
    label: &str,
    feature_sets: Option<&[FeatureSet]>,
) -> Result<ReportTable> {
    config.validate(data)?;
    let subsets = config.subsets();
    let tests: Vec<Dataset> = subsets.iter().map(|s| s.apply(&data.main)).collect();
    let train = data.train.as_ref().map(|t| t.filter_classifiable());
    let columns = subsets
        .iter()
        .zip(&tests)
        .map(|(s, t)| format!("{s} (n={})", t.len()))
        .collect();
    let title = format!("set {}, learner {label}", config.set);
    let mut table = ReportTable::empty(&title, columns);

    let refs = reference_rows(&tests)?;
    let rows: Vec<ReportRow> = match feature_sets {
        Some(sets) => sets
            .par_iter()
            .map(|fs| {
                let cells = evaluate_one(config, learner, train.as_ref(), &tests, Some(fs))?;
                let mut row = ReportRow {
                    feature_set: fs.name.clone(),
                    learner: label.into(),
                    reference: false,
                    cells,
                };
                apply_flags(&mut row, fs.modality(), &refs);
                Ok(row)
            })
            .collect::<Result<_>>()?,
        None => vec![ReportRow {
            feature_set: "-".into(),
            learner: label.into(),
            reference: false,
            cells: evaluate_one(config, learner, train.as_ref(), &tests, None)?,
        }],
    };
    table.rows = refs;
    table.rows.extend(rows);
    Ok(table)
}

pub fn run_experiment(config: &ExperimentConfig, data: &ExperimentData) -> Result<ReportTable> {
    config.validate(data)?;
    let label = config.learner.as_str();
    let mode = config.set.class_mode();
    match config.learner {
        LearnerKind::Tree => {
            let learner = TreeLearner {
                options: TreeOptions {
                    classes: mode,
                    ..config.tree_options.clone()
                },
                unpruned: false,
            };
            run_with_learner(
                config,
                data,
                &learner,
                label,
                Some(&config.resolved_feature_sets()?),
            )
        }
        LearnerKind::Rules => {
            let learner = RuleLearner {
                options: RuleOptions {
                    classes: mode,
                    ..config.rule_options.clone()
                },
            };
            run_with_learner(
                config,
                data,
                &learner,
                label,
                Some(&config.resolved_feature_sets()?),
            )
        }
        LearnerKind::BaselineProsodic => run_with_learner(
            config,
            data,
            &FixedLearner(Hl93Prosodic::default()),
            label,
            None,
        ),
        LearnerKind::BaselineTextual => {
            run_with_learner(config, data, &FixedLearner(Hl93Textual), label, None)
        }
        LearnerKind::BaselineDefault => {
            run_with_learner(config, data, &DefaultClassLearner, label, None)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Usage(format!("unknown report format {s:?}"))),
        }
    }
}

/// Percentages with one decimal: `15.5 ± 2.6`. Significantly better cells
/// get a trailing `*`, significantly worse ones are parenthesized.
pub fn format_cell(cell: &Cell) -> String {
    let body = format!(
        "{:.1} ± {:.1}",
        cell.interval.point * 100.0,
        cell.interval.margin * 100.0
    );
    match cell.flag {
        Flag::None => body,
        Flag::Better => format!("{body}*"),
        Flag::Worse => format!("({body})"),
    }
}

fn render_text(t: &ReportTable) -> String {
    let width = |s: &str| s.chars().count();
    let mut grid: Vec<Vec<String>> = vec![std::iter::once("feature set".to_string())
        .chain(t.columns.iter().cloned())
        .collect()];
    for row in &t.rows {
        grid.push(
            std::iter::once(row.feature_set.clone())
                .chain(row.cells.iter().map(format_cell))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|r| width(&r[c])).max().unwrap_or(0))
        .collect();
    let mut out = format!("{}\n", t.title);
    for r in &grid {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell}{}  ", " ".repeat(widths[c] - width(cell)));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CsvRecord {
    pub feature_set: String,
    pub learner: String,
    pub reference: bool,
    pub column: String,
    pub error: f64,
    pub margin: f64,
    pub flag: Flag,
}

fn render_csv(t: &ReportTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if t.rows.iter().all(|r| r.cells.is_empty()) {
        w.write_record([
            "feature_set",
            "learner",
            "reference",
            "column",
            "error",
            "margin",
            "flag",
        ])?;
    }
    for row in &t.rows {
        for (column, cell) in t.columns.iter().zip(&row.cells) {
            w.serialize(CsvRecord {
                feature_set: row.feature_set.clone(),
                learner: row.learner.clone(),
                reference: row.reference,
                column: column.clone(),
                error: cell.interval.point,
                margin: cell.interval.margin,
                flag: cell.flag,
            })?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_report(t: &ReportTable, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Text => Ok(render_text(t)),
        ReportFormat::Csv => render_csv(t),
    }
}

pub fn parse_report_csv(text: &str) -> Result<Vec<CsvRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}
