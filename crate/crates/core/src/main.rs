use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cuephrase::corpus::{resolve_feature_set, Classification, Dataset, JudgePair};
use cuephrase::error::Result;
use cuephrase::eval::count_errors;
use cuephrase::experiments::{
    render_report, run_experiment, ExperimentConfig, ExperimentData, ExperimentSet, ReportFormat,
};
use cuephrase::ingest::synthetic::{generate_synthetic, now_preset, paper_shaped, SyntheticSpec};
use cuephrase::ingest::{read_corpus_file, render_model, write_corpus_file};
use cuephrase::model::{Classifier, Learner, Model, ModelFile, RuleLearner, TreeLearner};
use cuephrase::rules::RuleOptions;
use cuephrase::tree::{ClassMode, TreeOptions};

#[derive(Parser)]
#[command(
    name = "cuephrase",
    version,
    about = "Classify cue phrases as discourse or sentential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate or summarize corpus files.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Train a model on one feature set.
    Train {
        #[arg(long, value_enum)]
        learner: LearnerArg,
        #[arg(long)]
        features: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Add the token feature to the feature set.
        #[arg(long)]
        tokenized: bool,
        /// Keep unknown examples and learn three classes.
        #[arg(long)]
        three_class: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify every example of a corpus with a saved model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run one of the experiment sets and print its report.
    Experiment {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        set: u8,
        #[arg(long, default_value = "tree")]
        learner: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Training corpus (set 1 only).
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: String,
        /// Comma-separated feature set names; defaults to the set's sweep.
        #[arg(long, value_delimiter = ',')]
        features: Vec<String>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
    },
    /// Print a saved model as text.
    Render {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    Gen {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Example count for the planted preset.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Label noise rate for the planted preset.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
    },
    Stats {
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Paper,
    Now,
    Planted,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnerArg {
    Tree,
    Rules,
}

fn corpus_gen(preset: Preset, seed: u64, out: &Path, count: usize, noise: f64) -> Result<()> {
    let d = match preset {
        Preset::Paper => paper_shaped(seed)?,
        Preset::Now => now_preset(seed)?,
        Preset::Planted => {
            generate_synthetic(&SyntheticSpec::planted_position(count, noise), seed)?
        }
    };
    write_corpus_file(&d, out)?;
    println!("wrote {} examples to {}", d.len(), out.display());
    Ok(())
}

fn pct(num: usize, den: usize) -> String {
    if den == 0 {
        "-".into()
    } else {
        format!("{:.2}%", 100.0 * num as f64 / den as f64)
    }
}

fn corpus_stats(path: &Path) -> Result<()> {
    let d = read_corpus_file(path)?;
    let non_conjuncts = d.filter_non_conjuncts();
    let conjuncts = d.filter(|e| e.is_conjunct());
    println!(
        "{:<8}{:>6}{:>16}{:>12}",
        "judges", "all", "non-conjuncts", "conjuncts"
    );
    for pair in JudgePair::table_order() {
        let count = |d: &Dataset| d.examples().iter().filter(|e| e.judges == pair).count();
        println!(
            "{:<8}{:>6}{:>16}{:>12}",
            format!("{}/{}", pair.first, pair.second),
            count(&d),
            count(&non_conjuncts),
            count(&conjuncts)
        );
    }
    println!(
        "{:<8}{:>6}{:>16}{:>12}",
        "total",
        d.len(),
        non_conjuncts.len(),
        conjuncts.len()
    );
    println!();
    for (label, subset) in [
        ("classifiable", d.filter_classifiable()),
        (
            "classifiable non-conjuncts",
            non_conjuncts.filter_classifiable(),
        ),
    ] {
        let counts = subset.class_counts();
        let majority = counts.majority();
        println!(
            "{label}: {} (discourse {}, sentential {}); default class {majority}, error {}",
            subset.len(),
            counts.get(Classification::Discourse),
            counts.get(Classification::Sentential),
            pct(subset.len() - counts.get(majority), subset.len())
        );
    }
    Ok(())
}

fn train(
    learner: LearnerArg,
    features: &str,
    input: &Path,
    tokenized: bool,
    three_class: bool,
    out: &Path,
) -> Result<()> {
    let mut fs = resolve_feature_set(features)?;
    if tokenized {
        fs = fs.with_token();
    }
    let classes = if three_class {
        ClassMode::ThreeClass
    } else {
        ClassMode::TwoClass
    };
    let d = read_corpus_file(input)?;
    let d = if three_class {
        d
    } else {
        d.filter_classifiable()
    };
    let d = d.project(&fs)?;
    let model: Model = match learner {
        LearnerArg::Tree => TreeLearner {
            options: TreeOptions {
                classes,
                ..TreeOptions::default()
            },
            unpruned: false,
        }
        .fit(&d)?
        .into(),
        LearnerArg::Rules => RuleLearner {
            options: RuleOptions {
                classes,
                ..RuleOptions::default()
            },
        }
        .fit(&d)?
        .into(),
    };
    let file = ModelFile {
        feature_set: fs.name.clone(),
        three_class,
        model,
    };
    fs::write(out, serde_json::to_string_pretty(&file)?)?;
    println!(
        "trained on {} examples with feature set {}",
        d.len(),
        fs.name
    );
    Ok(())
}

fn load_model(path: &Path) -> Result<ModelFile> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn predict(model: &Path, input: &Path) -> Result<()> {
    let file = load_model(model)?;
    let d = read_corpus_file(input)?;
    let d = if file.three_class {
        d
    } else {
        d.filter_classifiable()
    };
    let predictions = file.model.predict_all(&d)?;
    for (e, p) in d.examples().iter().zip(&predictions) {
        println!("{}\t{p}\t{}", e.id, e.gold);
    }
    let errors = count_errors(&file.model, &d)?;
    println!("error rate {} ({errors}/{})", pct(errors, d.len()), d.len());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn experiment(
    set: u8,
    learner: &str,
    input: &Path,
    train: Option<&Path>,
    seed: u64,
    format: &str,
    features: Vec<String>,
    folds: usize,
) -> Result<()> {
    let format: ReportFormat = format.parse()?;
    let mut config = ExperimentConfig::new(ExperimentSet::try_from(set)?, learner.parse()?);
    config.seed = seed;
    config.feature_sets = features;
    config.folds = folds;
    let data = ExperimentData {
        main: read_corpus_file(input)?,
        train: train.map(read_corpus_file).transpose()?,
    };
    print!(
        "{}",
        render_report(&run_experiment(&config, &data)?, format)?
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Corpus { command } => match command {
            CorpusCommand::Gen {
                preset,
                seed,
                out,
                count,
                noise,
            } => corpus_gen(preset, seed, &out, count, noise),
            CorpusCommand::Stats { file } => corpus_stats(&file),
        },
        Command::Train {
            learner,
            features,
            input,
            tokenized,
            three_class,
            out,
        } => train(learner, &features, &input, tokenized, three_class, &out),
        Command::Predict { model, input } => predict(&model, &input),
        Command::Experiment {
            set,
            learner,
            input,
            train,
            seed,
            format,
            features,
            folds,
        } => experiment(
            set,
            &learner,
            &input,
            train.as_deref(),
            seed,
            &format,
            features,
            folds,
        ),
        Command::Render { model } => {
            println!("{}", render_model(&load_model(&model)?.model));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
