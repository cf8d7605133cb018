//! Reading and writing corpora, synthetic generation and model listings.

pub mod format;
pub mod render;
pub mod synthetic;

pub use format::{parse_corpus, read_corpus_file, write_corpus, write_corpus_file};
pub use render::{render_model, render_rules, render_tree};
pub use synthetic::{
    generate_synthetic, now_preset, paper_shaped, PaperShapedPreset, PlantedRule, SyntheticSpec,
    ValuePrior,
};
