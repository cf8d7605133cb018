//! Column-major integer view of a dataset, shared by the learners.

use crate::corpus::{
    ClassCounts, Classification, Example, FeatureKind, FeatureSchema, FeatureValue,
};
use crate::error::{Error, Result};

pub(crate) enum Column {
    /// Vocabulary index per example.
    Symbolic {
        vocab: Vec<String>,
        codes: Vec<usize>,
    },
    Numeric {
        values: Vec<u32>,
    },
}

pub(crate) struct Encoded {
    pub names: Vec<String>,
    pub columns: Vec<Column>,
    pub classes: Vec<Classification>,
}

impl Encoded {
    pub fn new<'a>(
        schema: &FeatureSchema,
        examples: impl IntoIterator<Item = &'a Example> + Clone,
    ) -> Result<Self> {
        let mut names = Vec::new();
        let mut columns = Vec::new();
        for decl in schema.features() {
            names.push(decl.name.clone());
            let column = match &decl.kind {
                FeatureKind::Symbolic(vocab) => {
                    let codes = examples
                        .clone()
                        .into_iter()
                        .map(|e| {
                            let v = e.symbolic(&decl.name)?;
                            vocab
                                .iter()
                                .position(|x| x == v)
                                .ok_or_else(|| Error::Validation {
                                    feature: decl.name.clone(),
                                    value: v.into(),
                                })
                        })
                        .collect::<Result<_>>()?;
                    Column::Symbolic {
                        vocab: vocab.clone(),
                        codes,
                    }
                }
                FeatureKind::Numeric { .. } => Column::Numeric {
                    values: examples
                        .clone()
                        .into_iter()
                        .map(|e| e.numeric(&decl.name))
                        .collect::<Result<_>>()?,
                },
            };
            columns.push(column);
        }
        Ok(Encoded {
            names,
            columns,
            classes: examples.into_iter().map(|e| e.gold).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn counts(&self, idx: &[usize]) -> ClassCounts {
        ClassCounts::of(idx.iter().map(|&i| &self.classes[i]))
    }

    pub fn value(&self, feature: usize, row: usize) -> FeatureValue {
        match &self.columns[feature] {
            Column::Symbolic { vocab, codes } => FeatureValue::Symbolic(vocab[codes[row]].clone()),
            Column::Numeric { values } => FeatureValue::Numeric(values[row]),
        }
    }
}
