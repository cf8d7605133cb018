//! Line-oriented corpus files.
//!
//! ```text
//! P-L,P-P,I-L,I-P,I-C,A,A*,C-P,C-S,O-P,O-P*,O-S,O-S*,POS,T,judge1,judge2,id
//! 9,1,1,1,only,H*+L,complex,false,true,paragraph,true,false,false,adverb,now,D,D,ex1
//! ```
//!
//! Files written from a projected dataset carry only its features, in
//! canonical order; such files parse back with the matching schema. A file
//! without a T column does not record the cue phrase token.

use std::fs;
use std::path::Path;

use crate::corpus::{build_canonical_schema, Dataset, Example, FeatureSchema, JudgePair};
use crate::error::{Error, Result};

pub const JUDGE_COLUMNS: [&str; 3] = ["judge1", "judge2", "id"];

pub fn header(schema: &FeatureSchema) -> String {
    schema
        .names()
        .chain(JUDGE_COLUMNS)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_header(line: &str) -> Result<FeatureSchema> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    let bad = |message: String| Error::Parse { line: 1, message };
    if fields.len() < 3 || fields[fields.len() - 3..] != JUDGE_COLUMNS {
        return Err(bad("header must end with judge1,judge2,id".into()));
    }
    let names = &fields[..fields.len() - 3];
    let canonical = build_canonical_schema();
    let mut last = None;
    for name in names {
        let pos = canonical
            .index_of(name)
            .ok_or_else(|| bad(format!("unknown feature {name:?} in header")))?;
        if last.is_some_and(|l| pos <= l) {
            return Err(bad(format!("feature {name} out of canonical order")));
        }
        last = Some(pos);
    }
    canonical.restrict(&names.iter().map(|n| n.to_string()).collect::<Vec<_>>())
}

pub fn parse_corpus(text: &str) -> Result<Dataset> {
    let mut lines = text.lines().enumerate();
    let schema = match lines.next() {
        Some((_, h)) => parse_header(h.trim_end_matches('\r'))?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            })
        }
    };
    let expected = schema.len() + 3;
    let mut examples = Vec::new();
    for (i, raw) in lines {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != expected {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {expected} fields, found {}", fields.len()),
            });
        }
        let values = schema
            .features()
            .iter()
            .zip(&fields)
            .map(|(decl, raw)| Ok((decl.name.clone(), decl.parse_value(raw)?)))
            .collect::<Result<_>>()?;
        let n = schema.len();
        let judges = JudgePair::new(fields[n].parse()?, fields[n + 1].parse()?);
        let example =
            Example::new(&schema, fields[n + 2], values, judges).map_err(|e| match e {
                Error::InvalidExample(message) => Error::Parse {
                    line: lineno,
                    message,
                },
                other => other,
            })?;
        examples.push(example);
    }
    Dataset::new(schema, examples)
}

pub fn write_corpus(d: &Dataset) -> String {
    let mut out = header(d.schema());
    out.push('\n');
    for e in d.examples() {
        for name in d.schema().names() {
            out.push_str(&e.values[name].to_string());
            out.push(',');
        }
        out.push_str(&format!(
            "{},{},{}\n",
            e.judges.first, e.judges.second, e.id
        ));
    }
    out
}

pub fn read_corpus_file(path: impl AsRef<Path>) -> Result<Dataset> {
    parse_corpus(&fs::read_to_string(path)?)
}

pub fn write_corpus_file(d: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_corpus(d))?;
    Ok(())
}
