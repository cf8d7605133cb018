//! Human-readable model listings.
//!
//! Trees print as nested `if`/`elseif` chains indented four spaces per
//! level; rule sets print one rule per line followed by the default class.
//! Features appear under their long names.

use crate::baselines::{DefaultClassModel, Hl93Prosodic};
use crate::corpus::{
    build_canonical_schema, Condition, FeatureValue, Operator, ACCENT_STAR, I_C, I_P, NA, O_P_STAR,
};
use crate::model::Model;
use crate::rules::{Rule, RuleSet};
use crate::tree::{DecisionTree, SplitTest};

fn long_name(feature: &str) -> String {
    build_canonical_schema()
        .get(feature)
        .map_or_else(|| feature.to_string(), |d| d.long_name.clone())
}

fn branch_condition(test: &SplitTest, branch: usize) -> String {
    let name = long_name(test.feature());
    match test {
        SplitTest::Numeric { threshold, .. } if branch == 0 => format!("{name} ≤ {threshold}"),
        SplitTest::Numeric { threshold, .. } => format!("{name} > {threshold}"),
        SplitTest::Symbolic { values, .. } => format!("{name} = {}", values[branch]),
        SplitTest::Grouped { blocks, .. } => match blocks[branch].as_slice() {
            [single] => format!("{name} = {single}"),
            block => format!("{name} in {{{}}}", block.join(", ")),
        },
    }
}

fn render_node(t: &DecisionTree, indent: usize, out: &mut Vec<String>) {
    let DecisionTree::Node { test, children, .. } = t else {
        return;
    };
    let pad = " ".repeat(indent);
    for (i, child) in children.iter().enumerate() {
        let keyword = if i == 0 { "if" } else { "elseif" };
        let cond = branch_condition(test, i);
        match child {
            DecisionTree::Leaf { class, .. } => {
                out.push(format!("{pad}{keyword} {cond} then {class}"))
            }
            node => {
                out.push(format!("{pad}{keyword} {cond} then"));
                render_node(node, indent + 4, out);
            }
        }
    }
}

pub fn render_tree(t: &DecisionTree) -> String {
    match t {
        DecisionTree::Leaf { class, .. } => class.to_string(),
        node => {
            let mut out = Vec::new();
            render_node(node, 0, &mut out);
            out.join("\n")
        }
    }
}

/// Numeric bounds on one feature collapse into a single interval test.
fn rule_conjuncts(tests: &[Condition]) -> Vec<String> {
    let mut order: Vec<&str> = Vec::new();
    for t in tests {
        if !order.contains(&t.feature.as_str()) {
            order.push(&t.feature);
        }
    }
    let mut out = Vec::new();
    for feature in order {
        let name = long_name(feature);
        let (mut lo, mut hi) = (None::<u32>, None::<u32>);
        for t in tests.iter().filter(|t| t.feature == feature) {
            match (t.op, &t.value) {
                (Operator::Ge, FeatureValue::Numeric(v)) => lo = Some(lo.map_or(*v, |l| l.max(*v))),
                (Operator::Le, FeatureValue::Numeric(v)) => hi = Some(hi.map_or(*v, |h| h.min(*v))),
                (op, v) => out.push(format!("{name} {} {v}", op.symbol())),
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l == h => out.push(format!("{name} = {l}")),
            (Some(l), Some(h)) => out.push(format!("{l} ≤ {name} ≤ {h}")),
            (Some(l), None) => out.push(format!("{name} ≥ {l}")),
            (None, Some(h)) => out.push(format!("{name} ≤ {h}")),
            (None, None) => {}
        }
    }
    out
}

pub fn render_rule(rule: &Rule) -> String {
    let conjuncts = rule_conjuncts(&rule.tests);
    let body = match conjuncts.as_slice() {
        [] => "true".to_string(),
        [single] => single.clone(),
        many => many
            .iter()
            .map(|c| format!("({c})"))
            .collect::<Vec<_>>()
            .join(" ∧ "),
    };
    format!("if {body} then {}", rule.class)
}

pub fn render_rules(rs: &RuleSet) -> String {
    rs.rules
        .iter()
        .map(render_rule)
        .chain(std::iter::once(format!("default is on {}", rs.default)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_prosodic(m: &Hl93Prosodic) -> String {
    let ic = long_name(I_C);
    let ip = long_name(I_P);
    let accent = long_name(ACCENT_STAR);
    let mut lines = vec![
        format!("if {ic} = only then discourse"),
        format!("elseif {ic} = only cue phrases then discourse"),
        format!("elseif {ip} ≠ 1 then sentential"),
        format!("elseif {accent} = deaccented then discourse"),
        format!("elseif {accent} = L* then discourse"),
        format!("elseif {accent} = H* then sentential"),
        format!("elseif {accent} = complex then sentential"),
    ];
    if !m.strict {
        lines.push("else sentential".into());
    }
    lines.join("\n")
}

fn render_textual() -> String {
    let op = long_name(O_P_STAR);
    format!("if {op} = true then discourse\nelseif {op} = {NA} then discourse\nelse sentential")
}

fn render_default(m: &DefaultClassModel) -> String {
    format!("default is on {}", m.majority)
}

pub fn render_model(m: &Model) -> String {
    match m {
        Model::Tree(t) => render_tree(t),
        Model::Rules(r) => render_rules(r),
        Model::Hl93Prosodic(p) => render_prosodic(p),
        Model::Hl93Textual(_) => render_textual(),
        Model::DefaultClass(d) => render_default(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ClassCounts, Classification::*};
    use crate::rules::{ConflictStrategy, Coverage};

    fn leaf(class: crate::corpus::Classification) -> DecisionTree {
        DecisionTree::leaf(class)
    }

    #[test]
    fn numeric_tree() {
        let t = DecisionTree::Node {
            test: SplitTest::Numeric {
                feature: "P-P".into(),
                threshold: 1,
            },
            children: vec![leaf(Discourse), leaf(Sentential)],
            counts: ClassCounts::default(),
        };
        assert_eq!(
            render_tree(&t),
            "if position in intonational phrase ≤ 1 then discourse\n\
             elseif position in intonational phrase > 1 then sentential"
        );
    }

    #[test]
    fn nested_and_grouped_tree() {
        let inner = DecisionTree::Node {
            test: SplitTest::Grouped {
                feature: "A".into(),
                blocks: vec![vec!["H*".into()], vec!["L*".into(), "deaccented".into()]],
            },
            children: vec![leaf(Sentential), leaf(Discourse)],
            counts: ClassCounts::default(),
        };
        let t = DecisionTree::Node {
            test: SplitTest::Symbolic {
                feature: "C-P".into(),
                values: vec!["true".into(), "false".into()],
            },
            children: vec![leaf(Discourse), inner],
            counts: ClassCounts::default(),
        };
        assert_eq!(
            render_tree(&t),
            "if preceding cue phrase = true then discourse\n\
             elseif preceding cue phrase = false then\n    \
             if accent = H* then sentential\n    \
             elseif accent in {L*, deaccented} then discourse"
        );
        assert_eq!(render_tree(&leaf(Discourse)), "discourse");
    }

    #[test]
    fn rules_merge_numeric_bounds() {
        let rule = |tests, class| Rule {
            tests,
            class,
            coverage: Coverage::default(),
        };
        let rs = RuleSet {
            rules: vec![
                rule(vec![Condition::ge("P-P", 2)], Sentential),
                rule(
                    vec![
                        Condition::ge("P-L", 2),
                        Condition::eq("A", "H*"),
                        Condition::le("P-L", 5),
                    ],
                    Sentential,
                ),
                rule(
                    vec![Condition::ge("I-P", 3), Condition::le("I-P", 3)],
                    Sentential,
                ),
                rule(vec![], Discourse),
            ],
            default: Discourse,
            conflict_strategy: ConflictStrategy::MostAccurate,
        };
        assert_eq!(
            render_rules(&rs),
            "if position in intonational phrase ≥ 2 then sentential\n\
             if (2 ≤ length of intonational phrase ≤ 5) ∧ (accent = H*) then sentential\n\
             if position in intermediate phrase = 3 then sentential\n\
             if true then discourse\n\
             default is on discourse"
        );
    }
}
