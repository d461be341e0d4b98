//! Seeded random `.oks` models that always load.
//!
//! Shared by the core property tests and the CLI acceptance suite.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

pub const ANCHORS: &[&str] = &[
    "PT", "ED", "PD", "POB", "NPOB", "MOB", "APO", "ASO", "EV", "STV", "ACC", "AC", "Reasoning",
    "Interaction", "Communication", "Content", "Proposition", "IdaConcept", "Model", "Hypothesis",
    "Message", "Patient", "Data", "Result",
];

/// Kernel relations as (name, arity, temporal).
pub const KERNEL_RELATIONS: &[(&str, usize, bool)] = &[
    ("PC", 2, true),
    ("PRE", 1, true),
    ("isAgentOf", 2, false),
    ("isAffectedBy", 2, false),
    ("isDataOf", 2, false),
    ("isResultOf", 2, false),
    ("hasForSubject", 2, false),
];

const PRIMITIVES: &[&str] = &[
    "Task",
    "Inference",
    "TransferFunction",
    "DomainConcept",
    "KnowledgeRole",
    "FormalKnowledgeRole",
    "MaterialKnowledgeRole",
    "Input",
    "Output",
];

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub concepts: usize,
    pub roles: usize,
    pub conjunctions: usize,
    pub relations: usize,
    pub instances: usize,
    pub facts: usize,
    pub labels: usize,
    pub times: u64,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            concepts: 5,
            roles: 3,
            conjunctions: 2,
            relations: 4,
            instances: 8,
            facts: 14,
            labels: 4,
            times: 4,
        }
    }
}

fn pick<'a, R: Rng>(rng: &mut R, from: &'a [String]) -> &'a str {
    from.choose(rng).expect("non-empty pool")
}

/// One random model, one statement per line.
pub fn random_model<R: Rng>(rng: &mut R, shape: Shape) -> Vec<String> {
    let mut lines = Vec::new();
    let mut concepts: Vec<String> = ANCHORS.iter().map(|s| s.to_string()).collect();
    let mut user: Vec<String> = Vec::new();
    let mut roles: Vec<String> = Vec::new();

    for i in 0..rng.gen_range(1..=shape.concepts.max(1)) {
        let name = format!("U{i}");
        let mut parents = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=2) {
            parents.insert(pick(rng, &concepts).to_string());
        }
        lines.push(format!("concept {name} specializes {}", parents.into_iter().collect::<Vec<_>>().join(", ")));
        concepts.push(name.clone());
        user.push(name);
    }
    for i in 0..rng.gen_range(0..=shape.roles) {
        let name = format!("R{i}");
        let mode = if rng.gen_bool(0.5) { "data" } else { "result" };
        let over = pick(rng, &concepts).to_string();
        lines.push(format!("role {name} = {mode} of {over}"));
        concepts.push(name.clone());
        user.push(name.clone());
        roles.push(name);
    }
    for i in 0..rng.gen_range(0..=shape.conjunctions) {
        let name = format!("K{i}");
        let a = pick(rng, &concepts).to_string();
        let pool = if roles.is_empty() || rng.gen_bool(0.3) { &concepts } else { &roles };
        let b = pick(rng, pool).to_string();
        lines.push(format!("concept {name} = {a} and {b}"));
        concepts.push(name.clone());
        user.push(name);
    }

    let mut relations: Vec<(String, usize, bool)> =
        KERNEL_RELATIONS.iter().map(|&(n, a, t)| (n.to_string(), a, t)).collect();
    for i in 0..rng.gen_range(0..=shape.relations) {
        let name = format!("rel{i}");
        let parent = if rng.gen_bool(0.7) {
            relations.choose(rng).cloned()
        } else {
            None
        };
        let arity = parent.as_ref().map_or_else(|| rng.gen_range(1..=2), |p| p.1);
        let temporal = rng.gen_bool(0.4);
        let domain = pick(rng, &concepts).to_string();
        let signature = if arity == 2 {
            format!("({domain}, {})", pick(rng, &concepts))
        } else {
            format!("({domain})")
        };
        let mut line = format!("relation {name}");
        if let Some(p) = &parent {
            line.push_str(&format!(" particularizes {}", p.0));
        }
        line.push_str(&format!(" signature {signature}"));
        if temporal {
            line.push_str(" temporal");
        }
        lines.push(line);
        relations.push((name, arity, temporal));
    }

    if user.len() >= 2 && rng.gen_bool(0.3) {
        let mut pair: Vec<&String> = user.choose_multiple(rng, 2).collect();
        pair.sort();
        lines.push(format!("disjoint {} {}", pair[0], pair[1]));
    }

    for c in &user {
        for (axis, values) in [
            ("rigidity", &["rigid", "anti-rigid", "semi-rigid"][..]),
            ("identity", &["carries", "none"][..]),
            ("dependence", &["dependent", "independent"][..]),
        ] {
            if rng.gen_bool(0.3) {
                lines.push(format!("annotate {c} {axis} {}", values.choose(rng).unwrap()));
            }
        }
    }

    let mut labels = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=shape.labels) {
        let p = PRIMITIVES.choose(rng).unwrap();
        let c = pick(rng, &concepts).to_string();
        let t = rng.gen_range(0..shape.times.max(1));
        labels.insert(format!("label {p} {c} at {t}"));
    }
    lines.extend(labels);

    let instances: Vec<String> = (0..rng.gen_range(1..=shape.instances.max(1))).map(|i| format!("i{i}")).collect();
    for inst in &instances {
        let mut cs = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=2) {
            cs.insert(pick(rng, &concepts).to_string());
        }
        lines.push(format!("instance {inst} : {}", cs.into_iter().collect::<Vec<_>>().join(", ")));
    }

    let mut facts = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=shape.facts) {
        let (name, arity, temporal) = relations.choose(rng).unwrap().clone();
        let args: Vec<&str> = (0..arity).map(|_| pick(rng, &instances)).collect();
        let mut fact = format!("fact {name}({}", args.join(", "));
        if temporal {
            fact.push_str(&format!(", {}", rng.gen_range(0..shape.times.max(1))));
        }
        fact.push(')');
        facts.insert(fact);
    }
    lines.extend(facts);
    lines
}

pub fn to_text(lines: &[String]) -> String {
    let mut s = lines.join("\n");
    s.push('\n');
    s
}
