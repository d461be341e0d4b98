//! Temporal participation of data (from the start) and results (until the end).
//!
//! The witness time `t` ranges over the presence times of the perdurant.
//! Letting it range over arbitrary naturals would make the data formula
//! vacuously true for any `t` below the first presence.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagnostic::{Code, Diagnostic};
use crate::model::{Ontology, Time};
use crate::reasoner::{Entry, FactBase};

use super::entry_location;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Participation {
    /// Some witness time satisfies the formula.
    Holds,
    /// The perdurant has no presence record; nothing can be checked.
    Vacuous,
    /// No witness time exists; carries the first presence time left uncovered.
    Violated(Time),
}

/// `∃t ∀t′ ((PRE(y,t′) ∧ t′ ≤ t) → PC(x,y,t′))` with `t` over `present`.
pub fn data_from_start(present: &BTreeSet<Time>, participating: &BTreeSet<Time>) -> Participation {
    // the smallest witness is the strongest requirement that still has to
    // hold for every larger one, so checking the first presence suffices
    match present.first() {
        None => Participation::Vacuous,
        Some(&t0) if participating.contains(&t0) => Participation::Holds,
        Some(&t0) => Participation::Violated(t0),
    }
}

/// The order-reversed dual: `∃t ∀t′ ((PRE(y,t′) ∧ t′ ≥ t) → PC(x,y,t′))`.
pub fn result_until_end(present: &BTreeSet<Time>, participating: &BTreeSet<Time>) -> Participation {
    match present.last() {
        None => Participation::Vacuous,
        Some(&t1) if participating.contains(&t1) => Participation::Holds,
        Some(&t1) => Participation::Violated(t1),
    }
}

type Verdict = fn(&BTreeSet<Time>, &BTreeSet<Time>) -> Participation;

/// A13 for every `isDataOf` fact and its dual R13 for every `isResultOf`.
pub fn check_temporal_participation(ontology: &Ontology, facts: &FactBase) -> Vec<Diagnostic> {
    let mut presence: BTreeMap<&str, BTreeSet<Time>> = BTreeMap::new();
    for f in facts.facts_of("PRE") {
        if let Some(t) = f.time {
            presence.entry(f.args[0].as_str()).or_default().insert(t);
        }
    }
    let mut participation: BTreeMap<(&str, &str), BTreeSet<Time>> = BTreeMap::new();
    for f in facts.facts_of("PC") {
        if let Some(t) = f.time {
            participation
                .entry((f.args[0].as_str(), f.args[1].as_str()))
                .or_default()
                .insert(t);
        }
    }
    let empty = BTreeSet::new();

    let mut out = Vec::new();
    let checks: [(&str, Code, Verdict); 2] = [
        ("isDataOf", Code::A13, data_from_start),
        ("isResultOf", Code::R13, result_until_end),
    ];
    for (relation, code, check) in checks {
        for fact in facts.facts_of(relation) {
            let (x, y) = (fact.args[0].as_str(), fact.args[1].as_str());
            let present = presence.get(y).unwrap_or(&empty);
            let pc = participation.get(&(x, y)).unwrap_or(&empty);
            let location = || entry_location(ontology, facts, &Entry::Fact(fact.clone()));
            let boundary = if code == Code::A13 { "start" } else { "end" };
            match check(present, pc) {
                Participation::Holds => {}
                Participation::Vacuous => out.push(
                    Diagnostic::warning(
                        code,
                        location(),
                        format!("`{fact}`: `{y}` has no PRE facts, so participation from the {boundary} holds vacuously"),
                    )
                    .with_subjects([x, y]),
                ),
                Participation::Violated(t) => out.push(
                    Diagnostic::error(
                        code,
                        location(),
                        format!("`{fact}` requires `PC({x}, {y}, {t})`: `{y}` is present at {t}, the {boundary} of its presence"),
                    )
                    .with_subjects([x, y]),
                ),
            }
        }
    }
    out
}
