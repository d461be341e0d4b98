//! Taxonomy, signature, participation and rigidity checks.

use std::collections::BTreeSet;

use crate::diagnostic::{Code, Diagnostic};
use crate::kernel::AGENTIVE;
use crate::model::{Fact, Ontology, Rigidity};
use crate::reasoner::{find_cycles, saturate, Entry, FactBase, SubsumptionClosure};

use super::{entry_location, instance_location};

/// W1: one finding per group of concepts lying on a common cycle.
pub(super) fn check_acyclic(ontology: &Ontology) -> Vec<Diagnostic> {
    let cycles = find_cycles(
        ontology.concepts().map(|c| c.name.as_str()),
        ontology.taxonomy_edges(),
    );
    cycles
        .into_iter()
        .map(|group| {
            // report at the first user-declared member, if any
            let location = group
                .iter()
                .map(|m| ontology.concept_location(m))
                .filter(|l| l.span().is_some())
                .min()
                .unwrap_or_else(|| ontology.concept_location(&group[0]));
            Diagnostic::error(
                Code::W1,
                location,
                format!("subsumption cycle through {}", group.join(", ")),
            )
            .with_subjects(group)
        })
        .collect()
}

/// W2: concepts subsumed by both sides of a declared disjointness. Only the
/// topmost offenders are reported; their descendants follow from them.
pub(super) fn check_disjointness(ontology: &Ontology, closure: &SubsumptionClosure) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (a, b) in ontology.disjoint_pairs() {
        let below_a: BTreeSet<&str> = closure.descendants(a).into_iter().collect();
        let common: Vec<&str> = closure
            .descendants(b)
            .into_iter()
            .filter(|c| below_a.contains(c))
            .collect();
        for &c in &common {
            if common.iter().any(|&o| o != c && closure.subsumes(o, c)) {
                continue;
            }
            out.push(
                Diagnostic::error(
                    Code::W2,
                    ontology.concept_location(c),
                    format!("`{c}` is subsumed by both `{a}` and `{b}`, which are disjoint"),
                )
                .with_subjects([c, a, b]),
            );
        }
    }
    out
}

fn signature_citation(relation: &str) -> &'static str {
    match relation {
        "PC" | "isAffectedBy" | "PRE" => "Ad33",
        "isDataOf" => "A12",
        "isResultOf" => "A12 mirror",
        "hasForSubject" => "A9",
        "isAgentOf" => "agentive participation",
        _ => "relation signature",
    }
}

/// S1: every argument of an asserted fact belongs to the matching signature
/// concept of its relation and of every relation it particularizes. The
/// agent of `isAgentOf` must also be agentive (APO or ASO).
///
/// Arguments are typed without the affectedness facts: the role rules would
/// otherwise make every data a Content by virtue of the fact under check.
pub(super) fn check_signatures(ontology: &Ontology, closure: &SubsumptionClosure, facts: &FactBase) -> Vec<Diagnostic> {
    let affecting = |f: &Fact| {
        f.relation == "isAffectedBy"
            || ontology
                .relation_ancestors(&f.relation)
                .iter()
                .any(|r| r.name == "isAffectedBy")
    };
    let typing = saturate(&ontology.with_facts_filtered(|f| !affecting(f)), closure);
    let mut out = Vec::new();
    for fact in ontology.facts() {
        let Some(rel) = ontology.relation(&fact.relation) else {
            continue;
        };
        let chain = std::iter::once(rel).chain(ontology.relation_ancestors(&rel.name));
        let mut failure = None;
        'chain: for r in chain {
            for (arg, concept) in fact.args.iter().zip(r.signature()) {
                if !typing.is_member(arg, concept) {
                    failure = Some((r.name.as_str(), arg.as_str(), concept.to_string()));
                    break 'chain;
                }
            }
            if r.name == "isAgentOf" && !AGENTIVE.iter().any(|k| typing.is_member(&fact.args[0], k)) {
                failure = Some(("isAgentOf", fact.args[0].as_str(), AGENTIVE.join(" or ")));
                break;
            }
        }
        if let Some((relation, arg, concept)) = failure {
            out.push(
                Diagnostic::error(
                    Code::S1,
                    entry_location(ontology, facts, &Entry::Fact(fact.clone())),
                    format!(
                        "`{fact}` violates the signature of `{relation}` ({}): `{arg}` is not an instance of {concept}",
                        signature_citation(relation)
                    ),
                )
                .with_subjects([arg, relation]),
            );
        }
    }
    out
}

/// S2: a fact of a non-temporal relation that particularizes a temporal one
/// needs a witnessing temporal fact with the same arguments at some time.
pub(super) fn check_witnesses(ontology: &Ontology, facts: &FactBase) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for fact in facts.facts() {
        let Some(rel) = ontology.relation(&fact.relation) else {
            continue;
        };
        if rel.temporal {
            continue;
        }
        let Some(parent) = rel.particularizes.as_deref().and_then(|p| ontology.relation(p)) else {
            continue;
        };
        if !parent.temporal {
            continue;
        }
        let witnessed = facts
            .facts_of(&parent.name)
            .any(|f| f.args == fact.args);
        if !witnessed {
            let args = fact.args.join(", ");
            out.push(
                Diagnostic::error(
                    Code::S2,
                    entry_location(ontology, facts, &Entry::Fact(fact.clone())),
                    format!(
                        "`{fact}` requires `{}({args}, t)` for some time t (A10)",
                        parent.name
                    ),
                )
                .with_subjects(fact.args.iter().cloned()),
            );
        }
    }
    out
}

/// A3: no instance belongs to both sides of a declared disjointness.
pub(super) fn check_instance_disjointness(ontology: &Ontology, facts: &FactBase) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for inst in ontology.instances() {
        for (a, b) in ontology.disjoint_pairs() {
            if facts.is_member(&inst.name, a) && facts.is_member(&inst.name, b) {
                out.push(
                    Diagnostic::error(
                        Code::A3,
                        instance_location(ontology, &inst.name),
                        format!("`{}` is both a {a} and a {b}, which are disjoint", inst.name),
                    )
                    .with_subjects([inst.name.as_str(), a, b]),
                );
            }
        }
    }
    out
}

/// Ad35: every endurant participates in some perdurant.
pub(super) fn check_endurant_participation(ontology: &Ontology, facts: &FactBase) -> Vec<Diagnostic> {
    let participants: BTreeSet<&str> = facts.facts_of("PC").map(|f| f.args[0].as_str()).collect();
    ontology
        .instances()
        .filter(|i| facts.is_member(&i.name, "ED") && !participants.contains(i.name.as_str()))
        .map(|i| {
            Diagnostic::warning(
                Code::Ad35,
                instance_location(ontology, &i.name),
                format!("endurant `{}` participates in no perdurant", i.name),
            )
            .with_subjects([i.name.as_str()])
        })
        .collect()
}

/// L6: no anti-rigid concept subsumes a rigid one.
pub(super) fn check_rigidity(ontology: &Ontology, closure: &SubsumptionClosure) -> Vec<Diagnostic> {
    let anti_rigid: BTreeSet<&str> = ontology
        .annotation_records()
        .filter(|a| a.rigidity == Rigidity::AntiRigid)
        .map(|a| a.concept.as_str())
        .collect();
    let mut out = Vec::new();
    for ann in ontology.annotation_records() {
        if ann.rigidity != Rigidity::Rigid {
            continue;
        }
        let c = ann.concept.as_str();
        let above: Vec<&str> = closure
            .strict_ancestors(c)
            .into_iter()
            .filter(|a| anti_rigid.contains(a))
            .collect();
        if above.is_empty() {
            continue;
        }
        out.push(
            Diagnostic::error(
                Code::L6,
                ontology.concept_location(c),
                format!(
                    "rigid concept `{c}` is subsumed by anti-rigid {}",
                    above.iter().map(|a| format!("`{a}`")).collect::<Vec<_>>().join(", ")
                ),
            )
            .with_subjects(std::iter::once(c).chain(above)),
        );
    }
    out
}
