//! Meta-label constraints (A7, A8, L2b, L3, L4, L5).

use std::collections::BTreeMap;

use crate::diagnostic::{Code, Diagnostic, Location};
use crate::model::{
    DeclKey, Definition, Dependence, IdentityCriterion, MetaLabel, Ontology, Primitive, Rigidity, Time,
};
use crate::reasoner::{FactBase, SubsumptionClosure};

fn label_location(ontology: &Ontology, label: &MetaLabel) -> Location {
    ontology.location(&DeclKey::Label(label.clone()))
}

fn describe(label: &MetaLabel) -> String {
    format!("CF({}, {}, {})", label.primitive, label.concept, label.time)
}

/// Checks every label against its primitive's preconditions, then label
/// exclusivity per time point.
pub fn check_labels(ontology: &Ontology, closure: &SubsumptionClosure, _facts: &FactBase) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for label in ontology.labels() {
        out.extend(check_label(ontology, closure, label));
    }
    out.extend(check_exclusivity(ontology));
    out
}

fn check_label(ontology: &Ontology, closure: &SubsumptionClosure, label: &MetaLabel) -> Option<Diagnostic> {
    let c = label.concept.as_str();
    let fail = |code: Code, message: String| {
        Some(
            Diagnostic::error(code, label_location(ontology, label), format!("{}: {message}", describe(label)))
                .with_subjects([c]),
        )
    };
    match label.primitive {
        Primitive::Task if !closure.subsumes("Reasoning", c) => {
            fail(Code::A7, format!("Task labels classify Reasonings, but `{c}` is not subsumed by Reasoning (A7)"))
        }
        Primitive::Inference if !closure.subsumes("Reasoning", c) => fail(
            Code::L2b,
            format!("Inference labels classify Reasonings, but `{c}` is not subsumed by Reasoning"),
        ),
        Primitive::TransferFunction if !closure.subsumes("Communication", c) => fail(
            Code::A8,
            format!("TransferFunction labels classify Communications, but `{c}` is not subsumed by Communication (A8)"),
        ),
        p if p.is_knowledge_role() => {
            let problems = role_problems(ontology, closure, c);
            if !problems.is_empty() {
                return fail(
                    Code::L3,
                    format!("knowledge roles must be anti-rigid dependent participation roles: {}", problems.join("; ")),
                );
            }
            let problems = coherence_problems(ontology, closure, label);
            if !problems.is_empty() {
                return fail(Code::L4, problems.join("; "));
            }
            None
        }
        _ => None,
    }
}

/// L3 preconditions shared by the whole KnowledgeRole family.
fn role_problems(ontology: &Ontology, closure: &SubsumptionClosure, c: &str) -> Vec<String> {
    let mut problems = Vec::new();
    if !closure.subsumes("Data", c) && !closure.subsumes("Result", c) {
        problems.push(format!("`{c}` is subsumed by neither Data nor Result"));
    }
    for anc in closure.ancestors(c) {
        if let Some(Definition::Role { reasoning, .. }) = ontology.concept(anc).map(|d| &d.definition) {
            if !closure.subsumes("AC", reasoning) {
                problems.push(format!("`{anc}` is defined over `{reasoning}`, which is not an action"));
            }
        }
    }
    let ann = ontology.annotation(c);
    if ann.rigidity != Rigidity::AntiRigid {
        problems.push(format!("`{c}` is not annotated anti-rigid (found {})", ann.rigidity));
    }
    if ann.dependence != Dependence::Dependent {
        problems.push(format!("`{c}` is not annotated dependent (found {})", ann.dependence));
    }
    problems
}

/// L4: identity criteria of formal/material roles and the Input/Output split.
fn coherence_problems(ontology: &Ontology, closure: &SubsumptionClosure, label: &MetaLabel) -> Vec<String> {
    let c = label.concept.as_str();
    let identity = ontology.annotation(c).identity;
    let mut problems = Vec::new();
    match label.primitive {
        Primitive::FormalKnowledgeRole => {
            if identity != IdentityCriterion::None {
                problems.push(format!("a formal role carries no identity criterion, but `{c}` has identity {identity}"));
            }
        }
        Primitive::MaterialKnowledgeRole => {
            if identity != IdentityCriterion::Carries {
                problems.push(format!("a material role carries an identity criterion, but `{c}` has identity {identity}"));
            }
            let formal = ontology.labels().any(|l| {
                l.primitive == Primitive::FormalKnowledgeRole
                    && l.time == label.time
                    && l.concept != c
                    && closure.subsumes(&l.concept, c)
            });
            if !formal {
                problems.push(format!(
                    "`{c}` is not subsumed by any concept labeled FormalKnowledgeRole at {}",
                    label.time
                ));
            }
            let typed = closure.strict_ancestors(c).into_iter().any(|a| {
                let ann = ontology.annotation(a);
                ann.rigidity == Rigidity::Rigid && ann.identity == IdentityCriterion::Carries
            });
            if !typed {
                problems.push(format!("`{c}` is not subsumed by a rigid type carrying an identity criterion"));
            }
        }
        Primitive::Input if !closure.subsumes("Data", c) => {
            problems.push(format!("Inputs classify Data, but `{c}` is not subsumed by Data"));
        }
        Primitive::Output if !closure.subsumes("Result", c) => {
            problems.push(format!("Outputs classify Results, but `{c}` is not subsumed by Result"));
        }
        _ => {}
    }
    problems
}

/// L5: mutually exclusive primitives on one concept at one time point.
fn check_exclusivity(ontology: &Ontology) -> Vec<Diagnostic> {
    let mut by_point: BTreeMap<(&str, Time), Vec<&MetaLabel>> = BTreeMap::new();
    for l in ontology.labels() {
        by_point.entry((l.concept.as_str(), l.time)).or_default().push(l);
    }
    let mut out = Vec::new();
    for ((concept, time), labels) in by_point {
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                if !a.primitive.excludes_at_same_time(b.primitive) {
                    continue;
                }
                let (la, lb) = (label_location(ontology, a), label_location(ontology, b));
                let later = la.clone().max(lb);
                out.push(
                    Diagnostic::error(
                        Code::L5,
                        later,
                        format!(
                            "`{concept}` cannot be both {} and {} at time {time}",
                            a.primitive, b.primitive
                        ),
                    )
                    .with_subjects([concept]),
                );
            }
        }
    }
    out
}
