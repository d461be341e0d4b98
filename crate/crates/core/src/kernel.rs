//! The fixed upper ontology preloaded into every model: a fragment of the
//! foundational endurant/perdurant taxonomy, the reasoning and communication
//! actions, the information-and-document categories, and the participation
//! roles with their relations.

use std::sync::OnceLock;

use crate::diagnostic::Location;
use crate::model::{
    AxisValue, ConceptDecl, Declaration, Dependence, Ontology, Origin, RelationDecl, Rigidity,
};

/// `(child, parents)` in declaration order.
pub const CONCEPTS: &[(&str, &[&str])] = &[
    ("PT", &[]),
    ("ED", &["PT"]),
    ("PD", &["PT"]),
    ("POB", &["ED"]),
    ("NPOB", &["ED"]),
    ("MOB", &["NPOB"]),
    ("APO", &["POB"]),
    ("ASO", &["NPOB"]),
    ("EV", &["PD"]),
    ("STV", &["PD"]),
    ("ACC", &["EV"]),
    ("AC", &["ACC"]),
    ("Reasoning", &["AC"]),
    ("Interaction", &["AC"]),
    ("Communication", &["Interaction"]),
    ("Document", &["POB"]),
    ("Expression", &["NPOB"]),
    ("Discourse", &["Expression"]),
    ("Content", &["MOB"]),
    ("Proposition", &["Content"]),
    ("IdaConcept", &["Content"]),
    ("Subject", &["IdaConcept"]),
    ("Message", &["Proposition"]),
    ("Assertion", &["Proposition"]),
    ("Model", &["Proposition"]),
    ("Hypothesis", &["Proposition"]),
    ("Complaint", &["Message"]),
    ("Information", &["Message"]),
    ("Patient", &["ED"]),
    ("Data", &["Patient", "Content"]),
    ("Result", &["Patient", "Content"]),
];

/// `(name, domain, range, temporal, particularizes)`.
pub type RelationRow = (&'static str, &'static str, Option<&'static str>, bool, Option<&'static str>);

pub const RELATIONS: &[RelationRow] = &[
    ("PC", "ED", Some("PD"), true, None),
    ("PRE", "PD", None, true, None),
    ("isAgentOf", "ED", Some("AC"), false, None),
    ("isAffectedBy", "ED", Some("PD"), false, Some("PC")),
    ("isDataOf", "Content", Some("AC"), false, Some("isAffectedBy")),
    ("isResultOf", "Content", Some("AC"), false, Some("isAffectedBy")),
    ("hasForSubject", "Proposition", Some("IdaConcept"), false, None),
];

pub const DISJOINT: &[(&str, &str)] = &[("ED", "PD"), ("Reasoning", "Communication")];

/// Foundational categories annotated rigid.
pub const RIGID: &[&str] = &[
    "PT", "ED", "PD", "POB", "NPOB", "MOB", "APO", "ASO", "EV", "STV", "ACC", "AC",
];

/// Participation roles annotated anti-rigid and dependent.
pub const ROLES: &[&str] = &["Patient", "Data", "Result"];

/// Concepts whose instances count as agentive (their extensional union).
pub const AGENTIVE: &[&str] = &["APO", "ASO"];

/// The kernel as a declaration list, in canonical order.
pub fn declarations() -> Vec<Declaration> {
    let mut out = Vec::new();
    for (name, parents) in CONCEPTS {
        out.push(Declaration::Concept(ConceptDecl::primitive(
            name,
            Origin::Kernel,
            parents.iter().copied(),
        )));
    }
    for &(name, domain, range, temporal, parent) in RELATIONS {
        let mut r = RelationDecl::new(name, Origin::Kernel, domain, range, temporal);
        if let Some(p) = parent {
            r = r.particularizing(p);
        }
        out.push(Declaration::Relation(r));
    }
    for (a, b) in DISJOINT {
        out.push(Declaration::Disjoint(a.to_string(), b.to_string()));
    }
    for c in RIGID {
        out.push(Declaration::Annotate {
            concept: c.to_string(),
            value: AxisValue::Rigidity(Rigidity::Rigid),
        });
    }
    for c in ROLES {
        out.push(Declaration::Annotate {
            concept: c.to_string(),
            value: AxisValue::Rigidity(Rigidity::AntiRigid),
        });
        out.push(Declaration::Annotate {
            concept: c.to_string(),
            value: AxisValue::Dependence(Dependence::Dependent),
        });
    }
    out
}

fn build() -> Ontology {
    let mut onto = Ontology::empty();
    for decl in declarations() {
        onto.add_declaration(decl, Location::Kernel)
            .expect("kernel catalog is well-formed");
    }
    onto
}

/// A fresh ontology holding exactly the kernel.
pub fn kernel_ontology() -> Ontology {
    static KERNEL: OnceLock<Ontology> = OnceLock::new();
    KERNEL.get_or_init(build).clone()
}

/// Grafts user declarations onto a copy of the kernel.
pub fn merge_with_kernel(
    decls: Vec<(Declaration, Location)>,
) -> Result<Ontology, Vec<crate::diagnostic::Diagnostic>> {
    Ontology::load(kernel_ontology(), decls)
}

pub fn is_kernel_concept(name: &str) -> bool {
    CONCEPTS.iter().any(|(n, _)| *n == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostic::{Code, SourceSpan};
    use crate::reasoner::closure;

    fn src() -> Location {
        Location::Source(SourceSpan::new("u.oks", 1, 1, 1))
    }

    #[test]
    fn kernel_subsumptions() {
        let k = kernel_ontology();
        let c = closure(&k).unwrap();
        assert!(c.subsumes("AC", "Reasoning"));
        assert!(c.subsumes("Content", "Data"));
        assert!(c.subsumes("ED", "Data"));
        assert!(c.subsumes("Patient", "Result"));
        assert!(c.subsumes("Interaction", "Communication"));
        assert!(!c.subsumes("Reasoning", "Communication"));
    }

    #[test]
    fn every_kernel_concept_but_pt_has_a_parent() {
        for (name, parents) in CONCEPTS {
            assert_eq!(parents.is_empty(), *name == "PT", "{name}");
        }
    }

    #[test]
    fn particularized_signatures_narrow() {
        let k = kernel_ontology();
        let c = closure(&k).unwrap();
        for r in k.relations() {
            for anc in k.relation_ancestors(&r.name) {
                for (child, parent) in r.signature().into_iter().zip(anc.signature()) {
                    assert!(c.subsumes(parent, child), "{} vs {}", r.name, anc.name);
                }
            }
        }
    }

    #[test]
    fn merge_user_reasoning() {
        let o = merge_with_kernel(vec![(
            Declaration::Concept(ConceptDecl::primitive("Calibrating", Origin::User, ["Reasoning"])),
            src(),
        )])
        .unwrap();
        let c = closure(&o).unwrap();
        assert!(c.subsumes("AC", "Calibrating"));
        assert!(c.subsumes("PD", "Calibrating"));
    }

    #[test]
    fn merge_redefinition_fails() {
        let diags = merge_with_kernel(vec![(
            Declaration::Concept(ConceptDecl::primitive("Reasoning", Origin::User, ["STV"])),
            src(),
        )])
        .unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::P6);
    }

    #[test]
    fn merge_empty_is_kernel() {
        assert_eq!(merge_with_kernel(Vec::new()).unwrap(), kernel_ontology());
    }

    #[test]
    fn annotations() {
        let k = kernel_ontology();
        assert_eq!(k.annotation("Data").rigidity, Rigidity::AntiRigid);
        assert_eq!(k.annotation("Result").dependence, Dependence::Dependent);
        assert_eq!(k.annotation("ED").rigidity, Rigidity::Rigid);
        assert_eq!(k.annotation("Model").rigidity, Rigidity::Unspecified);
    }
}
