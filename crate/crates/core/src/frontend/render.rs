//! Canonical text rendering. The output reparses to an equal ontology.

use std::fmt::Write;

use crate::diagnostic::Location;
use crate::kernel;
use crate::model::{
    ConceptDecl, DeclKey, Declaration, Definition, Ontology, Origin, RelationDecl,
};

pub fn render_declaration(decl: &Declaration) -> String {
    match decl {
        Declaration::Concept(c) => render_concept(c),
        Declaration::Relation(r) => render_relation(r),
        Declaration::Disjoint(a, b) => format!("disjoint {a} {b}"),
        Declaration::Annotate { concept, value } => {
            format!("annotate {concept} {} {}", value.axis(), value.value_str())
        }
        Declaration::Label(l) => format!("label {} {} at {}", l.primitive, l.concept, l.time),
        Declaration::Instance(i) => {
            let cs: Vec<&str> = i.concepts.iter().map(String::as_str).collect();
            format!("instance {} : {}", i.name, cs.join(", "))
        }
        Declaration::Fact(f) => format!("fact {f}"),
    }
}

fn render_concept(c: &ConceptDecl) -> String {
    match &c.definition {
        Definition::Primitive if c.parents.is_empty() => format!("concept {}", c.name),
        Definition::Primitive => {
            let ps: Vec<&str> = c.parents.iter().map(String::as_str).collect();
            format!("concept {} specializes {}", c.name, ps.join(", "))
        }
        Definition::Role { mode, reasoning } => {
            format!("role {} = {} of {}", c.name, mode.as_str(), reasoning)
        }
        Definition::Conjunction { type_name, role } => {
            format!("concept {} = {} and {}", c.name, type_name, role)
        }
    }
}

fn render_relation(r: &RelationDecl) -> String {
    let mut s = format!("relation {}", r.name);
    if let Some(p) = &r.particularizes {
        write!(s, " particularizes {p}").unwrap();
    }
    write!(s, " signature ({})", r.signature().join(", ")).unwrap();
    if r.temporal {
        s.push_str(" temporal");
    }
    s
}

fn section(out: &mut String, title: &str, lines: Vec<String>) {
    if lines.is_empty() {
        return;
    }
    if !out.is_empty() {
        out.push('\n');
    }
    writeln!(out, "# {title}").unwrap();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
}

/// The user-authored part of `ontology` as canonical text. Kernel content is
/// implied by every model and is not repeated.
pub fn render(ontology: &Ontology) -> String {
    let user_loc = |key: DeclKey| ontology.location(&key) != Location::Kernel;
    let mut out = String::new();

    section(
        &mut out,
        "concepts",
        ontology
            .concepts()
            .filter(|c| c.origin == Origin::User)
            .map(render_concept)
            .collect(),
    );
    section(
        &mut out,
        "relations",
        ontology
            .relations()
            .filter(|r| r.origin == Origin::User)
            .map(render_relation)
            .collect(),
    );
    section(
        &mut out,
        "disjointness",
        ontology
            .disjoint_pairs()
            .filter(|(a, b)| user_loc(DeclKey::Disjoint(a.to_string(), b.to_string())))
            .map(|(a, b)| format!("disjoint {a} {b}"))
            .collect(),
    );
    let mut annotations = Vec::new();
    for rec in ontology.annotation_records() {
        for value in rec.specified() {
            if user_loc(DeclKey::Annotation(rec.concept.clone(), value.axis())) {
                annotations.push(render_declaration(&Declaration::Annotate {
                    concept: rec.concept.clone(),
                    value,
                }));
            }
        }
    }
    section(&mut out, "meta-properties", annotations);
    section(
        &mut out,
        "instances",
        ontology
            .instances()
            .map(|i| render_declaration(&Declaration::Instance(i.clone())))
            .collect(),
    );
    section(
        &mut out,
        "facts",
        ontology.facts().map(|f| format!("fact {f}")).collect(),
    );
    let mut labels: Vec<_> = ontology.labels().collect();
    labels.sort_by(|a, b| (a.time, a.primitive, &a.concept).cmp(&(b.time, b.primitive, &b.concept)));
    section(
        &mut out,
        "labels",
        labels
            .into_iter()
            .map(|l| render_declaration(&Declaration::Label(l.clone())))
            .collect(),
    );
    out
}

/// The kernel itself, in the same syntax users write.
pub fn render_kernel() -> String {
    let mut out = String::from(
        "# Kernel ontology. Every model includes these declarations implicitly;\n\
         # restating them unchanged is accepted.\n",
    );
    let decls = kernel::declarations();
    let pick = |f: fn(&Declaration) -> bool| -> Vec<String> {
        decls.iter().filter(|d| f(d)).map(render_declaration).collect()
    };
    section(&mut out, "concepts", pick(|d| matches!(d, Declaration::Concept(_))));
    section(&mut out, "relations", pick(|d| matches!(d, Declaration::Relation(_))));
    section(&mut out, "disjointness", pick(|d| matches!(d, Declaration::Disjoint(..))));
    section(
        &mut out,
        "meta-properties",
        pick(|d| matches!(d, Declaration::Annotate { .. })),
    );
    out
}
