//! Translation of a validated, labeled ontology into domain, inference and
//! task models.
//!
//! Labels are read at a snapshot time `s`: a label at `u` is effective iff
//! `u <= s` and no label of a superseding primitive on the same concept lies
//! in `(u, s]`.

mod emit;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::diagnostic::{has_errors, Code, Diagnostic, Location};
use crate::model::{Definition, MetaLabel, Ontology, Primitive, RoleMode, Time};
use crate::reasoner::SubsumptionClosure;
use crate::validator::analyze;

pub use emit::{emit_bundle, render_document, BUNDLE_FILES};

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("model has {} error(s); fix them before compiling", .0.iter().filter(|d| d.is_error()).count())]
    Invalid(Vec<Diagnostic>),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotations {
    pub rigidity: String,
    pub identity: String,
    pub dependence: String,
}

impl Annotations {
    fn of(ontology: &Ontology, concept: &str) -> Self {
        let a = ontology.annotation(concept);
        Self {
            rigidity: a.rigidity.to_string(),
            identity: a.identity.to_string(),
            dependence: a.dependence.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainRelation {
    pub name: String,
    pub range: Option<String>,
    pub temporal: bool,
}

/// `type` plays `role` as the conjunction concept `material_role`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaysLink {
    pub role: String,
    pub material_role: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainConcept {
    pub name: String,
    pub parents: Vec<String>,
    pub annotations: Annotations,
    pub relations: Vec<DomainRelation>,
    pub plays: Vec<PlaysLink>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Player {
    #[serde(rename = "type")]
    pub type_name: String,
    pub material_role: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IoRole {
    pub name: String,
    pub mode: String,
    pub reasoning_concept: String,
    pub players: Vec<Player>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Io {
    pub inputs: Vec<IoRole>,
    pub outputs: Vec<IoRole>,
}

/// A Task, Inference or TransferFunction concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProcessConcept {
    pub name: String,
    pub primitive: String,
    pub parents: Vec<String>,
    pub annotations: Annotations,
    pub io: Io,
    /// Reserved for problem-solving methods; always empty.
    pub methods: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelBundle {
    pub snapshot_time: Time,
    pub domain: Vec<DomainConcept>,
    pub inference: Vec<ProcessConcept>,
    pub task: Vec<ProcessConcept>,
}

impl ModelBundle {
    pub fn empty(snapshot_time: Time) -> Self {
        Self {
            snapshot_time,
            domain: Vec::new(),
            inference: Vec::new(),
            task: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty() && self.inference.is_empty() && self.task.is_empty()
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &str> {
        self.domain
            .iter()
            .map(|c| c.name.as_str())
            .chain(self.inference.iter().chain(&self.task).map(|c| c.name.as_str()))
    }
}

/// Labels in force at `snapshot`.
pub fn effective_labels(ontology: &Ontology, snapshot: Time) -> BTreeSet<MetaLabel> {
    let labels: Vec<&MetaLabel> = ontology.labels().filter(|l| l.time <= snapshot).collect();
    labels
        .iter()
        .filter(|l| {
            !labels.iter().any(|o| {
                o.concept == l.concept && o.time > l.time && o.primitive.supersedes(l.primitive)
            })
        })
        .map(|l| (*l).clone())
        .collect()
}

/// Snapshot used when none is requested: the latest label time.
pub fn default_snapshot(ontology: &Ontology) -> Time {
    ontology.max_label_time().unwrap_or(0)
}

/// Validates and compiles. Warnings (validation findings and C1) are
/// returned alongside the bundle.
pub fn compile_bundle(ontology: &Ontology, snapshot: Time) -> Result<(ModelBundle, Vec<Diagnostic>), CompileError> {
    let analysis = analyze(ontology).map_err(CompileError::Invalid)?;
    let mut diagnostics = analysis.diagnostics;
    if has_errors(&diagnostics) {
        return Err(CompileError::Invalid(diagnostics));
    }
    let effective = effective_labels(ontology, snapshot);
    if effective.is_empty() {
        diagnostics.push(
            Diagnostic::warning(
                Code::C1,
                Location::Kernel,
                format!("no labels are effective at snapshot {snapshot}; the bundle is empty"),
            ),
        );
        return Ok((ModelBundle::empty(snapshot), diagnostics));
    }
    Ok((build(ontology, &analysis.closure, &effective, snapshot), diagnostics))
}

fn labeled<'a>(effective: &'a BTreeSet<MetaLabel>, primitives: &[Primitive]) -> BTreeMap<&'a str, Primitive> {
    let mut out = BTreeMap::new();
    for l in effective {
        if primitives.contains(&l.primitive) {
            out.entry(l.concept.as_str()).or_insert(l.primitive);
        }
    }
    out
}

fn build(ontology: &Ontology, closure: &SubsumptionClosure, effective: &BTreeSet<MetaLabel>, snapshot: Time) -> ModelBundle {
    let domain_set = labeled(effective, &[Primitive::DomainConcept]);
    let inference_set = labeled(effective, &[Primitive::Inference, Primitive::TransferFunction]);
    let task_set = labeled(effective, &[Primitive::Task]);

    let mut roles: Vec<(RoleMode, &str, &str)> = Vec::new();
    // role operand -> (type, conjunction); type operand -> (role, conjunction)
    let mut players: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
    let mut plays: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
    for c in ontology.concepts() {
        match &c.definition {
            Definition::Role { mode, reasoning } => roles.push((*mode, c.name.as_str(), reasoning.as_str())),
            Definition::Conjunction { type_name, role } => {
                players.entry(role.as_str()).or_default().push((type_name.as_str(), c.name.as_str()));
                plays.entry(type_name.as_str()).or_default().push((role.as_str(), c.name.as_str()));
            }
            Definition::Primitive => {}
        }
    }

    let parents_within = |name: &str, set: &BTreeMap<&str, Primitive>| -> Vec<String> {
        let names: Vec<&str> = set.keys().copied().collect();
        let mut p: Vec<String> = closure.nearest_among(name, &names).into_iter().map(str::to_string).collect();
        p.sort();
        p
    };

    let domain = domain_set
        .keys()
        .map(|&name| {
            let relations = ontology
                .relations()
                .filter(|r| {
                    r.domain == name && r.range.as_deref().is_none_or(|g| domain_set.contains_key(g))
                })
                .map(|r| DomainRelation {
                    name: r.name.clone(),
                    range: r.range.clone(),
                    temporal: r.temporal,
                })
                .collect();
            let mut links: Vec<PlaysLink> = plays
                .get(name)
                .into_iter()
                .flatten()
                .map(|(role, conj)| PlaysLink {
                    role: role.to_string(),
                    material_role: conj.to_string(),
                })
                .collect();
            links.sort_by(|a, b| (&a.material_role, &a.role).cmp(&(&b.material_role, &b.role)));
            DomainConcept {
                name: name.to_string(),
                parents: parents_within(name, &domain_set),
                annotations: Annotations::of(ontology, name),
                relations,
                plays: links,
            }
        })
        .collect();

    let io_for = |process: &str| -> Io {
        let attach = |mode: RoleMode| -> Vec<IoRole> {
            roles
                .iter()
                .filter(|(m, _, reasoning)| *m == mode && closure.subsumes(reasoning, process))
                .map(|(m, role, reasoning)| {
                    let mut ps: Vec<Player> = players
                        .get(role)
                        .into_iter()
                        .flatten()
                        .map(|(t, conj)| Player {
                            type_name: t.to_string(),
                            material_role: conj.to_string(),
                        })
                        .collect();
                    ps.sort_by(|a, b| (&a.type_name, &a.material_role).cmp(&(&b.type_name, &b.material_role)));
                    IoRole {
                        name: role.to_string(),
                        mode: m.as_str().to_string(),
                        reasoning_concept: reasoning.to_string(),
                        players: ps,
                    }
                })
                .collect()
        };
        Io {
            inputs: attach(RoleMode::Data),
            outputs: attach(RoleMode::Result),
        }
    };
    let processes = |set: &BTreeMap<&str, Primitive>| -> Vec<ProcessConcept> {
        set.iter()
            .map(|(&name, primitive)| ProcessConcept {
                name: name.to_string(),
                primitive: primitive.to_string(),
                parents: parents_within(name, set),
                annotations: Annotations::of(ontology, name),
                io: io_for(name),
                methods: Vec::new(),
            })
            .collect()
    };

    ModelBundle {
        snapshot_time: snapshot,
        domain,
        inference: processes(&inference_set),
        task: processes(&task_set),
    }
}
