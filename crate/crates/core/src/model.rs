//! In-memory ontology: concept and relation declarations, meta-property
//! annotations, meta-labels, instances and ground facts.
//!
//! An [`Ontology`] is built through [`Ontology::add_declaration`] (one
//! declaration at a time, references checked immediately) or
//! [`Ontology::load`] (a batch, references checked after every name is
//! known). Both keep the same invariants: names are unique, every reference
//! resolves, kernel declarations cannot be redefined.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagnostic::{Code, Diagnostic, Location};

/// Model-building time point.
pub type Time = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Kernel,
    User,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleMode {
    Data,
    Result,
}

impl RoleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RoleMode::Data => "data",
            RoleMode::Result => "result",
        }
    }

    /// The kernel role every definition of this mode specializes.
    pub fn kernel_role(self) -> &'static str {
        match self {
            RoleMode::Data => "Data",
            RoleMode::Result => "Result",
        }
    }

    /// The kernel participation relation behind this mode.
    pub fn relation(self) -> &'static str {
        match self {
            RoleMode::Data => "isDataOf",
            RoleMode::Result => "isResultOf",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Definition {
    Primitive,
    /// `role N = data of R`: N holds exactly the data (or results) of R instances.
    Role { mode: RoleMode, reasoning: String },
    /// `concept N = T and F`: a type playing a formal role.
    Conjunction { type_name: String, role: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptDecl {
    pub name: String,
    pub origin: Origin,
    pub definition: Definition,
    pub parents: BTreeSet<String>,
}

impl ConceptDecl {
    pub fn primitive<I, S>(name: &str, origin: Origin, parents: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            name: name.to_string(),
            origin,
            definition: Definition::Primitive,
            parents: parents.into_iter().map(Into::into).collect(),
        }
    }

    pub fn role(name: &str, mode: RoleMode, reasoning: &str) -> Self {
        Self {
            name: name.to_string(),
            origin: Origin::User,
            definition: Definition::Role {
                mode,
                reasoning: reasoning.to_string(),
            },
            parents: BTreeSet::new(),
        }
    }

    pub fn conjunction(name: &str, type_name: &str, role: &str) -> Self {
        Self {
            name: name.to_string(),
            origin: Origin::User,
            definition: Definition::Conjunction {
                type_name: type_name.to_string(),
                role: role.to_string(),
            },
            parents: BTreeSet::new(),
        }
    }

    /// Direct subsumers: asserted parents, conjunction operands, and the
    /// kernel role a role definition specializes.
    pub fn supers(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.parents.iter().map(String::as_str).collect();
        match &self.definition {
            Definition::Primitive => {}
            Definition::Role { mode, .. } => out.push(mode.kernel_role()),
            Definition::Conjunction { type_name, role } => {
                out.push(type_name);
                out.push(role);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn referenced(&self) -> Vec<&str> {
        let mut refs = self.supers();
        if let Definition::Role { reasoning, .. } = &self.definition {
            refs.push(reasoning);
        }
        refs
    }

    fn same_content(&self, other: &ConceptDecl) -> bool {
        self.name == other.name && self.definition == other.definition && self.parents == other.parents
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDecl {
    pub name: String,
    pub origin: Origin,
    pub domain: String,
    /// `None` for unary relations such as PRE.
    pub range: Option<String>,
    /// A temporal relation takes a trailing time argument.
    pub temporal: bool,
    pub particularizes: Option<String>,
}

impl RelationDecl {
    pub fn new(name: &str, origin: Origin, domain: &str, range: Option<&str>, temporal: bool) -> Self {
        Self {
            name: name.to_string(),
            origin,
            domain: domain.to_string(),
            range: range.map(str::to_string),
            temporal,
            particularizes: None,
        }
    }

    pub fn particularizing(mut self, parent: &str) -> Self {
        self.particularizes = Some(parent.to_string());
        self
    }

    /// Number of entity arguments (the time argument is not counted).
    pub fn arity(&self) -> usize {
        1 + usize::from(self.range.is_some())
    }

    pub fn signature(&self) -> Vec<&str> {
        std::iter::once(self.domain.as_str())
            .chain(self.range.as_deref())
            .collect()
    }

    fn same_content(&self, other: &RelationDecl) -> bool {
        self.name == other.name
            && self.domain == other.domain
            && self.range == other.range
            && self.temporal == other.temporal
            && self.particularizes == other.particularizes
    }
}

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl FromStr for $name {
            type Err = ();

            fn from_str(s: &str) -> Result<Self, ()> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(()),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

keyword_enum!(Rigidity {
    Rigid => "rigid",
    AntiRigid => "anti-rigid",
    SemiRigid => "semi-rigid",
    Unspecified => "unspecified",
});

keyword_enum!(IdentityCriterion {
    Carries => "carries",
    None => "none",
    Unspecified => "unspecified",
});

keyword_enum!(Dependence {
    Dependent => "dependent",
    Independent => "independent",
    Unspecified => "unspecified",
});

keyword_enum!(Axis {
    Rigidity => "rigidity",
    Identity => "identity",
    Dependence => "dependence",
});

keyword_enum!(
    /// Modeling primitives that classify concepts at a model-building time.
    Primitive {
        Task => "Task",
        Inference => "Inference",
        TransferFunction => "TransferFunction",
        DomainConcept => "DomainConcept",
        KnowledgeRole => "KnowledgeRole",
        FormalKnowledgeRole => "FormalKnowledgeRole",
        MaterialKnowledgeRole => "MaterialKnowledgeRole",
        Input => "Input",
        Output => "Output",
    }
);

impl Primitive {
    pub fn is_knowledge_role(self) -> bool {
        matches!(
            self,
            Primitive::KnowledgeRole
                | Primitive::FormalKnowledgeRole
                | Primitive::MaterialKnowledgeRole
                | Primitive::Input
                | Primitive::Output
        )
    }

    pub fn is_action(self) -> bool {
        matches!(
            self,
            Primitive::Task | Primitive::Inference | Primitive::TransferFunction
        )
    }

    /// Pairs a concept may not carry at the same time point.
    pub fn excludes_at_same_time(self, other: Primitive) -> bool {
        use Primitive::*;
        match (self, other) {
            (Task, Inference) | (Inference, Task) => true,
            (DomainConcept, p) | (p, DomainConcept) => p.is_knowledge_role(),
            _ => false,
        }
    }

    /// A later label of a conflicting primitive supersedes an earlier one.
    pub fn supersedes(self, other: Primitive) -> bool {
        use Primitive::*;
        if self == other {
            return false;
        }
        match (self, other) {
            (a, b) if a.is_action() && b.is_action() => true,
            (FormalKnowledgeRole, MaterialKnowledgeRole) | (MaterialKnowledgeRole, FormalKnowledgeRole) => true,
            _ => self.excludes_at_same_time(other),
        }
    }
}

/// One value on one meta-property axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisValue {
    Rigidity(Rigidity),
    Identity(IdentityCriterion),
    Dependence(Dependence),
}

impl AxisValue {
    pub fn axis(self) -> Axis {
        match self {
            AxisValue::Rigidity(_) => Axis::Rigidity,
            AxisValue::Identity(_) => Axis::Identity,
            AxisValue::Dependence(_) => Axis::Dependence,
        }
    }

    pub fn value_str(self) -> &'static str {
        match self {
            AxisValue::Rigidity(v) => v.as_str(),
            AxisValue::Identity(v) => v.as_str(),
            AxisValue::Dependence(v) => v.as_str(),
        }
    }

    fn is_unspecified(self) -> bool {
        matches!(
            self,
            AxisValue::Rigidity(Rigidity::Unspecified)
                | AxisValue::Identity(IdentityCriterion::Unspecified)
                | AxisValue::Dependence(Dependence::Unspecified)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaAnnotation {
    pub concept: String,
    pub rigidity: Rigidity,
    pub identity: IdentityCriterion,
    pub dependence: Dependence,
}

impl MetaAnnotation {
    pub fn unspecified(concept: &str) -> Self {
        Self {
            concept: concept.to_string(),
            rigidity: Rigidity::Unspecified,
            identity: IdentityCriterion::Unspecified,
            dependence: Dependence::Unspecified,
        }
    }

    pub fn get(&self, axis: Axis) -> AxisValue {
        match axis {
            Axis::Rigidity => AxisValue::Rigidity(self.rigidity),
            Axis::Identity => AxisValue::Identity(self.identity),
            Axis::Dependence => AxisValue::Dependence(self.dependence),
        }
    }

    fn set(&mut self, value: AxisValue) {
        match value {
            AxisValue::Rigidity(v) => self.rigidity = v,
            AxisValue::Identity(v) => self.identity = v,
            AxisValue::Dependence(v) => self.dependence = v,
        }
    }

    /// Axes carrying a value, in axis order.
    pub fn specified(&self) -> Vec<AxisValue> {
        Axis::ALL
            .iter()
            .map(|&a| self.get(a))
            .filter(|v| !v.is_unspecified())
            .collect()
    }
}

/// `CF(primitive, concept, time)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaLabel {
    pub primitive: Primitive,
    pub concept: String,
    pub time: Time,
}

impl MetaLabel {
    pub fn new(primitive: Primitive, concept: &str, time: Time) -> Self {
        Self {
            primitive,
            concept: concept.to_string(),
            time,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDecl {
    pub name: String,
    pub concepts: BTreeSet<String>,
}

impl InstanceDecl {
    pub fn new<I, S>(name: &str, concepts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            name: name.to_string(),
            concepts: concepts.into_iter().map(Into::into).collect(),
        }
    }
}

/// A ground relational fact; `time` is present iff the relation is temporal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub relation: String,
    pub args: Vec<String>,
    pub time: Option<Time>,
}

impl Fact {
    pub fn new(relation: &str, args: &[&str], time: Option<Time>) -> Self {
        Self {
            relation: relation.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
            time,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.relation, self.args.join(", "))?;
        if let Some(t) = self.time {
            write!(f, ", {t}")?;
        }
        f.write_str(")")
    }
}

/// One statement of the ontology language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Declaration {
    Concept(ConceptDecl),
    Relation(RelationDecl),
    Disjoint(String, String),
    Annotate { concept: String, value: AxisValue },
    Label(MetaLabel),
    Instance(InstanceDecl),
    Fact(Fact),
}

/// Identity of a declared item, used to look up its source location.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeclKey {
    Concept(String),
    Relation(String),
    Disjoint(String, String),
    Annotation(String, Axis),
    Label(MetaLabel),
    Instance(String),
    Fact(Fact),
}

impl Declaration {
    pub fn key(&self) -> DeclKey {
        match self {
            Declaration::Concept(c) => DeclKey::Concept(c.name.clone()),
            Declaration::Relation(r) => DeclKey::Relation(r.name.clone()),
            Declaration::Disjoint(a, b) => {
                let (a, b) = ordered_pair(a, b);
                DeclKey::Disjoint(a, b)
            }
            Declaration::Annotate { concept, value } => {
                DeclKey::Annotation(concept.clone(), value.axis())
            }
            Declaration::Label(l) => DeclKey::Label(l.clone()),
            Declaration::Instance(i) => DeclKey::Instance(i.name.clone()),
            Declaration::Fact(f) => DeclKey::Fact(f.clone()),
        }
    }
}

fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A load-time conflict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("`{0}` is already declared")]
    DuplicateName(String),
    #[error("kernel declaration `{0}` cannot be redefined")]
    KernelRedefinition(String),
    #[error("`{name}` is not a declared {kind} (referenced by `{from}`)")]
    DanglingReference {
        from: String,
        name: String,
        kind: &'static str,
    },
    #[error("{0}")]
    Arity(String),
    #[error("relation particularization cycle through {0}")]
    ParticularizationCycle(String),
    #[error("declaration name must be nonempty")]
    EmptyName,
}

impl LoadError {
    pub fn code(&self) -> Code {
        match self {
            LoadError::DuplicateName(_) | LoadError::EmptyName => Code::P5,
            LoadError::KernelRedefinition(_) => Code::P6,
            LoadError::DanglingReference { .. } => Code::P7,
            LoadError::Arity(_) => Code::P8,
            LoadError::ParticularizationCycle(_) => Code::P9,
        }
    }

    pub fn subject(&self) -> Option<&str> {
        match self {
            LoadError::DuplicateName(n)
            | LoadError::KernelRedefinition(n)
            | LoadError::ParticularizationCycle(n) => Some(n),
            LoadError::DanglingReference { name, .. } => Some(name),
            LoadError::Arity(_) | LoadError::EmptyName => None,
        }
    }

    pub fn into_diagnostic(self, location: Location) -> Diagnostic {
        let subjects: Vec<String> = self.subject().map(str::to_string).into_iter().collect();
        Diagnostic::error(self.code(), location, self.to_string()).with_subjects(subjects)
    }
}

/// Source locations of declarations. Never part of ontology equality:
/// the same declarations loaded from differently laid-out text are the
/// same ontology.
#[derive(Debug, Clone, Default)]
pub struct SourceMap {
    locations: BTreeMap<DeclKey, Location>,
}

impl PartialEq for SourceMap {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for SourceMap {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    concepts: BTreeMap<String, ConceptDecl>,
    relations: BTreeMap<String, RelationDecl>,
    disjoint: BTreeSet<(String, String)>,
    annotations: BTreeMap<String, MetaAnnotation>,
    labels: BTreeSet<MetaLabel>,
    instances: BTreeMap<String, InstanceDecl>,
    facts: BTreeSet<Fact>,
    sources: SourceMap,
}

impl Ontology {
    /// An ontology without even the kernel. Most callers want
    /// [`crate::kernel::kernel_ontology`].
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn concepts(&self) -> impl Iterator<Item = &ConceptDecl> {
        self.concepts.values()
    }

    pub fn concept(&self, name: &str) -> Option<&ConceptDecl> {
        self.concepts.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = &RelationDecl> {
        self.relations.values()
    }

    pub fn relation(&self, name: &str) -> Option<&RelationDecl> {
        self.relations.get(name)
    }

    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.disjoint.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn annotation_records(&self) -> impl Iterator<Item = &MetaAnnotation> {
        self.annotations.values()
    }

    /// Annotation of `concept`; every axis unspecified when none was declared.
    pub fn annotation(&self, concept: &str) -> MetaAnnotation {
        self.annotations
            .get(concept)
            .cloned()
            .unwrap_or_else(|| MetaAnnotation::unspecified(concept))
    }

    pub fn labels(&self) -> impl Iterator<Item = &MetaLabel> {
        self.labels.iter()
    }

    pub fn instances(&self) -> impl Iterator<Item = &InstanceDecl> {
        self.instances.values()
    }

    pub fn instance(&self, name: &str) -> Option<&InstanceDecl> {
        self.instances.get(name)
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    pub fn location(&self, key: &DeclKey) -> Location {
        self.sources
            .locations
            .get(key)
            .cloned()
            .unwrap_or(Location::Kernel)
    }

    pub fn concept_location(&self, name: &str) -> Location {
        self.location(&DeclKey::Concept(name.to_string()))
    }

    /// Asserted taxonomy edges `(child, parent)` in name order.
    pub fn taxonomy_edges(&self) -> Vec<(&str, &str)> {
        self.concepts
            .values()
            .flat_map(|c| c.supers().into_iter().map(move |p| (c.name.as_str(), p)))
            .collect()
    }

    /// A copy keeping only the facts `keep` accepts.
    pub fn with_facts_filtered(&self, keep: impl Fn(&Fact) -> bool) -> Ontology {
        let mut out = self.clone();
        out.facts.retain(|f| keep(f));
        out
    }

    /// Largest label time, if any label exists.
    pub fn max_label_time(&self) -> Option<Time> {
        self.labels.iter().map(|l| l.time).max()
    }

    /// Adds one declaration; every name it references must already exist.
    pub fn add_declaration(&mut self, decl: Declaration, location: Location) -> Result<(), LoadError> {
        let mut next = self.clone();
        let key = decl.key();
        if next.insert(decl, location)? {
            next.check_references(&key)?;
            next.check_particularization_cycles()?;
        }
        *self = next;
        Ok(())
    }

    /// Loads a batch of declarations on top of `base`. References may point
    /// forward; all conflicts are reported together.
    pub fn load(base: Ontology, decls: Vec<(Declaration, Location)>) -> Result<Ontology, Vec<Diagnostic>> {
        let mut onto = base;
        let mut diags = Vec::new();
        let mut inserted = Vec::new();
        for (decl, location) in decls {
            let key = decl.key();
            match onto.insert(decl, location.clone()) {
                Ok(true) => inserted.push((key, location)),
                Ok(false) => {}
                Err(e) => diags.push(e.into_diagnostic(location)),
            }
        }
        for (key, location) in &inserted {
            if let Err(e) = onto.check_references(key) {
                diags.push(e.into_diagnostic(location.clone()));
            }
        }
        if let Err(e) = onto.check_particularization_cycles() {
            let location = match &e {
                LoadError::ParticularizationCycle(name) => {
                    onto.location(&DeclKey::Relation(name.clone()))
                }
                _ => Location::Kernel,
            };
            diags.push(e.into_diagnostic(location));
        }
        if diags.is_empty() {
            Ok(onto)
        } else {
            crate::diagnostic::sort_diagnostics(&mut diags);
            Err(diags)
        }
    }

    fn name_taken(&self, name: &str) -> Option<Origin> {
        self.concepts
            .get(name)
            .map(|c| c.origin)
            .or_else(|| self.relations.get(name).map(|r| r.origin))
    }

    /// Inserts without reference checks. Returns `false` for an identical
    /// restatement of a kernel declaration, which is accepted as a no-op.
    fn insert(&mut self, decl: Declaration, location: Location) -> Result<bool, LoadError> {
        let key = decl.key();
        match decl {
            Declaration::Concept(c) => {
                if c.name.is_empty() {
                    return Err(LoadError::EmptyName);
                }
                if let Some(existing) = self.concepts.get(&c.name) {
                    return match existing.origin {
                        Origin::Kernel if existing.same_content(&c) => Ok(false),
                        Origin::Kernel => Err(LoadError::KernelRedefinition(c.name)),
                        Origin::User => Err(LoadError::DuplicateName(c.name)),
                    };
                }
                if let Some(origin) = self.name_taken(&c.name) {
                    return Err(redefinition(origin, c.name));
                }
                self.concepts.insert(c.name.clone(), c);
            }
            Declaration::Relation(r) => {
                if r.name.is_empty() {
                    return Err(LoadError::EmptyName);
                }
                if let Some(existing) = self.relations.get(&r.name) {
                    return match existing.origin {
                        Origin::Kernel if existing.same_content(&r) => Ok(false),
                        Origin::Kernel => Err(LoadError::KernelRedefinition(r.name)),
                        Origin::User => Err(LoadError::DuplicateName(r.name)),
                    };
                }
                if let Some(origin) = self.name_taken(&r.name) {
                    return Err(redefinition(origin, r.name));
                }
                self.relations.insert(r.name.clone(), r);
            }
            Declaration::Disjoint(a, b) => {
                let pair = ordered_pair(&a, &b);
                if self.disjoint.contains(&pair) {
                    if self.location(&key) == Location::Kernel {
                        return Ok(false);
                    }
                    return Err(LoadError::DuplicateName(format!("disjoint {} {}", pair.0, pair.1)));
                }
                self.disjoint.insert(pair);
            }
            Declaration::Annotate { concept, value } => {
                let current = self.annotation(&concept).get(value.axis());
                if !current.is_unspecified() {
                    let kernel_owned = self.location(&key) == Location::Kernel;
                    return match (kernel_owned, current == value) {
                        (true, true) => Ok(false),
                        (true, false) => Err(LoadError::KernelRedefinition(format!(
                            "{} of {}",
                            value.axis(),
                            concept
                        ))),
                        (false, _) => Err(LoadError::DuplicateName(format!(
                            "{} annotation of {}",
                            value.axis(),
                            concept
                        ))),
                    };
                }
                self.annotations
                    .entry(concept.clone())
                    .or_insert_with(|| MetaAnnotation::unspecified(&concept))
                    .set(value);
            }
            Declaration::Label(l) => {
                if !self.labels.insert(l.clone()) {
                    return Err(LoadError::DuplicateName(format!(
                        "label {} {} at {}",
                        l.primitive, l.concept, l.time
                    )));
                }
            }
            Declaration::Instance(i) => {
                if i.name.is_empty() {
                    return Err(LoadError::EmptyName);
                }
                if self.instances.contains_key(&i.name) {
                    return Err(LoadError::DuplicateName(i.name));
                }
                self.instances.insert(i.name.clone(), i);
            }
            Declaration::Fact(f) => {
                if self.facts.contains(&f) {
                    return Err(LoadError::DuplicateName(format!("fact {f}")));
                }
                self.facts.insert(f);
            }
        }
        self.sources.locations.insert(key, location);
        Ok(true)
    }

    fn require_concept(&self, from: &str, name: &str) -> Result<(), LoadError> {
        if self.concepts.contains_key(name) {
            Ok(())
        } else {
            Err(LoadError::DanglingReference {
                from: from.to_string(),
                name: name.to_string(),
                kind: "concept",
            })
        }
    }

    fn check_references(&self, key: &DeclKey) -> Result<(), LoadError> {
        match key {
            DeclKey::Concept(name) => {
                let c = &self.concepts[name];
                for r in c.referenced() {
                    self.require_concept(name, r)?;
                }
            }
            DeclKey::Relation(name) => {
                let r = &self.relations[name];
                for c in r.signature() {
                    self.require_concept(name, c)?;
                }
                if let Some(parent) = &r.particularizes {
                    let p = self.relations.get(parent).ok_or_else(|| LoadError::DanglingReference {
                        from: name.clone(),
                        name: parent.clone(),
                        kind: "relation",
                    })?;
                    if p.arity() != r.arity() {
                        return Err(LoadError::Arity(format!(
                            "relation `{}` has {} arguments but particularizes `{}` with {}",
                            r.name,
                            r.arity(),
                            p.name,
                            p.arity()
                        )));
                    }
                }
            }
            DeclKey::Disjoint(a, b) => {
                let from = format!("disjoint {a} {b}");
                self.require_concept(&from, a)?;
                self.require_concept(&from, b)?;
            }
            DeclKey::Annotation(concept, axis) => {
                self.require_concept(&format!("annotate {concept} {axis}"), concept)?;
            }
            DeclKey::Label(l) => {
                self.require_concept(&format!("label {} {}", l.primitive, l.concept), &l.concept)?;
            }
            DeclKey::Instance(name) => {
                for c in &self.instances[name].concepts {
                    self.require_concept(name, c)?;
                }
            }
            DeclKey::Fact(f) => {
                let r = self.relations.get(&f.relation).ok_or_else(|| LoadError::DanglingReference {
                    from: f.to_string(),
                    name: f.relation.clone(),
                    kind: "relation",
                })?;
                if f.args.len() != r.arity() {
                    return Err(LoadError::Arity(format!(
                        "`{}` takes {} argument(s), got {}",
                        r.name,
                        r.arity(),
                        f.args.len()
                    )));
                }
                match (r.temporal, f.time) {
                    (true, None) => {
                        return Err(LoadError::Arity(format!(
                            "`{}` is temporal and needs a trailing time argument",
                            r.name
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(LoadError::Arity(format!(
                            "`{}` is not temporal and takes no time argument",
                            r.name
                        )))
                    }
                    _ => {}
                }
                for a in &f.args {
                    if !self.instances.contains_key(a) {
                        return Err(LoadError::DanglingReference {
                            from: f.to_string(),
                            name: a.clone(),
                            kind: "instance",
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_particularization_cycles(&self) -> Result<(), LoadError> {
        for start in self.relations.keys() {
            let mut seen = BTreeSet::new();
            let mut cur = start.as_str();
            while let Some(parent) = self.relations.get(cur).and_then(|r| r.particularizes.as_deref()) {
                if parent == start {
                    return Err(LoadError::ParticularizationCycle(start.clone()));
                }
                if !seen.insert(parent) {
                    break;
                }
                cur = parent;
            }
        }
        Ok(())
    }

    /// The particularization chain above `relation`, nearest first.
    pub fn relation_ancestors(&self, relation: &str) -> Vec<&RelationDecl> {
        let mut out = Vec::new();
        let mut cur = self.relations.get(relation);
        while let Some(r) = cur.and_then(|r| r.particularizes.as_deref()).and_then(|p| self.relations.get(p)) {
            if out.iter().any(|x: &&RelationDecl| x.name == r.name) {
                break;
            }
            out.push(r);
            cur = Some(r);
        }
        out
    }
}

fn redefinition(origin: Origin, name: String) -> LoadError {
    match origin {
        Origin::Kernel => LoadError::KernelRedefinition(name),
        Origin::User => LoadError::DuplicateName(name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_ontology;

    fn user(line: usize) -> Location {
        Location::Source(crate::diagnostic::SourceSpan::new("t.oks", line, 1, 1))
    }

    #[test]
    fn add_specialization_of_kernel_concept() {
        let mut o = kernel_ontology();
        o.add_declaration(
            Declaration::Concept(ConceptDecl::primitive("Diagnosis", Origin::User, ["Reasoning"])),
            user(1),
        )
        .unwrap();
        let d = o.concept("Diagnosis").unwrap();
        assert_eq!(d.parents.iter().collect::<Vec<_>>(), vec!["Reasoning"]);
        assert_eq!(d.origin, Origin::User);
    }

    #[test]
    fn undeclared_parent_is_dangling() {
        let mut o = kernel_ontology();
        let before = o.clone();
        let err = o
            .add_declaration(
                Declaration::Concept(ConceptDecl::primitive("X", Origin::User, ["Nowhere"])),
                user(1),
            )
            .unwrap_err();
        assert!(matches!(err, LoadError::DanglingReference { .. }));
        assert_eq!(err.code(), Code::P7);
        assert_eq!(o, before);
    }

    #[test]
    fn redeclaring_user_name_is_duplicate() {
        let mut o = kernel_ontology();
        let decl = |p: &str| Declaration::Concept(ConceptDecl::primitive("Diagnosis", Origin::User, [p]));
        o.add_declaration(decl("Reasoning"), user(1)).unwrap();
        let err = o.add_declaration(decl("AC"), user(2)).unwrap_err();
        assert_eq!(err, LoadError::DuplicateName("Diagnosis".into()));
    }

    #[test]
    fn kernel_concepts_cannot_be_redefined() {
        let mut o = kernel_ontology();
        let err = o
            .add_declaration(
                Declaration::Concept(ConceptDecl::primitive("Reasoning", Origin::User, ["STV"])),
                user(1),
            )
            .unwrap_err();
        assert_eq!(err, LoadError::KernelRedefinition("Reasoning".into()));
        assert_eq!(err.code(), Code::P6);
    }

    #[test]
    fn identical_kernel_restatement_is_a_no_op() {
        let mut o = kernel_ontology();
        o.add_declaration(
            Declaration::Concept(ConceptDecl::primitive("Reasoning", Origin::User, ["AC"])),
            user(1),
        )
        .unwrap();
        assert_eq!(o, kernel_ontology());
        assert_eq!(o.concept("Reasoning").unwrap().origin, Origin::Kernel);
    }

    #[test]
    fn concept_and_relation_names_share_a_namespace() {
        let mut o = kernel_ontology();
        let err = o
            .add_declaration(
                Declaration::Concept(ConceptDecl::primitive("isDataOf", Origin::User, ["PT"])),
                user(1),
            )
            .unwrap_err();
        assert_eq!(err.code(), Code::P6);
    }

    #[test]
    fn duplicate_label_is_rejected() {
        let mut o = kernel_ontology();
        let l = Declaration::Label(MetaLabel::new(Primitive::Task, "Reasoning", 1));
        o.add_declaration(l.clone(), user(1)).unwrap();
        assert_eq!(o.add_declaration(l, user(2)).unwrap_err().code(), Code::P5);
    }

    #[test]
    fn annotation_axis_set_once() {
        let mut o = kernel_ontology();
        let set = |v| Declaration::Annotate {
            concept: "Model".into(),
            value: AxisValue::Rigidity(v),
        };
        o.add_declaration(set(Rigidity::Rigid), user(1)).unwrap();
        assert_eq!(o.add_declaration(set(Rigidity::AntiRigid), user(2)).unwrap_err().code(), Code::P5);
        // kernel-owned axis
        let err = o
            .add_declaration(
                Declaration::Annotate {
                    concept: "Data".into(),
                    value: AxisValue::Rigidity(Rigidity::Rigid),
                },
                user(3),
            )
            .unwrap_err();
        assert_eq!(err.code(), Code::P6);
    }

    #[test]
    fn fact_arity_and_temporality() {
        let mut o = kernel_ontology();
        o.add_declaration(Declaration::Instance(InstanceDecl::new("a", ["APO"])), user(1))
            .unwrap();
        o.add_declaration(Declaration::Instance(InstanceDecl::new("e", ["AC"])), user(2))
            .unwrap();
        let bad_time = Declaration::Fact(Fact::new("PC", &["a", "e"], None));
        assert_eq!(o.add_declaration(bad_time, user(3)).unwrap_err().code(), Code::P8);
        let bad_arity = Declaration::Fact(Fact::new("isAgentOf", &["a"], None));
        assert_eq!(o.add_declaration(bad_arity, user(4)).unwrap_err().code(), Code::P8);
        let unknown = Declaration::Fact(Fact::new("isAgentOf", &["a", "zz"], None));
        assert_eq!(o.add_declaration(unknown, user(5)).unwrap_err().code(), Code::P7);
        o.add_declaration(Declaration::Fact(Fact::new("PC", &["a", "e"], Some(0))), user(6))
            .unwrap();
    }

    #[test]
    fn batch_load_allows_forward_references_and_detects_relation_cycles() {
        let decls = vec![
            (
                Declaration::Concept(ConceptDecl::primitive("B", Origin::User, ["A"])),
                user(1),
            ),
            (
                Declaration::Concept(ConceptDecl::primitive("A", Origin::User, ["PT"])),
                user(2),
            ),
        ];
        assert!(Ontology::load(kernel_ontology(), decls).is_ok());

        let rel = |n: &str, p: &str| {
            Declaration::Relation(RelationDecl::new(n, Origin::User, "ED", Some("PD"), false).particularizing(p))
        };
        let diags = Ontology::load(kernel_ontology(), vec![(rel("r1", "r2"), user(1)), (rel("r2", "r1"), user(2))])
            .unwrap_err();
        assert!(diags.iter().any(|d| d.code == Code::P9));
    }

    #[test]
    fn supersession_and_exclusivity() {
        use Primitive::*;
        assert!(Task.excludes_at_same_time(Inference));
        assert!(DomainConcept.excludes_at_same_time(Input));
        assert!(!FormalKnowledgeRole.excludes_at_same_time(Input));
        assert!(!Task.excludes_at_same_time(TransferFunction));
        assert!(Task.supersedes(TransferFunction));
        assert!(FormalKnowledgeRole.supersedes(MaterialKnowledgeRole));
        assert!(!Task.supersedes(Task));
    }
}
