//! Forward-chaining saturation of the instance-level fact base.
//!
//! Evaluation is delta-driven: every new entry is joined against everything
//! derived so far, so each rule instance fires when its last premise
//! arrives. The result is the least fixpoint regardless of processing order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::kernel::AGENTIVE;
use crate::model::{Definition, Fact, Ontology, RoleMode};

use super::closure::SubsumptionClosure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// Membership propagates to every subsumer.
    MembershipUp,
    /// A fact implies the same fact for the relation it particularizes.
    RelationUp,
    /// Interaction: an action with an agent and a distinct agentive participant.
    D1,
    /// Subject: a concept some proposition has for subject.
    D2,
    /// Patient: anything affected by something.
    D3,
    /// Data: anything that is data of something.
    D4,
    /// Result: anything that is a result of something.
    D4Result,
    /// User data-role definitions.
    D5,
    /// User result-role definitions.
    D5Result,
    /// User conjunction definitions.
    D6,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::MembershipUp,
        RuleId::RelationUp,
        RuleId::D1,
        RuleId::D2,
        RuleId::D3,
        RuleId::D4,
        RuleId::D4Result,
        RuleId::D5,
        RuleId::D5Result,
        RuleId::D6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::MembershipUp => "M-up",
            RuleId::RelationUp => "R-up",
            RuleId::D1 => "D1",
            RuleId::D2 => "D2",
            RuleId::D3 => "D3",
            RuleId::D4 => "D4",
            RuleId::D4Result => "D4r",
            RuleId::D5 => "D5",
            RuleId::D5Result => "D5r",
            RuleId::D6 => "D6",
        }
    }

    pub fn parse(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.as_str() == s)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Member { instance: String, concept: String },
    Fact(Fact),
}

impl Entry {
    pub fn member(instance: &str, concept: &str) -> Self {
        Entry::Member {
            instance: instance.to_string(),
            concept: concept.to_string(),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Member { instance, concept } => write!(f, "{instance} : {concept}"),
            Entry::Fact(fact) => write!(f, "{fact}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: RuleId,
    pub premises: Vec<Entry>,
}

#[derive(Debug, Clone, Default)]
pub struct FactBase {
    members: BTreeMap<String, BTreeSet<String>>,
    facts: BTreeMap<String, BTreeSet<Fact>>,
    asserted: BTreeSet<Entry>,
    trace: BTreeMap<Entry, Derivation>,
}

impl FactBase {
    pub fn is_member(&self, instance: &str, concept: &str) -> bool {
        self.members
            .get(instance)
            .is_some_and(|s| s.contains(concept))
    }

    pub fn concepts_of(&self, instance: &str) -> impl Iterator<Item = &str> {
        self.members
            .get(instance)
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    pub fn instances_of<'a>(&'a self, concept: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.members
            .iter()
            .filter(move |(_, cs)| cs.contains(concept))
            .map(|(i, _)| i.as_str())
    }

    pub fn memberships(&self) -> BTreeSet<(String, String)> {
        self.members
            .iter()
            .flat_map(|(i, cs)| cs.iter().map(move |c| (i.clone(), c.clone())))
            .collect()
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.values().flatten()
    }

    pub fn facts_of<'a>(&'a self, relation: &str) -> impl Iterator<Item = &'a Fact> + 'a {
        self.facts.get(relation).into_iter().flatten()
    }

    pub fn fact_set(&self) -> BTreeSet<Fact> {
        self.facts().cloned().collect()
    }

    pub fn has_fact(&self, fact: &Fact) -> bool {
        self.facts
            .get(&fact.relation)
            .is_some_and(|s| s.contains(fact))
    }

    pub fn contains(&self, entry: &Entry) -> bool {
        match entry {
            Entry::Member { instance, concept } => self.is_member(instance, concept),
            Entry::Fact(f) => self.has_fact(f),
        }
    }

    pub fn is_asserted(&self, entry: &Entry) -> bool {
        self.asserted.contains(entry)
    }

    pub fn derivation(&self, entry: &Entry) -> Option<&Derivation> {
        self.trace.get(entry)
    }

    pub fn derivations(&self) -> impl Iterator<Item = (&Entry, &Derivation)> {
        self.trace.iter()
    }

    /// Same memberships and facts; traces are ignored.
    pub fn same_entries(&self, other: &FactBase) -> bool {
        self.memberships() == other.memberships() && self.fact_set() == other.fact_set()
    }

    /// Asserted entries that `entry` was ultimately derived from.
    pub fn roots(&self, entry: &Entry) -> BTreeSet<Entry> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![entry.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.clone()) {
                continue;
            }
            if self.asserted.contains(&e) {
                out.insert(e.clone());
            }
            if let Some(d) = self.trace.get(&e) {
                stack.extend(d.premises.iter().cloned());
            }
        }
        out
    }

    /// Indented derivation tree for every membership of `instance`.
    pub fn explain(&self, instance: &str) -> Vec<String> {
        let mut lines = Vec::new();
        for concept in self.concepts_of(instance) {
            self.explain_entry(&Entry::member(instance, concept), 0, &mut Vec::new(), &mut lines);
        }
        lines
    }

    fn explain_entry(&self, entry: &Entry, depth: usize, path: &mut Vec<Entry>, lines: &mut Vec<String>) {
        let pad = "  ".repeat(depth);
        if self.asserted.contains(entry) {
            lines.push(format!("{pad}{entry}  [asserted]"));
            return;
        }
        let Some(d) = self.trace.get(entry) else {
            lines.push(format!("{pad}{entry}  [unknown]"));
            return;
        };
        lines.push(format!("{pad}{entry}  [{}]", d.rule));
        if path.contains(entry) {
            return;
        }
        path.push(entry.clone());
        for p in &d.premises {
            self.explain_entry(p, depth + 1, path, lines);
        }
        path.pop();
    }

    fn insert(&mut self, entry: &Entry) -> bool {
        match entry {
            Entry::Member { instance, concept } => self
                .members
                .entry(instance.clone())
                .or_default()
                .insert(concept.clone()),
            Entry::Fact(f) => self
                .facts
                .entry(f.relation.clone())
                .or_default()
                .insert(f.clone()),
        }
    }
}

/// Definitions and relation structure the rules consult, precomputed once.
struct Rules<'a> {
    closure: &'a SubsumptionClosure,
    relation_parent: BTreeMap<&'a str, (&'a str, bool, bool)>,
    /// reasoning concept -> (mode, role concept)
    roles_by_reasoning: BTreeMap<&'a str, Vec<(RoleMode, &'a str)>>,
    roles: Vec<(RoleMode, &'a str, &'a str)>,
    /// operand -> (conjunction, other operand)
    conjunctions: BTreeMap<&'a str, Vec<(&'a str, &'a str)>>,
}

impl<'a> Rules<'a> {
    fn new(ontology: &'a Ontology, closure: &'a SubsumptionClosure) -> Self {
        let mut relation_parent = BTreeMap::new();
        for r in ontology.relations() {
            if let Some(p) = r.particularizes.as_deref().and_then(|p| ontology.relation(p)) {
                relation_parent.insert(r.name.as_str(), (p.name.as_str(), r.temporal, p.temporal));
            }
        }
        let mut roles_by_reasoning: BTreeMap<&str, Vec<(RoleMode, &str)>> = BTreeMap::new();
        let mut roles = Vec::new();
        let mut conjunctions: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
        for c in ontology.concepts() {
            match &c.definition {
                Definition::Primitive => {}
                Definition::Role { mode, reasoning } => {
                    roles_by_reasoning
                        .entry(reasoning.as_str())
                        .or_default()
                        .push((*mode, c.name.as_str()));
                    roles.push((*mode, c.name.as_str(), reasoning.as_str()));
                }
                Definition::Conjunction { type_name, role } => {
                    conjunctions
                        .entry(type_name.as_str())
                        .or_default()
                        .push((c.name.as_str(), role.as_str()));
                    conjunctions
                        .entry(role.as_str())
                        .or_default()
                        .push((c.name.as_str(), type_name.as_str()));
                }
            }
        }
        Self {
            closure,
            relation_parent,
            roles_by_reasoning,
            roles,
            conjunctions,
        }
    }
}

struct Engine<'a> {
    rules: Rules<'a>,
    base: FactBase,
    queue: VecDeque<Entry>,
}

impl Engine<'_> {
    fn derive(&mut self, entry: Entry, rule: RuleId, premises: Vec<Entry>) {
        if self.base.insert(&entry) {
            self.base.trace.insert(entry.clone(), Derivation { rule, premises });
            self.queue.push_back(entry);
        }
    }

    fn process(&mut self, entry: Entry) {
        match &entry {
            Entry::Member { instance, concept } => self.on_member(instance, concept, &entry),
            Entry::Fact(f) => self.on_fact(f, &entry),
        }
    }

    fn on_member(&mut self, instance: &str, concept: &str, entry: &Entry) {
        let ups: Vec<String> = self
            .rules
            .closure
            .strict_ancestors(concept)
            .into_iter()
            .map(str::to_string)
            .collect();
        for up in ups {
            self.derive(Entry::member(instance, &up), RuleId::MembershipUp, vec![entry.clone()]);
        }

        if concept == "AC" {
            self.try_interaction(instance);
        }
        if AGENTIVE.contains(&concept) {
            let actions: Vec<String> = self
                .base
                .facts_of("PC")
                .filter(|f| f.args[0] == instance)
                .map(|f| f.args[1].clone())
                .collect();
            for x in actions {
                self.try_interaction(&x);
            }
        }

        if concept == "IdaConcept" {
            let props: Vec<String> = self
                .base
                .facts_of("hasForSubject")
                .filter(|f| f.args[1] == instance)
                .map(|f| f.args[0].clone())
                .collect();
            for p in props {
                self.try_subject(&p, instance);
            }
        }
        if concept == "Proposition" {
            let subjects: Vec<String> = self
                .base
                .facts_of("hasForSubject")
                .filter(|f| f.args[0] == instance)
                .map(|f| f.args[1].clone())
                .collect();
            for s in subjects {
                self.try_subject(instance, &s);
            }
        }

        let roles = self.rules.roles_by_reasoning.get(concept).cloned().unwrap_or_default();
        for (mode, role) in roles {
            let players: Vec<Fact> = self
                .base
                .facts_of(mode.relation())
                .filter(|f| f.args[1] == instance)
                .cloned()
                .collect();
            for f in players {
                let rule = role_rule(mode);
                self.derive(
                    Entry::member(&f.args[0], role),
                    rule,
                    vec![Entry::Fact(f.clone()), entry.clone()],
                );
            }
        }

        let conjs = self.rules.conjunctions.get(concept).cloned().unwrap_or_default();
        for (conj, other) in conjs {
            if self.base.is_member(instance, other) {
                self.derive(
                    Entry::member(instance, conj),
                    RuleId::D6,
                    conjunction_premises(instance, concept, other),
                );
            }
        }
    }

    fn on_fact(&mut self, fact: &Fact, entry: &Entry) {
        if let Some(&(parent, child_temporal, parent_temporal)) =
            self.rules.relation_parent.get(fact.relation.as_str())
        {
            // A non-temporal fact under a temporal parent only carries an
            // existential obligation; the validator checks for a witness.
            let lifted = match (child_temporal, parent_temporal) {
                (c, p) if c == p => Some(fact.time),
                (true, false) => Some(None),
                (false, true) => None,
                _ => unreachable!(),
            };
            if let Some(time) = lifted {
                let up = Fact {
                    relation: parent.to_string(),
                    args: fact.args.clone(),
                    time,
                };
                self.derive(Entry::Fact(up), RuleId::RelationUp, vec![entry.clone()]);
            }
        }

        match fact.relation.as_str() {
            "isAgentOf" | "PC" => {
                let action = fact.args[1].clone();
                self.try_interaction(&action);
            }
            "hasForSubject" => {
                let (p, s) = (fact.args[0].clone(), fact.args[1].clone());
                self.try_subject(&p, &s);
            }
            "isAffectedBy" => {
                self.derive(Entry::member(&fact.args[0], "Patient"), RuleId::D3, vec![entry.clone()]);
            }
            "isDataOf" | "isResultOf" => {
                let mode = if fact.relation == "isDataOf" {
                    RoleMode::Data
                } else {
                    RoleMode::Result
                };
                let (player, action) = (fact.args[0].clone(), fact.args[1].clone());
                let rule = match mode {
                    RoleMode::Data => RuleId::D4,
                    RoleMode::Result => RuleId::D4Result,
                };
                self.derive(Entry::member(&player, mode.kernel_role()), rule, vec![entry.clone()]);
                let roles: Vec<(&str, &str)> = self
                    .rules
                    .roles
                    .iter()
                    .filter(|(m, _, _)| *m == mode)
                    .map(|(_, role, reasoning)| (*role, *reasoning))
                    .collect();
                for (role, reasoning) in roles {
                    if self.base.is_member(&action, reasoning) {
                        self.derive(
                            Entry::member(&player, role),
                            role_rule(mode),
                            vec![entry.clone(), Entry::member(&action, reasoning)],
                        );
                    }
                }
            }
            _ => {}
        }
    }

    /// AC(x) ∧ isAgentOf(y,x) ∧ z ≠ y ∧ agentive(z) ∧ PC(z,x,t) ⇒ Interaction(x).
    fn try_interaction(&mut self, action: &str) {
        if !self.base.is_member(action, "AC") || self.base.is_member(action, "Interaction") {
            return;
        }
        let agents: Vec<&Fact> = self
            .base
            .facts_of("isAgentOf")
            .filter(|f| f.args[1] == action)
            .collect();
        let mut witness = None;
        'search: for agent in &agents {
            for pc in self.base.facts_of("PC").filter(|f| f.args[1] == action) {
                let z = &pc.args[0];
                if *z == agent.args[0] {
                    continue;
                }
                if let Some(kind) = AGENTIVE.iter().find(|k| self.base.is_member(z, k)) {
                    witness = Some(vec![
                        Entry::member(action, "AC"),
                        Entry::Fact((*agent).clone()),
                        Entry::member(z, kind),
                        Entry::Fact(pc.clone()),
                    ]);
                    break 'search;
                }
            }
        }
        if let Some(premises) = witness {
            self.derive(Entry::member(action, "Interaction"), RuleId::D1, premises);
        }
    }

    /// IdaConcept(x) ∧ Proposition(y) ∧ hasForSubject(y,x) ⇒ Subject(x).
    fn try_subject(&mut self, proposition: &str, subject: &str) {
        let fact = Fact::new("hasForSubject", &[proposition, subject], None);
        if self.base.has_fact(&fact)
            && self.base.is_member(subject, "IdaConcept")
            && self.base.is_member(proposition, "Proposition")
        {
            self.derive(
                Entry::member(subject, "Subject"),
                RuleId::D2,
                vec![
                    Entry::member(subject, "IdaConcept"),
                    Entry::member(proposition, "Proposition"),
                    Entry::Fact(fact),
                ],
            );
        }
    }
}

fn role_rule(mode: RoleMode) -> RuleId {
    match mode {
        RoleMode::Data => RuleId::D5,
        RoleMode::Result => RuleId::D5Result,
    }
}

fn conjunction_premises(instance: &str, a: &str, b: &str) -> Vec<Entry> {
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    vec![Entry::member(instance, first), Entry::member(instance, second)]
}

/// Least fixpoint of the asserted memberships and facts under every rule.
pub fn saturate(ontology: &Ontology, closure: &SubsumptionClosure) -> FactBase {
    let mut engine = Engine {
        rules: Rules::new(ontology, closure),
        base: FactBase::default(),
        queue: VecDeque::new(),
    };
    let mut asserted = Vec::new();
    for inst in ontology.instances() {
        for c in &inst.concepts {
            asserted.push(Entry::member(&inst.name, c));
        }
    }
    for f in ontology.facts() {
        asserted.push(Entry::Fact(f.clone()));
    }
    for e in &asserted {
        if engine.base.insert(e) {
            engine.base.asserted.insert(e.clone());
            engine.queue.push_back(e.clone());
        }
    }
    while let Some(e) = engine.queue.pop_front() {
        engine.process(e);
    }
    engine.base
}
