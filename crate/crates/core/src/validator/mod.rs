//! Well-formedness, axiom and labeling checks over a saturated ontology.
//!
//! Every finding carries a code from [`REGISTRY`]. Checks never mutate the
//! ontology; the result is sorted with [`sort_diagnostics`].

mod labels;
mod registry;
mod structure;
mod temporal;

pub use labels::check_labels;
pub use registry::{lookup, CheckInfo, REGISTRY};
pub use temporal::{check_temporal_participation, data_from_start, result_until_end, Participation};

use crate::diagnostic::{sort_diagnostics, Diagnostic, Location};
use crate::model::{DeclKey, Ontology};
use crate::reasoner::{saturate, Entry, FactBase, SubsumptionClosure};

/// Closure, saturated facts and findings of one validation run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub closure: SubsumptionClosure,
    pub facts: FactBase,
    pub diagnostics: Vec<Diagnostic>,
}

/// Validates `ontology`. Fails only when the taxonomy is cyclic, in which
/// case the W1 findings are returned and nothing else can be checked.
pub fn analyze(ontology: &Ontology) -> Result<Analysis, Vec<Diagnostic>> {
    let mut diagnostics = structure::check_acyclic(ontology);
    if !diagnostics.is_empty() {
        sort_diagnostics(&mut diagnostics);
        return Err(diagnostics);
    }
    let closure = crate::reasoner::closure(ontology).map_err(|e| {
        vec![Diagnostic::error(crate::diagnostic::Code::W1, Location::Kernel, e.to_string())]
    })?;
    let facts = saturate(ontology, &closure);
    diagnostics.extend(structure::check_disjointness(ontology, &closure));
    diagnostics.extend(structure::check_signatures(ontology, &closure, &facts));
    diagnostics.extend(structure::check_witnesses(ontology, &facts));
    diagnostics.extend(structure::check_instance_disjointness(ontology, &facts));
    diagnostics.extend(structure::check_endurant_participation(ontology, &facts));
    diagnostics.extend(structure::check_rigidity(ontology, &closure));
    diagnostics.extend(check_temporal_participation(ontology, &facts));
    diagnostics.extend(check_labels(ontology, &closure, &facts));
    sort_diagnostics(&mut diagnostics);
    Ok(Analysis {
        closure,
        facts,
        diagnostics,
    })
}

/// Every finding for `ontology`, sorted.
pub fn validate(ontology: &Ontology) -> Vec<Diagnostic> {
    match analyze(ontology) {
        Ok(a) => a.diagnostics,
        Err(d) => d,
    }
}

pub(crate) fn instance_location(ontology: &Ontology, instance: &str) -> Location {
    ontology.location(&DeclKey::Instance(instance.to_string()))
}

/// Where a (possibly derived) entry came from: its own declaration, or the
/// first asserted fact (then membership) it was derived from.
pub(crate) fn entry_location(ontology: &Ontology, facts: &FactBase, entry: &Entry) -> Location {
    let own = |e: &Entry| match e {
        Entry::Fact(f) => ontology.location(&DeclKey::Fact(f.clone())),
        Entry::Member { instance, .. } => instance_location(ontology, instance),
    };
    if facts.is_asserted(entry) {
        return own(entry);
    }
    let roots = facts.roots(entry);
    roots
        .iter()
        .find(|e| matches!(e, Entry::Fact(_)))
        .or_else(|| roots.iter().next())
        .map(own)
        .unwrap_or(Location::Kernel)
}
