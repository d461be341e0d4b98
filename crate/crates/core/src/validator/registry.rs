//! The ordered list of validator checks.

use crate::diagnostic::{Code, Severity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckInfo {
    pub code: Code,
    pub severity: Severity,
    pub description: &'static str,
    /// Axioms the check enforces.
    pub citation: &'static str,
}

const fn check(code: Code, severity: Severity, description: &'static str, citation: &'static str) -> CheckInfo {
    CheckInfo {
        code,
        severity,
        description,
        citation,
    }
}

pub const REGISTRY: &[CheckInfo] = &[
    check(Code::W1, Severity::Error, "taxonomy is acyclic", "subsumption"),
    check(Code::W2, Severity::Error, "no concept is subsumed by both sides of a disjointness", "A3, Ad33"),
    check(Code::S1, Severity::Error, "fact arguments conform to relation signatures", "Ad33, A9, A12"),
    check(Code::S2, Severity::Error, "non-temporal particularizations have a witnessing temporal fact", "A10"),
    check(Code::A3, Severity::Error, "no instance belongs to two disjoint concepts", "A3"),
    check(Code::A13, Severity::Error, "data participate from the start of the perdurant", "A13"),
    check(Code::R13, Severity::Error, "results participate until the end of the perdurant", "A13 dual"),
    check(Code::Ad35, Severity::Warning, "every endurant participates in some perdurant", "Ad35"),
    check(Code::A7, Severity::Error, "Task labels classify Reasonings", "A7"),
    check(Code::A8, Severity::Error, "TransferFunction labels classify Communications", "A8"),
    check(Code::L2b, Severity::Error, "Inference labels classify Reasonings", "A7 analog"),
    check(Code::L3, Severity::Error, "knowledge-role labels classify anti-rigid dependent participation roles", "KnowledgeRole"),
    check(Code::L4, Severity::Error, "identity criteria and input/output coherence of knowledge roles", "FormalKnowledgeRole, MaterialKnowledgeRole"),
    check(Code::L5, Severity::Error, "mutually exclusive labels never share a time point", "CF"),
    check(Code::L6, Severity::Error, "no anti-rigid concept subsumes a rigid concept", "rigidity"),
];

pub fn lookup(code: Code) -> Option<&'static CheckInfo> {
    REGISTRY.iter().find(|c| c.code == code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_unique() {
        let mut codes: Vec<Code> = REGISTRY.iter().map(|c| c.code).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), REGISTRY.len());
    }
}
