//! Which rule or check realizes each axiom, and the fixtures exercising it.
//! `docs/traceability.md` carries the same tables; a test keeps them equal.

use std::fmt;

use crate::diagnostic::Code;
use crate::reasoner::RuleId;
use crate::validator::REGISTRY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implementer {
    Rule(RuleId),
    Check(Code),
}

impl fmt::Display for Implementer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Implementer::Rule(r) => write!(f, "rule {r}"),
            Implementer::Check(c) => write!(f, "check {c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomTrace {
    pub axiom: &'static str,
    pub statement: &'static str,
    pub implementer: Implementer,
    /// Corpus entry that satisfies the axiom and exercises the implementer.
    pub passing: &'static str,
    /// Corpus entry violating it; `None` when the axiom cannot be violated
    /// (definitions and kernel subsumptions hold by construction).
    pub failing: Option<&'static str>,
}

const fn rule(axiom: &'static str, statement: &'static str, r: RuleId, passing: &'static str) -> AxiomTrace {
    AxiomTrace {
        axiom,
        statement,
        implementer: Implementer::Rule(r),
        passing,
        failing: None,
    }
}

const fn check(
    axiom: &'static str,
    statement: &'static str,
    c: Code,
    passing: &'static str,
    failing: &'static str,
) -> AxiomTrace {
    AxiomTrace {
        axiom,
        statement,
        implementer: Implementer::Check(c),
        passing,
        failing: Some(failing),
    }
}

pub const AXIOMS: &[AxiomTrace] = &[
    rule("A1", "Reasoning ⊑ AC", RuleId::MembershipUp, "car_diagnosis"),
    rule("A2", "Communication ⊑ Interaction", RuleId::MembershipUp, "information_exchange"),
    check("A3", "Reasoning ⊥ Communication", Code::A3, "car_diagnosis", "a3_reasoning_and_communication"),
    check("A4", "CF(Task, Diagnosis, 1)", Code::A7, "a4_a6_labels", "a7_task_on_state"),
    check("A5", "CF(FormalKnowledgeRole, CalibrationData, 2)", Code::L3, "a4_a6_labels", "l3_formal_on_type"),
    check("A6", "CF(DomainConcept, EmptyFuelTank, 3)", Code::L5, "a4_a6_labels", "l5_domain_and_role"),
    check("A7", "CF(Task, x, t) → Reasoning ⊒ x", Code::A7, "car_diagnosis", "a7_task_on_state"),
    check("A8", "CF(TransferFunction, x, t) → Communication ⊒ x", Code::A8, "car_diagnosis", "a8_transfer_on_reasoning"),
    check("A9", "hasForSubject(x, y) → Proposition(x) ∧ IdaConcept(y)", Code::S1, "information_exchange", "s1_subject_not_concept"),
    check("A10", "isAffectedBy(x, y) → ∃t PC(x, y, t)", Code::S2, "car_diagnosis", "s2_missing_participation"),
    rule("A11", "isDataOf(x, y) → isAffectedBy(x, y)", RuleId::RelationUp, "car_diagnosis"),
    check("A12", "isDataOf(x, y) → Content(x) ∧ AC(y)", Code::S1, "car_diagnosis", "s1_data_not_content"),
    check("A13", "isDataOf(x, y) → ∃t ∀t′ (PRE(y, t′) ∧ t′ ≤ t → PC(x, y, t′))", Code::A13, "calibration", "a13_data_not_from_start"),
    rule("D1", "Interaction: AC with an agent and another agentive participant", RuleId::D1, "information_exchange"),
    rule("D2", "Subject: IdaConcept that a Proposition has for subject", RuleId::D2, "information_exchange"),
    rule("D3", "Patient(x) ≡ ∃y isAffectedBy(x, y)", RuleId::D3, "information_exchange"),
    rule("D4", "Data(x) ≡ ∃y isDataOf(x, y)", RuleId::D4, "car_diagnosis"),
    rule("D5", "CalibrationData(x) ≡ ∃y isDataOf(x, y) ∧ Calibrating(y)", RuleId::D5, "calibration"),
    rule("D6", "ModelToCalibrate(x) ≡ Model(x) ∧ CalibrationData(x)", RuleId::D6, "calibration"),
    rule("T1", "Patient ⊑ ED", RuleId::MembershipUp, "calibration"),
    rule("T2", "Data ⊑ Patient", RuleId::MembershipUp, "calibration"),
    rule("T3", "Data ⊑ Content", RuleId::MembershipUp, "calibration"),
    check("Ad33", "PC(x, y, t) → ED(x) ∧ PD(y)", Code::S1, "car_diagnosis", "s1_pc_on_perdurant"),
    check("Ad35", "ED(x) → ∃y, t PC(x, y, t)", Code::Ad35, "car_diagnosis", "ad35_idle_endurant"),
];

pub const AXIOM_HEADER: &str =
    "| Axiom | Statement | Implemented by | Passing fixture | Failing fixture |\n|---|---|---|---|---|";
pub const CHECK_HEADER: &str = "| Code | Severity | Description | Cites |\n|---|---|---|---|";

/// Markdown rows of the axiom table, header included.
pub fn axiom_table() -> String {
    let mut out = String::from(AXIOM_HEADER);
    for a in AXIOMS {
        out.push_str(&format!(
            "\n| {} | {} | {} | {} | {} |",
            a.axiom,
            a.statement,
            a.implementer,
            a.passing,
            a.failing.unwrap_or("not falsifiable")
        ));
    }
    out
}

/// Markdown rows of the check registry, header included.
pub fn check_table() -> String {
    let mut out = String::from(CHECK_HEADER);
    for c in REGISTRY {
        out.push_str(&format!(
            "\n| {} | {} | {} | {} |",
            c.code, c.severity, c.description, c.citation
        ));
    }
    out
}

