//! The traceability document matches the code, and every listed fixture
//! does what the table claims.

use std::collections::BTreeSet;

use okc_core::corpus::load_example;
use okc_core::diagnostic::Code;
use okc_core::frontend::parse_ontology;
use okc_core::traceability::{axiom_table, check_table, Implementer, AXIOMS, AXIOM_HEADER, CHECK_HEADER};
use okc_core::validator::{analyze, REGISTRY};

const DOC: &str = include_str!("../../../docs/traceability.md");

/// The table starting at `header`, up to the first non-table line.
fn table_in_doc(header: &str) -> String {
    let start = DOC.find(header).unwrap_or_else(|| panic!("table header missing:\n{header}"));
    DOC[start..]
        .lines()
        .take_while(|l| l.starts_with('|'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn axiom_table_matches_code() {
    assert_eq!(table_in_doc(AXIOM_HEADER), axiom_table(), "regenerate with traceability::axiom_table()");
}

#[test]
fn check_table_matches_registry() {
    assert_eq!(table_in_doc(CHECK_HEADER), check_table(), "regenerate with traceability::check_table()");
}

#[test]
fn every_required_axiom_is_mapped_once() {
    let mut required: Vec<String> = (1..=13).map(|i| format!("A{i}")).collect();
    required.extend((1..=6).map(|i| format!("D{i}")));
    required.extend((1..=3).map(|i| format!("T{i}")));
    required.extend(["Ad33".to_string(), "Ad35".to_string()]);
    let mapped: Vec<&str> = AXIOMS.iter().map(|a| a.axiom).collect();
    assert_eq!(mapped.len(), mapped.iter().collect::<BTreeSet<_>>().len(), "duplicate axiom rows");
    assert_eq!(mapped, required.iter().map(String::as_str).collect::<Vec<_>>());
}

#[test]
fn every_check_is_registered_once_and_implemented() {
    let codes: BTreeSet<Code> = REGISTRY.iter().map(|c| c.code).collect();
    assert_eq!(codes.len(), REGISTRY.len());
    for a in AXIOMS {
        if let Implementer::Check(c) = a.implementer {
            assert!(codes.contains(&c), "{} maps to unregistered {c}", a.axiom);
        }
    }
}

#[test]
fn fixtures_pass_and_fail_as_claimed() {
    for a in AXIOMS {
        let pass = load_example(a.passing).unwrap();
        let onto = parse_ontology(pass.source, &pass.display_path()).unwrap();
        let analysis = analyze(&onto).unwrap();
        assert!(
            analysis.diagnostics.iter().all(|d| !d.is_error()),
            "{}: passing fixture {} has errors",
            a.axiom,
            a.passing
        );
        match a.implementer {
            Implementer::Rule(rule) => assert!(
                analysis.facts.derivations().any(|(_, d)| d.rule == rule),
                "{}: rule {rule} never fires on {}",
                a.axiom,
                a.passing
            ),
            Implementer::Check(code) => {
                assert!(
                    analysis.diagnostics.iter().all(|d| d.code != code),
                    "{}: {code} reported on passing fixture {}",
                    a.axiom,
                    a.passing
                );
                let failing = a.failing.expect("checks are falsifiable");
                let entry = load_example(failing).unwrap();
                assert!(
                    entry.expected.contains(&code),
                    "{}: failing fixture {failing} does not expect {code}",
                    a.axiom
                );
                let onto = parse_ontology(entry.source, &entry.display_path()).unwrap();
                let diags = analyze(&onto).map(|a| a.diagnostics).unwrap_or_else(|d| d);
                assert!(diags.iter().any(|d| d.code == code), "{}: {failing} does not raise {code}", a.axiom);
            }
        }
    }
}
