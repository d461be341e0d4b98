//! Load-order independence, saturation laws, determinism and error spans.

#[path = "support/generator.rs"]
mod generator;

use generator::{random_model, to_text, Shape};
use okc_core::corpus::entries;
use okc_core::diagnostic::Location;
use okc_core::frontend::{lex_line, parse, parse_ontology};
use okc_core::kernel::kernel_ontology;
use okc_core::model::Ontology;
use okc_core::reasoner::{closure, saturate, FactBase};
use okc_core::validator::validate;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn model(seed: u64) -> Vec<String> {
    random_model(&mut ChaCha8Rng::seed_from_u64(seed), Shape::default())
}

fn load(lines: &[String]) -> Ontology {
    parse_ontology(&to_text(lines), "gen.oks").unwrap_or_else(|d| panic!("{d:#?}\n{}", lines.join("\n")))
}

fn saturated(onto: &Ontology) -> Option<FactBase> {
    closure(onto).ok().map(|c| saturate(onto, &c))
}

#[test]
fn generated_models_load() {
    for seed in 0..300 {
        load(&model(seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn load_order_is_irrelevant(seed in any::<u64>(), shuffle in any::<u64>()) {
        let lines = model(seed);
        let mut shuffled = lines.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let stmts = parse(&to_text(&shuffled), "gen.oks").unwrap();
        let decls = stmts.into_iter().map(|s| (s.declaration, Location::Source(s.span))).collect();
        let reordered = Ontology::load(kernel_ontology(), decls).unwrap();
        prop_assert_eq!(reordered, load(&lines));
    }

    #[test]
    fn saturation_is_monotone(seed in any::<u64>(), mask in any::<u64>()) {
        let full = load(&model(seed));
        let bit = std::cell::Cell::new(0u32);
        let partial = full.with_facts_filtered(|_| {
            bit.set(bit.get() + 1);
            mask.rotate_left(bit.get()) & 1 == 1
        });
        if let (Some(small), Some(big)) = (saturated(&partial), saturated(&full)) {
            prop_assert!(small.memberships().is_subset(&big.memberships()));
            prop_assert!(small.fact_set().is_subset(&big.fact_set()));
        }
    }

    #[test]
    fn saturation_is_idempotent(seed in any::<u64>()) {
        let lines = model(seed);
        let onto = load(&lines);
        let Some(base) = saturated(&onto) else { return Ok(()) };
        // restate the saturated base as asserted instances and facts
        let mut restated: Vec<String> = lines
            .iter()
            .filter(|l| !l.starts_with("instance ") && !l.starts_with("fact "))
            .cloned()
            .collect();
        for inst in onto.instances() {
            let cs: Vec<&str> = base.concepts_of(&inst.name).collect();
            restated.push(format!("instance {} : {}", inst.name, cs.join(", ")));
        }
        for f in base.facts() {
            restated.push(format!("fact {f}"));
        }
        let again = saturated(&load(&restated)).unwrap();
        prop_assert!(again.same_entries(&base));
    }

    #[test]
    fn data_are_patients_and_contents(seed in any::<u64>()) {
        let onto = load(&model(seed));
        if let Some(base) = saturated(&onto) {
            for inst in base.instances_of("Data") {
                prop_assert!(base.is_member(inst, "Patient"));
                prop_assert!(base.is_member(inst, "Content"));
                prop_assert!(base.is_member(inst, "ED"));
            }
        }
    }

    #[test]
    fn validation_ignores_statement_order(seed in any::<u64>(), shuffle in any::<u64>()) {
        let lines = model(seed);
        let mut shuffled = lines.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let summary = |ls: &[String]| {
            let mut v: Vec<_> = validate(&load(ls))
                .into_iter()
                .map(|d| (d.code, d.severity, d.message, d.subjects))
                .collect();
            v.sort();
            v
        };
        let first = validate(&load(&lines));
        prop_assert_eq!(&first, &validate(&load(&lines)));
        prop_assert_eq!(summary(&lines), summary(&shuffled));
    }
}

/// Replaces one token of a valid corpus file with something malformed and
/// expects a diagnostic whose span overlaps the replacement.
#[test]
fn corruptions_are_reported_at_the_token() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sources: Vec<_> = entries().iter().filter(|e| !e.is_negative()).collect();
    for round in 0..300 {
        let entry = sources[round % sources.len()];
        let lines: Vec<&str> = entry.source.lines().collect();
        let candidates: Vec<usize> = (0..lines.len())
            .filter(|&i| !lex_line(lines[i], "x", 1).unwrap().is_empty())
            .collect();
        let line_idx = *candidates.choose(&mut rng).unwrap();
        let tokens = lex_line(lines[line_idx], "x", 1).unwrap();
        let tok = tokens.choose(&mut rng).unwrap();
        // padded so the replacement stays a token of its own
        let replacement = [" 9q ", " $ ", " a!b "][rng.gen_range(0..3)];
        let chars: Vec<char> = lines[line_idx].chars().collect();
        let start = tok.column - 1;
        let corrupted: String = chars[..start]
            .iter()
            .chain(replacement.chars().collect::<Vec<_>>().iter())
            .chain(chars[start + tok.len()..].iter())
            .collect();
        let mut text: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        text[line_idx] = corrupted.clone();
        let diags = parse_ontology(&text.join("\n"), "c.oks").expect_err(&corrupted);
        let covered = diags.iter().any(|d| {
            d.location.span().is_some_and(|s| {
                let end = tok.column + replacement.chars().count();
                s.line == line_idx + 1 && s.column < end && tok.column < s.column + s.length.max(1)
            })
        });
        assert!(covered, "no diagnostic overlaps column {} of {corrupted:?}: {diags:#?}", tok.column);
    }
}
