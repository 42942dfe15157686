mod common;

use std::path::PathBuf;

use common::oracle::{reachable, structures, Model};
use pzero::diagonal::g_toy;
use pzero::proofsys::{check_proof, enumerate_proofs, enumerate_proofs_with, EnumerationLimits, Justification, Proof, SchemaId, Theory, Verdict};
use pzero::semantics::Mode;
use pzero::syntax::sugar::imp;
use pzero::{parse, Formula};

fn sample(name: &str) -> (Proof, Theory) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("proofs");
    let read = |ext: &str| std::fs::read_to_string(dir.join(format!("{name}.{ext}.json"))).unwrap();
    (Proof::from_json(&read("proof")).unwrap(), Theory::from_json(&read("theory")).unwrap())
}

fn f(s: &str) -> Formula {
    parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[test]
fn sample_files_round_trip_through_json() {
    for name in ["modus_ponens", "generalization", "identity", "instantiation"] {
        let (p, t) = sample(name);
        assert_eq!(Proof::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(Theory::from_json(&t.to_json()).unwrap().proper_axioms(), t.proper_axioms());
    }
}

#[test]
fn enumeration_recovers_modus_ponens_sample() {
    let (p, t) = sample("modus_ponens");
    let conclusion = p.conclusion().unwrap();
    let found = enumerate_proofs(&t, p.lines.len(), conclusion).unwrap();
    assert_eq!(found.lines.len(), p.lines.len());
    assert!(check_proof(&found, &t).unwrap().is_accept());
    assert_eq!(found.conclusion(), Some(conclusion));
}

#[test]
fn enumeration_stops_at_node_budget() {
    // The III.1 instance this proof needs lies outside the search universe,
    // so the search runs until the budget is spent.
    let (p, t) = sample("generalization");
    let limits = EnumerationLimits {
        max_lines: p.lines.len(),
        max_nodes: 5_000,
    };
    let started = std::time::Instant::now();
    assert_eq!(enumerate_proofs_with(&t, limits, p.conclusion().unwrap()), None);
    assert!(started.elapsed() < std::time::Duration::from_secs(30));
}

#[test]
fn mp_cites_antecedent_then_implication() {
    let (mut p, t) = sample("modus_ponens");
    p.lines[2].justification = Justification::Mp(2, 1);
    assert!(matches!(check_proof(&p, &t).unwrap(), Verdict::Reject { line: 3, .. }));
}

#[test]
fn forward_reference_is_an_error() {
    let (mut p, t) = sample("modus_ponens");
    p.lines[0].justification = Justification::Mp(2, 3);
    assert!(check_proof(&p, &t).is_err());
}

#[test]
fn arithmetic_axioms_in_small_structures() {
    let i1 = pzero::proofsys::arithmetic_axiom(SchemaId::I1);
    let i2 = pzero::proofsys::arithmetic_axiom(SchemaId::I2);
    let i3 = pzero::proofsys::arithmetic_axiom(SchemaId::I3);
    for (z, s) in structures(3) {
        for numerals_only in [false, true] {
            let model = Model::new(z, s.clone(), numerals_only, 2);
            let individuals: Vec<u32> = if numerals_only {
                reachable(z, &s).into_iter().collect()
            } else {
                (0..s.len() as u32).collect()
            };
            let zero_has_predecessor = individuals.iter().any(|&d| s[d as usize] == z);
            let injective = individuals
                .iter()
                .all(|&a| individuals.iter().all(|&b| a == b || s[a as usize] != s[b as usize]));
            let junk = reachable(z, &s).len() < individuals.len();
            let label = model.interpretation();
            assert_eq!(model.valid(&i1), !zero_has_predecessor, "I.1 in {label}");
            assert_eq!(model.valid(&i2), injective, "I.2 in {label}");
            assert_eq!(model.valid(&i3), !junk, "I.3 in {label}");
            // No finite structure satisfies both I.1 and I.2.
            assert!(!(model.valid(&i1) && model.valid(&i2)), "{label}");
        }
    }
}

#[test]
fn schema_instances_are_valid_in_small_structures() {
    let instances = [
        "(x2(0)) -> ((x2(0)) v (y2(0)))",
        "((x2(0)) v (x2(0))) -> (x2(0))",
        "((x2(0)) v (y2(0))) -> ((y2(0)) v (x2(0)))",
        "(x1 P (y2(x1))) -> (y2(ff0))",
    ];
    for text in instances {
        let phi = f(text);
        assert!(pzero::proofsys::is_schema_axiom(&phi).is_some(), "{text}");
        for (z, s) in structures(2) {
            for numerals_only in [false, true] {
                assert!(Model::new(z, s.clone(), numerals_only, 2).valid(&phi), "{text}");
            }
        }
    }
}

#[test]
fn toy_extension_names_its_axiom() {
    let t = Theory::p_prime_toy();
    assert_eq!(t.mode(), Mode::P0);
    assert_eq!(t.proper_axioms(), &[g_toy().negation()]);
}

#[test]
fn proper_axioms_may_be_implications_of_sentences() {
    let a = f("y2 P (y2(0))");
    let t = Theory::new("T", Mode::P, vec![a.clone(), imp(a.clone(), f("y2 P (y2(f0))"))]);
    assert!(enumerate_proofs(&t, 3, &f("y2 P (y2(f0))")).is_some());
}
