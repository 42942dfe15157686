//! Acceptance suite. Runs each criterion in turn and prints one PASS/FAIL
//! line per criterion; exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;

use common::corpus::{self, corpus, one_free_individual, pool};
use common::oracle::{library_env, naive_code, reachable, structures, Model, OEnv};
use pzero::diagonal::{g_toy, proposition_report, ReportOptions};
use pzero::numbering::{decode, encode, encode_symbols};
use pzero::proofsys::{check_proof, soundness_counterexamples, Justification, Line, Proof, Theory};
use pzero::semantics::{
    candidate_count, find_models, Bounds, Environment, Evaluator, Interpretation, Mode,
    SearchOptions, SigmaHierarchy, Value, ValueRepr,
};
use pzero::syntax::{numeral, subst, Base, Formula, Replacement, Symbol, Term1, Variable};

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

/// Number, name, runtime budget in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 6] = [
        (1, "clause oracle equivalence", Some(60), clause_oracle),
        (2, "coincidence and substitution lemmas", Some(30), lemmas),
        (3, "numeral coverage and instance-universal equivalence", None, numeral_coverage),
        (4, "bounded Goedel-sentence report", Some(60), demo_report),
        (5, "numbering", Some(10), numbering),
        (6, "proof checker", None, proof_checker),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let elapsed = started.elapsed();
        let mut verdict = outcome.unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::new(false, format!("panicked: {msg}"))
        });
        if let Some(secs) = budget {
            if elapsed > Duration::from_secs(secs) {
                verdict.pass = false;
                verdict.detail.push_str(&format!("; over the {secs} s budget"));
            }
        }
        println!(
            "criterion {n}: {} {name}: {} ({:.2} s)",
            if verdict.pass { "PASS" } else { "FAIL" },
            verdict.detail,
            elapsed.as_secs_f64()
        );
        if !verdict.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

// ---- criterion 1 ----

fn clause_oracle() -> Verdict {
    let formulas = corpus();
    let mut cases = 0u64;
    let mut mismatches = Vec::new();
    for (zero, succ) in structures(2) {
        for numerals_only in [false, true] {
            let model = Model::new(zero, succ.clone(), numerals_only, 3);
            let m = model.interpretation();
            let ev = Evaluator::new(&m, Bounds::default());
            for phi in &formulas {
                let vars: Vec<Variable> = phi.free_vars().into_iter().collect();
                for env in model.environments(&vars) {
                    cases += 1;
                    let expected = model.sat(&env, phi);
                    let got = ev.satisfies(&library_env(ev.hierarchy(), &env), phi);
                    if got != Ok(expected) {
                        mismatches.push(format!("{} in {m}: oracle {expected}, library {got:?}", pzero::print(phi)));
                    }
                }
            }
        }
    }
    Verdict::new(
        mismatches.is_empty() && formulas.len() >= 50,
        format!(
            "{} formulas, {cases} cases, {} disagreements{}",
            formulas.len(),
            mismatches.len(),
            mismatches.first().map(|m| format!(", first: {m}")).unwrap_or_default()
        ),
    )
}

// ---- criterion 2 ----

fn random_value(h: &SigmaHierarchy, ty: u8, rng: &mut impl Rng) -> Value {
    let level = h.level(ty).expect("level within bounds");
    let i = rng.gen_range(0..level.len());
    let value = level.iter().nth(i as usize).unwrap();
    value
}

fn random_env(h: &SigmaHierarchy, vars: &[Variable], rng: &mut impl Rng) -> Environment {
    let mut env = Environment::new();
    for v in vars {
        env.bind(*v, random_value(h, v.type_level(), rng));
    }
    env
}

fn random_structure(rng: &mut impl Rng) -> Interpretation {
    let k = rng.gen_range(1..=3u32);
    let succ = (0..k).map(|_| rng.gen_range(0..k)).collect();
    let mode = if rng.gen_bool(0.5) { Mode::P } else { Mode::P0 };
    Interpretation::new(rng.gen_range(0..k), succ, mode).unwrap()
}

/// Denotation of a type-1 term computed by walking the successor table.
fn walk(m: &Interpretation, env: &Environment, t: &Term1) -> Value {
    let mut d = match t.base() {
        Base::Zero => m.zero(),
        Base::Var(v) => env.get(v).expect("bound") as u32,
    };
    let mut steps = t.succ_count().clone();
    while steps > BigUint::ZERO {
        d = m.succ()[d as usize];
        steps -= 1u32;
    }
    Value::from(d)
}

fn lemmas() -> Verdict {
    const CASES: usize = 1000;
    let mut rng = corpus::rng(0x1e_4a5);
    let vars = pool();
    let mut coincidence = 0;
    let mut coincidence_bad = Vec::new();
    while coincidence < CASES {
        let phi = corpus::random_formula(&mut rng, corpus::MAX_DEPTH);
        let m = random_structure(&mut rng);
        let ev = Evaluator::new(&m, Bounds::default());
        let h = ev.hierarchy();
        let e1 = random_env(h, &vars, &mut rng);
        let mut e2 = random_env(h, &vars, &mut rng);
        for v in phi.free_vars() {
            e2.bind(v, e1.get(v).unwrap());
        }
        coincidence += 1;
        let (a, b) = (ev.satisfies(&e1, &phi), ev.satisfies(&e2, &phi));
        if a.is_err() || a != b {
            coincidence_bad.push(format!("{} in {m}", pzero::print(&phi)));
        }
    }

    let mut substitution = 0;
    let mut substitution_bad = Vec::new();
    let mut renamed = 0;
    while substitution < CASES {
        let phi = corpus::random_formula(&mut rng, corpus::MAX_DEPTH);
        let free: Vec<Variable> = phi.free_vars().into_iter().collect();
        if free.is_empty() {
            continue;
        }
        let v = free[rng.gen_range(0..free.len())];
        let replacement = if v.type_level() == 1 {
            Replacement::Term(corpus::random_term(&mut rng))
        } else {
            let same: Vec<Variable> = vars.iter().copied().filter(|w| w.ty() == v.ty()).collect();
            Replacement::Var(same[rng.gen_range(0..same.len())])
        };
        let m = random_structure(&mut rng);
        substitution += 1;
        check_substitution(&phi, v, replacement, &m, &mut rng, &mut substitution_bad, &mut renamed);
    }
    Verdict::new(
        coincidence_bad.is_empty() && substitution_bad.is_empty(),
        format!(
            "coincidence {coincidence} cases, {} violations; substitution {substitution} cases ({renamed} with capture renaming), {} violations{}",
            coincidence_bad.len(),
            substitution_bad.len(),
            coincidence_bad
                .iter()
                .chain(&substitution_bad)
                .next()
                .map(|m| format!(", first: {m}"))
                .unwrap_or_default()
        ),
    )
}

fn check_substitution(
    phi: &Formula,
    v: Variable,
    r: Replacement,
    m: &Interpretation,
    rng: &mut impl Rng,
    bad: &mut Vec<String>,
    renamed: &mut usize,
) {
    let ev = Evaluator::new(m, Bounds::default());
    let env = random_env(ev.hierarchy(), &pool(), rng);
    let result = match subst(phi, v, r.clone()) {
        Ok(s) => s,
        Err(e) => {
            bad.push(format!("{}[{v}:={r}] refused: {e}", pzero::print(phi)));
            return;
        }
    };
    if !phi.is_substitutable(v, &r) {
        *renamed += 1;
    }
    let value = match &r {
        Replacement::Term(t) => walk(m, &env, t),
        Replacement::Var(w) => env.get(*w).unwrap(),
    };
    let lhs = ev.satisfies(&env, &result);
    let rhs = ev.satisfies(&env.clone().with(v, value), phi);
    if lhs.is_err() || lhs != rhs {
        bad.push(format!("{}[{v}:={r}] in {m}", pzero::print(phi)));
    }
}

// ---- criterion 3 ----

fn numeral_coverage() -> Verdict {
    let x1 = Variable::new(1, 1);
    let formulas = one_free_individual();
    let mut problems = Vec::new();
    let mut structures_checked = 0;
    let mut equivalences = 0;
    let mut p_mode_gaps = 0;
    for (zero, succ) in structures(3) {
        structures_checked += 1;
        let k = succ.len() as u32;
        for mode in [Mode::P0, Mode::P] {
            let m = Interpretation::new(zero, succ.clone(), mode).unwrap();
            let ev = Evaluator::new(&m, Bounds::default());
            let empty = Environment::new();
            if mode == Mode::P0 {
                let level1: BTreeSet<u32> = ev.hierarchy().level1().iter().copied().collect();
                if level1 != reachable(zero, &succ) {
                    problems.push(format!("sigma_1 of {m} is {level1:?}"));
                }
                for d in &level1 {
                    let named = (0..k).any(|n| ev.eval_term1(&empty, &numeral(n)) == Ok(*d));
                    if !named {
                        problems.push(format!("{d} in {m} has no numeral below {k}"));
                    }
                }
            }
            for phi in &formulas {
                let universal = ev.satisfies(&empty, &Formula::forall(x1, phi.clone())).unwrap();
                let instances = (0..k).all(|n| {
                    let inst = subst(phi, x1, Replacement::Term(numeral(n))).unwrap();
                    ev.satisfies(&empty, &inst).unwrap()
                });
                match mode {
                    Mode::P0 => {
                        equivalences += 1;
                        if universal != instances {
                            problems.push(format!("{} in {m}", pzero::print(phi)));
                        }
                    }
                    Mode::P => p_mode_gaps += usize::from(universal != instances),
                }
            }
        }
    }

    // The reference counterexample in P mode: D = {a, b}, zero = a,
    // succ = identity, phi = y2(x1), y2 = {a}.
    let y2 = Variable::new(2, 2);
    let phi = Formula::apply(y2, Term1::var(x1).unwrap());
    let m = Interpretation::new(0, vec![0, 1], Mode::P).unwrap();
    let ev = Evaluator::new(&m, Bounds::default());
    let reprs = BTreeMap::from([(y2, ValueRepr::Set(vec![ValueRepr::Individual(0)]))]);
    let env = Environment::from_reprs(ev.hierarchy(), &reprs).unwrap();
    let all_instances = (0..2u32).all(|n| {
        let inst = subst(&phi, x1, Replacement::Term(numeral(n))).unwrap();
        ev.satisfies(&env, &inst) == Ok(true)
    });
    let universal = ev.satisfies(&env, &Formula::forall(x1, phi.clone())) == Ok(true);
    let witness_b = ev.satisfies(&env.clone().with(x1, 1), &phi) == Ok(false);
    let in_p0 = {
        let m0 = m.with_mode(Mode::P0);
        let ev0 = Evaluator::new(&m0, Bounds::default());
        let env0 = Environment::from_reprs(ev0.hierarchy(), &reprs).unwrap();
        ev0.satisfies(&env0, &Formula::forall(x1, phi.clone())) == Ok(true)
    };
    let counterexample = all_instances && !universal && witness_b && in_p0;
    if !counterexample {
        problems.push("P-mode counterexample not reproduced".into());
    }

    Verdict::new(
        problems.is_empty() && formulas.len() >= 10,
        format!(
            "{structures_checked} structures, {} formulas with free x1 only, {equivalences} P0 equivalences, \
             {p_mode_gaps} P-mode gaps, counterexample {}, {} violations{}",
            formulas.len(),
            if counterexample { "reproduced" } else { "missing" },
            problems.len(),
            problems.first().map(|p| format!(", first: {p}")).unwrap_or_default()
        ),
    )
}

// ---- criterion 4 ----

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = pzero::cli::run(std::iter::once("pzero").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn strip_metadata(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("report JSON");
    v.as_object_mut().unwrap().remove("metadata");
    serde_json::to_string_pretty(&v).unwrap()
}

fn strip_elapsed(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("elapsed:")).collect::<Vec<_>>().join("\n")
}

fn demo_report() -> Verdict {
    let mut problems = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            problems.push(what.to_string());
        }
    };

    // Independent expectations.
    let all = structures(3);
    let junk: BTreeSet<String> = all
        .iter()
        .filter(|(z, s)| reachable(*z, s).len() < s.len())
        .map(|(z, s)| Interpretation::new(*z, s.clone(), Mode::P).unwrap().to_string())
        .collect();
    let g = g_toy();
    let mut oracle_p_false = BTreeSet::new();
    let mut oracle_p0_true = 0;
    for (z, s) in &all {
        let model = Model::new(*z, s.clone(), false, 2);
        if !model.sat(&OEnv::new(), g.sentence()) {
            oracle_p_false.insert(model.interpretation().to_string());
        }
        let model = Model::new(*z, s.clone(), true, 2);
        oracle_p0_true += usize::from(model.sat(&OEnv::new(), g.sentence()));
    }
    check(all.len() == 90, "90 structures up to size 3");
    check(structures(2).len() == 9, "9 structures up to size 2");
    check(oracle_p_false == junk, "oracle: false in P exactly with junk");
    check(oracle_p0_true == 90, "oracle: true in every P0 structure");

    // Library report.
    let mut opts = ReportOptions::new(3, 2);
    let report = proposition_report(&opts).expect("report");
    check(report.pass, "report pass flag");
    check(report.instances.pass && report.instances.failures.is_empty(), "(i) no failing instance");
    check(report.instances.interpretations == 180, "(i) both modes over 90 structures");
    check(
        report.divergence.p0_candidates == 90 && report.divergence.p0_true == 90,
        "(ii) true in all P0 candidates",
    );
    let p_false: BTreeSet<String> = report.divergence.p_false.iter().cloned().collect();
    check(p_false == junk, "(ii) false exactly on junk candidates");
    check(report.divergence.p_candidates_with_junk == junk.len() as u64, "(ii) junk count");
    let nm = &report.no_model;
    check(nm.p0.candidates == 90 && nm.p0.models == 0, "(iii) no P0 model among 90");
    check(nm.p.models >= 1, "(iii) some P model");
    check(nm.p.models == junk.len() as u64, "(iii) P models are the junk candidates");

    let negation = [g.negation()];
    let small = find_models(&negation, &SearchOptions::new(2, Mode::P0)).unwrap();
    check(small.examined == 9 && small.models.is_empty(), "(iii) 0 of 9 for size <= 2");
    check(candidate_count(2) == 9 && candidate_count(3) == 90, "candidate counts");

    // Determinism across runs and worker counts.
    opts.workers = 4;
    let parallel = proposition_report(&opts).expect("report");
    check(
        parallel.without_metadata().to_json() == report.without_metadata().to_json(),
        "library report independent of workers",
    );
    let base = ["demo", "--max-domain", "3", "--max-type", "2"];
    let mut jsons = Vec::new();
    let mut texts = Vec::new();
    for workers in ["1", "1", "3", "8"] {
        let mut args = base.to_vec();
        args.extend(["--workers", workers, "--format", "json"]);
        let (code, out) = run_cli(&args);
        check(code == 0, "demo exits 0");
        jsons.push(strip_metadata(&out));
        args.truncate(args.len() - 2);
        let (_, out) = run_cli(&args);
        texts.push(strip_elapsed(&out));
    }
    check(jsons.windows(2).all(|w| w[0] == w[1]), "JSON byte-identical");
    check(texts.windows(2).all(|w| w[0] == w[1]), "text byte-identical");
    check(
        jsons[0] == strip_metadata(&report.to_json()),
        "CLI report equals library report",
    );

    Verdict::new(
        problems.is_empty(),
        format!(
            "(i) {} instances over {} interpretations, {} failures; (ii) P0 {}/{} true, P false on {} = junk {}; \
             (iii) P0 {}/{} models, P {} models; size<=2 {} candidates; {} problems{}",
            report.instances.instances_checked,
            report.instances.interpretations,
            report.instances.failures.len(),
            report.divergence.p0_true,
            report.divergence.p0_candidates,
            p_false.len(),
            junk.len(),
            nm.p0.models,
            nm.p0.candidates,
            nm.p.models,
            small.examined,
            problems.len(),
            problems.first().map(|p| format!(", first: {p}")).unwrap_or_default()
        ),
    )
}

// ---- criterion 5 ----

fn numbering() -> Verdict {
    let formulas = corpus();
    let mut problems = Vec::new();
    let mut codes = BTreeSet::new();
    for phi in &formulas {
        let text = pzero::print(phi);
        let code = match encode(phi) {
            Ok(c) => c,
            Err(e) => {
                problems.push(format!("{text}: {e}"));
                continue;
            }
        };
        if decode(&code).ok().and_then(|d| d.formula().cloned()).as_ref() != Some(phi) {
            problems.push(format!("{text}: decode does not invert encode"));
        }
        if naive_code(&text) != *code.value() {
            problems.push(format!("{text}: differs from the reference code"));
        }
        codes.insert(code.value().clone());
    }
    let injective = codes.len() == formulas.len();
    if !injective {
        problems.push("two corpus formulas share a code".into());
    }

    let zero = encode_symbols(&[Symbol::Zero]).unwrap();
    let f_zero = encode_symbols(&[Symbol::Succ, Symbol::Zero]).unwrap();
    // 0 has code 1 and f has code 3: 2^1 and 2^3 * 3^1.
    let expected_zero = BigUint::from(2u32).pow(1);
    let expected_f_zero = BigUint::from(2u32).pow(3) * BigUint::from(3u32).pow(1);
    if *zero.value() != expected_zero || naive_code("0") != expected_zero {
        problems.push(format!("code of 0 is {zero}"));
    }
    if *f_zero.value() != expected_f_zero || naive_code("f0") != expected_f_zero {
        problems.push(format!("code of f0 is {f_zero}"));
    }

    Verdict::new(
        problems.is_empty(),
        format!(
            "{} formulas round-trip, {} distinct codes, code(0) = {zero}, code(f0) = {f_zero}, {} problems{}",
            formulas.len(),
            codes.len(),
            problems.len(),
            problems.first().map(|p| format!(", first: {p}")).unwrap_or_default()
        ),
    )
}

// ---- criterion 6 ----

fn sample_proofs() -> Vec<(String, Proof, Theory)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("proofs");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .expect("proofs directory")
        .filter_map(|e| {
            let name = e.ok()?.file_name().into_string().ok()?;
            name.strip_suffix(".proof.json").map(str::to_string)
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let read = |ext: &str| std::fs::read_to_string(dir.join(format!("{name}.{ext}.json"))).unwrap();
            let proof = Proof::from_json(&read("proof")).unwrap();
            let theory = Theory::from_json(&read("theory")).unwrap();
            (name, proof, theory)
        })
        .collect()
}

/// Single-line mutants: another line's justification, the formula wrapped
/// in a negation, and each cited index moved by one.
fn mutants(p: &Proof) -> Vec<(String, Proof)> {
    let mut out = Vec::new();
    for (i, line) in p.lines.iter().enumerate() {
        let mut replace = |label: String, new: Line| {
            let mut lines = p.lines.clone();
            lines[i] = new;
            out.push((format!("line {}: {label}", i + 1), Proof::new(lines)));
        };
        for (j, other) in p.lines.iter().enumerate() {
            if other.justification != line.justification {
                replace(
                    format!("justification of line {}", j + 1),
                    Line {
                        formula: line.formula.clone(),
                        justification: other.justification.clone(),
                    },
                );
            }
        }
        replace(
            "negated formula".into(),
            Line {
                formula: Formula::not(line.formula.clone()),
                justification: line.justification.clone(),
            },
        );
        let shifted: Vec<Justification> = match &line.justification {
            Justification::Schema(_) => Vec::new(),
            Justification::Proper(n) => vec![Justification::Proper(n + 1), Justification::Proper(n - 1)],
            Justification::Mp(a, b) => vec![
                Justification::Mp(a + 1, *b),
                Justification::Mp(a - 1, *b),
                Justification::Mp(*a, b + 1),
                Justification::Mp(*a, b - 1),
            ],
            Justification::Gen(a, v) => vec![Justification::Gen(a + 1, *v), Justification::Gen(a - 1, *v)],
        };
        for j in shifted {
            replace(
                format!("index edit to {j:?}"),
                Line {
                    formula: line.formula.clone(),
                    justification: j,
                },
            );
        }
    }
    out
}

fn proof_checker() -> Verdict {
    let samples = sample_proofs();
    let mut problems = Vec::new();
    let mut total_mutants = 0;
    let mut killed = 0;
    let mut models_checked = 0;
    let mut has_generalization = false;
    for (name, proof, theory) in &samples {
        match check_proof(proof, theory) {
            Ok(v) if v.is_accept() => {}
            other => problems.push(format!("{name} not accepted: {other:?}")),
        }
        has_generalization |= proof.lines.iter().any(|l| matches!(l.justification, Justification::Gen(..)));
        for (label, mutant) in mutants(proof) {
            total_mutants += 1;
            match check_proof(&mutant, theory) {
                Ok(v) if v.is_accept() => problems.push(format!("{name} mutant survived: {label}")),
                _ => killed += 1,
            }
        }

        // Soundness: the conclusion holds in every bounded model of the
        // theory, judged by the reference evaluator.
        let conclusion = proof.conclusion().unwrap();
        let numerals_only = theory.mode() == Mode::P0;
        for (z, s) in structures(3) {
            let model = Model::new(z, s, numerals_only, 2);
            if theory.proper_axioms().iter().all(|a| model.valid(a)) {
                models_checked += 1;
                if !model.valid(conclusion) {
                    problems.push(format!("{name}: conclusion fails in {}", model.interpretation()));
                }
            }
        }
        match soundness_counterexamples(proof, theory, 3) {
            Ok(c) if c.is_empty() => {}
            other => problems.push(format!("{name}: library soundness check {other:?}")),
        }
    }

    // The side condition on generalization is enforced.
    let y2_x1 = pzero::parse("y2(x1)").unwrap();
    let blocked = Proof::new(vec![
        Line {
            formula: y2_x1.clone(),
            justification: Justification::Proper(1),
        },
        Line {
            formula: Formula::forall(Variable::new(1, 1), y2_x1.clone()),
            justification: Justification::Gen(1, Variable::new(1, 1)),
        },
    ]);
    let open = Theory::new("open", Mode::P, vec![y2_x1]);
    let side_condition = matches!(check_proof(&blocked, &open), Ok(v) if !v.is_accept());
    if !side_condition {
        problems.push("generalization over a free variable of a cited axiom accepted".into());
    }

    Verdict::new(
        problems.is_empty() && samples.len() >= 3 && has_generalization && total_mutants > 0,
        format!(
            "{} sample proofs accepted, {killed}/{total_mutants} mutants killed, side condition {}, \
             {models_checked} bounded models checked, {} problems{}",
            samples.len(),
            if side_condition { "enforced" } else { "ignored" },
            problems.len(),
            problems.first().map(|p| format!(", first: {p}")).unwrap_or_default()
        ),
    )
}
