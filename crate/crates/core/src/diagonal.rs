//! Closure formulas, the toy Gödel-style sentence, diagonalization, numeral
//! instance families, and the three-part bounded report on the sentence.
//!
//! `G_toy` is `x1 P (y2 P (closed(y2) -> y2(x1)))`: every individual lies in
//! every set that contains zero and is closed under successor. Each numeral
//! instance holds in every interpretation, in both modes. The universal
//! holds in P0 mode, where individuals are exactly the numeral closure, and
//! fails in P mode precisely when some element lies outside that closure.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbering::{encode, NumberingError};
use crate::proofsys::axioms::closure_condition;
use crate::semantics::{
    candidates, find_models, Bounds, Evaluator, Interpretation, Mode, Program, SearchOptions,
    SemanticsError, Truth,
};
use crate::syntax::sugar::imp;
use crate::syntax::{numeral, print, subst, Formula, Replacement, Term1, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("{0} must be a type-2 variable")]
    NotTypeTwo(Variable),
    #[error("expected exactly x1 free, found {{{0}}}")]
    FreeVariables(String),
    #[error("expected a sentence of the form x1 P (body)")]
    Shape,
    #[error(transparent)]
    Numbering(#[from] NumberingError),
}

fn x1() -> Variable {
    Variable::new(1, 1)
}

/// `y(0) & x1 P (y(x1) -> y(fx1))` for a type-2 variable `y`.
pub fn closed_predicate(y: Variable) -> Result<Formula, DiagonalError> {
    if y.type_level() != 2 {
        return Err(DiagonalError::NotTypeTwo(y));
    }
    Ok(closure_condition(y))
}

/// A closed sentence `x1 P (body)` whose body has only `x1` free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GodelStyleSentence {
    sentence: Formula,
}

impl GodelStyleSentence {
    pub fn new(sentence: Formula) -> Result<Self, DiagonalError> {
        match &sentence {
            Formula::ForAll { var, body } if *var == x1() => {
                check_only_x1(body)?;
                Ok(GodelStyleSentence { sentence })
            }
            _ => Err(DiagonalError::Shape),
        }
    }

    pub fn sentence(&self) -> &Formula {
        &self.sentence
    }

    pub fn body(&self) -> &Formula {
        match &self.sentence {
            Formula::ForAll { body, .. } => body,
            _ => unreachable!("checked on construction"),
        }
    }

    pub fn negation(&self) -> Formula {
        Formula::not(self.sentence.clone())
    }
}

fn check_only_x1(phi: &Formula) -> Result<(), DiagonalError> {
    let free = phi.free_vars();
    if free.len() == 1 && free.contains(&x1()) {
        Ok(())
    } else {
        let names: Vec<String> = free.iter().map(|v| v.to_string()).collect();
        Err(DiagonalError::FreeVariables(names.join(", ")))
    }
}

/// `x1 P (y2 P (closed(y2) -> y2(x1)))`.
pub fn g_toy() -> GodelStyleSentence {
    let y2 = Variable::new(2, 2);
    let body = Formula::forall(
        y2,
        imp(
            closed_predicate(y2).expect("type 2"),
            Formula::apply(y2, Term1::var(x1()).unwrap()),
        ),
    );
    GodelStyleSentence::new(Formula::forall(x1(), body)).expect("well-formed by construction")
}

/// `phi[x1 := n]` where n is the numeral of `phi`'s own Gödel code.
pub fn diagonalize(phi: &Formula) -> Result<Formula, DiagonalError> {
    check_only_x1(phi)?;
    let code = encode(phi)?;
    let n = numeral(code.into_value());
    Ok(subst(phi, x1(), Replacement::Term(n)).expect("type-1 replacement"))
}

/// The instances `body[x1 := n]` for `n = 0..=k`.
pub fn instance_family(g: &GodelStyleSentence, k: u32) -> Vec<Formula> {
    (0..=k)
        .map(|n| subst(g.body(), x1(), Replacement::Term(numeral(n))).expect("type-1 replacement"))
        .collect()
}

/// Bounds for [`proposition_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub max_domain: usize,
    pub max_type: u8,
    pub sigma_cap: u64,
    /// Forwarded to model search; never changes the report.
    #[serde(skip)]
    pub workers: usize,
}

impl ReportOptions {
    pub fn new(max_domain: usize, max_type: u8) -> Self {
        ReportOptions {
            max_domain,
            max_type,
            sigma_cap: Bounds::default().sigma_cap,
            workers: 1,
        }
    }

    fn bounds(&self) -> Bounds {
        Bounds::new(self.max_type, self.sigma_cap)
    }
}

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFailure {
    pub interpretation: String,
    pub numeral: u32,
    pub truth: Truth,
}

/// Section (i): numeral instances below the domain size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSection {
    pub interpretations: u64,
    pub instances_checked: u64,
    pub failures: Vec<InstanceFailure>,
    pub pass: bool,
}

/// Section (ii): where the universal sentence fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceSection {
    pub p0_candidates: u64,
    pub p0_true: u64,
    pub p_candidates: u64,
    pub p_candidates_with_junk: u64,
    /// P-mode interpretations in which the sentence is false.
    pub p_false: Vec<String>,
    /// Whether `p_false` is exactly the set of candidates with junk.
    pub matches_junk: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCount {
    pub mode: Mode,
    pub candidates: u64,
    pub models: u64,
    /// The first few models in candidate order.
    pub first_models: Vec<String>,
}

/// Section (iii): models of the negated sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoModelSection {
    pub theory: String,
    pub p0: ModelCount,
    pub p: ModelCount,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub version: u32,
    pub bounds: ReportOptions,
    pub sentence: String,
    pub instances: InstanceSection,
    pub divergence: DivergenceSection,
    pub no_model: NoModelSection,
    pub pass: bool,
    /// Run-dependent data, excluded from comparisons.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub metadata: Option<ReportMetadata>,
}

const LISTED_MODELS: usize = 5;

/// Runs all three sections over every candidate interpretation within
/// `opts`.
pub fn proposition_report(opts: &ReportOptions) -> Result<PropositionReport, SemanticsError> {
    let started = Instant::now();
    let g = g_toy();
    let bounds = opts.bounds();
    let sentence = Program::compile(g.sentence());
    let largest = u32::try_from(opts.max_domain).unwrap_or(u32::MAX);
    let family: Vec<Program> = instance_family(&g, largest.saturating_sub(1))
        .iter()
        .map(Program::compile)
        .collect();

    let mut instances = InstanceSection {
        interpretations: 0,
        instances_checked: 0,
        failures: Vec::new(),
        pass: true,
    };
    let mut divergence = DivergenceSection {
        p0_candidates: 0,
        p0_true: 0,
        p_candidates: 0,
        p_candidates_with_junk: 0,
        p_false: Vec::new(),
        matches_junk: true,
        pass: true,
    };

    for mode in Mode::BOTH {
        for m in candidates(opts.max_domain, mode) {
            let ev = Evaluator::new(&m, bounds);
            instances.interpretations += 1;
            for (n, p) in family.iter().enumerate().take(m.domain_size()) {
                instances.instances_checked += 1;
                let t = ev.truth_program(p)?;
                if t != Truth::True {
                    instances.failures.push(InstanceFailure {
                        interpretation: m.to_string(),
                        numeral: n as u32,
                        truth: t,
                    });
                }
            }
            let t = ev.truth_program(&sentence)?;
            match mode {
                Mode::P0 => {
                    divergence.p0_candidates += 1;
                    if t == Truth::True {
                        divergence.p0_true += 1;
                    }
                }
                Mode::P => {
                    divergence.p_candidates += 1;
                    let junk = m.has_junk();
                    if junk {
                        divergence.p_candidates_with_junk += 1;
                    }
                    let false_here = t == Truth::False;
                    if false_here {
                        divergence.p_false.push(m.to_string());
                    }
                    if junk != false_here {
                        divergence.matches_junk = false;
                    }
                }
            }
        }
    }
    instances.pass = instances.failures.is_empty();
    divergence.pass = divergence.p0_true == divergence.p0_candidates && divergence.matches_junk;

    let negated = vec![g.negation()];
    let count = |mode: Mode| -> Result<ModelCount, SemanticsError> {
        let r = find_models(
            &negated,
            &SearchOptions {
                bounds,
                workers: opts.workers,
                ..SearchOptions::new(opts.max_domain, mode)
            },
        )?;
        Ok(ModelCount {
            mode,
            candidates: r.examined,
            models: r.models.len() as u64,
            first_models: r.models.iter().take(LISTED_MODELS).map(Interpretation::to_string).collect(),
        })
    };
    let p0 = count(Mode::P0)?;
    let p = count(Mode::P)?;
    let no_model = NoModelSection {
        theory: "{~(G_toy)}".into(),
        pass: p0.models == 0 && p.models >= 1,
        p0,
        p,
    };

    Ok(PropositionReport {
        version: REPORT_VERSION,
        bounds: *opts,
        sentence: print(g.sentence()),
        pass: instances.pass && divergence.pass && no_model.pass,
        instances,
        divergence,
        no_model,
        metadata: Some(ReportMetadata {
            elapsed_ms: started.elapsed().as_millis() as u64,
        }),
    })
}

impl PropositionReport {
    /// The report with run-dependent fields removed.
    pub fn without_metadata(&self) -> PropositionReport {
        PropositionReport {
            metadata: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Human-readable rendering; the elapsed time, if any, is the last line.
    pub fn to_text(&self) -> String {
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        let mut s = String::new();
        let _ = writeln!(s, "report v{}", self.version);
        let _ = writeln!(
            s,
            "bounds: max_domain={} max_type={} sigma_cap={}",
            self.bounds.max_domain, self.bounds.max_type, self.bounds.sigma_cap
        );
        let _ = writeln!(s, "G_toy = {}", self.sentence);
        let i = &self.instances;
        let _ = writeln!(
            s,
            "\n(i) numeral instances n < |D|: {} checked over {} interpretations (both modes), {} not true  [{}]",
            i.instances_checked,
            i.interpretations,
            i.failures.len(),
            verdict(i.pass)
        );
        for f in &i.failures {
            let _ = writeln!(s, "        instance {} is {} in {}", f.numeral, f.truth, f.interpretation);
        }
        let d = &self.divergence;
        let _ = writeln!(
            s,
            "\n(ii) P0 mode: G_toy true in {}/{} candidates",
            d.p0_true, d.p0_candidates
        );
        let _ = writeln!(
            s,
            "     P mode: G_toy false in {}/{} candidates; {} have junk; false exactly on junk: {}  [{}]",
            d.p_false.len(),
            d.p_candidates,
            d.p_candidates_with_junk,
            if d.matches_junk { "yes" } else { "no" },
            verdict(d.pass)
        );
        for m in &d.p_false {
            let _ = writeln!(s, "        {m}");
        }
        let n = &self.no_model;
        let _ = writeln!(s, "\n(iii) models of {}:", n.theory);
        for c in [&n.p0, &n.p] {
            let _ = writeln!(s, "     {} mode: {} models out of {} candidates", c.mode, c.models, c.candidates);
            for m in &c.first_models {
                let _ = writeln!(s, "        {m}");
            }
        }
        let _ = writeln!(s, "     [{}]", verdict(n.pass));
        let _ = writeln!(s, "\noverall: {}", verdict(self.pass));
        if let Some(meta) = &self.metadata {
            let _ = writeln!(s, "elapsed: {} ms", meta.elapsed_ms);
        }
        s
    }
}
