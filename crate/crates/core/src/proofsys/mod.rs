//! Hilbert-style proofs over the logical axioms of P, theories given by
//! finite lists of proper axioms, and a bounded proof enumerator.

pub mod axioms;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::{find_models, Interpretation, Mode, SearchOptions, SemanticsError, Truth};
use crate::syntax::{parse, print, Formula, SyntaxError, Variable};

pub use axioms::{arithmetic_axiom, is_schema_axiom, SchemaId};
pub use search::{enumerate_proofs, enumerate_proofs_with, EnumerationLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("a proof needs at least one line")]
    Empty,
    #[error("line {line} cites line {cited}, which is not an earlier line")]
    BadLineReference { line: usize, cited: usize },
    #[error("line {line} cites proper axiom {cited}, but the theory has {available}")]
    BadAxiomReference {
        line: usize,
        cited: usize,
        available: usize,
    },
    #[error("line {line}: {error}")]
    Parse { line: usize, error: SyntaxError },
    #[error("{0} is not closed")]
    NotClosed(String),
    #[error("unknown theory {0:?} (builtins: p, p0, p'_toy)")]
    UnknownTheory(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// A finite list of proper axioms read under one semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    name: String,
    mode: Mode,
    proper_axioms: Vec<Formula>,
    warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TheoryFile {
    name: String,
    mode: Mode,
    proper_axioms: Vec<String>,
}

impl Theory {
    /// A theory from arbitrary formulas. Proper axioms with free variables
    /// are accepted here; [`extend`](Self::extend) only adds sentences.
    pub fn new(name: impl Into<String>, mode: Mode, proper_axioms: Vec<Formula>) -> Self {
        Theory {
            name: name.into(),
            mode,
            proper_axioms,
            warnings: Vec::new(),
        }
    }

    /// P: no proper axioms, type-1 variables over the whole domain.
    pub fn p() -> Self {
        Theory::new("P", Mode::P, Vec::new())
    }

    /// P0: the same axioms as P, type-1 variables over the numeral closure.
    pub fn p0() -> Self {
        Theory::new("P0", Mode::P0, Vec::new())
    }

    /// P0 plus the negation of the toy Gödel-style sentence.
    pub fn p_prime_toy() -> Self {
        let g = crate::diagonal::g_toy();
        Theory::p0()
            .extend_named(g.negation(), "~(G_toy)")
            .expect("the negated sentence is closed")
    }

    /// Looks up `p`, `p0` or `p'_toy` (case-insensitive).
    pub fn builtin(name: &str) -> Result<Self, ProofError> {
        match name.to_ascii_lowercase().as_str() {
            "p" => Ok(Theory::p()),
            "p0" => Ok(Theory::p0()),
            "p'_toy" | "p_prime_toy" => Ok(Theory::p_prime_toy()),
            _ => Err(ProofError::UnknownTheory(name.to_string())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ProofError> {
        let file: TheoryFile = serde_json::from_str(text).map_err(|e| ProofError::Json(e.to_string()))?;
        let axioms = file
            .proper_axioms
            .iter()
            .enumerate()
            .map(|(i, s)| parse(s).map_err(|error| ProofError::Parse { line: i + 1, error }))
            .collect::<Result<_, _>>()?;
        Ok(Theory::new(file.name, file.mode, axioms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TheoryFile {
            name: self.name.clone(),
            mode: self.mode,
            proper_axioms: self.proper_axioms.iter().map(print).collect(),
        })
        .expect("plain data")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn proper_axioms(&self) -> &[Formula] {
        &self.proper_axioms
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Appends the sentence `phi`, naming the result `"<name> + <print(phi)>"`.
    pub fn extend(&self, phi: Formula) -> Result<Theory, ProofError> {
        let label = print(&phi);
        self.extend_named(phi, &label)
    }

    /// Like [`extend`](Self::extend) with a caller-chosen label for the name.
    pub fn extend_named(&self, phi: Formula, label: &str) -> Result<Theory, ProofError> {
        if !phi.is_closed() {
            return Err(ProofError::NotClosed(print(&phi)));
        }
        let mut t = self.clone();
        if t.proper_axioms.contains(&phi) {
            t.warnings
                .push(format!("duplicate proper axiom {}", print(&phi)));
        }
        t.name = format!("{} + {label}", self.name);
        t.proper_axioms.push(phi);
        Ok(t)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} semantics, {} proper axioms)", self.name, self.mode, self.proper_axioms.len())
    }
}

/// Why a line is in the proof. Line and axiom numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    /// An instance of the named logical axiom schema.
    Schema(SchemaId),
    /// The n-th proper axiom of the theory.
    Proper(usize),
    /// `Mp(i, j)`: line j is `(line i) -> (this line)`.
    Mp(usize, usize),
    /// `Gen(i, v)`: this line is `v P (line i)`.
    Gen(usize, Variable),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Schema(id) => write!(f, "axiom {id}"),
            Justification::Proper(n) => write!(f, "proper axiom {n}"),
            Justification::Mp(i, j) => write!(f, "MP {i}, {j}"),
            Justification::Gen(i, v) => write!(f, "Gen {i}, {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Line {
    #[serde(with = "formula_text")]
    pub formula: Formula,
    pub justification: Justification,
}

mod formula_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::syntax::{parse, print, Formula};

    pub fn serialize<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print(f))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A derivation; its last line is the conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Proof {
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn new(lines: Vec<Line>) -> Self {
        Proof { lines }
    }

    pub fn from_json(text: &str) -> Result<Self, ProofError> {
        serde_json::from_str(text).map_err(|e| ProofError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    /// Indices (1-based) of the proper axioms cited anywhere in the proof.
    pub fn cited_axioms(&self) -> BTreeSet<usize> {
        self.lines
            .iter()
            .filter_map(|l| match l.justification {
                Justification::Proper(n) => Some(n),
                _ => None,
            })
            .collect()
    }

    /// Group I axioms used by the proof.
    pub fn cited_arithmetic(&self) -> BTreeSet<SchemaId> {
        self.lines
            .iter()
            .filter_map(|l| match l.justification {
                Justification::Schema(id) if id.is_arithmetic() => Some(id),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lines.iter().enumerate() {
            writeln!(f, "{:>3}. {}    [{}]", i + 1, print(&l.formula), l.justification)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    /// The first unjustified line (1-based) and the reason.
    Reject { line: usize, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("Accept"),
            Verdict::Reject { line, reason } => write!(f, "Reject at line {line}: {reason}"),
        }
    }
}

fn check_references(p: &Proof, t: &Theory) -> Result<(), ProofError> {
    for (k, l) in p.lines.iter().enumerate() {
        let line = k + 1;
        let earlier = |cited: usize| {
            if cited == 0 || cited >= line {
                Err(ProofError::BadLineReference { line, cited })
            } else {
                Ok(())
            }
        };
        match l.justification {
            Justification::Schema(_) => {}
            Justification::Proper(n) => {
                if n == 0 || n > t.proper_axioms.len() {
                    return Err(ProofError::BadAxiomReference {
                        line,
                        cited: n,
                        available: t.proper_axioms.len(),
                    });
                }
            }
            Justification::Mp(i, j) => {
                earlier(i)?;
                earlier(j)?;
            }
            Justification::Gen(i, _) => earlier(i)?,
        }
    }
    Ok(())
}

/// Checks every line of `p` against `t`. Structural problems with the
/// citations themselves are errors; unjustified lines give a rejection.
pub fn check_proof(p: &Proof, t: &Theory) -> Result<Verdict, ProofError> {
    if p.lines.is_empty() {
        return Err(ProofError::Empty);
    }
    check_references(p, t)?;
    let mut cited_so_far: Vec<usize> = Vec::new();
    for (k, l) in p.lines.iter().enumerate() {
        let line = k + 1;
        let reject = |reason: String| Ok(Verdict::Reject { line, reason });
        let phi = &l.formula;
        match &l.justification {
            Justification::Schema(id) => {
                if !id.matches(phi) {
                    return reject(format!("not an instance of axiom {id}"));
                }
            }
            Justification::Proper(n) => {
                cited_so_far.push(*n);
                if t.proper_axioms[n - 1] != *phi {
                    return reject(format!("not proper axiom {n} of {}", t.name));
                }
            }
            Justification::Mp(i, j) => {
                let minor = &p.lines[i - 1].formula;
                let major = &p.lines[j - 1].formula;
                if crate::syntax::sugar::imp(minor.clone(), phi.clone()) != *major {
                    return reject(format!("no MP premises: line {j} is not (line {i}) -> (line {line})"));
                }
            }
            Justification::Gen(i, v) => {
                if *phi != Formula::forall(*v, p.lines[i - 1].formula.clone()) {
                    return reject(format!("not the generalization of line {i} over {v}"));
                }
                if let Some(n) = cited_so_far
                    .iter()
                    .find(|&&n| t.proper_axioms[n - 1].has_free(*v))
                {
                    return reject(format!(
                        "side condition violated: {v} is free in proper axiom {n}, cited at or before this line"
                    ));
                }
            }
        }
    }
    Ok(Verdict::Accept)
}

/// Interpretations within `opts` that are models of the proper axioms of `t`
/// (read in the theory's mode) and of the universal closures of the group I
/// axioms the proof cites, but in which the conclusion is not true. An empty
/// list means the spot check passed.
pub fn soundness_counterexamples(
    p: &Proof,
    t: &Theory,
    max_domain: usize,
) -> Result<Vec<Interpretation>, SemanticsError> {
    let conclusion = p.conclusion().expect("non-empty proof");
    let mut premises: Vec<Formula> = t.proper_axioms.iter().map(universal_closure).collect();
    premises.extend(p.cited_arithmetic().into_iter().map(|id| universal_closure(&arithmetic_axiom(id))));
    let models = find_models(&premises, &SearchOptions::new(max_domain, t.mode))?;
    let mut bad = Vec::new();
    for m in models.models {
        if crate::semantics::truth_value(&m, conclusion)? != Truth::True {
            bad.push(m);
        }
    }
    Ok(bad)
}

/// `phi` with every free variable universally bound.
pub fn universal_closure(phi: &Formula) -> Formula {
    phi.free_vars()
        .into_iter()
        .fold(phi.clone(), |acc, v| Formula::forall(v, acc))
}
