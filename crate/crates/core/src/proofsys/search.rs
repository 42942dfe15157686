//! Bounded proof enumeration.
//!
//! The search space is finite by construction. Let the pool be every
//! subformula of the conclusion and of the proper axioms. Axiom lines are
//! drawn from: the proper axioms, the group I axioms, the propositional
//! schemata with metavariables ranging over the pool, and pool formulas that
//! are themselves schema instances. Derived lines are modus ponens
//! conclusions and generalizations whose result lies in the pool.
//!
//! Proofs are searched in a canonical shape: all axiom lines first, in
//! candidate order, then derived lines; no formula twice; every line used by
//! a later one except the last. Lengths are tried in increasing order and
//! the first proof found in depth-first candidate order is returned, so the
//! result is deterministic. Finding nothing is not a non-provability
//! verdict.

use std::collections::BTreeSet;

use super::axioms::{arithmetic_axiom, is_schema_axiom, propositional_instances, SchemaId};
use super::{check_proof, Justification, Line, Proof, Theory};
use crate::syntax::sugar::as_imp;
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_lines: usize,
    /// Search nodes visited before giving up.
    pub max_nodes: u64,
}

impl EnumerationLimits {
    pub fn new(max_lines: usize) -> Self {
        EnumerationLimits {
            max_lines,
            max_nodes: 2_000_000,
        }
    }
}

struct Search<'a> {
    theory: &'a Theory,
    conclusion: &'a Formula,
    axioms: Vec<(Formula, Justification)>,
    pool: BTreeSet<Formula>,
    lines: Vec<Line>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
}

/// Searches for a proof of `conclusion` from `t` with at most `max_lines`
/// lines.
pub fn enumerate_proofs(t: &Theory, max_lines: usize, conclusion: &Formula) -> Option<Proof> {
    enumerate_proofs_with(t, EnumerationLimits::new(max_lines), conclusion)
}

pub fn enumerate_proofs_with(
    t: &Theory,
    limits: EnumerationLimits,
    conclusion: &Formula,
) -> Option<Proof> {
    let mut pool = BTreeSet::new();
    for phi in std::iter::once(conclusion).chain(t.proper_axioms()) {
        for s in phi.subformulas() {
            pool.insert(s.clone());
        }
    }
    let pool_vec: Vec<Formula> = pool.iter().cloned().collect();

    let mut axioms: Vec<(Formula, Justification)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut add = |phi: Formula, j: Justification, axioms: &mut Vec<_>| {
        if seen.insert(phi.clone()) {
            axioms.push((phi, j));
        }
    };
    for (i, phi) in t.proper_axioms().iter().enumerate() {
        add(phi.clone(), Justification::Proper(i + 1), &mut axioms);
    }
    for id in [SchemaId::I1, SchemaId::I2, SchemaId::I3] {
        add(arithmetic_axiom(id), Justification::Schema(id), &mut axioms);
    }
    for (id, phi) in propositional_instances(&pool_vec) {
        add(phi, Justification::Schema(id), &mut axioms);
    }
    for phi in &pool_vec {
        if let Some(id) = is_schema_axiom(phi) {
            add(phi.clone(), Justification::Schema(id), &mut axioms);
        }
    }

    let mut s = Search {
        theory: t,
        conclusion,
        axioms,
        pool,
        lines: Vec::new(),
        used: Vec::new(),
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    for len in 1..=limits.max_lines {
        if s.dfs(len, 0, false) {
            let proof = Proof::new(s.lines.clone());
            debug_assert!(check_proof(&proof, t).is_ok_and(|v| v.is_accept()));
            return Some(proof);
        }
        if s.exhausted() {
            break;
        }
    }
    None
}

impl Search<'_> {
    fn exhausted(&self) -> bool {
        self.nodes >= self.max_nodes
    }

    fn unused(&self) -> usize {
        self.used.iter().filter(|u| !**u).count()
    }

    fn cited_axioms_bind(&self, v: crate::syntax::Variable) -> bool {
        self.lines.iter().any(|l| match l.justification {
            Justification::Proper(n) => self.theory.proper_axioms()[n - 1].has_free(v),
            _ => false,
        })
    }

    /// Tries to place `line` and complete a proof of total length `len`.
    fn place(&mut self, len: usize, line: Line, cites: &[usize], next_axiom: usize, derived: bool) -> bool {
        let is_last = self.lines.len() + 1 == len;
        if is_last != (line.formula == *self.conclusion) {
            return false;
        }
        if self.lines.iter().any(|l| l.formula == line.formula) {
            return false;
        }
        let newly: Vec<usize> = cites.iter().copied().filter(|&c| !self.used[c]).collect();
        for &c in &newly {
            self.used[c] = true;
        }
        self.lines.push(line);
        self.used.push(false);
        let remaining = len - self.lines.len();
        let ok = self.unused() <= remaining + 1 && self.dfs(len, next_axiom, derived);
        if !ok {
            self.lines.pop();
            self.used.pop();
            for &c in &newly {
                self.used[c] = false;
            }
        }
        ok
    }

    fn dfs(&mut self, len: usize, next_axiom: usize, derived: bool) -> bool {
        if self.lines.len() == len {
            return self.lines.last().is_some_and(|l| l.formula == *self.conclusion);
        }
        self.nodes += 1;
        if self.exhausted() {
            return false;
        }
        // A new axiom line is itself unused, so it must leave room for the
        // lines that will cite it.
        if !derived && self.unused() < len - self.lines.len() {
            let is_last = self.lines.len() + 1 == len;
            for a in next_axiom..self.axioms.len() {
                let candidate = &self.axioms[a].0;
                if is_last != (candidate == self.conclusion)
                    || self.lines.iter().any(|l| l.formula == *candidate)
                {
                    continue;
                }
                let (formula, justification) = self.axioms[a].clone();
                let line = Line { formula, justification };
                if self.place(len, line, &[], a + 1, false) {
                    return true;
                }
                if self.exhausted() {
                    return false;
                }
            }
        }
        let n = self.lines.len();
        for j in 0..n {
            let Some((antecedent, consequent)) = as_imp(&self.lines[j].formula) else {
                continue;
            };
            let Some(i) = self.lines.iter().position(|l| l.formula == *antecedent) else {
                continue;
            };
            let line = Line {
                formula: consequent.clone(),
                justification: Justification::Mp(i + 1, j + 1),
            };
            if self.place(len, line, &[i, j], next_axiom, true) {
                return true;
            }
            if self.exhausted() {
                return false;
            }
        }
        for i in 0..n {
            let generalizations: Vec<Formula> = self
                .pool
                .iter()
                .filter(|g| matches!(g, Formula::ForAll { body, .. } if **body == self.lines[i].formula))
                .cloned()
                .collect();
            for g in generalizations {
                let Formula::ForAll { var, .. } = &g else { unreachable!() };
                let var = *var;
                if self.cited_axioms_bind(var) {
                    continue;
                }
                let line = Line {
                    formula: g,
                    justification: Justification::Gen(i + 1, var),
                };
                if self.place(len, line, &[i], next_axiom, true) {
                    return true;
                }
                if self.exhausted() {
                    return false;
                }
            }
        }
        false
    }
}
