//! Satisfaction, truth and model checking.
//!
//! Formulas are compiled once into a flat [`Program`] whose variables live in
//! numbered slots; evaluation then runs over a `&mut [Value]` register file.
//! A quantifier writes its slot for every element of the level, evaluates
//! the body, and restores the previous content, so shadowed bindings behave
//! exactly like the nested environment updates of the recursive definition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::sigma::{Bounds, SigmaHierarchy, Value, ValueRepr};
use super::{Interpretation, SemanticsError};
use crate::syntax::{Arg, Base, Formula, Term1, Variable};

/// Finite assignment of level elements to variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    bindings: BTreeMap<Variable, Value>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, v: Variable, value: Value) -> &mut Self {
        self.bindings.insert(v, value);
        self
    }

    pub fn with(mut self, v: Variable, value: Value) -> Self {
        self.bindings.insert(v, value);
        self
    }

    pub fn get(&self, v: Variable) -> Option<Value> {
        self.bindings.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, Value)> + '_ {
        self.bindings.iter().map(|(k, v)| (*k, *v))
    }

    /// Builds an environment from nested-set renderings, validating each
    /// binding against the hierarchy.
    pub fn from_reprs(
        h: &SigmaHierarchy,
        reprs: &BTreeMap<Variable, ValueRepr>,
    ) -> Result<Self, String> {
        let mut env = Environment::new();
        for (v, r) in reprs {
            let value = h
                .from_repr(v.type_level(), r)
                .map_err(|e| format!("{v}: {e}"))?;
            env.bind(*v, value);
        }
        Ok(env)
    }

    pub fn to_reprs(&self, h: &SigmaHierarchy) -> BTreeMap<Variable, ValueRepr> {
        self.iter()
            .map(|(v, x)| (v, h.to_repr(v.type_level(), x)))
            .collect()
    }
}

/// Truth value of a formula under an interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truth {
    True,
    False,
    /// Satisfied by some environments and not by others.
    Neither,
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "True",
            Truth::False => "False",
            Truth::Neither => "Neither",
        })
    }
}

type Slot = usize;

#[derive(Debug, Clone)]
enum TermBase {
    Zero,
    Slot(Slot),
}

#[derive(Debug, Clone)]
enum Node {
    /// `head(f^steps(base))`, head of type 2. `term` indexes `Program::terms`.
    Mem2 { head: Slot, term: usize },
    /// `head(arg)`, head of type `level` >= 3.
    MemN { level: u8, head: Slot, arg: Slot },
    Not(usize),
    Or(usize, usize),
    ForAll { slot: Slot, level: u8, body: usize },
}

/// A formula compiled for repeated evaluation, independent of any particular
/// interpretation.
#[derive(Debug, Clone)]
pub struct Program {
    nodes: Vec<Node>,
    root: usize,
    terms: Vec<(BigUint, TermBase)>,
    slots: Vec<Variable>,
    free: Vec<Slot>,
    quantified_levels: Vec<u8>,
    max_type: u8,
}

impl Program {
    pub fn compile(phi: &Formula) -> Program {
        let mut p = Program {
            nodes: Vec::new(),
            root: 0,
            terms: Vec::new(),
            slots: Vec::new(),
            free: Vec::new(),
            quantified_levels: Vec::new(),
            max_type: phi.max_type(),
        };
        p.root = p.emit(phi);
        p.free = phi.free_vars().into_iter().map(|v| p.slot(v)).collect();
        p.quantified_levels.sort_unstable();
        p.quantified_levels.dedup();
        p
    }

    pub fn free_vars(&self) -> impl Iterator<Item = Variable> + '_ {
        self.free.iter().map(|&s| self.slots[s])
    }

    pub fn is_closed(&self) -> bool {
        self.free.is_empty()
    }

    fn slot(&mut self, v: Variable) -> Slot {
        match self.slots.iter().position(|&w| w == v) {
            Some(s) => s,
            None => {
                self.slots.push(v);
                self.slots.len() - 1
            }
        }
    }

    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn emit(&mut self, phi: &Formula) -> usize {
        match phi {
            Formula::Elem(atom) => {
                let head = self.slot(atom.head());
                match atom.arg() {
                    Arg::Term(t) => {
                        let base = match t.base() {
                            Base::Zero => TermBase::Zero,
                            Base::Var(v) => TermBase::Slot(self.slot(v)),
                        };
                        self.terms.push((t.succ_count().clone(), base));
                        let term = self.terms.len() - 1;
                        self.push(Node::Mem2 { head, term })
                    }
                    Arg::Var(v) => {
                        let arg = self.slot(*v);
                        self.push(Node::MemN {
                            level: atom.head().type_level(),
                            head,
                            arg,
                        })
                    }
                }
            }
            Formula::Not(a) => {
                let a = self.emit(a);
                self.push(Node::Not(a))
            }
            Formula::Or(a, b) => {
                let a = self.emit(a);
                let b = self.emit(b);
                self.push(Node::Or(a, b))
            }
            Formula::ForAll { var, body } => {
                let slot = self.slot(*var);
                let level = var.type_level();
                self.quantified_levels.push(level);
                let body = self.emit(body);
                self.push(Node::ForAll { slot, level, body })
            }
        }
    }
}

/// `succ^n` as a lookup table, by repeated squaring of the map.
fn succ_power(succ: &[u32], n: &BigUint) -> Vec<u32> {
    let mut result: Vec<u32> = (0..succ.len() as u32).collect();
    let mut square = succ.to_vec();
    for bit in 0..n.bits() {
        if n.bit(bit) {
            result = result.iter().map(|&d| square[d as usize]).collect();
        }
        square = square.iter().map(|&d| square[d as usize]).collect();
    }
    result
}

/// Evaluation context for one interpretation: its hierarchy plus
/// per-interpretation term tables.
#[derive(Debug, Clone)]
pub struct Evaluator<'m> {
    m: &'m Interpretation,
    h: SigmaHierarchy,
}

struct Bound<'a> {
    nodes: &'a [Node],
    h: &'a SigmaHierarchy,
    /// For every term: its base (`None` for zero) and `succ^steps` table.
    terms: Vec<(Option<Slot>, Vec<u32>)>,
    zero: u32,
    sets: Vec<u64>,
}

impl<'m> Evaluator<'m> {
    pub fn new(m: &'m Interpretation, bounds: Bounds) -> Self {
        Evaluator {
            m,
            h: SigmaHierarchy::new(m, bounds),
        }
    }

    pub fn interpretation(&self) -> &Interpretation {
        self.m
    }

    pub fn hierarchy(&self) -> &SigmaHierarchy {
        &self.h
    }

    fn check_levels(&self, p: &Program) -> Result<(), SemanticsError> {
        let max = self.h.bounds().max_type;
        if p.max_type > max {
            return Err(SemanticsError::TypeAboveMax { ty: p.max_type, max });
        }
        for &lvl in &p.quantified_levels {
            self.h.size(lvl)?;
        }
        for v in p.free_vars() {
            self.h.size(v.type_level())?;
        }
        Ok(())
    }

    fn bind<'a>(&'a self, p: &'a Program) -> Bound<'a> {
        let terms = p
            .terms
            .iter()
            .map(|(steps, base)| {
                let slot = match base {
                    TermBase::Zero => None,
                    TermBase::Slot(s) => Some(*s),
                };
                (slot, succ_power(self.m.succ(), steps))
            })
            .collect();
        let sets = (1..=self.h.bounds().max_type)
            .map(|n| self.h.size(n).unwrap_or(0))
            .collect();
        Bound {
            nodes: &p.nodes,
            h: &self.h,
            terms,
            zero: self.m.zero(),
            sets,
        }
    }

    fn registers(&self, p: &Program, env: &Environment) -> Result<Vec<Value>, SemanticsError> {
        let mut regs = vec![0; p.slots.len()];
        for &s in &p.free {
            let v = p.slots[s];
            let value = env.get(v).ok_or(SemanticsError::Unbound(v))?;
            if !self.h.contains(v.type_level(), value)? {
                return Err(SemanticsError::OutOfLevel {
                    var: v,
                    value: value.to_string(),
                    level: v.type_level(),
                });
            }
            regs[s] = value;
        }
        Ok(regs)
    }

    /// Satisfaction of a compiled formula at `env`, which must bind every free
    /// variable to an element of the matching level.
    pub fn satisfies_program(&self, p: &Program, env: &Environment) -> Result<bool, SemanticsError> {
        self.check_levels(p)?;
        let mut regs = self.registers(p, env)?;
        Ok(self.bind(p).sat(p.root, &mut regs))
    }

    pub fn satisfies(&self, env: &Environment, phi: &Formula) -> Result<bool, SemanticsError> {
        self.satisfies_program(&Program::compile(phi), env)
    }

    /// Enumerates every assignment to the free variables.
    pub fn truth_program(&self, p: &Program) -> Result<Truth, SemanticsError> {
        self.check_levels(p)?;
        let bound = self.bind(p);
        let mut regs = vec![0; p.slots.len()];
        let levels: Vec<Vec<Value>> = p
            .free
            .iter()
            .map(|&s| Ok(self.h.level(p.slots[s].type_level())?.iter().collect()))
            .collect::<Result<_, SemanticsError>>()?;
        if levels.iter().any(|l| l.is_empty()) {
            // No environment at all; only reachable for empty levels, which
            // cannot happen since sigma_1 always contains zero.
            return Ok(Truth::True);
        }
        let mut idx = vec![0usize; levels.len()];
        let (mut seen_true, mut seen_false) = (false, false);
        loop {
            for (k, &s) in p.free.iter().enumerate() {
                regs[s] = levels[k][idx[k]];
            }
            if bound.sat(p.root, &mut regs) {
                seen_true = true;
            } else {
                seen_false = true;
            }
            if seen_true && seen_false {
                return Ok(Truth::Neither);
            }
            // Odometer step.
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(if seen_true { Truth::True } else { Truth::False });
                }
                idx[k] += 1;
                if idx[k] < levels[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    pub fn truth_value(&self, phi: &Formula) -> Result<Truth, SemanticsError> {
        self.truth_program(&Program::compile(phi))
    }

    pub fn eval_term1(&self, env: &Environment, t: &Term1) -> Result<u32, SemanticsError> {
        let start = match t.base() {
            Base::Zero => self.m.zero(),
            Base::Var(v) => {
                let value = env.get(v).ok_or(SemanticsError::Unbound(v))?;
                if !self.h.contains(1, value)? {
                    return Err(SemanticsError::OutOfLevel {
                        var: v,
                        value: value.to_string(),
                        level: 1,
                    });
                }
                value as u32
            }
        };
        Ok(succ_power(self.m.succ(), t.succ_count())[start as usize])
    }

    pub fn is_model_of(&self, sentences: &[Formula]) -> Result<bool, SemanticsError> {
        let programs = compile_sentences(sentences)?;
        self.is_model_of_programs(&programs)
    }

    pub fn is_model_of_programs(&self, programs: &[Program]) -> Result<bool, SemanticsError> {
        for p in programs {
            if self.truth_program(p)? != Truth::True {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn compile_sentences(sentences: &[Formula]) -> Result<Vec<Program>, SemanticsError> {
    sentences
        .iter()
        .map(|s| {
            if s.is_closed() {
                Ok(Program::compile(s))
            } else {
                Err(SemanticsError::OpenSentence(s.to_string()))
            }
        })
        .collect()
}

impl Bound<'_> {
    fn sat(&self, node: usize, regs: &mut [Value]) -> bool {
        match &self.nodes[node] {
            Node::Mem2 { head, term } => {
                let (base, table) = &self.terms[*term];
                let start = match base {
                    None => self.zero,
                    Some(s) => regs[*s] as u32,
                };
                self.h.member(2, u64::from(table[start as usize]), regs[*head])
            }
            Node::MemN { level, head, arg } => self.h.member(*level, regs[*arg], regs[*head]),
            Node::Not(a) => !self.sat(*a, regs),
            Node::Or(a, b) => self.sat(*a, regs) || self.sat(*b, regs),
            Node::ForAll { slot, level, body } => {
                let saved = regs[*slot];
                let mut all = true;
                if *level == 1 {
                    for &d in self.h.level1() {
                        regs[*slot] = u64::from(d);
                        if !self.sat(*body, regs) {
                            all = false;
                            break;
                        }
                    }
                } else {
                    for v in 0..self.sets[*level as usize - 1] {
                        regs[*slot] = v;
                        if !self.sat(*body, regs) {
                            all = false;
                            break;
                        }
                    }
                }
                regs[*slot] = saved;
                all
            }
        }
    }
}

/// Satisfaction with default bounds.
pub fn satisfies(m: &Interpretation, env: &Environment, phi: &Formula) -> Result<bool, SemanticsError> {
    Evaluator::new(m, Bounds::default()).satisfies(env, phi)
}

/// Truth value with default bounds.
pub fn truth_value(m: &Interpretation, phi: &Formula) -> Result<Truth, SemanticsError> {
    Evaluator::new(m, Bounds::default()).truth_value(phi)
}

/// Denotation of a type-1 term with default bounds.
pub fn eval_term1(m: &Interpretation, env: &Environment, t: &Term1) -> Result<u32, SemanticsError> {
    Evaluator::new(m, Bounds::default()).eval_term1(env, t)
}

/// Whether every sentence is true under `m`; open formulas are rejected.
pub fn is_model_of(m: &Interpretation, sentences: &[Formula]) -> Result<bool, SemanticsError> {
    Evaluator::new(m, Bounds::default()).is_model_of(sentences)
}
