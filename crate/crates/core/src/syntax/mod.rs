//! Abstract syntax of the typed language shared by P, P0 and P'.
//!
//! Formulas are built from elementary applications `a_n(b_{n-1})`, negation,
//! disjunction and the universal quantifier. Everything else (conjunction,
//! implication, the existential quantifier, equality) is sugar that the parser
//! expands through the helpers in [`sugar`].

mod parse;
mod print;
pub mod sugar;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::{parse, parse_symbols, parse_term, parse_tokens, Token};
pub use print::{print, symbols, Symbol};

/// Letters accepted by the shorthand variable notation; position + 1 is the
/// variable index, the trailing digits are the type.
pub const LETTERS: [char; 10] = ['x', 'y', 'z', 'u', 'w', 's', 't', 'r', 'q', 'p'];

/// Letter used by the long variable form `a<index>:<type>`.
pub const LONG_FORM_LETTER: char = 'a';

/// Numerals with more successors than this print as `f^{N}` instead of an
/// explicit chain of `f`s.
pub const CHAIN_PRINT_LIMIT: u32 = 16;

/// Maximum nesting depth accepted by the parser.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at {pos}: expected {}, found {found}", .expected.join(" or "))]
    Unexpected {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("type error at {pos}: {message}")]
    Type { pos: usize, message: String },
    #[error("formula nested deeper than {MAX_DEPTH} at {pos}")]
    TooDeep { pos: usize },
}

impl SyntaxError {
    pub fn is_type_error(&self) -> bool {
        matches!(self, SyntaxError::Type { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("cannot substitute {replacement} (type {found}) for {var} (type {expected})")]
    TypeMismatch {
        var: Variable,
        replacement: String,
        expected: u8,
        found: u8,
    },
}

/// Type subscript of a variable; always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeIndex(u8);

impl TypeIndex {
    pub const ONE: TypeIndex = TypeIndex(1);

    pub fn new(n: u8) -> Option<Self> {
        (n >= 1).then_some(TypeIndex(n))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for TypeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The `index`-th variable of type `ty`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    ty: TypeIndex,
    index: u32,
}

impl Variable {
    /// Panics if `ty` or `index` is zero.
    pub fn new(ty: u8, index: u32) -> Self {
        Self::try_new(ty, index).expect("variable type and index must be >= 1")
    }

    pub fn try_new(ty: u8, index: u32) -> Option<Self> {
        let ty = TypeIndex::new(ty)?;
        (index >= 1).then_some(Variable { ty, index })
    }

    pub fn ty(self) -> TypeIndex {
        self.ty
    }

    pub fn type_level(self) -> u8 {
        self.ty.0
    }

    pub fn index(self) -> u32 {
        self.index
    }

    /// Same type, different index.
    pub fn with_index(self, index: u32) -> Self {
        Variable::new(self.ty.0, index)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index as usize;
        if i <= LETTERS.len() {
            write!(f, "{}{}", LETTERS[i - 1], self.ty)
        } else {
            write!(f, "{}{}:{}", LONG_FORM_LETTER, self.index, self.ty)
        }
    }
}

impl std::str::FromStr for Variable {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = parse::lex(s)?;
        match tokens.as_slice() {
            [(Token::Sym(Symbol::Var(v)), _)] => Ok(*v),
            _ => Err(SyntaxError::Unexpected {
                pos: 0,
                expected: vec!["a single variable".into()],
                found: format!("{s:?}"),
            }),
        }
    }
}

impl Serialize for Variable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Variable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Base of a type-1 term: the constant `0` or a type-1 variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Zero,
    Var(Variable),
}

/// `f^succ(base)`. The numeral `n` is `f^n(0)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term1 {
    succ: BigUint,
    base: Base,
}

impl Term1 {
    /// Fails when `base` is a variable of type other than 1.
    pub fn new(succ: impl Into<BigUint>, base: Base) -> Option<Self> {
        if let Base::Var(v) = base {
            if v.type_level() != 1 {
                return None;
            }
        }
        Some(Term1 {
            succ: succ.into(),
            base,
        })
    }

    pub fn var(v: Variable) -> Option<Self> {
        Term1::new(0u32, Base::Var(v))
    }

    pub fn succ_count(&self) -> &BigUint {
        &self.succ
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn base_var(&self) -> Option<Variable> {
        match self.base {
            Base::Var(v) => Some(v),
            Base::Zero => None,
        }
    }

    pub fn is_numeral(&self) -> bool {
        self.base == Base::Zero
    }

    /// `f` applied once more.
    pub fn successor(&self) -> Term1 {
        Term1 {
            succ: &self.succ + 1u32,
            base: self.base,
        }
    }

    fn shifted(&self, extra: &BigUint) -> Term1 {
        Term1 {
            succ: &self.succ + extra,
            base: self.base,
        }
    }
}

impl fmt::Display for Term1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        print::write_term(&mut out, self);
        f.write_str(&out)
    }
}

/// The numeral `f...f0` with `n` successors.
pub fn numeral(n: impl Into<BigUint>) -> Term1 {
    Term1 {
        succ: n.into(),
        base: Base::Zero,
    }
}

/// Argument of an elementary formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arg {
    Term(#[serde(with = "term_serde")] Term1),
    Var(Variable),
}

impl Arg {
    fn type_level(&self) -> u8 {
        match self {
            Arg::Term(_) => 1,
            Arg::Var(v) => v.type_level(),
        }
    }
}

/// A well-typed elementary formula `head(arg)`: the head has type n >= 2 and
/// the argument has type n - 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAtom")]
pub struct Atom {
    head: Variable,
    arg: Arg,
}

#[derive(Deserialize)]
struct RawAtom {
    head: Variable,
    arg: Arg,
}

impl TryFrom<RawAtom> for Atom {
    type Error = String;

    fn try_from(raw: RawAtom) -> Result<Self, Self::Error> {
        Atom::new(raw.head, raw.arg)
    }
}

impl Atom {
    /// Checks the type discipline. A type-1 variable argument given as
    /// `Arg::Var` is normalized to a term with no successors.
    pub fn new(head: Variable, arg: Arg) -> Result<Self, String> {
        let n = head.type_level();
        if n < 2 {
            return Err(format!("type-1 variable {head} cannot be applied"));
        }
        let arg = match arg {
            Arg::Var(v) if v.type_level() == 1 => Arg::Term(Term1::var(v).unwrap()),
            other => other,
        };
        if n == 2 && arg.type_level() != 1 {
            return Err(format!(
                "head type 2 requires type-1 argument, found type {}",
                arg.type_level()
            ));
        }
        if n > 2 {
            match &arg {
                Arg::Var(v) if v.type_level() == n - 1 => {}
                Arg::Var(v) => {
                    return Err(format!(
                        "head type {n} requires type-{} argument, found type {}",
                        n - 1,
                        v.type_level()
                    ))
                }
                Arg::Term(_) => {
                    return Err(format!(
                        "head type {n} requires type-{} variable argument, found a type-1 term",
                        n - 1
                    ))
                }
            }
        }
        Ok(Atom { head, arg })
    }

    pub fn head(&self) -> Variable {
        self.head
    }

    pub fn arg(&self) -> &Arg {
        &self.arg
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Elem(Atom),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    #[serde(rename = "forall")]
    ForAll {
        var: Variable,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn elem(head: Variable, arg: Arg) -> Result<Formula, String> {
        Atom::new(head, arg).map(Formula::Elem)
    }

    /// `head(term)` for a type-2 head; panics on any other head type.
    pub fn apply(head: Variable, term: Term1) -> Formula {
        Formula::elem(head, Arg::Term(term)).expect("type-2 head")
    }

    /// `head(arg)` for heads of type >= 3; panics when types do not line up.
    pub fn apply_var(head: Variable, arg: Variable) -> Formula {
        Formula::elem(head, Arg::Var(arg)).expect("well-typed application")
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn forall(var: Variable, body: Formula) -> Formula {
        Formula::ForAll {
            var,
            body: Box::new(body),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Elem(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::ForAll { body, .. } => 1 + body.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Elem(_) => 1,
            Formula::Not(a) => 1 + a.depth(),
            Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
            Formula::ForAll { body, .. } => 1 + body.depth(),
        }
    }

    /// Highest variable type mentioned anywhere, free or bound.
    pub fn max_type(&self) -> u8 {
        let mut max = 1;
        self.visit_vars(&mut |v| max = max.max(v.type_level()));
        max
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn has_free(&self, v: Variable) -> bool {
        match self {
            Formula::Elem(atom) => atom_vars(atom).any(|w| w == v),
            Formula::Not(a) => a.has_free(v),
            Formula::Or(a, b) => a.has_free(v) || b.has_free(v),
            Formula::ForAll { var, body } => *var != v && body.has_free(v),
        }
    }

    /// Every variable occurrence, bound or free, including binders.
    pub fn visit_vars(&self, f: &mut impl FnMut(Variable)) {
        match self {
            Formula::Elem(atom) => atom_vars(atom).for_each(f),
            Formula::Not(a) => a.visit_vars(f),
            Formula::Or(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            Formula::ForAll { var, body } => {
                f(*var);
                body.visit_vars(f);
            }
        }
    }

    /// All subformulas, the formula itself first, in pre-order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                Formula::Elem(_) => {}
                Formula::Not(a) => stack.push(a),
                Formula::Or(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Formula::ForAll { body, .. } => stack.push(body),
            }
        }
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

fn atom_vars(atom: &Atom) -> impl Iterator<Item = Variable> {
    let arg = match &atom.arg {
        Arg::Term(t) => t.base_var(),
        Arg::Var(v) => Some(*v),
    };
    std::iter::once(atom.head).chain(arg)
}

fn collect_free(phi: &Formula, bound: &mut Vec<Variable>, out: &mut BTreeSet<Variable>) {
    match phi {
        Formula::Elem(atom) => {
            for v in atom_vars(atom) {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        }
        Formula::Not(a) => collect_free(a, bound, out),
        Formula::Or(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::ForAll { var, body } => {
            bound.push(*var);
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

/// What a variable may be replaced by: a type-1 term for type-1 variables,
/// a variable of the same type otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Replacement {
    Term(Term1),
    Var(Variable),
}

impl Replacement {
    pub fn type_level(&self) -> u8 {
        match self {
            Replacement::Term(_) => 1,
            Replacement::Var(v) => v.type_level(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Variable> {
        match self {
            Replacement::Term(t) => t.base_var().into_iter().collect(),
            Replacement::Var(v) => [*v].into_iter().collect(),
        }
    }

    fn normalized(self) -> Replacement {
        match self {
            Replacement::Var(v) if v.type_level() == 1 => Replacement::Term(Term1::var(v).unwrap()),
            other => other,
        }
    }
}

impl fmt::Display for Replacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Replacement::Term(t) => write!(f, "{t}"),
            Replacement::Var(v) => write!(f, "{v}"),
        }
    }
}

/// Capture-avoiding substitution of `replacement` for the free occurrences of
/// `v`. A binder that would capture a variable of the replacement is renamed
/// to the smallest index of its type that occurs nowhere in the body, in the
/// replacement, or as `v`.
pub fn subst(phi: &Formula, v: Variable, replacement: Replacement) -> Result<Formula, SubstError> {
    let replacement = replacement.normalized();
    if replacement.type_level() != v.type_level() {
        return Err(SubstError::TypeMismatch {
            var: v,
            replacement: replacement.to_string(),
            expected: v.type_level(),
            found: replacement.type_level(),
        });
    }
    let repl_free = replacement.free_vars();
    Ok(subst_rec(phi, v, &replacement, &repl_free))
}

fn subst_rec(
    phi: &Formula,
    v: Variable,
    repl: &Replacement,
    repl_free: &BTreeSet<Variable>,
) -> Formula {
    match phi {
        Formula::Elem(atom) => Formula::Elem(subst_atom(atom, v, repl)),
        Formula::Not(a) => Formula::not(subst_rec(a, v, repl, repl_free)),
        Formula::Or(a, b) => Formula::or(
            subst_rec(a, v, repl, repl_free),
            subst_rec(b, v, repl, repl_free),
        ),
        Formula::ForAll { var, body } => {
            if *var == v || !body.has_free(v) {
                return phi.clone();
            }
            if repl_free.contains(var) {
                let fresh = fresh_variable(*var, body, repl_free, v);
                let renamed = subst_rec(
                    body,
                    *var,
                    &Replacement::Var(fresh).normalized(),
                    &[fresh].into_iter().collect(),
                );
                Formula::forall(fresh, subst_rec(&renamed, v, repl, repl_free))
            } else {
                Formula::forall(*var, subst_rec(body, v, repl, repl_free))
            }
        }
    }
}

fn fresh_variable(
    like: Variable,
    body: &Formula,
    avoid: &BTreeSet<Variable>,
    v: Variable,
) -> Variable {
    let mut used = BTreeSet::new();
    body.visit_vars(&mut |w| {
        used.insert(w);
    });
    (1..)
        .map(|i| like.with_index(i))
        .find(|w| !used.contains(w) && !avoid.contains(w) && *w != v)
        .expect("unbounded index range")
}

fn subst_atom(atom: &Atom, v: Variable, repl: &Replacement) -> Atom {
    let head = match (atom.head == v, repl) {
        (true, Replacement::Var(w)) => *w,
        _ => atom.head,
    };
    let arg = match (&atom.arg, repl) {
        (Arg::Var(a), Replacement::Var(w)) if *a == v => Arg::Var(*w),
        (Arg::Term(t), Replacement::Term(r)) if t.base == Base::Var(v) => {
            Arg::Term(r.shifted(&t.succ))
        }
        (arg, _) => arg.clone(),
    };
    Atom { head, arg }
}

impl Formula {
    /// Whether `repl` can replace the free occurrences of `v` without any of
    /// its variables being captured by a binder.
    pub fn is_substitutable(&self, v: Variable, repl: &Replacement) -> bool {
        let repl_free = repl.free_vars();
        fn go(phi: &Formula, v: Variable, repl_free: &BTreeSet<Variable>, under: bool) -> bool {
            match phi {
                Formula::Elem(_) => !under || !phi.has_free(v),
                Formula::Not(a) => go(a, v, repl_free, under),
                Formula::Or(a, b) => go(a, v, repl_free, under) && go(b, v, repl_free, under),
                Formula::ForAll { var, body } => {
                    if *var == v {
                        return true;
                    }
                    go(body, v, repl_free, under || repl_free.contains(var))
                }
            }
        }
        go(self, v, &repl_free, false)
    }
}

pub(crate) mod term_serde {
    use super::{Base, Term1};
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct RawTerm {
        succ: String,
        base: String,
    }

    pub fn serialize<S: Serializer>(t: &Term1, s: S) -> Result<S::Ok, S::Error> {
        let base = match t.base {
            Base::Zero => "0".to_string(),
            Base::Var(v) => v.to_string(),
        };
        RawTerm {
            succ: t.succ.to_string(),
            base,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Term1, D::Error> {
        use serde::de::Error;
        let raw = RawTerm::deserialize(d)?;
        let succ: BigUint = raw
            .succ
            .parse()
            .map_err(|_| D::Error::custom("succ must be a decimal string"))?;
        let base = if raw.base == "0" {
            Base::Zero
        } else {
            Base::Var(raw.base.parse().map_err(D::Error::custom)?)
        };
        Term1::new(succ, base).ok_or_else(|| D::Error::custom("term base must be a type-1 variable"))
    }
}

impl Term1 {
    pub fn is_zero_steps(&self) -> bool {
        self.succ.is_zero()
    }
}
