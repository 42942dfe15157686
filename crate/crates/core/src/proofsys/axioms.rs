//! Logical axioms of P, transcribed from Gödel's 1931 presentation.
//!
//! All abbreviations are taken in their core expansions (see
//! [`crate::syntax::sugar`]); matching is purely syntactic against those
//! expansions. `p`, `q`, `r` are arbitrary formulas, `v` a variable of any
//! type n, `c` a type-1 term (n = 1) or a type-n variable (n > 1).
//!
//! | id    | shape                                                                        |
//! |-------|------------------------------------------------------------------------------|
//! | I.1   | `~(fx1 = 0)`                                                                 |
//! | I.2   | `(fx1 = fy1) -> (x1 = y1)`                                                   |
//! | I.3   | `x2 P ((x2(0) & x1 P (x2(x1) -> x2(fx1))) -> x1 P (x2(x1)))`                 |
//! | II.1  | `(p v p) -> p`                                                               |
//! | II.2  | `p -> (p v q)`                                                               |
//! | II.3  | `(p v q) -> (q v p)`                                                         |
//! | II.4  | `(p -> q) -> ((r v p) -> (r v q))`                                           |
//! | III.1 | `v P (p) -> p[v := c]`, `c` substitutable for `v` in `p`                     |
//! | III.2 | `v P (q v p) -> (q v v P (p))`, `v` not free in `q`                          |
//! | IV    | `u E (v P (u(v) <-> p))`, u of type n+1, v of type n, `u` not free in `p`    |
//! | V     | `v P (x(v) <-> y(v)) -> x = y`, x and y of type n+1, v of type n             |
//!
//! Equality is the Leibniz expansion; I.3 is the single induction sentence
//! rather than a schema.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::syntax::sugar::{and, as_exists, as_iff, as_imp, eq_terms, eq_vars, imp};
use crate::syntax::{numeral, subst, Arg, Base, Formula, Replacement, Term1, Variable};

/// One axiom group item, e.g. `II.4`. Groups IV and V have no item number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemaId {
    I1,
    I2,
    I3,
    II1,
    II2,
    II3,
    II4,
    III1,
    III2,
    IV,
    V,
}

impl SchemaId {
    pub const ALL: [SchemaId; 11] = [
        SchemaId::I1,
        SchemaId::I2,
        SchemaId::I3,
        SchemaId::II1,
        SchemaId::II2,
        SchemaId::II3,
        SchemaId::II4,
        SchemaId::III1,
        SchemaId::III2,
        SchemaId::IV,
        SchemaId::V,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemaId::I1 => "I.1",
            SchemaId::I2 => "I.2",
            SchemaId::I3 => "I.3",
            SchemaId::II1 => "II.1",
            SchemaId::II2 => "II.2",
            SchemaId::II3 => "II.3",
            SchemaId::II4 => "II.4",
            SchemaId::III1 => "III.1",
            SchemaId::III2 => "III.2",
            SchemaId::IV => "IV",
            SchemaId::V => "V",
        }
    }

    /// The group numeral: "I", "II", "III", "IV" or "V".
    pub fn group(self) -> &'static str {
        self.as_str().split('.').next().unwrap()
    }

    /// Group I axioms are arithmetic, not logical: they are not valid in
    /// every interpretation.
    pub fn is_arithmetic(self) -> bool {
        matches!(self, SchemaId::I1 | SchemaId::I2 | SchemaId::I3)
    }

    /// Whether `phi` is an instance of this schema.
    pub fn matches(self, phi: &Formula) -> bool {
        match self {
            SchemaId::I1 | SchemaId::I2 | SchemaId::I3 => *phi == arithmetic_axiom(self),
            SchemaId::II1 => split_imp(phi).is_some_and(|(l, r)| match l {
                Formula::Or(a, b) => a == b && **a == *r,
                _ => false,
            }),
            SchemaId::II2 => split_imp(phi).is_some_and(|(p, r)| match r {
                Formula::Or(a, _) => **a == *p,
                _ => false,
            }),
            SchemaId::II3 => split_imp(phi).is_some_and(|(l, r)| match (l, r) {
                (Formula::Or(p, q), Formula::Or(q2, p2)) => p == p2 && q == q2,
                _ => false,
            }),
            SchemaId::II4 => match_ii4(phi),
            SchemaId::III1 => match_iii1(phi),
            SchemaId::III2 => match_iii2(phi),
            SchemaId::IV => match_iv(phi),
            SchemaId::V => match_v(phi),
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown axiom schema {s:?}"))
    }
}

impl Serialize for SchemaId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SchemaId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn x1() -> Variable {
    Variable::new(1, 1)
}

fn y1() -> Variable {
    Variable::new(1, 2)
}

fn x2() -> Variable {
    Variable::new(2, 1)
}

fn var1(v: Variable) -> Term1 {
    Term1::var(v).unwrap()
}

/// `y(0) & x1 P (y(x1) -> y(fx1))`: `y` contains zero and is closed under
/// successor.
pub fn closure_condition(y: Variable) -> Formula {
    and(
        Formula::apply(y, numeral(0u32)),
        Formula::forall(
            x1(),
            imp(
                Formula::apply(y, var1(x1())),
                Formula::apply(y, var1(x1()).successor()),
            ),
        ),
    )
}

/// The fixed formula of a group I item. Panics for other ids.
pub fn arithmetic_axiom(id: SchemaId) -> Formula {
    match id {
        SchemaId::I1 => Formula::not(eq_terms(var1(x1()).successor(), numeral(0u32))),
        SchemaId::I2 => imp(
            eq_terms(var1(x1()).successor(), var1(y1()).successor()),
            eq_terms(var1(x1()), var1(y1())),
        ),
        SchemaId::I3 => Formula::forall(
            x2(),
            imp(
                closure_condition(x2()),
                Formula::forall(x1(), Formula::apply(x2(), var1(x1()))),
            ),
        ),
        other => panic!("{other} is not a group I axiom"),
    }
}

fn split_imp(phi: &Formula) -> Option<(&Formula, &Formula)> {
    as_imp(phi)
}

fn match_ii4(phi: &Formula) -> bool {
    let Some((pq, rest)) = split_imp(phi) else {
        return false;
    };
    let (Some((p, q)), Some((rp, rq))) = (split_imp(pq), split_imp(rest)) else {
        return false;
    };
    match (rp, rq) {
        (Formula::Or(r1, p2), Formula::Or(r2, q2)) => r1 == r2 && **p2 == *p && **q2 == *q,
        _ => false,
    }
}

fn match_iii1(phi: &Formula) -> bool {
    let Some((Formula::ForAll { var, body }, target)) = split_imp(phi) else {
        return false;
    };
    if !body.has_free(*var) {
        return **body == *target;
    }
    let Some(c) = infer_replacement(body, *var, target) else {
        return false;
    };
    body.is_substitutable(*var, &c) && subst(body, *var, c).is_ok_and(|s| s == *target)
}

/// Reads off what replaced the first free occurrence of `v` in `a` to give
/// `b`, by walking both formulas in parallel.
pub(crate) fn infer_replacement(a: &Formula, v: Variable, b: &Formula) -> Option<Replacement> {
    match (a, b) {
        (Formula::Elem(x), Formula::Elem(y)) => {
            if x.head() == v {
                return Some(Replacement::Var(y.head()));
            }
            match (x.arg(), y.arg()) {
                (Arg::Var(w), Arg::Var(z)) if *w == v => Some(Replacement::Var(*z)),
                (Arg::Term(s), Arg::Term(t)) if s.base() == Base::Var(v) => {
                    if t.succ_count() >= s.succ_count() {
                        Term1::new(t.succ_count() - s.succ_count(), t.base()).map(Replacement::Term)
                    } else {
                        None
                    }
                }
                _ => None,
            }
        }
        (Formula::Not(a), Formula::Not(b)) => infer_replacement(a, v, b),
        (Formula::Or(a1, a2), Formula::Or(b1, b2)) => {
            if a1.has_free(v) {
                infer_replacement(a1, v, b1)
            } else {
                infer_replacement(a2, v, b2)
            }
        }
        (Formula::ForAll { var, body }, Formula::ForAll { var: var2, body: body2 }) => {
            if var == var2 && *var != v {
                infer_replacement(body, v, body2)
            } else {
                None
            }
        }
        _ => None,
    }
}

fn match_iii2(phi: &Formula) -> bool {
    let Some((Formula::ForAll { var, body }, rhs)) = split_imp(phi) else {
        return false;
    };
    let (Formula::Or(q, p), Formula::Or(q2, all)) = (body.as_ref(), rhs) else {
        return false;
    };
    let Formula::ForAll { var: v2, body: p2 } = all.as_ref() else {
        return false;
    };
    q == q2 && var == v2 && p == p2 && !q.has_free(*var)
}

fn match_iv(phi: &Formula) -> bool {
    let Some((u, inner)) = as_exists(phi) else {
        return false;
    };
    let Formula::ForAll { var: v, body } = inner else {
        return false;
    };
    let Some((lhs, p)) = as_iff(body) else {
        return false;
    };
    u.type_level() == v.type_level() + 1
        && Formula::elem(u, Arg::Var(*v)).is_ok_and(|e| e == *lhs)
        && !p.has_free(u)
}

fn match_v(phi: &Formula) -> bool {
    let Some((Formula::ForAll { var: v, body }, rhs)) = split_imp(phi) else {
        return false;
    };
    let Some((Formula::Elem(l), Formula::Elem(r))) = as_iff(body) else {
        return false;
    };
    let (x, y) = (l.head(), r.head());
    x.type_level() == v.type_level() + 1
        && y.type_level() == x.type_level()
        && x != *v
        && y != *v
        && Formula::elem(x, Arg::Var(*v)).is_ok_and(|e| e == Formula::Elem(l.clone()))
        && Formula::elem(y, Arg::Var(*v)).is_ok_and(|e| e == Formula::Elem(r.clone()))
        && *rhs == eq_vars(x, y)
}

/// The first schema `phi` instantiates, in the order of [`SchemaId::ALL`].
pub fn is_schema_axiom(phi: &Formula) -> Option<SchemaId> {
    SchemaId::ALL.into_iter().find(|id| id.matches(phi))
}

/// Instances of the propositional schemata with metavariables drawn from
/// `pool`, in a fixed order.
pub(crate) fn propositional_instances(pool: &[Formula]) -> Vec<(SchemaId, Formula)> {
    let or = |a: &Formula, b: &Formula| Formula::or(a.clone(), b.clone());
    let mut out = Vec::new();
    for p in pool {
        out.push((SchemaId::II1, imp(or(p, p), p.clone())));
    }
    for p in pool {
        for q in pool {
            out.push((SchemaId::II2, imp(p.clone(), or(p, q))));
            out.push((SchemaId::II3, imp(or(p, q), or(q, p))));
        }
    }
    for p in pool {
        for q in pool {
            for r in pool {
                out.push((
                    SchemaId::II4,
                    imp(imp(p.clone(), q.clone()), imp(or(r, p), or(r, q))),
                ));
            }
        }
    }
    out
}
