//! Derived connectives, expanded into `~`, `v` and `P`.
//!
//! The expansions are fixed, so every abbreviation has exactly one core form;
//! the proof checker relies on that when it recognizes axiom shapes.

use super::{Arg, Formula, Term1, Variable};

/// `a -> b` is `(~(a)) v (b)`.
pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::or(Formula::not(a), b)
}

/// `a & b` is `~((~(a)) v (~(b)))`.
pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::not(Formula::or(Formula::not(a), Formula::not(b)))
}

/// `a <-> b` is `(a -> b) & (b -> a)`.
pub fn iff(a: Formula, b: Formula) -> Formula {
    and(imp(a.clone(), b.clone()), imp(b, a))
}

/// `v E (a)` is `~(v P (~(a)))`.
pub fn exists(v: Variable, a: Formula) -> Formula {
    Formula::not(Formula::forall(v, Formula::not(a)))
}

/// Bound variable used by the Leibniz expansion of equality at type `n`.
pub fn leibniz_var(n: u8) -> Variable {
    Variable::new(n + 1, 1)
}

/// `s = t` for type-1 terms: `x2 P (x2(s) -> x2(t))`.
pub fn eq_terms(s: Term1, t: Term1) -> Formula {
    let w = leibniz_var(1);
    Formula::forall(w, imp(Formula::apply(w, s), Formula::apply(w, t)))
}

/// `a = b` for variables of equal type n: `w P (w(a) -> w(b))` with `w` the
/// first variable of type n + 1. Type-1 variables go through [`eq_terms`].
pub fn eq_vars(a: Variable, b: Variable) -> Formula {
    assert_eq!(a.ty(), b.ty(), "equality needs equal types");
    if a.type_level() == 1 {
        return eq_terms(Term1::var(a).unwrap(), Term1::var(b).unwrap());
    }
    let w = leibniz_var(a.type_level());
    Formula::forall(
        w,
        imp(
            Formula::elem(w, Arg::Var(a)).unwrap(),
            Formula::elem(w, Arg::Var(b)).unwrap(),
        ),
    )
}

/// Splits `(~(a)) v (b)`.
pub fn as_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(l, r) => match l.as_ref() {
            Formula::Not(a) => Some((a, r)),
            _ => None,
        },
        _ => None,
    }
}

/// Splits `~((~(a)) v (~(b)))`.
pub fn as_and(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Or(l, r) => match (l.as_ref(), r.as_ref()) {
                (Formula::Not(a), Formula::Not(b)) => Some((a, b)),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Splits the expansion of `a <-> b`.
pub fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    let (l, r) = as_and(f)?;
    let (a, b) = as_imp(l)?;
    let (b2, a2) = as_imp(r)?;
    (a == a2 && b == b2).then_some((a, b))
}

/// Splits `~(v P (~(a)))`.
pub fn as_exists(f: &Formula) -> Option<(Variable, &Formula)> {
    match f {
        Formula::Not(inner) => match inner.as_ref() {
            Formula::ForAll { var, body } => match body.as_ref() {
                Formula::Not(a) => Some((*var, a)),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Recognizes the Leibniz expansion of `a = b` between two variables of the
/// same type n >= 2.
pub fn as_eq_vars(f: &Formula) -> Option<(Variable, Variable)> {
    let Formula::ForAll { var, body } = f else {
        return None;
    };
    let (l, r) = as_imp(body)?;
    let (Formula::Elem(la), Formula::Elem(ra)) = (l, r) else {
        return None;
    };
    let (Arg::Var(a), Arg::Var(b)) = (la.arg(), ra.arg()) else {
        return None;
    };
    let ok = la.head() == *var && ra.head() == *var && *var == leibniz_var(a.type_level());
    ok.then_some((*a, *b))
}
