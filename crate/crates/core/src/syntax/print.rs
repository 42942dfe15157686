use std::fmt::{self, Write};

use super::{Arg, Base, Formula, Term1, Variable, CHAIN_PRINT_LIMIT};

/// Primitive symbols of the canonical notation. The printed text of a formula
/// is exactly the rendering of its symbol sequence, and the same sequence is
/// what gets Goedel-numbered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    Succ,
    Not,
    Or,
    Pi,
    LParen,
    RParen,
    Var(Variable),
    /// Opens the compact numeral block `f^{digits}`.
    Caret,
    /// A decimal digit inside a compact numeral block.
    Digit(u8),
}

/// Canonical text of a formula.
pub fn print(phi: &Formula) -> String {
    render(&symbols(phi))
}

/// Canonical symbol sequence of a formula.
pub fn symbols(phi: &Formula) -> Vec<Symbol> {
    let mut out = Vec::new();
    push_formula(&mut out, phi);
    out
}

fn push_formula(out: &mut Vec<Symbol>, phi: &Formula) {
    match phi {
        Formula::Elem(atom) => {
            out.push(Symbol::Var(atom.head()));
            out.push(Symbol::LParen);
            match atom.arg() {
                Arg::Term(t) => push_term(out, t),
                Arg::Var(v) => out.push(Symbol::Var(*v)),
            }
            out.push(Symbol::RParen);
        }
        Formula::Not(a) => {
            out.push(Symbol::Not);
            push_group(out, a);
        }
        Formula::Or(a, b) => {
            push_group(out, a);
            out.push(Symbol::Or);
            push_group(out, b);
        }
        Formula::ForAll { var, body } => {
            out.push(Symbol::Var(*var));
            out.push(Symbol::Pi);
            push_group(out, body);
        }
    }
}

fn push_group(out: &mut Vec<Symbol>, phi: &Formula) {
    out.push(Symbol::LParen);
    push_formula(out, phi);
    out.push(Symbol::RParen);
}

fn push_term(out: &mut Vec<Symbol>, t: &Term1) {
    match u32::try_from(t.succ_count()) {
        Ok(n) if n <= CHAIN_PRINT_LIMIT => {
            out.extend(std::iter::repeat_n(Symbol::Succ, n as usize));
        }
        _ => {
            out.push(Symbol::Succ);
            out.push(Symbol::Caret);
            out.extend(t.succ_count().to_str_radix(10).bytes().map(|b| Symbol::Digit(b - b'0')));
        }
    }
    out.push(match t.base() {
        Base::Zero => Symbol::Zero,
        Base::Var(v) => Symbol::Var(v),
    });
}

pub(crate) fn write_term(out: &mut String, t: &Term1) {
    let mut syms = Vec::new();
    push_term(&mut syms, t);
    out.push_str(&render(&syms));
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zero => f.write_str("0"),
            Symbol::Succ => f.write_str("f"),
            Symbol::Not => f.write_str("~"),
            Symbol::Or => f.write_str("v"),
            Symbol::Pi => f.write_str("P"),
            Symbol::LParen => f.write_str("("),
            Symbol::RParen => f.write_str(")"),
            Symbol::Var(v) => write!(f, "{v}"),
            Symbol::Caret => f.write_str("^"),
            Symbol::Digit(d) => write!(f, "{d}"),
        }
    }
}

/// Renders a symbol sequence as text. Sequences produced by [`symbols`] lex
/// back to themselves; stray digits outside a numeral block render bare.
pub fn render(symbols: &[Symbol]) -> String {
    let mut out = String::new();
    let mut in_digits = false;
    for s in symbols {
        if in_digits && !matches!(s, Symbol::Digit(_)) {
            out.push('}');
            in_digits = false;
        }
        match s {
            Symbol::Zero => out.push('0'),
            Symbol::Succ => out.push('f'),
            Symbol::Not => out.push('~'),
            Symbol::Or => out.push_str(" v "),
            Symbol::Pi => out.push_str(" P "),
            Symbol::LParen => out.push('('),
            Symbol::RParen => out.push(')'),
            Symbol::Var(v) => {
                let _ = write!(out, "{v}");
            }
            Symbol::Caret => {
                out.push_str("^{");
                in_digits = true;
            }
            Symbol::Digit(d) => {
                out.push(char::from(b'0' + d));
            }
        }
    }
    if in_digits {
        out.push('}');
    }
    out
}
