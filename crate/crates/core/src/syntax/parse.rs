//! Lexer and recursive-descent parser for the canonical notation.
//!
//! ```text
//! formula := "~" "(" formula ")"
//!          | "(" formula ")" binop "(" formula ")"      binop: v & -> <->
//!          | var "P" "(" formula ")"                    universal
//!          | var "E" "(" formula ")"                    existential (sugar)
//!          | var "(" arg ")"                            elementary
//!          | side "=" side                              equality (sugar)
//! arg     := term1 | var
//! term1   := "f"* base | "f^{" digits "}" base
//! base    := "0" | var
//! var     := letter typedigits | "a" indexdigits ":" typedigits
//! ```

use num_bigint::BigUint;

use super::sugar;
use super::{Arg, Atom, Base, Formula, Symbol, SyntaxError, Term1, Variable, LETTERS, LONG_FORM_LETTER, MAX_DEPTH};

/// Lexical tokens: the primitive symbols plus the connectives that only
/// exist as abbreviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Sym(Symbol),
    And,
    Imp,
    Iff,
    Exists,
    Eq,
}

fn describe(tok: Option<&Token>) -> String {
    match tok {
        None => "end of input".into(),
        Some(Token::Sym(s)) => match s {
            Symbol::Zero => "'0'".into(),
            Symbol::Succ => "'f'".into(),
            Symbol::Not => "'~'".into(),
            Symbol::Or => "'v'".into(),
            Symbol::Pi => "'P'".into(),
            Symbol::LParen => "'('".into(),
            Symbol::RParen => "')'".into(),
            Symbol::Var(v) => format!("variable {v}"),
            Symbol::Caret => "'^'".into(),
            Symbol::Digit(d) => format!("digit {d}"),
        },
        Some(Token::And) => "'&'".into(),
        Some(Token::Imp) => "'->'".into(),
        Some(Token::Iff) => "'<->'".into(),
        Some(Token::Exists) => "'E'".into(),
        Some(Token::Eq) => "'='".into(),
    }
}

fn unexpected(pos: usize, expected: &[&str], found: String) -> SyntaxError {
    SyntaxError::Unexpected {
        pos,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

/// Splits text into tokens paired with their character offsets.
pub(crate) fn lex(text: &str) -> Result<Vec<(Token, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    let small = |s: &str, pos: usize, what: &str| -> Result<u32, SyntaxError> {
        match s.parse::<u32>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(unexpected(pos, &[what], format!("{s:?}"))),
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0' => Token::Sym(Symbol::Zero),
            'f' => Token::Sym(Symbol::Succ),
            '~' | '¬' => Token::Sym(Symbol::Not),
            'v' | '∨' => Token::Sym(Symbol::Or),
            'P' | 'Π' => Token::Sym(Symbol::Pi),
            '(' => Token::Sym(Symbol::LParen),
            ')' => Token::Sym(Symbol::RParen),
            '&' | '∧' => Token::And,
            'E' => Token::Exists,
            '=' => Token::Eq,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Imp
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Token::Iff
            }
            '^' => {
                out.push((Token::Sym(Symbol::Caret), pos));
                i += 1;
                if chars.get(i) != Some(&'{') {
                    return Err(unexpected(i, &["'{'"], found_char(&chars, i)));
                }
                i += 1;
                let start = i;
                let ds = digits(&mut i);
                if ds.is_empty() {
                    return Err(unexpected(i, &["digit"], found_char(&chars, i)));
                }
                for (k, b) in ds.bytes().enumerate() {
                    out.push((Token::Sym(Symbol::Digit(b - b'0')), start + k));
                }
                if chars.get(i) != Some(&'}') {
                    return Err(unexpected(i, &["'}'"], found_char(&chars, i)));
                }
                i += 1;
                continue;
            }
            c if c == LONG_FORM_LETTER => {
                i += 1;
                let index_pos = i;
                let index = small(&digits(&mut i), index_pos, "variable index")?;
                if chars.get(i) != Some(&':') {
                    return Err(unexpected(i, &["':'"], found_char(&chars, i)));
                }
                i += 1;
                let ty_pos = i;
                let ty = small(&digits(&mut i), ty_pos, "type index")?;
                let ty = u8::try_from(ty).map_err(|_| unexpected(ty_pos, &["type index <= 255"], ty.to_string()))?;
                out.push((Token::Sym(Symbol::Var(Variable::new(ty, index))), pos));
                continue;
            }
            c if LETTERS.contains(&c) => {
                let index = LETTERS.iter().position(|l| *l == c).unwrap() as u32 + 1;
                i += 1;
                let ty_pos = i;
                let ty = small(&digits(&mut i), ty_pos, "type index")?;
                let ty = u8::try_from(ty).map_err(|_| unexpected(ty_pos, &["type index <= 255"], ty.to_string()))?;
                out.push((Token::Sym(Symbol::Var(Variable::new(ty, index))), pos));
                continue;
            }
            _ => return Err(unexpected(pos, &["symbol"], format!("{c:?}"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

fn found_char(chars: &[char], i: usize) -> String {
    chars
        .get(i)
        .map(|c| format!("{c:?}"))
        .unwrap_or_else(|| "end of input".into())
}

/// Parses canonical text, expanding abbreviations into core connectives.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let tokens = lex(text)?;
    let end = text.chars().count();
    Parser::new(&tokens, end).parse_all()
}

/// Reads text as a raw sequence of primitive symbols, without requiring it
/// to be a formula. Abbreviation tokens are rejected.
pub fn parse_symbols(text: &str) -> Result<Vec<Symbol>, SyntaxError> {
    lex(text)?
        .into_iter()
        .map(|(tok, pos)| match tok {
            Token::Sym(s) => Ok(s),
            other => Err(unexpected(pos, &["primitive symbol"], describe(Some(&other)))),
        })
        .collect()
}

/// Parses a lone type-1 term such as `ff0` or `f^{20}x1`.
pub fn parse_term(text: &str) -> Result<Term1, SyntaxError> {
    let tokens = lex(text)?;
    let mut p = Parser::new(&tokens, text.chars().count());
    let t = p.term()?;
    if p.at != tokens.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(t)
}

/// Parses an already tokenized sequence; positions are taken from the pairs.
pub fn parse_tokens(tokens: &[(Token, usize)]) -> Result<Formula, SyntaxError> {
    let end = tokens.last().map(|(_, p)| p + 1).unwrap_or(0);
    Parser::new(tokens, end).parse_all()
}

struct Parser<'a> {
    tokens: &'a [(Token, usize)],
    at: usize,
    end: usize,
}

enum Side {
    Term(Term1),
    Var(Variable),
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [(Token, usize)], end: usize) -> Self {
        Parser { tokens, at: 0, end }
    }

    fn parse_all(mut self) -> Result<Formula, SyntaxError> {
        let f = self.formula(0)?;
        if self.at != self.tokens.len() {
            return Err(self.error(&["end of input"]));
        }
        Ok(f)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.at + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        unexpected(self.pos(), expected, describe(self.peek()))
    }

    fn expect(&mut self, sym: Symbol, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&Token::Sym(sym)) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn group(&mut self, depth: usize) -> Result<Formula, SyntaxError> {
        self.expect(Symbol::LParen, "'('")?;
        let f = self.formula(depth + 1)?;
        self.expect(Symbol::RParen, "')'")?;
        Ok(f)
    }

    fn formula(&mut self, depth: usize) -> Result<Formula, SyntaxError> {
        if depth > MAX_DEPTH {
            return Err(SyntaxError::TooDeep { pos: self.pos() });
        }
        match self.peek() {
            Some(Token::Sym(Symbol::Not)) => {
                self.at += 1;
                Ok(Formula::not(self.group(depth)?))
            }
            Some(Token::Sym(Symbol::LParen)) => {
                let a = self.group(depth)?;
                let op = self.peek().copied();
                match op {
                    Some(Token::Sym(Symbol::Or) | Token::And | Token::Imp | Token::Iff) => self.at += 1,
                    _ => return Err(self.error(&["'v'", "'&'", "'->'", "'<->'"])),
                }
                let b = self.group(depth)?;
                Ok(match op {
                    Some(Token::Sym(Symbol::Or)) => Formula::or(a, b),
                    Some(Token::And) => sugar::and(a, b),
                    Some(Token::Imp) => sugar::imp(a, b),
                    _ => sugar::iff(a, b),
                })
            }
            Some(Token::Sym(Symbol::Var(v))) => {
                let v = *v;
                let var_pos = self.pos();
                match self.peek2() {
                    Some(Token::Sym(Symbol::LParen)) => {
                        self.at += 2;
                        let arg = self.arg()?;
                        self.expect(Symbol::RParen, "')'")?;
                        Atom::new(v, arg)
                            .map(Formula::Elem)
                            .map_err(|message| SyntaxError::Type { pos: var_pos, message })
                    }
                    Some(Token::Sym(Symbol::Pi)) => {
                        self.at += 2;
                        Ok(Formula::forall(v, self.group(depth)?))
                    }
                    Some(Token::Exists) => {
                        self.at += 2;
                        Ok(sugar::exists(v, self.group(depth)?))
                    }
                    Some(Token::Eq) => self.equality(),
                    _ => {
                        self.at += 1;
                        Err(self.error(&["'('", "'P'", "'E'", "'='"]))
                    }
                }
            }
            Some(Token::Sym(Symbol::Succ | Symbol::Zero)) => self.equality(),
            _ => Err(self.error(&["'~'", "'('", "variable", "term"])),
        }
    }

    fn equality(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        let lhs = self.side()?;
        if self.peek() != Some(&Token::Eq) {
            return Err(self.error(&["'='"]));
        }
        self.at += 1;
        let rhs = self.side()?;
        match (lhs, rhs) {
            (Side::Term(a), Side::Term(b)) => Ok(sugar::eq_terms(a, b)),
            (Side::Var(a), Side::Var(b)) if a.ty() == b.ty() => Ok(sugar::eq_vars(a, b)),
            _ => Err(SyntaxError::Type {
                pos,
                message: "both sides of '=' must have the same type".into(),
            }),
        }
    }

    fn side(&mut self) -> Result<Side, SyntaxError> {
        match self.peek() {
            Some(Token::Sym(Symbol::Var(v))) if v.type_level() > 1 => {
                let v = *v;
                self.at += 1;
                Ok(Side::Var(v))
            }
            _ => Ok(Side::Term(self.term()?)),
        }
    }

    fn arg(&mut self) -> Result<Arg, SyntaxError> {
        match self.peek() {
            Some(Token::Sym(Symbol::Var(v))) if v.type_level() > 1 => {
                let v = *v;
                self.at += 1;
                Ok(Arg::Var(v))
            }
            _ => Ok(Arg::Term(self.term()?)),
        }
    }

    fn term(&mut self) -> Result<Term1, SyntaxError> {
        let mut count = BigUint::from(0u32);
        if self.peek() == Some(&Token::Sym(Symbol::Succ))
            && self.peek2() == Some(&Token::Sym(Symbol::Caret))
        {
            self.at += 2;
            let mut digits = String::new();
            while let Some(Token::Sym(Symbol::Digit(d))) = self.peek() {
                digits.push(char::from(b'0' + d));
                self.at += 1;
            }
            if digits.is_empty() {
                return Err(self.error(&["digit"]));
            }
            count = digits.parse().expect("decimal digits");
        } else {
            while self.peek() == Some(&Token::Sym(Symbol::Succ)) {
                count += 1u32;
                self.at += 1;
            }
        }
        let pos = self.pos();
        let base = match self.peek() {
            Some(Token::Sym(Symbol::Zero)) => Base::Zero,
            Some(Token::Sym(Symbol::Var(v))) => {
                if v.type_level() != 1 {
                    return Err(SyntaxError::Type {
                        pos,
                        message: format!("successor applied to type-{} variable {v}", v.type_level()),
                    });
                }
                Base::Var(*v)
            }
            _ => return Err(self.error(&["'0'", "type-1 variable", "'f'"])),
        };
        self.at += 1;
        Ok(Term1::new(count, base).expect("base checked"))
    }
}
