//! Goedel numbering of symbol sequences by prime-power packing.
//!
//! Symbol codes:
//!
//! | symbol | code |
//! |--------|------|
//! | `0` | 1 |
//! | `f` | 3 |
//! | `~` | 5 |
//! | `v` | 7 |
//! | `P` | 9 |
//! | `(` | 11 |
//! | `)` | 13 |
//! | `^` (compact numeral block) | 15 |
//! | digit `d` inside a block | 2d + 2 |
//! | k-th variable of type n | p_k^n, p_k the k-th prime above 13 |
//!
//! A sequence `c_1 ... c_k` is coded as `2^c_1 * 3^c_2 * ... * prime(k)^c_k`.

pub mod primes;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::syntax::{parse_tokens, symbols, Formula, Symbol, SyntaxError, Token, Variable};
use primes::{nth_prime, prime_index};

/// Codes whose binary size would exceed this many bits are refused.
pub const MAX_CODE_BITS: u64 = 1 << 24;

/// Number of primes not above 13; variable primes start after them.
const RESERVED_PRIMES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberingError {
    #[error("cannot code an empty sequence")]
    Empty,
    #[error("{0} is not a sequence code (codes are >= 2)")]
    NotACode(String),
    #[error("not a sequence code: prime #{position} is absent while a later prime divides the code")]
    Gap { position: usize },
    #[error("unknown symbol code {code} at position {position}")]
    UnknownSymbol { position: usize, code: String },
    #[error("member {position} of the sequence is {value}, which is not a code")]
    BadMember { position: usize, value: String },
    #[error("code would need about {bits} bits, above the limit of {MAX_CODE_BITS}")]
    TooLarge { bits: u64 },
}

/// A Goedel number: an arbitrary-precision natural number >= 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelCode(BigUint);

impl GodelCode {
    pub fn new(value: BigUint) -> Result<Self, NumberingError> {
        if value < BigUint::from(2u32) {
            return Err(NumberingError::NotACode(value.to_string()));
        }
        Ok(GodelCode(value))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }
}

impl From<u32> for GodelCode {
    /// Panics below 2.
    fn from(v: u32) -> Self {
        GodelCode::new(BigUint::from(v)).expect("codes are >= 2")
    }
}

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for GodelCode {
    type Err = NumberingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumberingError::NotACode(format!("{s:?}")));
        }
        // 10 > 2^3, so three bits per digit bounds the size from below.
        if s.len() as u64 * 3 > MAX_CODE_BITS {
            return Err(NumberingError::TooLarge {
                bits: s.len() as u64 * 3,
            });
        }
        GodelCode::new(s.parse().expect("decimal digits"))
    }
}

impl Serialize for GodelCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GodelCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The code of a single symbol.
pub fn symbol_code(s: Symbol) -> Result<u64, NumberingError> {
    Ok(match s {
        Symbol::Zero => 1,
        Symbol::Succ => 3,
        Symbol::Not => 5,
        Symbol::Or => 7,
        Symbol::Pi => 9,
        Symbol::LParen => 11,
        Symbol::RParen => 13,
        Symbol::Caret => 15,
        Symbol::Digit(d) => 2 * u64::from(d) + 2,
        Symbol::Var(v) => {
            let too_large = || NumberingError::TooLarge { bits: u64::MAX };
            let p = nth_prime(v.index() as usize + RESERVED_PRIMES).ok_or_else(too_large)?;
            p.checked_pow(u32::from(v.type_level())).ok_or_else(too_large)?
        }
    })
}

/// Inverse of [`symbol_code`]; `None` for codes that name no symbol.
pub fn symbol_from_code(code: u64) -> Option<Symbol> {
    Some(match code {
        1 => Symbol::Zero,
        3 => Symbol::Succ,
        5 => Symbol::Not,
        7 => Symbol::Or,
        9 => Symbol::Pi,
        11 => Symbol::LParen,
        13 => Symbol::RParen,
        15 => Symbol::Caret,
        c if c % 2 == 0 && (2..=20).contains(&c) => Symbol::Digit((c / 2 - 1) as u8),
        c if c >= 17 => {
            // c = p^n for a prime p > 13; the root is unique if it exists.
            (1..=64u32).find_map(|n| {
                let root = c.nth_root(n);
                if root < 17 || root.checked_pow(n) != Some(c) {
                    return None;
                }
                let k = prime_index(root)?.checked_sub(RESERVED_PRIMES)?;
                let ty = u8::try_from(n).ok()?;
                Variable::try_new(ty, u32::try_from(k).ok()?).map(Symbol::Var)
            })?
        }
        _ => return None,
    })
}

fn estimate_bits(exponents: &[BigUint]) -> Result<u64, NumberingError> {
    let mut bits = 0f64;
    for (i, e) in exponents.iter().enumerate() {
        let p = nth_prime(i + 1).ok_or(NumberingError::TooLarge { bits: u64::MAX })?;
        let e = e.to_f64().unwrap_or(f64::INFINITY);
        bits += e * (p as f64).log2();
        if bits > MAX_CODE_BITS as f64 {
            return Err(NumberingError::TooLarge {
                bits: bits.min(u64::MAX as f64) as u64,
            });
        }
    }
    Ok(bits as u64)
}

/// `prime(1)^e_1 * ... * prime(k)^e_k`, multiplied as a balanced product tree.
fn pack(exponents: &[BigUint]) -> Result<BigUint, NumberingError> {
    if exponents.is_empty() {
        return Err(NumberingError::Empty);
    }
    estimate_bits(exponents)?;
    let mut layer: Vec<BigUint> = exponents
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = BigUint::from(nth_prime(i + 1).expect("checked by estimate"));
            // The estimate bounds every exponent well below u32::MAX.
            p.pow(e.to_u32().expect("bounded exponent"))
        })
        .collect();
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    Ok(layer.pop().unwrap())
}

/// Exponent of `p` in `n`, dividing it out of `n`.
fn strip(n: &mut BigUint, p: u64) -> u64 {
    if p == 2 {
        let tz = n.trailing_zeros().unwrap_or(0);
        *n >>= tz;
        return tz;
    }
    let mut e = 0;
    // Largest power of p that fits in a u64, to divide in fewer passes.
    let (mut chunk, mut m) = (p, 1u64);
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        m += 1;
    }
    for (divisor, step) in [(chunk, m), (p, 1)] {
        let d = BigUint::from(divisor);
        loop {
            let (q, r) = n.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            *n = q;
            e += step;
        }
    }
    e
}

/// Exponent list of a sequence code.
fn unpack(code: &GodelCode) -> Result<Vec<u64>, NumberingError> {
    if code.0.bits() > MAX_CODE_BITS {
        return Err(NumberingError::TooLarge { bits: code.0.bits() });
    }
    let mut rest = code.0.clone();
    let mut out = Vec::new();
    while !rest.is_one() {
        let position = out.len() + 1;
        let p = nth_prime(position).ok_or(NumberingError::Gap { position })?;
        let e = strip(&mut rest, p);
        if e == 0 {
            return Err(NumberingError::Gap { position });
        }
        out.push(e);
    }
    Ok(out)
}

/// Code of a raw symbol sequence.
pub fn encode_symbols(seq: &[Symbol]) -> Result<GodelCode, NumberingError> {
    let exps = seq
        .iter()
        .map(|s| symbol_code(*s).map(BigUint::from))
        .collect::<Result<Vec<_>, _>>()?;
    pack(&exps).map(GodelCode)
}

/// Code of the canonical symbol sequence of `phi`.
///
/// Fails only when the code would be too large to materialize.
pub fn encode(phi: &Formula) -> Result<GodelCode, NumberingError> {
    encode_symbols(&symbols(phi))
}

/// Symbol sequence of a code.
pub fn decode_symbols(code: &GodelCode) -> Result<Vec<Symbol>, NumberingError> {
    unpack(code)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            symbol_from_code(c).ok_or(NumberingError::UnknownSymbol {
                position: i + 1,
                code: c.to_string(),
            })
        })
        .collect()
}

/// Result of decoding: the symbol sequence, and the formula when it parses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Formula {
        symbols: Vec<Symbol>,
        formula: Formula,
    },
    IllFormed {
        symbols: Vec<Symbol>,
        error: SyntaxError,
    },
}

impl Decoded {
    pub fn symbols(&self) -> &[Symbol] {
        match self {
            Decoded::Formula { symbols, .. } | Decoded::IllFormed { symbols, .. } => symbols,
        }
    }

    pub fn formula(&self) -> Option<&Formula> {
        match self {
            Decoded::Formula { formula, .. } => Some(formula),
            Decoded::IllFormed { .. } => None,
        }
    }
}

/// Decodes a code to symbols and tries to parse them as a formula. Parse
/// error positions are 0-based symbol indices.
pub fn decode(code: &GodelCode) -> Result<Decoded, NumberingError> {
    let symbols = decode_symbols(code)?;
    let tokens: Vec<(Token, usize)> = symbols
        .iter()
        .enumerate()
        .map(|(i, s)| (Token::Sym(*s), i))
        .collect();
    Ok(match parse_tokens(&tokens) {
        Ok(formula) => Decoded::Formula { symbols, formula },
        Err(error) => Decoded::IllFormed { symbols, error },
    })
}

/// Packs a list of codes, e.g. the lines of a proof, into one code.
pub fn encode_sequence(codes: &[GodelCode]) -> Result<GodelCode, NumberingError> {
    let exps: Vec<BigUint> = codes.iter().map(|c| c.0.clone()).collect();
    pack(&exps).map(GodelCode)
}

/// Inverse of [`encode_sequence`].
pub fn decode_sequence(code: &GodelCode) -> Result<Vec<GodelCode>, NumberingError> {
    unpack(code)?
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            GodelCode::new(BigUint::from(e)).map_err(|_| NumberingError::BadMember {
                position: i + 1,
                value: e.to_string(),
            })
        })
        .collect()
}
