//! Finite interpretations and satisfaction.
//!
//! An interpretation fixes a finite domain `{0, .., k-1}`, the individual
//! assigned to `0`, and the successor map assigned to `f`. The mode selects
//! the range of the type-1 variables: the whole domain (P) or the smallest
//! subset containing zero and closed under successor (P0). Higher levels are
//! full power sets of the level below.

mod eval;
mod search;
mod sigma;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Variable;

pub use eval::{
    eval_term1, is_model_of, satisfies, truth_value, Environment, Evaluator, Program, Truth,
};
pub use search::{
    candidate_count, candidates, find_models, is_canonical, SearchOptions, SearchResult,
    MAX_SEARCH_DOMAIN,
};
pub use sigma::{sigma_level, Bounds, SigmaHierarchy, SigmaLevel, Value, ValueRepr};

/// Largest domain an interpretation may have; level-2 sets are stored as
/// 64-bit masks over the domain.
pub const MAX_DOMAIN: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("invalid interpretation: {0}")]
    Interpretation(String),
    #[error("variable {0} is not bound by the environment")]
    Unbound(Variable),
    #[error("value {value} bound to {var} is not an element of sigma_{level}")]
    OutOfLevel {
        var: Variable,
        value: String,
        level: u8,
    },
    #[error("type {ty} exceeds the configured maximum type {max}")]
    TypeAboveMax { ty: u8, max: u8 },
    #[error("sigma_{level} would have 2^{exponent} elements, above the cap of {cap}")]
    SigmaCap { level: u8, exponent: u64, cap: u64 },
    #[error("{0} is not a sentence (it has free variables)")]
    OpenSentence(String),
    #[error("search bound {0}")]
    SearchBound(String),
}

/// Which reading of the type-1 variables is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "p0")]
    P0,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::P, Mode::P0];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::P => "P",
            Mode::P0 => "P0",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(Mode::P),
            "p0" => Ok(Mode::P0),
            other => Err(format!("unknown mode {other:?} (expected p or p0)")),
        }
    }
}

/// Domain `{0, .., size-1}` with a distinguished zero and a total successor
/// map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterpretation")]
pub struct Interpretation {
    domain: u32,
    zero: u32,
    succ: Vec<u32>,
    mode: Mode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterpretation {
    domain: u32,
    zero: u32,
    succ: Vec<u32>,
    mode: Mode,
}

impl TryFrom<RawInterpretation> for Interpretation {
    type Error = SemanticsError;

    fn try_from(raw: RawInterpretation) -> Result<Self, Self::Error> {
        Interpretation::new(raw.zero, raw.succ, raw.mode).and_then(|m| {
            if m.domain != raw.domain {
                Err(SemanticsError::Interpretation(format!(
                    "domain is {} but succ has {} entries",
                    raw.domain, m.domain
                )))
            } else {
                Ok(m)
            }
        })
    }
}

impl Interpretation {
    /// The domain size is the length of `succ`.
    pub fn new(zero: u32, succ: Vec<u32>, mode: Mode) -> Result<Self, SemanticsError> {
        let k = succ.len();
        if k == 0 || k > MAX_DOMAIN {
            return Err(SemanticsError::Interpretation(format!(
                "domain size must be between 1 and {MAX_DOMAIN}, got {k}"
            )));
        }
        if zero as usize >= k {
            return Err(SemanticsError::Interpretation(format!(
                "zero {zero} is outside the domain of size {k}"
            )));
        }
        if let Some(bad) = succ.iter().find(|&&s| s as usize >= k) {
            return Err(SemanticsError::Interpretation(format!(
                "successor value {bad} is outside the domain of size {k}"
            )));
        }
        Ok(Interpretation {
            domain: k as u32,
            zero,
            succ,
            mode,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn domain_size(&self) -> usize {
        self.domain as usize
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn succ(&self) -> &[u32] {
        &self.succ
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Interpretation {
        Interpretation {
            mode,
            ..self.clone()
        }
    }

    /// Smallest subset containing zero and closed under successor, in
    /// ascending order.
    pub fn closure(&self) -> Vec<u32> {
        let mut seen = vec![false; self.domain_size()];
        let mut d = self.zero;
        while !seen[d as usize] {
            seen[d as usize] = true;
            d = self.succ[d as usize];
        }
        (0..self.domain).filter(|&d| seen[d as usize]).collect()
    }

    /// Whether some element lies outside the closure of zero.
    pub fn has_junk(&self) -> bool {
        self.closure().len() < self.domain_size()
    }

    /// The range of the type-1 variables under this interpretation's mode.
    pub fn individuals(&self) -> Vec<u32> {
        match self.mode {
            Mode::P => (0..self.domain).collect(),
            Mode::P0 => self.closure(),
        }
    }
}

/// Display name of a domain element: `a`, `b`, ... then `e26`, `e27`, ...
pub fn element_label(d: u32) -> String {
    if d < 26 {
        char::from(b'a' + d as u8).to_string()
    } else {
        format!("e{d}")
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.domain).map(element_label).collect();
        let succ: Vec<String> = self.succ.iter().map(|&s| element_label(s)).collect();
        write!(
            f,
            "D={{{}}} zero={} succ=[{}] mode={}",
            labels.join(","),
            element_label(self.zero),
            succ.join(","),
            self.mode
        )
    }
}
