//! The levels sigma_1, sigma_2, ... of an interpretation.
//!
//! Level 1 is a list of domain elements. An element of level n >= 2 is a
//! subset of level n-1, stored as a bitmask over the *positions* of level
//! n-1; level n is therefore exactly the integers `0 .. 2^|sigma_{n-1}|` and
//! set equality is integer equality.

use serde::{Deserialize, Serialize};

use super::{Interpretation, SemanticsError};

/// An element of some level: a domain element for level 1, a position mask
/// for higher levels.
pub type Value = u64;

/// Largest accepted level-size cap; keeps every mask within 64 bits.
pub const MAX_SIGMA_CAP: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Highest variable type that may be evaluated.
    pub max_type: u8,
    /// Largest admissible level cardinality.
    pub sigma_cap: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_type: 4,
            sigma_cap: 1 << 16,
        }
    }
}

impl Bounds {
    pub fn new(max_type: u8, sigma_cap: u64) -> Self {
        Bounds {
            max_type,
            sigma_cap: sigma_cap.min(MAX_SIGMA_CAP),
        }
    }
}

/// Level sizes and the level-1 layout of one interpretation.
#[derive(Debug, Clone)]
pub struct SigmaHierarchy {
    level1: Vec<u32>,
    /// Domain element -> position in level 1, `u32::MAX` when absent.
    pos1: Vec<u32>,
    /// `sizes[n-1]` is `|sigma_n|` or the log2 size when it exceeds the cap.
    sizes: Vec<Result<u64, u64>>,
    bounds: Bounds,
}

impl SigmaHierarchy {
    pub fn new(m: &Interpretation, bounds: Bounds) -> Self {
        let level1 = m.individuals();
        let mut pos1 = vec![u32::MAX; m.domain_size()];
        for (i, &d) in level1.iter().enumerate() {
            pos1[d as usize] = i as u32;
        }
        let mut sizes = Vec::with_capacity(bounds.max_type as usize);
        let mut prev: Result<u64, u64> = Ok(level1.len() as u64);
        sizes.push(prev);
        for _ in 2..=bounds.max_type {
            prev = match prev {
                Ok(s) if s < 64 && (1u64 << s) <= bounds.sigma_cap => Ok(1u64 << s),
                Ok(s) => Err(s),
                Err(_) => Err(u64::MAX),
            };
            sizes.push(prev);
        }
        SigmaHierarchy {
            level1,
            pos1,
            sizes,
            bounds,
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn level1(&self) -> &[u32] {
        &self.level1
    }

    /// `|sigma_n|`, or the error explaining why it is out of reach.
    pub fn size(&self, n: u8) -> Result<u64, SemanticsError> {
        if n == 0 || n > self.bounds.max_type {
            return Err(SemanticsError::TypeAboveMax {
                ty: n,
                max: self.bounds.max_type,
            });
        }
        self.sizes[n as usize - 1].map_err(|exponent| SemanticsError::SigmaCap {
            level: n,
            exponent,
            cap: self.bounds.sigma_cap,
        })
    }

    pub fn contains(&self, n: u8, v: Value) -> Result<bool, SemanticsError> {
        let size = self.size(n)?;
        Ok(if n == 1 {
            v < self.pos1.len() as u64 && self.pos1[v as usize] != u32::MAX
        } else {
            v < size
        })
    }

    pub fn level(&self, n: u8) -> Result<SigmaLevel, SemanticsError> {
        let size = self.size(n)?;
        Ok(if n == 1 {
            SigmaLevel::Individuals(self.level1.clone())
        } else {
            SigmaLevel::Sets { level: n, count: size }
        })
    }

    /// Whether `member` (level n-1) belongs to `set` (level n).
    pub fn member(&self, n: u8, member: Value, set: Value) -> bool {
        let pos = if n == 2 {
            self.pos1.get(member as usize).copied().unwrap_or(u32::MAX) as u64
        } else {
            member
        };
        pos < 64 && (set >> pos) & 1 == 1
    }

    /// Nested-set rendering of an element of level n.
    pub fn to_repr(&self, n: u8, v: Value) -> ValueRepr {
        if n == 1 {
            return ValueRepr::Individual(v as u32);
        }
        let members = (0..64u64)
            .filter(|&j| (v >> j) & 1 == 1)
            .map(|j| {
                if n == 2 {
                    ValueRepr::Individual(self.level1[j as usize])
                } else {
                    self.to_repr(n - 1, j)
                }
            })
            .collect();
        ValueRepr::Set(members)
    }

    /// Inverse of [`to_repr`](Self::to_repr); fails when the nested set is
    /// not an element of level n.
    pub fn from_repr(&self, n: u8, repr: &ValueRepr) -> Result<Value, String> {
        self.size(n).map_err(|e| e.to_string())?;
        match (n, repr) {
            (1, ValueRepr::Individual(d)) => {
                if self.contains(1, u64::from(*d)).unwrap_or(false) {
                    Ok(u64::from(*d))
                } else {
                    Err(format!("individual {d} is not in sigma_1"))
                }
            }
            (1, ValueRepr::Set(_)) => Err("sigma_1 holds individuals, not sets".into()),
            (_, ValueRepr::Individual(d)) => Err(format!("sigma_{n} holds sets, found individual {d}")),
            (_, ValueRepr::Set(members)) => {
                let mut mask = 0u64;
                for m in members {
                    let inner = self.from_repr(n - 1, m)?;
                    let pos = if n == 2 { u64::from(self.pos1[inner as usize]) } else { inner };
                    mask |= 1 << pos;
                }
                Ok(mask)
            }
        }
    }
}

/// Elements of one level in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaLevel {
    Individuals(Vec<u32>),
    Sets { level: u8, count: u64 },
}

impl SigmaLevel {
    pub fn len(&self) -> u64 {
        match self {
            SigmaLevel::Individuals(v) => v.len() as u64,
            SigmaLevel::Sets { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Value> + '_> {
        match self {
            SigmaLevel::Individuals(v) => Box::new(v.iter().map(|&d| u64::from(d))),
            SigmaLevel::Sets { count, .. } => Box::new(0..*count),
        }
    }
}

/// Human- and JSON-facing form of a level element: an individual index or a
/// set of lower-level elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRepr {
    Individual(u32),
    Set(Vec<ValueRepr>),
}

impl std::fmt::Display for ValueRepr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValueRepr::Individual(d) => f.write_str(&super::element_label(*d)),
            ValueRepr::Set(ms) => {
                f.write_str("{")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// `sigma_n` of `m`; errors when n exceeds `bounds.max_type` or the level
/// would exceed the cap.
pub fn sigma_level(m: &Interpretation, n: u8, bounds: Bounds) -> Result<SigmaLevel, SemanticsError> {
    SigmaHierarchy::new(m, bounds).level(n)
}
