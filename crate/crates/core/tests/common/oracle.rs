//! Reference implementations for cross-checking the library.
//!
//! The evaluator here works directly on nested sets and follows the four
//! satisfaction clauses one by one. It shares nothing with the library
//! evaluator beyond the formula tree itself.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use pzero::semantics::{Environment, Interpretation, Mode, SigmaHierarchy, ValueRepr};
use pzero::syntax::{Arg, Base, Formula, Term1, Variable};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OVal {
    Ind(u32),
    Set(BTreeSet<OVal>),
}

pub type OEnv = BTreeMap<Variable, OVal>;

/// A finite structure with its type levels spelled out as explicit sets.
pub struct Model {
    pub zero: u32,
    pub succ: Vec<u32>,
    pub numerals_only: bool,
    levels: Vec<Vec<OVal>>,
}

/// Every element reachable from `zero` by following `succ`.
pub fn reachable(zero: u32, succ: &[u32]) -> BTreeSet<u32> {
    let mut seen = BTreeSet::new();
    let mut d = zero;
    while seen.insert(d) {
        d = succ[d as usize];
    }
    seen
}

fn powerset(items: &[OVal]) -> Vec<OVal> {
    assert!(items.len() <= 16, "powerset of {} elements", items.len());
    (0u32..1 << items.len())
        .map(|mask| {
            OVal::Set(
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .collect(),
            )
        })
        .collect()
}

impl Model {
    pub fn new(zero: u32, succ: Vec<u32>, numerals_only: bool, max_type: u8) -> Model {
        let first: Vec<OVal> = if numerals_only {
            reachable(zero, &succ).into_iter().map(OVal::Ind).collect()
        } else {
            (0..succ.len() as u32).map(OVal::Ind).collect()
        };
        let mut levels = vec![first];
        for _ in 2..=max_type {
            let next = powerset(levels.last().unwrap());
            levels.push(next);
        }
        Model {
            zero,
            succ,
            numerals_only,
            levels,
        }
    }

    pub fn mode(&self) -> Mode {
        if self.numerals_only {
            Mode::P0
        } else {
            Mode::P
        }
    }

    pub fn interpretation(&self) -> Interpretation {
        Interpretation::new(self.zero, self.succ.clone(), self.mode()).expect("valid structure")
    }

    pub fn level(&self, n: u8) -> &[OVal] {
        &self.levels[n as usize - 1]
    }

    pub fn term(&self, env: &OEnv, t: &Term1) -> u32 {
        let mut d = match t.base() {
            Base::Zero => self.zero,
            Base::Var(v) => match env.get(&v) {
                Some(OVal::Ind(d)) => *d,
                other => panic!("{v} bound to {other:?}"),
            },
        };
        let mut steps = t.succ_count().clone();
        while steps > BigUint::ZERO {
            d = self.succ[d as usize];
            steps -= 1u32;
        }
        d
    }

    pub fn sat(&self, env: &OEnv, phi: &Formula) -> bool {
        match phi {
            Formula::Elem(atom) => {
                let member = match atom.arg() {
                    Arg::Term(t) => OVal::Ind(self.term(env, t)),
                    Arg::Var(v) => env[v].clone(),
                };
                match &env[&atom.head()] {
                    OVal::Set(s) => s.contains(&member),
                    OVal::Ind(_) => panic!("{} bound to an individual", atom.head()),
                }
            }
            Formula::Not(a) => !self.sat(env, a),
            Formula::Or(a, b) => self.sat(env, a) || self.sat(env, b),
            Formula::ForAll { var, body } => self.level(var.type_level()).iter().all(|x| {
                let mut inner = env.clone();
                inner.insert(*var, x.clone());
                self.sat(&inner, body)
            }),
        }
    }

    /// All assignments of level elements to `vars`.
    pub fn environments(&self, vars: &[Variable]) -> Vec<OEnv> {
        let mut out = vec![OEnv::new()];
        for v in vars {
            out = out
                .into_iter()
                .flat_map(|env| {
                    self.level(v.type_level()).iter().map(move |x| {
                        let mut e = env.clone();
                        e.insert(*v, x.clone());
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// One assignment to `vars`, chosen by consuming `pick` digit by digit.
    pub fn environment_at(&self, vars: &[Variable], mut pick: u64) -> OEnv {
        let mut env = OEnv::new();
        for v in vars {
            let level = self.level(v.type_level());
            env.insert(*v, level[(pick % level.len() as u64) as usize].clone());
            pick /= level.len() as u64;
        }
        env
    }

    /// True under every assignment to the free variables.
    pub fn valid(&self, phi: &Formula) -> bool {
        let vars: Vec<Variable> = phi.free_vars().into_iter().collect();
        self.environments(&vars).iter().all(|e| self.sat(e, phi))
    }
}

/// Every `(zero, succ)` pair over domains `{0..k}` with `1 <= k <= max_domain`.
pub fn structures(max_domain: u32) -> Vec<(u32, Vec<u32>)> {
    let mut out = Vec::new();
    for k in 1..=max_domain {
        for zero in 0..k {
            let mut succ = vec![0u32; k as usize];
            loop {
                out.push((zero, succ.clone()));
                // Odometer with the last position fastest.
                let mut i = succ.len();
                while i > 0 && succ[i - 1] == k - 1 {
                    succ[i - 1] = 0;
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                succ[i - 1] += 1;
            }
        }
    }
    out
}

pub fn to_repr(x: &OVal) -> ValueRepr {
    match x {
        OVal::Ind(d) => ValueRepr::Individual(*d),
        OVal::Set(s) => ValueRepr::Set(s.iter().map(to_repr).collect()),
    }
}

pub fn library_env(h: &SigmaHierarchy, env: &OEnv) -> Environment {
    let reprs: BTreeMap<Variable, ValueRepr> = env.iter().map(|(v, x)| (*v, to_repr(x))).collect();
    Environment::from_reprs(h, &reprs).expect("oracle values lie in the hierarchy")
}

/// Goedel number of canonical text, computed symbol by symbol from the
/// character table with primes found by trial division.
pub fn naive_code(text: &str) -> BigUint {
    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }
    fn prime(i: usize) -> u64 {
        (2..).filter(|&n| is_prime(n)).nth(i - 1).unwrap()
    }
    let letters = "xyzuwstrqp";
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut exps: Vec<BigUint> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let e = match c {
            '0' => 1u32,
            'f' => 3,
            '~' => 5,
            'v' => 7,
            'P' => 9,
            '(' => 11,
            ')' => 13,
            _ => {
                let index = letters.find(c).unwrap_or_else(|| panic!("unexpected {c:?} in {text}")) + 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let ty: u32 = chars[start..i].iter().collect::<String>().parse().unwrap();
                let p = (14..).filter(|&n| is_prime(n)).nth(index - 1).unwrap();
                exps.push(BigUint::from(p).pow(ty));
                continue;
            }
        };
        exps.push(BigUint::from(e));
    }
    exps.iter().enumerate().fold(BigUint::from(1u32), |acc, (k, e)| {
        let e: u32 = e.try_into().expect("small exponent");
        acc * BigUint::from(prime(k + 1)).pow(e)
    })
}
