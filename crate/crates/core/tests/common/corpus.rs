//! Formula corpus shared by the integration tests: a hand-written core plus
//! a seeded random extension. Every entry has depth at most 4 and mentions
//! no type above 3.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pzero::syntax::{numeral, parse, Base, Formula, Term1, Variable};

pub const MAX_DEPTH: usize = 4;
pub const SEED: u64 = 0x5eed_0001;
const GENERATED: usize = 60;

pub const HAND_WRITTEN: &[&str] = &[
    "x2(0)",
    "x2(x1)",
    "y2(fx1)",
    "x3(y2)",
    "~(x2(ffy1))",
    "(x2(x1)) v (y2(x1))",
    "x1 P (x2(x1))",
    "y2 P (y2(x1))",
    "y2 P (~(y2(fx1)))",
    "x2 P ((x2(x1)) v (~(x2(x1))))",
    "x2 P ((x2(x1)) v (~(x2(fx1))))",
    "~(x3 P (x3(y2)))",
    "x3 P ((x3(x2)) v (x3(y2)))",
    "x2 P (x3(x2))",
    "y2 P (x1 P (y2(x1)))",
    "x1 P (y1 P (x2(fy1)))",
    "(~(x2(0))) v (x2(f0))",
    "x1 P ((x2(x1)) v (~(x2(fx1))))",
    "~(y2 P (y2(ffx1)))",
    "(y2 P (y2(x1))) v (x2(x1))",
    "x3 P (x2 P (x3(x2)))",
    "y1 P ((x2(y1)) v (~(x2(x1))))",
    "~(~(x3(x2)))",
    "x2 P (~(x2(x1)))",
    "(x3(x2)) v (~(y2(fffx1)))",
    "x1 P (~(x2 P (x2(x1))))",
    "y2 P ((y2(0)) v (~(y2(x1))))",
];

/// The variables the generator draws from.
pub fn pool() -> [Variable; 5] {
    [
        Variable::new(1, 1),
        Variable::new(1, 2),
        Variable::new(2, 1),
        Variable::new(2, 2),
        Variable::new(3, 1),
    ]
}

pub fn random_term(rng: &mut impl Rng) -> Term1 {
    let succ = rng.gen_range(0u32..=2);
    match rng.gen_range(0..3) {
        0 => numeral(succ),
        k => Term1::new(succ, Base::Var(Variable::new(1, k))).unwrap(),
    }
}

pub fn random_atom(rng: &mut impl Rng) -> Formula {
    match rng.gen_range(0..3) {
        0 => Formula::apply(Variable::new(2, 1), random_term(rng)),
        1 => Formula::apply(Variable::new(2, 2), random_term(rng)),
        _ => Formula::apply_var(Variable::new(3, 1), Variable::new(2, rng.gen_range(1..=2))),
    }
}

/// A random formula of depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth <= 1 || rng.gen_bool(0.25) {
        return random_atom(rng);
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::or(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        _ => {
            let pool = pool();
            let v = pool[rng.gen_range(0..pool.len())];
            Formula::forall(v, random_formula(rng, depth - 1))
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hand-written formulas followed by distinct generated ones.
pub fn corpus() -> Vec<Formula> {
    let mut out: Vec<Formula> = HAND_WRITTEN
        .iter()
        .map(|s| parse(s).unwrap_or_else(|e| panic!("{s}: {e}")))
        .collect();
    let mut rng = rng(SEED);
    let target = out.len() + GENERATED;
    while out.len() < target {
        let phi = random_formula(&mut rng, MAX_DEPTH);
        if !out.contains(&phi) {
            out.push(phi);
        }
    }
    for phi in &out {
        assert!(phi.depth() <= MAX_DEPTH && phi.max_type() <= 3, "corpus bound: {}", pzero::print(phi));
    }
    out
}

/// Corpus formulas whose only free variable is `x1`.
pub fn one_free_individual() -> Vec<Formula> {
    let x1 = Variable::new(1, 1);
    corpus()
        .into_iter()
        .filter(|phi| phi.free_vars().into_iter().eq([x1]))
        .collect()
}
