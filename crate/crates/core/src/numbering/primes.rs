//! Process-wide prime table, extended on demand by re-sieving to a larger
//! limit. Readers share a lock; growth takes the write lock and only ever
//! appends.

use std::sync::RwLock;

static PRIMES: RwLock<Vec<u64>> = RwLock::new(Vec::new());

/// Primes are never sieved beyond this bound.
pub const SIEVE_LIMIT: u64 = 1 << 22;

fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn grow_until(done: impl Fn(&[u64]) -> bool) -> bool {
    {
        let table = PRIMES.read().unwrap();
        if done(&table) {
            return true;
        }
    }
    let mut table = PRIMES.write().unwrap();
    let mut limit = table.last().copied().unwrap_or(64).max(64);
    while !done(&table) {
        if limit >= SIEVE_LIMIT {
            return false;
        }
        limit = (limit * 2).min(SIEVE_LIMIT);
        *table = sieve(limit);
    }
    true
}

/// The `i`-th prime, 1-based: `nth_prime(1) == 2`.
pub fn nth_prime(i: usize) -> Option<u64> {
    assert!(i >= 1, "primes are 1-indexed");
    if !grow_until(|t| t.len() >= i) {
        return None;
    }
    PRIMES.read().unwrap().get(i - 1).copied()
}

/// 1-based position of `p` among the primes, if `p` is prime and within the
/// sieve limit.
pub fn prime_index(p: u64) -> Option<usize> {
    if !(2..=SIEVE_LIMIT).contains(&p) {
        return None;
    }
    if !grow_until(|t| t.last().is_some_and(|&last| last >= p)) {
        return None;
    }
    let table = PRIMES.read().unwrap();
    table.binary_search(&p).ok().map(|i| i + 1)
}
