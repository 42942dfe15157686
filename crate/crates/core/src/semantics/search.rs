//! Exhaustive bounded model search.
//!
//! Candidates are laid out in a fixed order: domain size ascending, then
//! zero ascending, then successor vectors in lexicographic order. Every
//! candidate has an index in that order, so workers can claim index ranges
//! independently and the merged result is sorted by index.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use super::eval::{compile_sentences, Evaluator};
use super::sigma::Bounds;
use super::{Interpretation, Mode, SemanticsError};
use crate::syntax::Formula;

/// Largest domain size `find_models` will enumerate (6^7 candidates).
pub const MAX_SEARCH_DOMAIN: usize = 6;

const CHUNK: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_domain: usize,
    pub mode: Mode,
    pub bounds: Bounds,
    /// Worker threads; 0 and 1 both mean single-threaded.
    pub workers: usize,
    /// Keep only one labeled representative per isomorphism class.
    pub canonical: bool,
}

impl SearchOptions {
    pub fn new(max_domain: usize, mode: Mode) -> Self {
        SearchOptions {
            max_domain,
            mode,
            bounds: Bounds::default(),
            workers: 1,
            canonical: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Satisfying interpretations in candidate order.
    pub models: Vec<Interpretation>,
    /// Number of candidates evaluated against the sentences.
    pub examined: u64,
    /// Number of candidates skipped by the canonical filter.
    pub skipped: u64,
}

/// Number of labeled candidates with domain size `1..=max_domain`.
pub fn candidate_count(max_domain: usize) -> u64 {
    (1..=max_domain as u32).map(|k| u64::from(k).pow(k + 1)).sum()
}

fn candidate_at(index: u64, max_domain: usize, mode: Mode) -> Option<Interpretation> {
    let mut rest = index;
    for k in 1..=max_domain as u32 {
        let maps = u64::from(k).pow(k);
        let block = maps * u64::from(k);
        if rest < block {
            let zero = (rest / maps) as u32;
            let mut code = rest % maps;
            let mut succ = vec![0u32; k as usize];
            for slot in succ.iter_mut().rev() {
                *slot = (code % u64::from(k)) as u32;
                code /= u64::from(k);
            }
            return Some(Interpretation::new(zero, succ, mode).expect("in range by construction"));
        }
        rest -= block;
    }
    None
}

/// All labeled candidates with domain size `1..=max_domain`, in candidate
/// order.
pub fn candidates(max_domain: usize, mode: Mode) -> impl Iterator<Item = Interpretation> {
    (0..candidate_count(max_domain)).map(move |i| candidate_at(i, max_domain, mode).unwrap())
}

/// Whether `m` is the representative of its isomorphism class: zero is
/// element 0 and no relabeling fixing 0 yields a lexicographically smaller
/// successor vector.
pub fn is_canonical(m: &Interpretation) -> bool {
    if m.zero() != 0 {
        return false;
    }
    let succ = m.succ();
    let mut perm: Vec<u32> = (0..succ.len() as u32).collect();
    !any_smaller(succ, &mut perm, 1, &mut vec![0; succ.len()])
}

/// Tries every arrangement of `perm[from..]`, reporting whether one
/// relabels `succ` to a lexicographically smaller vector.
fn any_smaller(succ: &[u32], perm: &mut [u32], from: usize, scratch: &mut [u32]) -> bool {
    if from == perm.len() {
        for (d, &s) in succ.iter().enumerate() {
            scratch[perm[d] as usize] = perm[s as usize];
        }
        return *scratch < *succ;
    }
    for i in from..perm.len() {
        perm.swap(from, i);
        let found = any_smaller(succ, perm, from + 1, scratch);
        perm.swap(from, i);
        if found {
            return true;
        }
    }
    false
}

/// Every interpretation with domain size at most `opts.max_domain` under
/// `opts.mode` that makes all `sentences` true.
pub fn find_models(sentences: &[Formula], opts: &SearchOptions) -> Result<SearchResult, SemanticsError> {
    if opts.max_domain == 0 || opts.max_domain > MAX_SEARCH_DOMAIN {
        return Err(SemanticsError::SearchBound(format!(
            "max_domain must be between 1 and {MAX_SEARCH_DOMAIN}, got {}",
            opts.max_domain
        )));
    }
    let programs = compile_sentences(sentences)?;
    if let Some(ty) = sentences.iter().map(Formula::max_type).max() {
        if ty > opts.bounds.max_type {
            return Err(SemanticsError::TypeAboveMax {
                ty,
                max: opts.bounds.max_type,
            });
        }
    }

    let total = candidate_count(opts.max_domain);
    let next = AtomicU64::new(0);
    let examined = AtomicU64::new(0);
    let hits: Mutex<Vec<(u64, Result<Interpretation, SemanticsError>)>> = Mutex::new(Vec::new());

    let work = || {
        let mut local = Vec::new();
        let mut seen = 0u64;
        loop {
            let start = next.fetch_add(CHUNK, Ordering::Relaxed);
            if start >= total {
                break;
            }
            for idx in start..(start + CHUNK).min(total) {
                let m = candidate_at(idx, opts.max_domain, opts.mode).unwrap();
                if opts.canonical && !is_canonical(&m) {
                    continue;
                }
                seen += 1;
                match Evaluator::new(&m, opts.bounds).is_model_of_programs(&programs) {
                    Ok(true) => local.push((idx, Ok(m))),
                    Ok(false) => {}
                    Err(e) => local.push((idx, Err(e))),
                }
            }
        }
        examined.fetch_add(seen, Ordering::Relaxed);
        hits.lock().unwrap().extend(local);
    };

    let workers = opts.workers.max(1);
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }

    let mut hits = hits.into_inner().unwrap();
    hits.sort_by_key(|(idx, _)| *idx);
    let models = hits
        .into_iter()
        .map(|(_, r)| r)
        .collect::<Result<Vec<_>, _>>()?;
    let examined = examined.into_inner();
    Ok(SearchResult {
        models,
        examined,
        skipped: total - examined,
    })
}
