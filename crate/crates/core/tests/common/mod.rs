//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use symdyn::block::BlockMap;
use symdyn::moves::is_nonoverlapping;
use symdyn::{Alphabet, MovePipeline, PeriodicOrbit, Sft, Symbol, Word};

/// Every word of length `n` over the alphabet.
pub fn all_words(alphabet: &[Symbol], n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| alphabet.iter().map(move |s| w.pushed(s)))
            .collect();
    }
    out
}

fn ends_with_forbidden(w: &[Symbol], forbidden: &BTreeSet<Word>) -> bool {
    forbidden
        .iter()
        .any(|f| f.len() <= w.len() && w[w.len() - f.len()..] == *f.symbols())
}

/// `B_n(X_F)` for `n = 0..=n_max`, by brute force. A word belongs to the
/// language iff it sits in the middle of a locally admissible word with
/// `pad` symbols on each side; `pad` exceeds the number of `M`-words plus
/// `M`, so both sides reach a cycle of the `M`-step graph. By convention
/// `B_0 = {ε}`, even for the empty shift.
pub fn language_oracle(x: &Sft, n_max: usize) -> Vec<BTreeSet<Word>> {
    let alphabet = x.alphabet().symbols();
    let forbidden = x.forbidden().clone();
    let m = forbidden.iter().map(Word::len).max().unwrap_or(1).saturating_sub(1);
    let pad = alphabet.len().pow(m as u32) + m + 1;
    let total = n_max + 2 * pad;
    let mut out = vec![BTreeSet::new(); n_max + 1];
    out[0].insert(Word::empty());
    let mut stack: Vec<Vec<Symbol>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == total {
            for (n, set) in out.iter_mut().enumerate() {
                set.insert(Word::from_symbols(w[pad..pad + n].iter().cloned()));
            }
            continue;
        }
        for s in &alphabet {
            let mut next = w.clone();
            next.push(s.clone());
            if !ends_with_forbidden(&next, &forbidden) {
                stack.push(next);
            }
        }
    }
    out
}

/// A random SFT over `k` one-letter symbols starting at `a`.
pub fn random_sft(rng: &mut StdRng, k: usize, max_forbidden: usize, max_len: usize) -> Sft {
    let letters: String = (b'a'..b'a' + k as u8).map(char::from).collect();
    let alphabet = Alphabet::from_chars(&letters);
    let symbols = alphabet.symbols();
    let count = rng.gen_range(0..=max_forbidden);
    let forbidden: BTreeSet<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| symbols.choose(rng).unwrap().clone()).collect()
        })
        .collect();
    Sft::new(alphabet, forbidden).unwrap()
}

/// Determinant by permutation expansion.
pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i128>], total: &mut i128) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][perm[i]]).product();
        *total += if inversions % 2 == 0 { prod } else { -prod };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// All `k`-element subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all `k × k` minors.
pub fn minor_gcd(m: &[Vec<i128>], k: usize) -> i128 {
    let (r, c) = (m.len(), m[0].len());
    let mut g = 0;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, leibniz_det(&sub));
        }
    }
    g
}

pub fn primes(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// One-block renaming of every symbol of the pipeline target.
pub fn rename_recode(p: &MovePipeline, tag: usize) -> (BlockMap, BlockMap) {
    let syms = p.target().alphabet().symbols();
    let pairs: Vec<(Symbol, Symbol)> = syms
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), Symbol::new(format!("r{tag}_{i}"))))
        .collect();
    let forward = BlockMap::one_block(pairs.iter().cloned());
    let inverse = BlockMap::one_block(pairs.into_iter().map(|(a, b)| (b, a)));
    (forward, inverse)
}

/// A random pipeline of one to four moves on a random non-empty SFT.
pub fn random_pipeline(rng: &mut StdRng) -> MovePipeline {
    let x = loop {
        let k = rng.gen_range(2..=3);
        let x = random_sft(rng, k, 2, 3);
        if !x.is_empty() {
            break x;
        }
    };
    random_moves(rng, x)
}

/// Appends one to four random moves to a pipeline starting at `x`.
pub fn random_moves(rng: &mut StdRng, x: Sft) -> MovePipeline {
    let mut p = MovePipeline::new(x);
    let wanted = rng.gen_range(1..=4);
    for attempt in 0..40 {
        if p.moves().len() == wanted {
            break;
        }
        let syms = p.target().alphabet().symbols();
        let _: Result<(), ()> = match rng.gen_range(0..4) {
            0 => p.expand(syms.choose(rng).unwrap()).map(drop).map_err(drop),
            1 => {
                let mut pairs: Vec<(Symbol, Symbol)> = syms
                    .iter()
                    .flat_map(|a| syms.iter().map(move |d| (a.clone(), d.clone())))
                    .filter(|(a, d)| a != d)
                    .collect();
                pairs.shuffle(rng);
                pairs.iter().find_map(|(a, d)| p.contract(a, d).ok()).ok_or(())
            }
            2 => {
                let words: Vec<Word> = p
                    .target()
                    .enumerate_language(2)
                    .into_iter()
                    .filter(is_nonoverlapping)
                    .collect();
                match words.choose(rng) {
                    Some(w) => p.contract_word(w).map(drop).map_err(drop),
                    None => Err(()),
                }
            }
            _ => {
                let (f, i) = rename_recode(&p, attempt);
                p.recode(f, i).map_err(drop)
            }
        };
    }
    p
}

/// A random non-repeating `u` of length at most 5 with `u^∞` in the shift.
pub fn random_cycle(rng: &mut StdRng, x: &Sft) -> Option<Word> {
    let syms = x.alphabet().symbols();
    let mut candidates = Vec::new();
    for len in 1..=5 {
        for w in all_words(&syms, len) {
            if w.is_non_repeating() && x.contains_orbit(&PeriodicOrbit::new(&w).unwrap()).unwrap_or(false) {
                candidates.push(w);
            }
        }
    }
    candidates.choose(rng).cloned()
}

fn admissible_at_ends(w: &VecDeque<Symbol>, forbidden: &BTreeSet<Word>) -> bool {
    forbidden.iter().all(|f| {
        let k = f.len();
        k > w.len()
            || (!w.iter().take(k).eq(f.symbols().iter()) && !w.iter().skip(w.len() - k).eq(f.symbols().iter()))
    })
}

/// `w ∈ B(X_F)` iff `w` is locally admissible and extends by `pad` admissible
/// symbols on both sides at once. Extensions are deduplicated by their outer
/// `M`-words, which is all a further extension can see.
pub fn extends_both_ways(x: &Sft, w: &Word) -> bool {
    let forbidden = x.forbidden();
    let m = forbidden.iter().map(Word::len).max().unwrap_or(1).saturating_sub(1);
    let alphabet = x.alphabet().symbols();
    if forbidden.iter().any(|f| w.has_factor(f)) {
        return false;
    }
    let pad = alphabet.len().pow(m as u32) + m + 1;
    let mut level: Vec<VecDeque<Symbol>> = vec![w.symbols().iter().cloned().collect()];
    for _ in 0..pad {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for v in &level {
            for l in &alphabet {
                for r in &alphabet {
                    let mut e = v.clone();
                    e.push_front(l.clone());
                    e.push_back(r.clone());
                    if !admissible_at_ends(&e, forbidden) {
                        continue;
                    }
                    let key: Vec<Symbol> = if e.len() < 2 * m {
                        e.iter().cloned().collect()
                    } else {
                        e.iter().take(m).chain(e.iter().skip(e.len() - m)).cloned().collect()
                    };
                    if seen.insert(key) {
                        next.push(e);
                    }
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        level = next;
    }
    true
}

/// `B_n(X)` for `n = 0..=n_max`, grown letter by letter through [`extends_both_ways`].
pub fn language_by_extension(x: &Sft, n_max: usize) -> Vec<BTreeSet<Word>> {
    let alphabet = x.alphabet().symbols();
    let m = x.forbidden().iter().map(Word::len).max().unwrap_or(1).saturating_sub(1);
    // once |w| ≥ M only the outer M-words matter, given local admissibility
    let mut memo: HashMap<(Word, Word), bool> = HashMap::new();
    let mut member = |w: &Word| {
        if w.len() < m {
            return extends_both_ways(x, w);
        }
        if x.forbidden().iter().any(|f| w.has_factor(f)) {
            return false;
        }
        *memo
            .entry((w.prefix(m), w.suffix(m)))
            .or_insert_with(|| extends_both_ways(x, w))
    };
    let mut out = vec![BTreeSet::from([Word::empty()])];
    for n in 1..=n_max {
        let level: BTreeSet<Word> = out[n - 1]
            .iter()
            .flat_map(|w| alphabet.iter().map(move |s| w.pushed(s)))
            .filter(|w| member(w))
            .collect();
        out.push(level);
    }
    out
}
