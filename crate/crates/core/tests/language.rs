mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use symdyn::{PeriodicOrbit, Sft, Symbol, Word};

#[test]
fn extension_oracle_agrees_with_window_oracle() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..30 {
        let x = common::random_sft(&mut rng, 2, 3, 3);
        assert_eq!(common::language_by_extension(&x, 5), common::language_oracle(&x, 5), "{x:?}");
    }
}

#[test]
fn enumerate_language_matches_oracle_on_three_letters() {
    let mut rng = StdRng::seed_from_u64(32);
    for case in 0..40 {
        let x = common::random_sft(&mut rng, 3, 5, 3);
        let oracle = common::language_by_extension(&x, 8);
        for (n, expected) in oracle.iter().enumerate() {
            assert_eq!(&x.enumerate_language(n), expected, "case {case}, n = {n}, {x:?}");
        }
    }
}

#[test]
fn to_m_step_preserves_language() {
    let mut rng = StdRng::seed_from_u64(33);
    for _ in 0..60 {
        let x = common::random_sft(&mut rng, 3, 4, 3);
        let y = x.to_m_step();
        assert!(y.is_m_step_form());
        for n in 0..=2 * (x.step() + 1) {
            assert_eq!(x.enumerate_language(n), y.enumerate_language(n), "n = {n}, {x:?}");
        }
    }
}

/// Shortest gluing word length from `u` to `v`, searched breadth first over
/// extensions of `u` that are deduplicated by their last `M` symbols.
fn gluing_length(x: &Sft, u: &Word, v: &Word, limit: usize) -> Option<usize> {
    let m = x.step();
    let syms = x.alphabet().symbols();
    let key = |w: &Word| if w.len() < m { w.clone() } else { w.suffix(m) };
    let mut seen = HashSet::from([key(u)]);
    let mut queue = VecDeque::from([(u.clone(), 0)]);
    while let Some((w, d)) = queue.pop_front() {
        if x.contains_word(&w.concat(v)).unwrap() {
            return Some(d);
        }
        if d == limit {
            continue;
        }
        for s in &syms {
            let next = w.pushed(s);
            if x.contains_word(&next).unwrap() && seen.insert(key(&next)) {
                queue.push_back((next, d + 1));
            }
        }
    }
    None
}

#[test]
fn irreducible_shifts_glue_with_short_words() {
    let mut rng = StdRng::seed_from_u64(34);
    let mut checked = 0;
    while checked < 25 {
        let x = common::random_sft(&mut rng, 3, 4, 3);
        if x.is_empty() || !x.is_irreducible() {
            continue;
        }
        let limit = x.edge_shift().graph.vertex_count() * (x.step() + 1);
        for k in 1..=4 {
            let words = x.enumerate_language(k);
            for u in &words {
                for v in &words {
                    assert!(
                        gluing_length(&x, u, v, limit).is_some(),
                        "no gluing word of length ≤ {limit} for {u}·?·{v} in {x:?}"
                    );
                }
            }
        }
        checked += 1;
    }
}

#[test]
fn empty_shift_has_only_the_empty_word() {
    let x = Sft::from_chars("ab", &["a", "b"]).unwrap();
    assert!(x.is_empty());
    assert_eq!(x.enumerate_language(0), BTreeSet::from([Word::empty()]));
    assert!(x.enumerate_language(3).is_empty());
    let stranded = Sft::from_chars("ab", &["aa", "bb", "ab"]).unwrap();
    assert!(stranded.is_empty(), "`ba` is admissible but sits in no point");
}

fn small_sft() -> impl Strategy<Value = Sft> {
    (2usize..=3, prop::collection::vec(prop::collection::vec(0u8..3, 1..=3), 0..=4)).prop_map(|(k, fs)| {
        let letters: String = (b'a'..b'a' + k as u8).map(char::from).collect();
        let forbidden: Vec<String> = fs
            .into_iter()
            .map(|f| f.into_iter().map(|c| char::from(b'a' + c % k as u8)).collect())
            .collect();
        let refs: Vec<&str> = forbidden.iter().map(String::as_str).collect();
        Sft::from_chars(&letters, &refs).unwrap()
    })
}

proptest! {
    #[test]
    fn language_is_factorial(x in small_sft(), n in 1usize..=6) {
        for w in x.enumerate_language(n) {
            for i in 0..=n {
                for j in i..=n {
                    prop_assert!(x.contains_word(&w.factor(i..j)).unwrap(), "{} inside {}", w.factor(i..j), w);
                }
            }
        }
    }

    #[test]
    fn rotations_share_a_canonical_orbit(cycle in prop::collection::vec(0u8..3, 1..=7)) {
        let w: Word = cycle.iter().map(|c| Symbol::new(char::from(b'a' + c).to_string())).collect();
        prop_assume!(w.is_non_repeating());
        let canonical = PeriodicOrbit::new(&w).unwrap();
        for k in 0..w.len() {
            prop_assert_eq!(&PeriodicOrbit::new(&w.rotate(k)).unwrap(), &canonical);
        }
        let least = (0..w.len()).map(|k| w.rotate(k)).min().unwrap();
        prop_assert_eq!(canonical.cycle(), &least);
    }
}
