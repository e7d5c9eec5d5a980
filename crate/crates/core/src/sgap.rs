//! S-gap shifts: binary shifts whose runs of `0` between consecutive `1`s
//! have lengths in a set `S ⊆ ℕ₀`. Classification by type, a minimal form
//! for eventually periodic gap sets, and flow-equivalence decisions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::LabeledGraph;
use crate::word::{Symbol, Word};

/// A gap set, described exactly or by a finite sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SGapSet {
    Finite(BTreeSet<u64>),
    /// `R ∪ (T + Nℕ₀)`.
    EventuallyPeriodic {
        r: BTreeSet<u64>,
        t: BTreeSet<u64>,
        n: u64,
    },
    /// Exactly the members of `S` that are at most `bound`.
    Sampled { members: BTreeSet<u64>, bound: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftType {
    FiniteType,
    StrictlySofic,
    /// No eventually periodic pattern fits the sample.
    NotEventuallyPeriodicUpToBound(u64),
}

/// A complete representative of the invariants used to separate flow classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FeTag {
    /// Flow equivalent to the full shift on `k` symbols.
    FullShift(usize),
    /// Strictly sofic with `k = |T|`, period `n` and `T` normalized up to translation mod `n`.
    Sofic { k: usize, n: u64, t: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    FullShift { k: usize },
    /// Removing `n` elements from each set leaves `S' ⊆ S₁` and `R' ⊆ S₂`
    /// with `S' + r = R'`.
    CofiniteTranslation { n: u64, r: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeVerdict {
    Equivalent(Witness),
    NotEquivalent(String),
    NotEquivalentUpTo(u64),
    UnknownUpTo(u64),
}

fn validate_nonempty(s: &BTreeSet<u64>, what: &str) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Invalid(format!("{what} must be non-empty")));
    }
    Ok(())
}

impl SGapSet {
    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let s: BTreeSet<u64> = elements.into_iter().collect();
        validate_nonempty(&s, "a finite gap set")?;
        Ok(SGapSet::Finite(s))
    }

    pub fn eventually_periodic(
        r: impl IntoIterator<Item = u64>,
        t: impl IntoIterator<Item = u64>,
        n: u64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("period N must be at least 1".into()));
        }
        let r: BTreeSet<u64> = r.into_iter().collect();
        let t: BTreeSet<u64> = t.into_iter().collect();
        if r.is_empty() && t.is_empty() {
            return Err(Error::Invalid("the gap set is empty".into()));
        }
        Ok(SGapSet::EventuallyPeriodic { r, t, n })
    }

    /// Members must be strictly increasing and at most `bound`.
    pub fn sampled(members: &[u64], bound: u64) -> Result<Self> {
        if let Some(i) = members.windows(2).position(|p| p[0] >= p[1]) {
            return Err(Error::Invalid(format!(
                "members must be strictly increasing; entry {} ({}) follows {}",
                i + 1,
                members[i + 1],
                members[i]
            )));
        }
        if let Some(&m) = members.iter().find(|&&m| m > bound) {
            return Err(Error::Invalid(format!("member {m} exceeds the bound {bound}")));
        }
        Ok(SGapSet::Sampled {
            members: members.iter().copied().collect(),
            bound,
        })
    }

    /// Membership of `q`, or `None` beyond the bound of a sample.
    pub fn contains(&self, q: u64) -> Option<bool> {
        match self {
            SGapSet::Finite(s) => Some(s.contains(&q)),
            SGapSet::EventuallyPeriodic { r, t, n } => {
                Some(r.contains(&q) || t.iter().any(|&ti| q >= ti && (q - ti) % n == 0))
            }
            SGapSet::Sampled { members, bound } => (q <= *bound).then(|| members.contains(&q)),
        }
    }

    /// Largest `q` for which membership is known.
    pub fn known_up_to(&self) -> Option<u64> {
        match self {
            SGapSet::Sampled { bound, .. } => Some(*bound),
            _ => None,
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, SGapSet::Sampled { .. })
    }

    /// Finite sets and eventually periodic sets whose tail is empty.
    pub fn finite_elements(&self) -> Option<BTreeSet<u64>> {
        match self {
            SGapSet::Finite(s) => Some(s.clone()),
            SGapSet::EventuallyPeriodic { r, t, .. } if t.is_empty() => Some(r.clone()),
            _ => None,
        }
    }

    /// A right-resolving presentation: vertex `j` counts the `0`s read since
    /// the last `1`; long runs cycle through the periodic tail.
    pub fn presentation(&self) -> Result<LabeledGraph> {
        let (len, back) = match self {
            SGapSet::Sampled { .. } => {
                return Err(Error::Unsupported("sampled gap sets have no finite presentation".into()))
            }
            SGapSet::Finite(s) => (s.iter().max().copied().unwrap_or(0) + 1, None),
            SGapSet::EventuallyPeriodic { .. } => {
                let m = minimal_form(self)?;
                let SGapSet::EventuallyPeriodic { r, t, n } = &m else {
                    unreachable!("minimal form keeps the variant")
                };
                if t.is_empty() {
                    (r.iter().max().copied().unwrap_or(0) + 1, None)
                } else {
                    let start = *t.iter().min().expect("non-empty");
                    (start + n, Some(start))
                }
            }
        };
        let names: Vec<String> = (0..len).map(|j| j.to_string()).collect();
        let mut graph = crate::graph::DirectedGraph::with_vertices(names);
        let mut labels = Vec::new();
        for j in 0..len {
            let next = if j + 1 < len { Some(j + 1) } else { back };
            if let Some(k) = next {
                graph.add_edge(j as usize, k as usize);
                labels.push(Symbol::from('0'));
            }
            if self.contains(j) == Some(true) {
                graph.add_edge(j as usize, 0);
                labels.push(Symbol::from('1'));
            }
        }
        LabeledGraph::new(graph, labels)
    }
}

fn word_10k1(k: u64) -> Word {
    let mut s = String::from("1");
    s.extend(std::iter::repeat_n('0', k as usize));
    s.push('1');
    Word::parse(&s)
}

/// Forbidden words of `X(S)`. Infinite sets give the words `10^k1` with
/// `|10^k1| ≤ max_len`.
pub fn forbidden_words(s: &SGapSet, max_len: usize) -> Result<BTreeSet<Word>> {
    if let Some(elems) = s.finite_elements() {
        let m = *elems.iter().max().expect("non-empty");
        let mut out: BTreeSet<Word> = (0..m).filter(|k| !elems.contains(k)).map(word_10k1).collect();
        out.insert(Word::parse(&"0".repeat(m as usize + 1)));
        return Ok(out);
    }
    if let SGapSet::Sampled { bound, .. } = s {
        if max_len as u64 > bound + 2 {
            return Err(Error::Invalid(format!(
                "words up to length {max_len} need membership up to {}, but the sample stops at {bound}",
                max_len - 2
            )));
        }
    }
    let top = (max_len as u64).saturating_sub(2);
    Ok((0..=top)
        .filter(|&k| max_len >= 2 && s.contains(k) == Some(false))
        .map(word_10k1)
        .collect())
}

/// Equivalent description with minimal period, the tail starting as early
/// as possible and `R` below the tail.
pub fn minimal_form(s: &SGapSet) -> Result<SGapSet> {
    let SGapSet::EventuallyPeriodic { r, t, n } = s else {
        return Err(Error::Unsupported("minimal form needs an eventually periodic set".into()));
    };
    let n = *n;
    let member = |q: u64| s.contains(q) == Some(true);
    if t.is_empty() {
        return Ok(s.clone());
    }
    let q0 = r.iter().map(|x| x + 1).max().unwrap_or(0).max(*t.iter().max().expect("non-empty"));
    let pattern: Vec<bool> = (0..n).map(|i| member(q0 + i)).collect();
    // pattern index i stands for q ≡ q0 + i (mod n)
    let period = (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (0..n).all(|i| pattern[i as usize] == pattern[((i + d) % n) as usize]))
        .expect("n is always a period");
    let tail_member = |q: u64| pattern[((q + n - q0 % n) % n) as usize];
    let mut start = q0;
    while start > 0 && member(start - 1) == tail_member(start - 1) {
        start -= 1;
    }
    let new_t: BTreeSet<u64> = (start..start + period).filter(|&q| member(q)).collect();
    let new_r: BTreeSet<u64> = (0..start).filter(|&q| member(q)).collect();
    Ok(SGapSet::EventuallyPeriodic {
        r: new_r,
        t: new_t,
        n: period,
    })
}

pub fn classify_type(s: &SGapSet) -> ShiftType {
    match s {
        SGapSet::Finite(_) => ShiftType::FiniteType,
        SGapSet::EventuallyPeriodic { .. } => {
            match minimal_form(s).expect("eventually periodic") {
                SGapSet::EventuallyPeriodic { t, n, .. } if !t.is_empty() && n > 1 => {
                    ShiftType::StrictlySofic
                }
                _ => ShiftType::FiniteType,
            }
        }
        SGapSet::Sampled { bound, .. } => match detect_eventual_periodicity(s) {
            Some(exact) => classify_type(&exact),
            None => ShiftType::NotEventuallyPeriodicUpToBound(*bound),
        },
    }
}

/// Looks for the smallest period `N ≤ B/3` and earliest threshold `t` such
/// that membership on `[t, B]` repeats with period `N`. The periodic stretch
/// must cover three periods and at least half of the sample.
pub fn detect_eventual_periodicity(s: &SGapSet) -> Option<SGapSet> {
    let SGapSet::Sampled { members, bound } = s else {
        return None;
    };
    let b = *bound;
    let member = |q: u64| members.contains(&q);
    for n in 1..=b / 3 {
        let mut t = b - n + 1;
        while t > 0 && member(t - 1) == member(t - 1 + n) {
            t -= 1;
        }
        let tail = b + 1 - t;
        if tail < (3 * n).max(b.div_ceil(2)) {
            continue;
        }
        let tail_set: BTreeSet<u64> = (t..t + n).filter(|&q| member(q)).collect();
        let head: BTreeSet<u64> = (0..t).filter(|&q| member(q)).collect();
        if tail_set.is_empty() {
            if head.is_empty() {
                return None;
            }
            return Some(SGapSet::Finite(head));
        }
        let ep = SGapSet::EventuallyPeriodic {
            r: head,
            t: tail_set,
            n,
        };
        return minimal_form(&ep).ok();
    }
    None
}

/// Translates every element by `k`.
pub fn shift_set(s: &SGapSet, k: i64) -> Result<SGapSet> {
    let mv = |x: u64| -> Result<u64> {
        let y = x as i64 + k;
        if y < 0 {
            return Err(Error::Invalid(format!("{x} + {k} is negative")));
        }
        Ok(y as u64)
    };
    let mv_set = |set: &BTreeSet<u64>| set.iter().map(|&x| mv(x)).collect::<Result<BTreeSet<_>>>();
    Ok(match s {
        SGapSet::Finite(e) => SGapSet::Finite(mv_set(e)?),
        SGapSet::EventuallyPeriodic { r, t, n } => SGapSet::EventuallyPeriodic {
            r: mv_set(r)?,
            t: mv_set(t)?,
            n: *n,
        },
        SGapSet::Sampled { members, bound } => {
            if members.is_empty() && (*bound as i64 + k) < 0 {
                return Err(Error::Invalid("translated bound is negative".into()));
            }
            SGapSet::Sampled {
                members: mv_set(members)?,
                bound: (*bound as i64 + k).max(0) as u64,
            }
        }
    })
}

/// Residues of `t` mod `n`, least translate in lexicographic order.
fn canonical_residues(t: &BTreeSet<u64>, n: u64) -> Vec<u64> {
    let base: BTreeSet<u64> = t.iter().map(|x| x % n).collect();
    (0..n)
        .map(|r| {
            let mut v: Vec<u64> = base.iter().map(|x| (x + r) % n).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

pub fn fe_invariant(s: &SGapSet) -> Result<FeTag> {
    match s {
        SGapSet::Finite(e) => Ok(FeTag::FullShift(e.len())),
        SGapSet::EventuallyPeriodic { .. } => match minimal_form(s)? {
            SGapSet::EventuallyPeriodic { r, t, .. } if t.is_empty() => Ok(FeTag::FullShift(r.len())),
            SGapSet::EventuallyPeriodic { n: 1, .. } => Ok(FeTag::FullShift(2)),
            SGapSet::EventuallyPeriodic { t, n, .. } => Ok(FeTag::Sofic {
                k: t.len(),
                n,
                t: canonical_residues(&t, n),
            }),
            _ => unreachable!("minimal form keeps the variant"),
        },
        SGapSet::Sampled { .. } => Err(Error::Unsupported(
            "sampled sets have no exact invariant; compare them with fe_equal".into(),
        )),
    }
}

/// Counts `(|S₁ ∖ (S₂ − r)|, |S₂ ∖ (S₁ + r)|)` for exact sets with tails of
/// common period `n` starting by `start`; `None` if either is infinite.
fn exact_translation_counts(s1: &SGapSet, s2: &SGapSet, r: i64, n: u64, start: u64) -> Option<(u64, u64)> {
    let horizon = start + r.unsigned_abs() + n;
    let in1 = |q: i64| q >= 0 && s1.contains(q as u64) == Some(true);
    let in2 = |q: i64| q >= 0 && s2.contains(q as u64) == Some(true);
    // beyond the horizon both tails are periodic, so one period decides finiteness
    for q in horizon..horizon + n {
        let q = q as i64;
        if in1(q) != in2(q + r) || in2(q) != in1(q - r) {
            return None;
        }
    }
    let a = (0..horizon as i64).filter(|&q| in1(q) && !in2(q + r)).count() as u64;
    let b = (0..horizon as i64).filter(|&q| in2(q) && !in1(q - r)).count() as u64;
    Some((a, b))
}

fn tail_start(s: &SGapSet) -> u64 {
    match s {
        SGapSet::Finite(e) => e.iter().max().map_or(0, |m| m + 1),
        SGapSet::EventuallyPeriodic { r, t, .. } => r
            .iter()
            .chain(t)
            .map(|x| x + 1)
            .max()
            .unwrap_or(0),
        SGapSet::Sampled { bound, .. } => bound + 1,
    }
}

/// Window comparison of `S₁ + r` against `S₂` where both are known. Returns
/// `(removed from S₁, removed from S₂)` when every mismatch lies in the first
/// half of a window covering at least half of the shorter sample.
fn window_translation_counts(s1: &SGapSet, s2: &SGapSet, r: i64, window: u64) -> Option<(u64, u64)> {
    let lo = (-r).max(0);
    let hi = (window as i64).min(window as i64 - r);
    if hi < lo || ((hi - lo + 1) as u64) < window.div_ceil(2) {
        return None;
    }
    let in1 = |q: i64| s1.contains(q as u64) == Some(true);
    let in2 = |q: i64| s2.contains(q as u64) == Some(true);
    let half = lo + (hi - lo) / 2;
    let mut a = (0..lo).filter(|&q| in1(q)).count() as u64;
    let mut b = (0..r.max(0)).filter(|&q| in2(q)).count() as u64;
    for q in lo..=hi {
        let (x, y) = (in1(q), in2(q + r));
        if x != y {
            if q > half {
                return None;
            }
            if x {
                a += 1;
            } else {
                b += 1;
            }
        }
    }
    Some((a, b))
}

fn best_witness(candidates: impl Iterator<Item = (i64, Option<(u64, u64)>)>) -> Option<Witness> {
    candidates
        .filter_map(|(r, c)| c.filter(|(a, b)| a == b).map(|(a, _)| (a, r.unsigned_abs(), r)))
        .min()
        .map(|(n, _, r)| Witness::CofiniteTranslation { n, r })
}

/// Decides flow equivalence of `X(S₁)` and `X(S₂)`. Translations `|r|`
/// up to `search_bound` are tried when a witness is needed.
pub fn fe_equal(s1: &SGapSet, s2: &SGapSet, search_bound: u64) -> Result<FeVerdict> {
    if search_bound == 0 {
        return Err(Error::Invalid("search bound must be at least 1".into()));
    }
    let upgrade = |s: &SGapSet| match s {
        SGapSet::Sampled { .. } => detect_eventual_periodicity(s),
        _ => Some(s.clone()),
    };
    let sampled_bound = [s1.known_up_to(), s2.known_up_to()].into_iter().flatten().min();
    if let (Some(e1), Some(e2)) = (upgrade(s1), upgrade(s2)) {
        let verdict = fe_equal_exact(&e1, &e2, search_bound)?;
        return Ok(match (verdict, sampled_bound) {
            (FeVerdict::NotEquivalent(_), Some(b)) => FeVerdict::NotEquivalentUpTo(b),
            (v, _) => v,
        });
    }
    let window = sampled_bound.expect("a non-periodic input is sampled");
    let bound = search_bound.min(window) as i64;
    let mut any_window = false;
    let witness = best_witness((-bound..=bound).map(|r| {
        let c = window_translation_counts(s1, s2, r, window);
        let lo = (-r).max(0);
        let hi = (window as i64).min(window as i64 - r);
        any_window |= hi >= lo && ((hi - lo + 1) as u64) >= window.div_ceil(2);
        (r, c)
    }));
    Ok(match witness {
        Some(w) => FeVerdict::Equivalent(w),
        None if any_window => FeVerdict::NotEquivalentUpTo(window),
        None => FeVerdict::UnknownUpTo(window),
    })
}

fn fe_equal_exact(s1: &SGapSet, s2: &SGapSet, search_bound: u64) -> Result<FeVerdict> {
    let (t1, t2) = (fe_invariant(s1)?, fe_invariant(s2)?);
    match (&t1, &t2) {
        (FeTag::FullShift(a), FeTag::FullShift(b)) if a == b => {
            Ok(FeVerdict::Equivalent(Witness::FullShift { k: *a }))
        }
        (FeTag::FullShift(a), FeTag::FullShift(b)) => Ok(FeVerdict::NotEquivalent(format!(
            "flow equivalent to full shifts on {a} and {b} symbols"
        ))),
        (FeTag::Sofic { .. }, FeTag::Sofic { .. }) if t1 != t2 => Ok(FeVerdict::NotEquivalent(
            "the sofic invariants (|T|, N, T up to translation) differ".into(),
        )),
        (FeTag::Sofic { n, .. }, FeTag::Sofic { .. }) => {
            let (m1, m2) = (minimal_form(s1)?, minimal_form(s2)?);
            let start = tail_start(&m1).max(tail_start(&m2));
            let bound = search_bound as i64;
            let witness = best_witness(
                (-bound..=bound).map(|r| (r, exact_translation_counts(&m1, &m2, r, *n, start))),
            );
            Ok(match witness {
                Some(w) => FeVerdict::Equivalent(w),
                None => FeVerdict::UnknownUpTo(search_bound),
            })
        }
        _ => Ok(FeVerdict::NotEquivalent(
            "one shift is of finite type and the other is strictly sofic".into(),
        )),
    }
}

/// Checks a translation witness on `[0, window]`: after dropping the
/// elements of `S₁` with no partner in `S₂ − r` and vice versa, the counts agree.
pub fn check_witness(s1: &SGapSet, s2: &SGapSet, n: u64, r: i64, window: u64) -> bool {
    let in1 = |q: i64| q >= 0 && s1.contains(q as u64) == Some(true);
    let in2 = |q: i64| q >= 0 && s2.contains(q as u64) == Some(true);
    let w = window as i64;
    let a = (0..=w).filter(|&q| q + r <= w && in1(q) && !in2(q + r)).count() as u64;
    let b = (0..=w).filter(|&q| q - r <= w && in2(q) && !in1(q - r)).count() as u64;
    a == n && b == n
}

impl fmt::Display for ShiftType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftType::FiniteType => f.write_str("finite_type"),
            ShiftType::StrictlySofic => f.write_str("strictly_sofic"),
            ShiftType::NotEventuallyPeriodicUpToBound(_) => {
                f.write_str("not_eventually_periodic_up_to_bound")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::Sft;

    fn primes(b: u64) -> Vec<u64> {
        (2..=b).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
    }

    fn ep(r: &[u64], t: &[u64], n: u64) -> SGapSet {
        SGapSet::eventually_periodic(r.iter().copied(), t.iter().copied(), n).unwrap()
    }

    /// Words of length `n` whose interior 0-runs all have lengths in `s`,
    /// with boundary runs extendable.
    fn gap_language(s: &BTreeSet<u64>, n: usize) -> BTreeSet<Word> {
        let max = *s.iter().max().unwrap();
        (0..1u32 << n)
            .map(|bits| (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { '1' } else { '0' }).collect::<String>())
            .filter(|w| {
                let runs: Vec<&str> = w.split('1').collect();
                let k = runs.len();
                runs.iter().enumerate().all(|(i, run)| {
                    let len = run.len() as u64;
                    if k == 1 {
                        len <= max
                    } else if i == 0 || i == k - 1 {
                        len <= max
                    } else {
                        s.contains(&len)
                    }
                })
            })
            .map(|w| Word::parse(&w))
            .collect()
    }

    #[test]
    fn forbidden_examples() {
        let s = SGapSet::finite([0, 2]).unwrap();
        assert_eq!(forbidden_words(&s, 10).unwrap(), ["101", "000"].iter().map(|w| Word::parse(w)).collect());
        assert!(forbidden_words(&ep(&[], &[0], 1), 12).unwrap().is_empty());
        let one = SGapSet::finite([1]).unwrap();
        assert_eq!(forbidden_words(&one, 10).unwrap(), ["11", "00"].iter().map(|w| Word::parse(w)).collect());
        let sample = SGapSet::sampled(&[1, 2], 5).unwrap();
        assert!(forbidden_words(&sample, 8).is_err());
    }

    #[test]
    fn forbidden_words_match_gap_semantics() {
        let set = BTreeSet::from([0, 2]);
        let f = forbidden_words(&SGapSet::Finite(set.clone()), 0).unwrap();
        let x = Sft::new(crate::word::Alphabet::from_chars("01"), f).unwrap();
        for n in 1..=8 {
            assert_eq!(x.enumerate_language(n), gap_language(&set, n), "n = {n}");
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify_type(&SGapSet::finite([0, 2]).unwrap()), ShiftType::FiniteType);
        assert_eq!(classify_type(&ep(&[], &[0, 1], 3)), ShiftType::StrictlySofic);
        assert_eq!(classify_type(&ep(&[4], &[7], 1)), ShiftType::FiniteType);
        let p = SGapSet::sampled(&primes(200), 200).unwrap();
        assert_eq!(classify_type(&p), ShiftType::NotEventuallyPeriodicUpToBound(200));
    }

    #[test]
    fn classification_agrees_with_presentations() {
        for (r, t, n) in [(vec![], vec![0, 1], 3), (vec![2], vec![5], 1), (vec![0], vec![3], 2), (vec![1, 4], vec![], 2)] {
            let s = ep(&r, &t, n);
            let lg = s.presentation().unwrap();
            let sft = lg.to_sft(&crate::word::Alphabet::from_chars("01"));
            let expected = if sft.is_ok() { ShiftType::FiniteType } else { ShiftType::StrictlySofic };
            assert_eq!(classify_type(&s), expected, "{s:?}");
        }
    }

    #[test]
    fn minimal_forms() {
        assert_eq!(minimal_form(&ep(&[], &[1, 3], 2)).unwrap(), ep(&[], &[1], 2));
        assert_eq!(minimal_form(&ep(&[0], &[0], 1)).unwrap(), ep(&[], &[0], 1));
        let m = ep(&[2], &[3, 4], 3);
        assert_eq!(minimal_form(&m).unwrap(), m);
        // period 4 pattern that is really period 2
        assert_eq!(minimal_form(&ep(&[], &[0, 2], 4)).unwrap(), ep(&[], &[0], 2));
    }

    #[test]
    fn shifting() {
        let s = SGapSet::finite([0, 2]).unwrap();
        assert_eq!(shift_set(&s, 3).unwrap(), SGapSet::finite([3, 5]).unwrap());
        assert_eq!(shift_set(&s, 0).unwrap(), s);
        assert_eq!(shift_set(&ep(&[], &[0], 2), 1).unwrap(), ep(&[], &[1], 2));
        assert!(shift_set(&s, -1).is_err());
    }

    #[test]
    fn invariants() {
        assert_eq!(fe_invariant(&SGapSet::finite([0, 2]).unwrap()).unwrap(), FeTag::FullShift(2));
        assert_eq!(fe_invariant(&ep(&[1, 3], &[6], 1)).unwrap(), FeTag::FullShift(2));
        assert_eq!(
            fe_invariant(&ep(&[], &[0, 1], 3)).unwrap(),
            FeTag::Sofic { k: 2, n: 3, t: vec![0, 1] }
        );
        assert!(fe_invariant(&SGapSet::sampled(&[1], 4).unwrap()).is_err());
    }

    #[test]
    fn periodicity_detection() {
        let evens: Vec<u64> = (0..=200).step_by(2).collect();
        assert_eq!(
            detect_eventual_periodicity(&SGapSet::sampled(&evens, 200).unwrap()),
            Some(ep(&[], &[0], 2))
        );
        assert_eq!(detect_eventual_periodicity(&SGapSet::sampled(&primes(200), 200).unwrap()), None);
        let pattern: Vec<u64> = (0..=200).filter(|q| q % 3 != 2).collect();
        assert_eq!(
            detect_eventual_periodicity(&SGapSet::sampled(&pattern, 200).unwrap()),
            Some(ep(&[], &[0, 1], 3))
        );
    }

    #[test]
    fn fe_decisions() {
        let a = SGapSet::finite([0, 2]).unwrap();
        let b = SGapSet::finite([5, 9]).unwrap();
        assert_eq!(fe_equal(&a, &b, 10).unwrap(), FeVerdict::Equivalent(Witness::FullShift { k: 2 }));
        let evens = ep(&[], &[0], 2);
        let odds = ep(&[], &[1], 2);
        assert_eq!(
            fe_equal(&evens, &odds, 10).unwrap(),
            FeVerdict::Equivalent(Witness::CofiniteTranslation { n: 0, r: 1 })
        );
        assert!(matches!(fe_equal(&evens, &ep(&[], &[0], 3), 10).unwrap(), FeVerdict::NotEquivalent(_)));
        assert!(matches!(
            fe_equal(&SGapSet::finite([0, 1, 2]).unwrap(), &a, 10).unwrap(),
            FeVerdict::NotEquivalent(_)
        ));
    }

    #[test]
    fn sampled_decisions() {
        let p = primes(200);
        let p5: Vec<u64> = p.iter().map(|x| x + 5).filter(|&x| x <= 200).collect();
        let squares: Vec<u64> = (0..=14).map(|x| x * x).collect();
        let sp = SGapSet::sampled(&p, 200).unwrap();
        assert_eq!(
            fe_equal(&sp, &SGapSet::sampled(&p5, 200).unwrap(), 200).unwrap(),
            FeVerdict::Equivalent(Witness::CofiniteTranslation { n: 0, r: 5 })
        );
        assert_eq!(
            fe_equal(&sp, &SGapSet::sampled(&squares, 200).unwrap(), 200).unwrap(),
            FeVerdict::NotEquivalentUpTo(200)
        );
    }

    #[test]
    fn witnesses_check_out() {
        let p = primes(200);
        let p5: Vec<u64> = p.iter().map(|x| x + 5).filter(|&x| x <= 200).collect();
        assert!(check_witness(
            &SGapSet::sampled(&p, 200).unwrap(),
            &SGapSet::sampled(&p5, 200).unwrap(),
            0,
            5,
            195
        ));
        assert!(check_witness(&ep(&[], &[0], 2), &ep(&[], &[1], 2), 0, 1, 100));
        assert!(!check_witness(&ep(&[], &[0], 2), &ep(&[], &[1], 2), 0, -1, 100));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_ep() -> impl Strategy<Value = SGapSet> {
            (
                proptest::collection::btree_set(0u64..12, 0..4),
                proptest::collection::btree_set(0u64..12, 1..4),
                1u64..6,
            )
                .prop_map(|(r, t, n)| SGapSet::EventuallyPeriodic { r, t, n })
        }

        proptest! {
            #[test]
            fn minimal_form_preserves_membership(s in arb_ep()) {
                let m = minimal_form(&s).unwrap();
                let SGapSet::EventuallyPeriodic { n, .. } = &m else { unreachable!() };
                for q in 0..(10 * n).max(40) {
                    prop_assert_eq!(s.contains(q), m.contains(q));
                }
                prop_assert_eq!(minimal_form(&m).unwrap(), m.clone());
                if let SGapSet::EventuallyPeriodic { r, t, n } = &m {
                    if let (Some(lo), Some(hi)) = (t.iter().min(), t.iter().max()) {
                        prop_assert!(hi - lo < *n);
                        prop_assert!(r.iter().all(|x| x < lo));
                    }
                }
            }

            #[test]
            fn invariant_survives_translation(s in arb_ep(), k in 0i64..8) {
                prop_assert_eq!(fe_invariant(&s).unwrap(), fe_invariant(&shift_set(&s, k).unwrap()).unwrap());
            }

            #[test]
            fn invariant_survives_element_swap(s in arb_ep(), a in 0u64..30, b in 0u64..30) {
                // X({a} ∪ S) and X({b} ∪ S) are flow equivalent when neither is in S
                prop_assume!(s.contains(a) == Some(false) && s.contains(b) == Some(false));
                let SGapSet::EventuallyPeriodic { r, t, n } = &s else { unreachable!() };
                let with = |x: u64| {
                    let mut r = r.clone();
                    r.insert(x);
                    SGapSet::EventuallyPeriodic { r, t: t.clone(), n: *n }
                };
                prop_assert_eq!(fe_invariant(&with(a)).unwrap(), fe_invariant(&with(b)).unwrap());
            }

            #[test]
            fn rebased_form_has_same_tag(s in arb_ep(), j in 0usize..4) {
                let m = minimal_form(&s).unwrap();
                let SGapSet::EventuallyPeriodic { t, n, .. } = &m else { unreachable!() };
                prop_assume!(!t.is_empty() && *n > 1);
                let ts: Vec<u64> = t.iter().copied().collect();
                let j = j % ts.len();
                let rebased: BTreeSet<u64> = ts.iter().map(|&x| (x + n - ts[j]) % n).collect();
                let other = SGapSet::EventuallyPeriodic { r: BTreeSet::new(), t: rebased, n: *n };
                prop_assert_eq!(fe_invariant(&m).unwrap(), fe_invariant(&other).unwrap());
            }

            #[test]
            fn fe_equal_reflexive_and_symmetric(s1 in arb_ep(), s2 in arb_ep()) {
                let same = fe_equal(&s1, &s1, 20).unwrap();
                prop_assert!(matches!(same, FeVerdict::Equivalent(_)));
                let kind = |v: FeVerdict| std::mem::discriminant(&v);
                prop_assert_eq!(
                    kind(fe_equal(&s1, &s2, 20).unwrap()),
                    kind(fe_equal(&s2, &s1, 20).unwrap())
                );
            }

            #[test]
            fn equivalent_witnesses_check_out(s1 in arb_ep(), s2 in arb_ep()) {
                if let FeVerdict::Equivalent(Witness::CofiniteTranslation { n, r }) = fe_equal(&s1, &s2, 20).unwrap() {
                    prop_assert!(check_witness(&s1, &s2, n, r, 400));
                }
            }
        }
    }
}
