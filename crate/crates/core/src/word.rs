//! Words over alphabets of symbols, and periodic orbits.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Prefix of generated fresh symbols. Symbols starting with it are reserved.
pub const FRESH_PREFIX: &str = "◇";

/// A single alphabet symbol. Most symbols are one character, but fresh
/// symbols (`◇1`, `◇2`, ...) and user-supplied names may be longer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: impl AsRef<str>) -> Self {
        Symbol(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the symbol is a single Unicode scalar value.
    pub fn is_single_char(&self) -> bool {
        let mut chars = self.0.chars();
        chars.next().is_some() && chars.next().is_none()
    }

    pub fn is_fresh(&self) -> bool {
        self.0.starts_with(FRESH_PREFIX)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Self {
        Symbol::new(c.to_string())
    }
}

/// A finite word. The empty word is allowed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        Word(symbols.into_iter().collect())
    }

    /// Splits a string into one symbol per character.
    pub fn parse(s: &str) -> Self {
        Word(s.chars().map(Symbol::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn first(&self) -> Option<&Symbol> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Symbol> {
        self.0.last()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, s: &Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(s.clone());
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// Zero-based half-open factor `w[range]`.
    pub fn factor(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.factor(0..n)
    }

    pub fn suffix(&self, n: usize) -> Word {
        self.factor(self.len() - n..self.len())
    }

    pub fn windows(&self, n: usize) -> impl Iterator<Item = &[Symbol]> {
        self.0.windows(n)
    }

    pub fn has_factor(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        self.0.windows(w.len()).any(|win| win == w.symbols())
    }

    pub fn contains_symbol(&self, s: &Symbol) -> bool {
        self.0.contains(s)
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }

    /// Shortest `p` such that the word is `t^(len/p)` for its length-`p` prefix `t`.
    pub fn primitive_period(&self) -> usize {
        let n = self.len();
        (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]))
            .unwrap_or(0)
    }

    /// No `t` with `w = t^k`, `k > 1`.
    pub fn is_non_repeating(&self) -> bool {
        !self.is_empty() && self.primitive_period() == self.len()
    }

    /// Replaces every occurrence of `from` with `to`.
    pub fn replace_symbol(&self, from: &Symbol, to: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.len());
        for s in &self.0 {
            if s == from {
                v.extend_from_slice(to);
            } else {
                v.push(s.clone());
            }
        }
        Word(v)
    }

    pub fn without_symbol(&self, s: &Symbol) -> Word {
        Word(self.0.iter().filter(|x| *x != s).cloned().collect())
    }

    /// All symbols are single characters, so the word prints unambiguously as a string.
    pub fn is_plain(&self) -> bool {
        self.0.iter().all(Symbol::is_single_char)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        if self.is_plain() {
            for s in &self.0 {
                f.write_str(s.as_str())?;
            }
            Ok(())
        } else {
            let parts: Vec<&str> = self.0.iter().map(Symbol::as_str).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word::parse(s)
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A finite ordered set of symbols plus a counter for deterministic fresh symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: BTreeSet<Symbol>,
    fresh_counter: u32,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in symbols {
            if !set.insert(s.clone()) {
                return Err(Error::DuplicateSymbol(s));
            }
        }
        let fresh_counter = set
            .iter()
            .filter_map(|s| s.as_str().strip_prefix(FRESH_PREFIX))
            .filter_map(|n| n.parse::<u32>().ok())
            .max()
            .unwrap_or(0);
        Ok(Alphabet {
            symbols: set,
            fresh_counter,
        })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Self {
        Alphabet::new(chars.chars().map(Symbol::from)).expect("distinct characters")
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.symbols.contains(s)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.symbols.iter().cloned().collect()
    }

    pub fn fresh_counter(&self) -> u32 {
        self.fresh_counter
    }

    /// Adds and returns a new `◇k` symbol.
    pub fn fresh(&mut self) -> Symbol {
        loop {
            self.fresh_counter += 1;
            let s = Symbol::new(format!("{FRESH_PREFIX}{}", self.fresh_counter));
            if self.symbols.insert(s.clone()) {
                return s;
            }
        }
    }

    /// Inserting `◇k` moves the fresh counter past `k`.
    pub fn insert(&mut self, s: Symbol) -> bool {
        if let Some(k) = s
            .as_str()
            .strip_prefix(FRESH_PREFIX)
            .and_then(|n| n.parse::<u32>().ok())
        {
            self.fresh_counter = self.fresh_counter.max(k);
        }
        self.symbols.insert(s)
    }

    pub fn remove(&mut self, s: &Symbol) -> bool {
        self.symbols.remove(s)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.symbols().iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::UnknownSymbol(s.clone())),
            None => Ok(()),
        }
    }

    /// All `|A|^n` words of length `n`, in lexicographic order.
    pub fn all_words(&self, n: usize) -> Vec<Word> {
        let syms = self.symbols();
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| syms.iter().map(move |s| w.pushed(s)))
                .collect();
        }
        out
    }
}

/// The periodic point `u^∞`, stored by its canonical cycle: the
/// lexicographically least rotation of a non-repeating word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicOrbit {
    cycle: Word,
}

impl PeriodicOrbit {
    /// Reduces `u` to its primitive root and canonical rotation.
    pub fn new(u: &Word) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::Invalid("periodic orbit needs a non-empty word".into()));
        }
        let root = u.prefix(u.primitive_period());
        let cycle = (0..root.len())
            .map(|k| root.rotate(k))
            .min()
            .expect("non-empty");
        Ok(PeriodicOrbit { cycle })
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    /// Least period of the point.
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn repeat(&self, k: usize) -> Word {
        self.cycle.pow(k)
    }

    pub fn is_period(&self, p: usize) -> bool {
        p > 0 && p % self.period() == 0
    }
}

impl fmt::Display for PeriodicOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^∞", self.cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_repeating() {
        assert!(Word::from("ab").is_non_repeating());
        assert!(!Word::from("abab").is_non_repeating());
        assert!(Word::from("aab").is_non_repeating());
        assert!(!Word::empty().is_non_repeating());
    }

    #[test]
    fn canonical_orbit() {
        let a = PeriodicOrbit::new(&Word::from("baba")).unwrap();
        assert_eq!(a.cycle(), &Word::from("ab"));
        assert_eq!(a.period(), 2);
        assert!(a.is_period(6) && !a.is_period(3));
        let b = PeriodicOrbit::new(&Word::from("cab")).unwrap();
        assert_eq!(b.cycle(), &Word::from("abc"));
    }

    #[test]
    fn fresh_symbols_skip_existing() {
        let mut a = Alphabet::new(["0", "1", "◇1"].map(Symbol::from)).unwrap();
        assert_eq!(a.fresh().as_str(), "◇2");
        assert_eq!(a.fresh().as_str(), "◇3");
        assert!(Alphabet::new(["0", "0"].map(Symbol::from)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Word::from("0110").to_string(), "0110");
        let w = Word::from_symbols([Symbol::from("1"), Symbol::from("◇12")]);
        assert_eq!(w.to_string(), "[1,◇12]");
    }

    proptest::proptest! {
        #[test]
        fn rotations_share_canonical_cycle(s in "[ab]{1,8}", k in 0usize..8) {
            let w = Word::parse(&s);
            let a = PeriodicOrbit::new(&w).unwrap();
            let b = PeriodicOrbit::new(&w.rotate(k)).unwrap();
            proptest::prop_assert_eq!(a, b);
        }
    }
}
