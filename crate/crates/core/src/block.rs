//! Sliding block maps given by finite tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// A block map `Φ` with memory `m` and anticipation `n`: the output at
/// position `i` is `Φ(x[i-m ..= i+n])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    memory: usize,
    anticipation: usize,
    table: BTreeMap<Word, Symbol>,
}

impl BlockMap {
    pub fn new(memory: usize, anticipation: usize, table: BTreeMap<Word, Symbol>) -> Result<Self> {
        let window = memory + anticipation + 1;
        if let Some(bad) = table.keys().find(|k| k.len() != window) {
            return Err(Error::Invalid(format!(
                "block map key `{bad}` has length {}, expected {window}",
                bad.len()
            )));
        }
        Ok(BlockMap {
            memory,
            anticipation,
            table,
        })
    }

    /// Tabulates `f` on the given windows.
    pub fn from_fn<'a>(
        memory: usize,
        anticipation: usize,
        windows: impl IntoIterator<Item = &'a Word>,
        f: impl Fn(&Word) -> Symbol,
    ) -> Result<Self> {
        let table = windows.into_iter().map(|w| (w.clone(), f(w))).collect();
        Self::new(memory, anticipation, table)
    }

    /// The 1-block map given by a symbol substitution.
    pub fn one_block(pairs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Self {
        let table = pairs
            .into_iter()
            .map(|(a, b)| (Word::from_symbols([a]), b))
            .collect();
        BlockMap {
            memory: 0,
            anticipation: 0,
            table,
        }
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn window(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn table(&self) -> &BTreeMap<Word, Symbol> {
        &self.table
    }

    pub fn lookup(&self, window: &[Symbol]) -> Result<&Symbol> {
        // BTreeMap<Word, _> is keyed by owned words
        let key = Word::from_symbols(window.iter().cloned());
        self.table.get(&key).ok_or(Error::MissingWindow(key))
    }

    /// Slides the window over `w`; the output has length `|w| - m - n`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let window = self.window();
        if w.len() < window {
            return Err(Error::WordTooShort {
                len: w.len(),
                window,
            });
        }
        w.windows(window)
            .map(|win| self.lookup(win).cloned())
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Image of the periodic point `u^∞` over one period: output position `i`
    /// reads the window `x[i-m ..= i+n]` of `x = u^∞`.
    pub fn apply_cyclic(&self, u: &Word) -> Result<Word> {
        let p = u.len();
        let s = u.symbols();
        let window = self.window();
        (0..p)
            .map(|i| {
                let win: Vec<Symbol> = (0..window)
                    .map(|k| s[(i + k + p * self.memory - self.memory) % p].clone())
                    .collect();
                self.lookup(&win).cloned()
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn two_block(f: impl Fn(&Word) -> Symbol) -> BlockMap {
        let words = Alphabet::from_chars("01").all_words(2);
        BlockMap::from_fn(0, 1, &words, f).unwrap()
    }

    #[test]
    fn shift_map_as_block_map() {
        let phi = two_block(|w| w.symbols()[1].clone());
        assert_eq!(phi.apply(&Word::from("0110")).unwrap(), Word::from("110"));
    }

    #[test]
    fn identity_one_block() {
        let id = BlockMap::one_block("abc".chars().map(|c| (Symbol::from(c), Symbol::from(c))));
        assert_eq!(id.apply(&Word::from("abc")).unwrap(), Word::from("abc"));
    }

    #[test]
    fn first_symbol_map() {
        let phi = two_block(|w| w.symbols()[0].clone());
        assert_eq!(phi.apply(&Word::from("0110")).unwrap(), Word::from("011"));
    }

    #[test]
    fn partial_map_errors() {
        let phi = BlockMap::one_block([(Symbol::from('0'), Symbol::from('1'))]);
        assert!(matches!(phi.apply(&Word::from("01")), Err(Error::MissingWindow(_))));
        let two = two_block(|w| w.symbols()[0].clone());
        assert!(matches!(two.apply(&Word::from("0")), Err(Error::WordTooShort { .. })));
    }

    #[test]
    fn cyclic_matches_long_word() {
        let words = Alphabet::from_chars("ab").all_words(3);
        // marks the middle symbol when both neighbours agree
        let phi = BlockMap::from_fn(1, 1, &words, |w| {
            let s = w.symbols();
            if s[0] == s[2] { Symbol::from('x') } else { s[1].clone() }
        })
        .unwrap();
        for u in ["a", "ab", "aab", "abbab"] {
            let u = Word::from(u);
            let p = u.len();
            let cyc = phi.apply_cyclic(&u).unwrap();
            // long[j] sits over input position j + memory
            let long = phi.apply(&u.pow(6)).unwrap();
            for i in 0..p {
                let j = (i as isize - phi.memory() as isize).rem_euclid(p as isize) as usize;
                assert_eq!(cyc.symbols()[i], long.symbols()[j]);
            }
        }
    }
}
