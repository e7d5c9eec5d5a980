//! Flow-equivalence moves on shifts of finite type and their action on
//! words and periodic points.
//!
//! A [`MovePipeline`] is a composition of moves. Each move is reduced to
//! primitive steps (symbol expansion, symbol contraction, recoding by a
//! block map with a known inverse) and the shift after every step is
//! stored, so the precondition of each step is checked against the exact
//! shift it acts on.

use std::collections::BTreeMap;
use std::fmt;

use crate::block::BlockMap;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::presentation::LabeledGraph;
use crate::sft::Sft;
use crate::word::{Alphabet, PeriodicOrbit, Symbol, Word};

/// A move as requested by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Insert `fresh` after every `symbol`.
    SymbolExpansion { symbol: Symbol, fresh: Symbol },
    /// Delete `removed`, which must occur exactly after `symbol`.
    SymbolContraction { symbol: Symbol, removed: Symbol },
    /// Replace every occurrence of `word` by `fresh`.
    WordContraction { word: Word, fresh: Symbol },
    /// A conjugacy given by a block map and a block map inverting it.
    Recode { forward: BlockMap, inverse: BlockMap },
}

/// A primitive step. Word contractions become a recoding followed by
/// alternating recodings and symbol contractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Expand { symbol: Symbol, fresh: Symbol },
    Contract { symbol: Symbol, removed: Symbol },
    Recode { forward: BlockMap, inverse: BlockMap },
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub step: Step,
    /// Index of the move this step belongs to.
    pub move_index: usize,
    pub source: Sft,
    pub target: Sft,
}

/// Image of a word under a pipeline. Short words can be swallowed
/// completely, which is reported instead of returning `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordImage {
    Image(Word),
    Undecided,
}

impl WordImage {
    pub fn word(&self) -> Option<&Word> {
        match self {
            WordImage::Image(w) => Some(w),
            WordImage::Undecided => None,
        }
    }

    fn from_word(w: Word) -> Self {
        if w.is_empty() {
            WordImage::Undecided
        } else {
            WordImage::Image(w)
        }
    }
}

/// No proper non-empty prefix of `w` is also a suffix.
pub fn is_nonoverlapping(w: &Word) -> bool {
    (1..w.len()).all(|k| w.prefix(k) != w.suffix(k))
}

/// Whether some `v ∈ B_m(X)` with `|w| < m < 2|w|` starts and ends with `w`.
pub fn admits_nontrivial_overlaps(x: &Sft, w: &Word) -> Result<bool> {
    if !x.contains_word(w)? {
        return Err(Error::NotInLanguage(w.clone()));
    }
    let n = w.len();
    for shift in 1..n {
        // w overlaps itself when shifted right by `shift`
        if w.suffix(n - shift) == w.prefix(n - shift) {
            let v = w.concat(&w.suffix(shift));
            if x.contains_word(&v)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `X^{a↦a◇}` with `◇` the next fresh symbol of the alphabet.
pub fn symbol_expand(x: &Sft, a: &Symbol) -> Result<(Sft, Symbol)> {
    let mut p = MovePipeline::new(x.clone());
    let d = p.expand(a)?;
    Ok((p.target().clone(), d))
}

/// Deletes `d` from every point; `d` must occur exactly after `a`.
pub fn symbol_contract(x: &Sft, a: &Symbol, d: &Symbol) -> Result<Sft> {
    contract_step(x, a, d)
}

/// `X^{w↦◇}` with `◇` the next fresh symbol of the alphabet.
pub fn word_contract(x: &Sft, w: &Word) -> Result<(Sft, Symbol)> {
    let mut p = MovePipeline::new(x.clone());
    let d = p.contract_word(w)?;
    Ok((p.target().clone(), d))
}

/// Image of `x` under a block map that `inverse` undoes.
pub fn recode(x: &Sft, forward: &BlockMap, inverse: &BlockMap) -> Result<Sft> {
    check_recode(x, forward, inverse)?;
    recode_image(x, forward)
}

fn expand_step(x: &Sft, a: &Symbol, d: &Symbol) -> Result<Sft> {
    if !x.alphabet().contains(a) {
        return Err(Error::UnknownSymbol(a.clone()));
    }
    if x.alphabet().contains(d) {
        return Err(Error::DuplicateSymbol(d.clone()));
    }
    let old = x.alphabet().symbols();
    let ad = [a.clone(), d.clone()];
    let mut forbidden: Vec<Word> = x
        .forbidden()
        .iter()
        .map(|f| f.replace_symbol(a, &ad))
        .collect();
    for b in &old {
        if b != a {
            forbidden.push(Word::from_symbols([b.clone(), d.clone()]));
        }
        // `a` must be followed by the new symbol
        forbidden.push(Word::from_symbols([a.clone(), b.clone()]));
    }
    forbidden.push(Word::from_symbols([d.clone(), d.clone()]));
    let mut alphabet = x.alphabet().clone();
    alphabet.insert(d.clone());
    Sft::new(alphabet, forbidden)
}

fn contract_step(x: &Sft, a: &Symbol, d: &Symbol) -> Result<Sft> {
    for s in [a, d] {
        if !x.alphabet().contains(s) {
            return Err(Error::UnknownSymbol(s.clone()));
        }
    }
    if a == d {
        return Err(Error::Precondition("cannot contract a symbol into itself".into()));
    }
    for w in x.enumerate_language(2) {
        let s = w.symbols();
        if (s[1] == *d) != (s[0] == *a) {
            return Err(Error::Precondition(format!(
                "`{d}` must occur exactly after `{a}`, but `{w}` occurs"
            )));
        }
    }
    let lg = x.presentation();
    let g = lg.graph();
    let out = lg.out_edges();
    let mut graph = DirectedGraph::with_vertices(g.vertices().iter().cloned());
    let mut labels = Vec::new();
    for (e, label) in g.edges().iter().zip(lg.labels()) {
        if label == d {
            continue;
        }
        if label == a {
            // skip over the `d` edge that must follow
            for (b, t) in &out[e.target] {
                if b == d {
                    graph.add_edge(e.source, *t);
                    labels.push(a.clone());
                }
            }
        } else {
            graph.add_edge(e.source, e.target);
            labels.push(label.clone());
        }
    }
    let mut alphabet = x.alphabet().clone();
    alphabet.remove(d);
    LabeledGraph::new(graph, labels)?.to_sft(&alphabet)
}

/// `inverse ∘ forward` must be the identity on every word of the shift,
/// checked on all windows they read together.
fn check_recode(x: &Sft, forward: &BlockMap, inverse: &BlockMap) -> Result<()> {
    let total = forward.window() + inverse.window() - 1;
    let offset = forward.memory() + inverse.memory();
    for w in x.enumerate_language(total) {
        let back = inverse.apply(&forward.apply(&w)?)?;
        if back.symbols()[0] != w.symbols()[offset] {
            return Err(Error::Precondition(format!(
                "the inverse map does not undo the recoding on `{w}`"
            )));
        }
    }
    Ok(())
}

/// The image shift, read off a higher block presentation labeled by the map.
fn recode_image(x: &Sft, forward: &BlockMap) -> Result<Sft> {
    let win = forward.window();
    let k = x.step().max(win - 1);
    let mut graph = DirectedGraph::new();
    let mut index = BTreeMap::new();
    for v in x.enumerate_language(k) {
        let i = graph.add_vertex(v.to_string());
        index.insert(v, i);
    }
    let mut labels = Vec::new();
    for e in x.enumerate_language(k + 1) {
        let (Some(&s), Some(&t)) = (index.get(&e.prefix(k)), index.get(&e.suffix(k))) else {
            continue;
        };
        let image = forward.apply(&e.suffix(win))?;
        graph.add_edge(s, t);
        labels.push(image.symbols()[0].clone());
    }
    let mut alphabet = x.alphabet().clone();
    for s in x.alphabet().symbols() {
        alphabet.remove(&s);
    }
    for s in forward.table().values() {
        alphabet.insert(s.clone());
    }
    LabeledGraph::new(graph, labels)?.to_sft(&alphabet)
}

/// Identity on every symbol of `alphabet` plus `extra ↦ image`.
fn renaming_inverse(alphabet: &Alphabet, extra: &Symbol, image: &Symbol) -> BlockMap {
    BlockMap::one_block(
        alphabet
            .iter()
            .filter(|s| *s != extra)
            .map(|s| (s.clone(), s.clone()))
            .chain([(extra.clone(), image.clone())]),
    )
}

/// A composition of flow-equivalence moves starting at a fixed shift.
#[derive(Clone, Debug)]
pub struct MovePipeline {
    source: Sft,
    moves: Vec<Move>,
    stages: Vec<Stage>,
}

impl MovePipeline {
    /// The empty pipeline, i.e. the identity on `source`.
    pub fn new(source: Sft) -> Self {
        MovePipeline {
            source,
            moves: Vec::new(),
            stages: Vec::new(),
        }
    }

    pub fn from_moves(source: Sft, moves: impl IntoIterator<Item = Move>) -> Result<Self> {
        let mut p = Self::new(source);
        for mv in moves {
            p.push(mv)?;
        }
        Ok(p)
    }

    pub fn source(&self) -> &Sft {
        &self.source
    }

    pub fn target(&self) -> &Sft {
        self.stages.last().map_or(&self.source, |s| &s.target)
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Next fresh symbol of the current alphabet.
    pub fn next_fresh(&self) -> Symbol {
        self.target().alphabet().clone().fresh()
    }

    pub fn expand(&mut self, a: &Symbol) -> Result<Symbol> {
        let fresh = self.next_fresh();
        self.push(Move::SymbolExpansion {
            symbol: a.clone(),
            fresh: fresh.clone(),
        })?;
        Ok(fresh)
    }

    pub fn contract(&mut self, a: &Symbol, d: &Symbol) -> Result<()> {
        self.push(Move::SymbolContraction {
            symbol: a.clone(),
            removed: d.clone(),
        })
    }

    pub fn contract_word(&mut self, w: &Word) -> Result<Symbol> {
        let fresh = self.next_fresh();
        self.push(Move::WordContraction {
            word: w.clone(),
            fresh: fresh.clone(),
        })?;
        Ok(fresh)
    }

    pub fn recode(&mut self, forward: BlockMap, inverse: BlockMap) -> Result<()> {
        self.push(Move::Recode { forward, inverse })
    }

    /// Appends a move after checking its precondition. On error the
    /// pipeline is left unchanged.
    pub fn push(&mut self, mv: Move) -> Result<()> {
        let index = self.moves.len();
        let mut stages: Vec<Stage> = Vec::new();
        let mut current = self.target().clone();
        let mut run = |step: Step, current: &mut Sft| -> Result<()> {
            let target = match &step {
                Step::Expand { symbol, fresh } => expand_step(current, symbol, fresh)?,
                Step::Contract { symbol, removed } => contract_step(current, symbol, removed)?,
                Step::Recode { forward, inverse } => recode(current, forward, inverse)?,
            };
            stages.push(Stage {
                step,
                move_index: index,
                source: current.clone(),
                target: target.clone(),
            });
            *current = target;
            Ok(())
        };
        match &mv {
            Move::SymbolExpansion { symbol, fresh } => run(
                Step::Expand {
                    symbol: symbol.clone(),
                    fresh: fresh.clone(),
                },
                &mut current,
            )?,
            Move::SymbolContraction { symbol, removed } => run(
                Step::Contract {
                    symbol: symbol.clone(),
                    removed: removed.clone(),
                },
                &mut current,
            )?,
            Move::Recode { forward, inverse } => run(
                Step::Recode {
                    forward: forward.clone(),
                    inverse: inverse.clone(),
                },
                &mut current,
            )?,
            Move::WordContraction { word, fresh } => {
                if word.is_empty() {
                    return Err(Error::Invalid("cannot contract the empty word".into()));
                }
                if current.alphabet().contains(fresh) {
                    return Err(Error::DuplicateSymbol(fresh.clone()));
                }
                if admits_nontrivial_overlaps(&current, word)? {
                    return Err(Error::Precondition(format!(
                        "the shift admits non-trivial overlaps of `{word}`"
                    )));
                }
                let n = word.len();
                let w = word.symbols();
                // mark each occurrence of w at its first symbol
                let windows = current.enumerate_language(n);
                let forward = BlockMap::from_fn(0, n - 1, &windows, |v| {
                    if v == word {
                        fresh.clone()
                    } else {
                        v.symbols()[0].clone()
                    }
                })?;
                let inverse = renaming_inverse(current.alphabet(), fresh, &w[0]);
                run(Step::Recode { forward, inverse }, &mut current)?;
                // then absorb w_2, …, w_n one at a time
                for wi in &w[1..] {
                    let mark = current.alphabet().clone().fresh();
                    let windows = current.enumerate_language(2);
                    let forward = BlockMap::from_fn(1, 0, &windows, |v| {
                        let s = v.symbols();
                        if s[0] == *fresh && s[1] == *wi {
                            mark.clone()
                        } else {
                            s[1].clone()
                        }
                    })?;
                    let mut with_mark = current.alphabet().clone();
                    with_mark.insert(mark.clone());
                    let inverse = renaming_inverse(&with_mark, &mark, wi);
                    run(Step::Recode { forward, inverse }, &mut current)?;
                    run(
                        Step::Contract {
                            symbol: fresh.clone(),
                            removed: mark,
                        },
                        &mut current,
                    )?;
                }
            }
        }
        self.moves.push(mv);
        self.stages.extend(stages);
        Ok(())
    }

    /// Every word at least this long has a non-empty image:
    /// `((M+1)n + 1) 2^n` with `n` primitive steps and `M` the largest
    /// recoding window.
    pub fn deciding_length_bound(&self) -> usize {
        let n = self.stages.len();
        let m = self
            .stages
            .iter()
            .filter_map(|s| match &s.step {
                Step::Recode { forward, .. } => Some(forward.window()),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        ((m + 1) * n + 1).saturating_mul(1usize.checked_shl(n as u32).unwrap_or(usize::MAX))
    }

    /// Image of `w` after each step.
    pub fn trace_word(&self, w: &Word) -> Result<Vec<Word>> {
        if !self.source.contains_word(w)? {
            return Err(Error::NotInLanguage(w.clone()));
        }
        let mut cur = w.clone();
        let mut out = Vec::with_capacity(self.stages.len());
        for stage in &self.stages {
            cur = match &stage.step {
                Step::Expand { symbol, fresh } => {
                    cur.replace_symbol(symbol, &[symbol.clone(), fresh.clone()])
                }
                Step::Contract { removed, .. } => cur.without_symbol(removed),
                Step::Recode { forward, .. } => {
                    if cur.len() < forward.window() {
                        Word::empty()
                    } else {
                        forward.apply(&cur)?
                    }
                }
            };
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// `T(w)`. Recodings drop the symbols whose windows run past the ends of `w`.
    pub fn apply_word(&self, w: &Word) -> Result<WordImage> {
        let trace = self.trace_word(w)?;
        Ok(WordImage::from_word(trace.last().cloned().unwrap_or_else(|| w.clone())))
    }

    /// `v` with `T(u^∞) = v^∞`, as a canonical orbit.
    pub fn apply_periodic(&self, orbit: &PeriodicOrbit) -> Result<PeriodicOrbit> {
        if !self.source.contains_orbit(orbit)? {
            return Err(Error::NotInLanguage(orbit.cycle().clone()));
        }
        let mut cycle = orbit.cycle().clone();
        for stage in &self.stages {
            cycle = match &stage.step {
                Step::Expand { symbol, fresh } => {
                    cycle.replace_symbol(symbol, &[symbol.clone(), fresh.clone()])
                }
                Step::Contract { removed, .. } => cycle.without_symbol(removed),
                Step::Recode { forward, .. } => forward.apply_cyclic(&cycle)?,
            };
        }
        PeriodicOrbit::new(&cycle)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::SymbolExpansion { symbol, fresh } => write!(f, "expand {symbol} ↦ {symbol}{fresh}"),
            Move::SymbolContraction { symbol, removed } => {
                write!(f, "contract {symbol}{removed} ↦ {symbol}")
            }
            Move::WordContraction { word, fresh } => write!(f, "contract word {word} ↦ {fresh}"),
            Move::Recode { forward, .. } => write!(
                f,
                "recode (memory {}, anticipation {})",
                forward.memory(),
                forward.anticipation()
            ),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Expand { symbol, fresh } => write!(f, "expand {symbol} ↦ {symbol}{fresh}"),
            Step::Contract { symbol, removed } => write!(f, "contract {symbol}{removed} ↦ {symbol}"),
            Step::Recode { forward, .. } => write!(
                f,
                "recode (memory {}, anticipation {})",
                forward.memory(),
                forward.anticipation()
            ),
        }
    }
}
