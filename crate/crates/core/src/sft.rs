//! Shifts of finite type given by forbidden words, their essential step
//! graphs and their languages.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::presentation::LabeledGraph;
use crate::word::{Alphabet, PeriodicOrbit, Symbol, Word};

/// The higher-block edge shift of an `M`-step SFT: vertices are allowed
/// `M`-words, edges are allowed `(M+1)`-words, stranded vertices removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeShift {
    pub graph: DirectedGraph,
    /// Word carried by each vertex, aligned with `graph.vertices()`.
    pub vertex_words: Vec<Word>,
    /// Word carried by each edge, aligned with `graph.edges()`.
    pub edge_words: Vec<Word>,
    pub step: usize,
}

impl EdgeShift {
    /// Labels each edge by its last symbol. This presents the original shift.
    pub fn labeled_graph(&self) -> LabeledGraph {
        let labels = self
            .edge_words
            .iter()
            .map(|w| w.last().cloned().expect("edge words are non-empty"))
            .collect();
        LabeledGraph::new(self.graph.clone(), labels).expect("one label per edge")
    }
}

#[derive(Debug)]
struct Automaton {
    es: EdgeShift,
    vertex_of: HashMap<Word, usize>,
    next: HashMap<(usize, Symbol), usize>,
}

/// `X_F`: all bi-infinite sequences over the alphabet avoiding every word of `F`.
#[derive(Clone, Debug)]
pub struct Sft {
    alphabet: Alphabet,
    forbidden: BTreeSet<Word>,
    cache: OnceLock<Arc<Automaton>>,
}

impl PartialEq for Sft {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.forbidden == other.forbidden
    }
}

impl Eq for Sft {}

impl Sft {
    pub fn new(alphabet: Alphabet, forbidden: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for w in forbidden {
            if w.is_empty() {
                return Err(Error::EmptyForbiddenWord);
            }
            alphabet.check_word(&w)?;
            set.insert(w);
        }
        Ok(Sft {
            alphabet,
            forbidden: set,
            cache: OnceLock::new(),
        })
    }

    /// Single-character symbols and words, e.g. `Sft::from_chars("01", &["11"])`.
    pub fn from_chars(alphabet: &str, forbidden: &[&str]) -> Result<Self> {
        Self::new(
            Alphabet::from_chars(alphabet),
            forbidden.iter().map(|w| Word::parse(w)),
        )
    }

    pub fn full_shift(alphabet: Alphabet) -> Self {
        Sft {
            alphabet,
            forbidden: BTreeSet::new(),
            cache: OnceLock::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &BTreeSet<Word> {
        &self.forbidden
    }

    /// `M = max |w| - 1` over forbidden words, `0` for a full shift.
    pub fn step(&self) -> usize {
        self.forbidden
            .iter()
            .map(Word::len)
            .max()
            .map_or(0, |l| l - 1)
    }

    pub fn is_m_step_form(&self) -> bool {
        let m = self.step();
        self.forbidden.iter().all(|w| w.len() == m + 1)
    }

    /// Contains no forbidden factor.
    pub fn is_locally_admissible(&self, w: &Word) -> bool {
        self.forbidden.iter().all(|f| !w.has_factor(f))
    }

    /// Same shift, every forbidden word padded on both sides to length `M + 1`.
    pub fn to_m_step(&self) -> Sft {
        let m = self.step();
        let mut out = BTreeSet::new();
        for f in &self.forbidden {
            let pad = m + 1 - f.len();
            for left in 0..=pad {
                for x in self.alphabet.all_words(left) {
                    for y in self.alphabet.all_words(pad - left) {
                        out.insert(x.concat(f).concat(&y));
                    }
                }
            }
        }
        Sft {
            alphabet: self.alphabet.clone(),
            forbidden: out,
            cache: OnceLock::new(),
        }
    }

    fn automaton(&self) -> &Automaton {
        self.cache.get_or_init(|| Arc::new(self.build_automaton()))
    }

    fn build_automaton(&self) -> Automaton {
        let m = self.step();
        let forbidden: HashSet<&[Symbol]> = self.forbidden.iter().map(Word::symbols).collect();
        let max_f = m + 1;
        // extends an admissible word by one symbol, checking only new suffixes
        let admissible_ext = |w: &Word, a: &Symbol| -> Option<Word> {
            let x = w.pushed(a);
            let s = x.symbols();
            let ok = (1..=max_f.min(s.len())).all(|k| !forbidden.contains(&s[s.len() - k..]));
            ok.then_some(x)
        };
        let symbols = self.alphabet.symbols();
        let mut level = vec![Word::empty()];
        for _ in 0..m {
            level = level
                .iter()
                .flat_map(|w| symbols.iter().filter_map(|a| admissible_ext(w, a)))
                .collect();
        }
        let mut graph = DirectedGraph::new();
        let mut vertex_of = HashMap::new();
        for w in &level {
            let idx = graph.add_vertex(w.to_string());
            vertex_of.insert(w.clone(), idx);
        }
        let mut edge_words = Vec::new();
        for w in &level {
            for a in &symbols {
                if let Some(x) = admissible_ext(w, a) {
                    let target = x.suffix(m);
                    if let Some(&t) = vertex_of.get(&target) {
                        graph.add_edge(vertex_of[w], t);
                        edge_words.push(x);
                    }
                }
            }
        }
        let keep = graph.essential_vertices();
        let (graph, kept) = graph.retain_vertices(&keep);
        let vertex_words: Vec<Word> = level
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(w, _)| w.clone())
            .collect();
        let edge_words: Vec<Word> = kept.iter().map(|&k| edge_words[k].clone()).collect();
        let vertex_of: HashMap<Word, usize> = vertex_words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut next = HashMap::new();
        for (e, w) in graph.edges().iter().zip(&edge_words) {
            next.insert((e.source, w.last().cloned().expect("non-empty")), e.target);
        }
        Automaton {
            es: EdgeShift {
                graph,
                vertex_words,
                edge_words,
                step: m,
            },
            vertex_of,
            next,
        }
    }

    /// Essential `M`-step graph of the shift.
    pub fn edge_shift(&self) -> EdgeShift {
        self.automaton().es.clone()
    }

    /// A right-resolving presentation: the edge shift labeled by last symbols.
    pub fn presentation(&self) -> LabeledGraph {
        self.automaton().es.labeled_graph()
    }

    pub fn is_empty(&self) -> bool {
        self.automaton().es.graph.is_empty()
    }

    /// `X_F` is irreducible iff its essential step graph is.
    pub fn is_irreducible(&self) -> bool {
        self.automaton().es.graph.is_irreducible()
    }

    /// Membership in `B(X_F)`: the word occurs in some point of the shift.
    pub fn contains_word(&self, w: &Word) -> Result<bool> {
        self.alphabet.check_word(w)?;
        if w.is_empty() {
            return Ok(true);
        }
        let aut = self.automaton();
        let m = aut.es.step;
        if aut.es.graph.is_empty() {
            return Ok(false);
        }
        if w.len() < m {
            // B is factorial and every short word extends to the right
            return Ok(aut
                .es
                .vertex_words
                .iter()
                .any(|v| v.prefix(w.len()) == *w));
        }
        let Some(&start) = aut.vertex_of.get(&w.prefix(m)) else {
            return Ok(false);
        };
        let mut v = start;
        for a in &w.symbols()[m..] {
            match aut.next.get(&(v, a.clone())) {
                Some(&t) => v = t,
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// `B_n(X_F)`. For `n = 0` this is `{ε}` even when the shift is empty.
    pub fn enumerate_language(&self, n: usize) -> BTreeSet<Word> {
        let aut = self.automaton();
        let es = &aut.es;
        if n == 0 {
            return BTreeSet::from([Word::empty()]);
        }
        if es.graph.is_empty() {
            return BTreeSet::new();
        }
        let m = es.step;
        if n <= m {
            return es.vertex_words.iter().map(|v| v.prefix(n)).collect();
        }
        let mut out_edges = vec![Vec::new(); es.graph.vertex_count()];
        for (e, w) in es.graph.edges().iter().zip(&es.edge_words) {
            out_edges[e.source].push((e.target, w.last().cloned().expect("non-empty")));
        }
        let mut level: Vec<(Word, usize)> = es
            .vertex_words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        for _ in m..n {
            level = level
                .iter()
                .flat_map(|(w, v)| {
                    out_edges[*v]
                        .iter()
                        .map(move |(t, a)| (w.pushed(a), *t))
                })
                .collect();
        }
        level.into_iter().map(|(w, _)| w).collect()
    }

    /// Whether the periodic point `u^∞` lies in the shift.
    pub fn contains_orbit(&self, orbit: &PeriodicOrbit) -> Result<bool> {
        let u = orbit.cycle();
        self.alphabet.check_word(u)?;
        let reps = (self.step() + 1).div_ceil(u.len()) + 1;
        Ok(self.is_locally_admissible(&u.pow(reps)))
    }
}
