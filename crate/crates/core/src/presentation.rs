//! Labeled graphs as presentations of sofic shifts: right-resolving
//! determinization, follower-set separation, minimal presentations,
//! synchronizing words and recovery of a forbidden-word description.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::sft::Sft;
use crate::word::{Alphabet, Symbol, Word};

/// Longest step searched for when recognizing a sofic shift as finite type.
pub const MAX_SFT_STEP: usize = 64;

/// A directed graph with one symbol per edge.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    graph: DirectedGraph,
    labels: Vec<Symbol>,
}

/// Deterministic automaton whose states are sets of graph vertices.
/// Every state accepts; a missing transition means the word dies.
#[derive(Clone, Debug)]
pub(crate) struct SubsetDfa {
    pub symbols: Vec<Symbol>,
    pub states: Vec<Vec<usize>>,
    pub delta: Vec<Vec<Option<usize>>>,
}

impl SubsetDfa {
    pub fn step_word(&self, mut q: usize, w: &Word) -> Option<usize> {
        for a in w.symbols() {
            let i = self.symbols.binary_search(a).ok()?;
            q = self.delta[q][i]?;
        }
        Some(q)
    }

    /// Coarsest partition of states with equal languages. Class ids are
    /// numbered in order of first appearance.
    pub fn classes(&self) -> Vec<usize> {
        moore_classes(&self.delta)
    }
}

pub(crate) fn moore_classes(delta: &[Vec<Option<usize>>]) -> Vec<usize> {
    let n = delta.len();
    let mut class = vec![0usize; n];
    let mut count = usize::from(n > 0);
    loop {
        let mut ids: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
        let mut next = vec![0usize; n];
        for q in 0..n {
            let mut sig = Vec::with_capacity(delta[q].len() + 1);
            sig.push(Some(class[q]));
            sig.extend(delta[q].iter().map(|t| t.map(|t| class[t])));
            let len = ids.len();
            next[q] = *ids.entry(sig).or_insert(len);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

/// Whether the states `p` of `a` and `q` of `b` accept the same words.
pub(crate) fn dfa_states_equivalent(a: &SubsetDfa, p: usize, b: &SubsetDfa, q: usize) -> bool {
    let symbols: BTreeSet<&Symbol> = a.symbols.iter().chain(&b.symbols).collect();
    let step = |d: &SubsetDfa, s: Option<usize>, x: &Symbol| {
        s.and_then(|s| d.symbols.binary_search(x).ok().and_then(|i| d.delta[s][i]))
    };
    let mut seen = HashSet::from([(Some(p), Some(q))]);
    let mut queue = VecDeque::from([(Some(p), Some(q))]);
    while let Some((s, t)) = queue.pop_front() {
        for x in &symbols {
            let pair = (step(a, s, x), step(b, t, x));
            match pair {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => return false,
                _ => {
                    if seen.insert(pair) {
                        queue.push_back(pair);
                    }
                }
            }
        }
    }
    true
}

impl LabeledGraph {
    pub fn new(graph: DirectedGraph, labels: Vec<Symbol>) -> Result<Self> {
        if graph.edge_count() != labels.len() {
            return Err(Error::Invalid(format!(
                "{} edges but {} labels",
                graph.edge_count(),
                labels.len()
            )));
        }
        Ok(LabeledGraph { graph, labels })
    }

    /// Builds a graph from vertex names and `(from, to, label)` triples.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut graph = DirectedGraph::new();
        let mut index = HashMap::new();
        for &v in vertices {
            if index.insert(v, graph.add_vertex(v)).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let mut labels = Vec::new();
        for &(s, t, a) in edges {
            let lookup = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("unknown vertex `{v}`")))
            };
            graph.add_edge(lookup(s)?, lookup(t)?);
            labels.push(Symbol::new(a));
        }
        Self::new(graph, labels)
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn labels(&self) -> &[Symbol] {
        &self.labels
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.graph.vertices()[v]
    }

    /// Symbols used as labels, sorted.
    pub fn symbols(&self) -> Vec<Symbol> {
        let set: BTreeSet<&Symbol> = self.labels.iter().collect();
        set.into_iter().cloned().collect()
    }

    /// `(label, target)` pairs for each vertex, in edge order.
    pub fn out_edges(&self) -> Vec<Vec<(Symbol, usize)>> {
        let mut out = vec![Vec::new(); self.graph.vertex_count()];
        for (e, a) in self.graph.edges().iter().zip(&self.labels) {
            out[e.source].push((a.clone(), e.target));
        }
        out
    }

    pub fn restrict(&self, keep: &[bool]) -> LabeledGraph {
        let (graph, kept) = self.graph.retain_vertices(keep);
        let labels = kept.iter().map(|&k| self.labels[k].clone()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn essentialize(&self) -> LabeledGraph {
        self.restrict(&self.graph.essential_vertices())
    }

    pub fn is_right_resolving(&self) -> bool {
        let mut seen = HashSet::new();
        self.graph
            .edges()
            .iter()
            .zip(&self.labels)
            .all(|(e, a)| seen.insert((e.source, a)))
    }

    /// Vertex sets reachable by reading words from the seeds.
    pub(crate) fn subset_dfa(&self, symbols: &[Symbol], seeds: Vec<Vec<usize>>) -> SubsetDfa {
        let out = self.out_edges();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states = Vec::new();
        let mut queue = VecDeque::new();
        for mut s in seeds {
            s.sort_unstable();
            s.dedup();
            if !s.is_empty() && !index.contains_key(&s) {
                index.insert(s.clone(), states.len());
                states.push(s.clone());
                queue.push_back(s);
            }
        }
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let mut order = Vec::new();
        while let Some(s) = queue.pop_front() {
            let mut row = Vec::with_capacity(symbols.len());
            for a in symbols {
                let mut t: Vec<usize> = s
                    .iter()
                    .flat_map(|&v| out[v].iter().filter(|(b, _)| b == a).map(|&(_, t)| t))
                    .collect();
                t.sort_unstable();
                t.dedup();
                if t.is_empty() {
                    row.push(None);
                    continue;
                }
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        index.insert(t.clone(), id);
                        states.push(t.clone());
                        queue.push_back(t);
                        id
                    }
                };
                row.push(Some(id));
            }
            order.push((index[&s], row));
        }
        delta.resize(states.len(), Vec::new());
        for (id, row) in order {
            delta[id] = row;
        }
        SubsetDfa {
            symbols: symbols.to_vec(),
            states,
            delta,
        }
    }

    /// Automaton for `B(X)`: the essential part read from the full vertex set.
    /// Returns `None` when the presented shift is empty.
    pub(crate) fn language_dfa(&self) -> Option<SubsetDfa> {
        let g = self.essentialize();
        if g.graph.is_empty() {
            return None;
        }
        let all: Vec<usize> = (0..g.graph.vertex_count()).collect();
        Some(g.subset_dfa(&g.symbols(), vec![all]))
    }

    /// A right-resolving presentation of the same shift. Right-resolving
    /// inputs are returned essentialized and otherwise unchanged.
    pub fn determinize(&self) -> LabeledGraph {
        let g = self.essentialize();
        if g.is_right_resolving() {
            return g;
        }
        let n = g.graph.vertex_count();
        let mut seeds = vec![(0..n).collect::<Vec<_>>()];
        seeds.extend((0..n).map(|v| vec![v]));
        let dfa = g.subset_dfa(&g.symbols(), seeds);
        let names = dfa.states.iter().map(|s| {
            if s.len() == 1 {
                g.vertex_name(s[0]).to_string()
            } else {
                let parts: Vec<&str> = s.iter().map(|&v| g.vertex_name(v)).collect();
                format!("{{{}}}", parts.join(","))
            }
        });
        dfa_to_graph(&dfa, names.collect()).essentialize()
    }

    /// Merges follower-equivalent vertices of a right-resolving graph.
    /// Each class keeps the name of its first vertex.
    pub fn merge_follower_equivalent(&self) -> Result<LabeledGraph> {
        if !self.is_right_resolving() {
            return Err(Error::Precondition("graph is not right-resolving".into()));
        }
        let class = moore_classes(&self.vertex_dfa().delta);
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (v, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = v;
            }
        }
        let mut graph = DirectedGraph::with_vertices(rep.iter().map(|&v| self.vertex_name(v)));
        let mut labels = Vec::new();
        let out = self.out_edges();
        for (c, &v) in rep.iter().enumerate() {
            for (a, t) in &out[v] {
                graph.add_edge(c, class[*t]);
                labels.push(a.clone());
            }
        }
        Ok(LabeledGraph { graph, labels })
    }

    /// The graph read as an automaton with one state per vertex. Only
    /// meaningful for right-resolving graphs.
    fn vertex_dfa(&self) -> SubsetDfa {
        let symbols = self.symbols();
        let n = self.graph.vertex_count();
        let mut delta = vec![vec![None; symbols.len()]; n];
        for (e, a) in self.graph.edges().iter().zip(&self.labels) {
            let i = symbols.binary_search(a).expect("label listed");
            delta[e.source][i] = Some(e.target);
        }
        SubsetDfa {
            symbols,
            states: (0..n).map(|v| vec![v]).collect(),
            delta,
        }
    }

    /// Distinct vertices have distinct follower sets.
    pub fn is_follower_separated(&self) -> bool {
        let n = self.graph.vertex_count();
        let dfa = self.subset_dfa(&self.symbols(), (0..n).map(|v| vec![v]).collect());
        let class = dfa.classes();
        // singleton seeds occupy the first n states
        let firsts: HashSet<usize> = (0..n).map(|v| class[v]).collect();
        firsts.len() == n
    }

    /// Words of length at most `depth` readable from each vertex.
    pub fn follower_table(&self, depth: usize) -> Vec<BTreeSet<Word>> {
        let out = self.out_edges();
        (0..self.graph.vertex_count())
            .map(|v| {
                let mut table = BTreeSet::from([Word::empty()]);
                let mut level = vec![(Word::empty(), v)];
                for _ in 0..depth {
                    level = level
                        .iter()
                        .flat_map(|(w, u)| out[*u].iter().map(move |(a, t)| (w.pushed(a), *t)))
                        .collect();
                    table.extend(level.iter().map(|(w, _)| w.clone()));
                }
                table
            })
            .collect()
    }

    /// The minimal right-resolving presentation of an irreducible sofic shift.
    pub fn minimal_right_resolving(&self) -> Result<LabeledGraph> {
        let d = self.determinize();
        if d.graph.is_empty() {
            return Err(Error::Precondition("the presented shift is empty".into()));
        }
        let m = d.merge_follower_equivalent()?;
        if m.graph.is_irreducible() {
            return Ok(m);
        }
        let start = Word::from_symbols([m.labels[0].clone()]);
        let sync = m.extend_to_synchronizing(&start)?;
        let v = *m
            .focus_set(&sync)?
            .first()
            .expect("synchronizing word focuses");
        let comp = m
            .graph
            .strong_components()
            .into_iter()
            .find(|c| c.contains(&v))
            .expect("every vertex lies in a component");
        let mut keep = vec![false; m.graph.vertex_count()];
        for &u in &comp {
            keep[u] = true;
        }
        let core = m.restrict(&keep);
        if !core.graph.is_irreducible() || !core.same_shift(&m) {
            return Err(Error::Precondition(
                "the presented shift is reducible; minimize each irreducible component separately"
                    .into(),
            ));
        }
        core.merge_follower_equivalent()
    }

    /// Terminal vertices of the paths presenting `w`, sorted.
    pub fn focus_set(&self, w: &Word) -> Result<Vec<usize>> {
        let out = self.out_edges();
        let mut current: Vec<usize> = (0..self.graph.vertex_count()).collect();
        for a in w.symbols() {
            let mut next: Vec<usize> = current
                .iter()
                .flat_map(|&v| out[v].iter().filter(|(b, _)| b == a).map(|&(_, t)| t))
                .collect();
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        if current.is_empty() {
            return Err(Error::NotInLanguage(w.clone()));
        }
        Ok(current)
    }

    /// Extends `w` to the right until every path presenting it ends at one vertex.
    pub fn extend_to_synchronizing(&self, w: &Word) -> Result<Word> {
        if !self.is_right_resolving() || !self.is_follower_separated() {
            return Err(Error::Precondition(
                "graph must be right-resolving and follower-separated".into(),
            ));
        }
        let dfa = self.vertex_dfa();
        let mut w = w.clone();
        loop {
            let t = self.focus_set(&w)?;
            if t.len() == 1 {
                return Ok(w);
            }
            let v = distinguishing_word(&dfa, t[0], t[1]).ok_or_else(|| {
                Error::Precondition("two vertices share a follower set".into())
            })?;
            w = w.concat(&v);
        }
    }

    /// `w ∈ B(X)` for the presented shift `X`.
    pub fn contains_word(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        self.language_dfa()
            .and_then(|d| d.step_word(0, w))
            .is_some()
    }

    /// `B_n(X)`.
    pub fn words(&self, n: usize) -> BTreeSet<Word> {
        if n == 0 {
            return BTreeSet::from([Word::empty()]);
        }
        let Some(dfa) = self.language_dfa() else {
            return BTreeSet::new();
        };
        let mut level = vec![(Word::empty(), 0usize)];
        for _ in 0..n {
            level = level
                .iter()
                .flat_map(|(w, q)| {
                    let dfa = &dfa;
                    dfa.delta[*q]
                        .iter()
                        .enumerate()
                        .filter_map(move |(i, t)| t.map(|t| (w.pushed(&dfa.symbols[i]), t)))
                })
                .collect();
        }
        level.into_iter().map(|(w, _)| w).collect()
    }

    /// `|B_n(X)|`, exact.
    pub fn count_words(&self, n: usize) -> BigInt {
        let Some(dfa) = self.language_dfa() else {
            return if n == 0 { BigInt::one() } else { BigInt::zero() };
        };
        let mut count = vec![BigInt::zero(); dfa.states.len()];
        count[0] = BigInt::one();
        for _ in 0..n {
            let mut next = vec![BigInt::zero(); count.len()];
            for (q, c) in count.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for t in dfa.delta[q].iter().flatten() {
                    next[*t] += c;
                }
            }
            count = next;
        }
        count.into_iter().sum()
    }

    /// Both graphs present the same shift space.
    pub fn same_shift(&self, other: &LabeledGraph) -> bool {
        match (self.language_dfa(), other.language_dfa()) {
            (None, None) => true,
            (Some(a), Some(b)) => dfa_states_equivalent(&a, 0, &b, 0),
            _ => false,
        }
    }

    /// A forbidden-word description of the presented shift, if it is of
    /// finite type with step at most [`MAX_SFT_STEP`]. Symbols of `alphabet`
    /// that never occur become forbidden words of length one.
    pub fn to_sft(&self, alphabet: &Alphabet) -> Result<Sft> {
        let mut alpha = alphabet.clone();
        for a in self.symbols() {
            alpha.insert(a);
        }
        let Some(dfa) = self.language_dfa() else {
            let all = alpha.symbols().into_iter().map(|a| Word::from_symbols([a]));
            return Sft::new(alpha.clone(), all.collect::<Vec<_>>());
        };
        let step = sft_step(&dfa)?;
        let symbols = alpha.symbols();
        let mut forbidden = Vec::new();
        let words_of = |n: usize| -> HashSet<Word> {
            let mut level = vec![(Word::empty(), 0usize)];
            for _ in 0..n {
                level = level
                    .iter()
                    .flat_map(|(w, q)| {
                        let dfa = &dfa;
                        dfa.delta[*q]
                            .iter()
                            .enumerate()
                            .filter_map(move |(i, t)| t.map(|t| (w.pushed(&dfa.symbols[i]), t)))
                    })
                    .collect();
            }
            level.into_iter().map(|(w, _)| w).collect()
        };
        let mut prev = words_of(1);
        for a in &symbols {
            let w = Word::from_symbols([a.clone()]);
            if !prev.contains(&w) {
                forbidden.push(w);
            }
        }
        for k in 2..=step + 1 {
            let cur = words_of(k);
            let mut sorted: Vec<&Word> = prev.iter().collect();
            sorted.sort();
            for x in sorted {
                for b in &symbols {
                    let tail = x.suffix(k - 2).pushed(b);
                    if prev.contains(&tail) {
                        let xb = x.pushed(b);
                        if !cur.contains(&xb) {
                            forbidden.push(xb);
                        }
                    }
                }
            }
            prev = cur;
        }
        Sft::new(alpha, forbidden)
    }
}

/// Smallest `L` such that all words of length `L` are synchronizing in the
/// minimized automaton of `B(X)`, i.e. `X` is an `L`-step shift.
fn sft_step(dfa: &SubsetDfa) -> Result<usize> {
    let class = dfa.classes();
    let k = class.iter().max().map_or(0, |m| m + 1);
    let mut delta = vec![vec![None; dfa.symbols.len()]; k];
    for (q, row) in dfa.delta.iter().enumerate() {
        delta[class[q]] = row.iter().map(|t| t.map(|t| class[t])).collect();
    }
    let mut level: BTreeSet<Vec<usize>> = BTreeSet::from([(0..k).collect()]);
    let mut seen: HashSet<BTreeSet<Vec<usize>>> = HashSet::new();
    for l in 0..=MAX_SFT_STEP {
        if level.iter().all(|s| s.len() == 1) {
            return Ok(l);
        }
        if !seen.insert(level.clone()) {
            break;
        }
        let mut next = BTreeSet::new();
        for s in &level {
            for i in 0..dfa.symbols.len() {
                let mut t: Vec<usize> = s.iter().filter_map(|&q| delta[q][i]).collect();
                t.sort_unstable();
                t.dedup();
                if !t.is_empty() {
                    next.insert(t);
                }
            }
        }
        level = next;
    }
    Err(Error::NotFiniteType {
        max_step: MAX_SFT_STEP,
    })
}

/// Shortest word (symbols tried in order) readable from exactly one of `p`, `q`.
fn distinguishing_word(dfa: &SubsetDfa, p: usize, q: usize) -> Option<Word> {
    type Pair = (Option<usize>, Option<usize>);
    let start: Pair = (Some(p), Some(q));
    let mut parent: HashMap<Pair, (Pair, usize)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = HashSet::from([start]);
    let path = |mut node: Pair, parent: &HashMap<Pair, (Pair, usize)>| {
        let mut syms = Vec::new();
        while node != start {
            let (prev, i) = parent[&node];
            syms.push(dfa.symbols[i].clone());
            node = prev;
        }
        syms.reverse();
        syms
    };
    while let Some(node) = queue.pop_front() {
        for i in 0..dfa.symbols.len() {
            let next: Pair = (
                node.0.and_then(|s| dfa.delta[s][i]),
                node.1.and_then(|s| dfa.delta[s][i]),
            );
            match next {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => {
                    let mut syms = path(node, &parent);
                    syms.push(dfa.symbols[i].clone());
                    return Some(Word::from(syms));
                }
                _ => {
                    if seen.insert(next) {
                        parent.insert(next, (node, i));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

fn dfa_to_graph(dfa: &SubsetDfa, names: Vec<String>) -> LabeledGraph {
    let mut graph = DirectedGraph::with_vertices(names);
    let mut labels = Vec::new();
    for (q, row) in dfa.delta.iter().enumerate() {
        for (i, t) in row.iter().enumerate() {
            if let Some(t) = t {
                graph.add_edge(q, *t);
                labels.push(dfa.symbols[i].clone());
            }
        }
    }
    LabeledGraph { graph, labels }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_vertex: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (e, a) in self.graph.edges().iter().zip(&self.labels) {
            by_vertex
                .entry(e.source)
                .or_default()
                .push(format!("-{a}-> {}", self.vertex_name(e.target)));
        }
        write!(f, "{{")?;
        for (i, name) in self.graph.vertices().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let edges = by_vertex.remove(&i).unwrap_or_default();
            write!(f, "{name}: [{}]", edges.join(", "))?;
        }
        write!(f, "}}")
    }
}
