//! Topological entropy from word counts or Perron roots, plus graph
//! constructions that rescale or boost entropy within a flow class.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::matrix::IntMatrix;
use crate::moves::MovePipeline;
use crate::presentation::LabeledGraph;
use crate::sft::Sft;
use crate::word::{Symbol, Word};

const PERRON_TOLERANCE: f64 = 1e-12;
const PERRON_MAX_ITERATIONS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyMethod {
    WordCount,
    Perron,
}

impl fmt::Display for EntropyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyMethod::WordCount => "wordcount",
            EntropyMethod::Perron => "perron",
        })
    }
}

/// Entropy in bits per symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyEstimate {
    pub value: f64,
    pub method: EntropyMethod,
    /// Word length used by [`EntropyMethod::WordCount`].
    pub n_used: Option<usize>,
    /// Set when the shift is empty; `value` is then `0`.
    pub empty_shift: bool,
}

/// `log2` of a positive big integer without overflowing `f64`.
pub fn log2_big(x: &BigInt) -> f64 {
    assert_eq!(x.sign(), Sign::Plus, "log2 of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("64 bits").log2() + shift as f64
}

/// `(1/n) log2 |B_n(X)|` with `|B_n|` counted exactly on the presentation.
pub fn entropy_word_count(lg: &LabeledGraph, n: usize) -> Result<EntropyEstimate> {
    if n == 0 {
        return Err(Error::Invalid("word length must be at least 1".into()));
    }
    let count = lg.count_words(n);
    let empty = count.is_zero();
    Ok(EntropyEstimate {
        value: if empty { 0.0 } else { log2_big(&count) / n as f64 },
        method: EntropyMethod::WordCount,
        n_used: Some(n),
        empty_shift: empty,
    })
}

pub fn entropy_word_count_sft(x: &Sft, n: usize) -> Result<EntropyEstimate> {
    entropy_word_count(&x.presentation(), n)
}

/// Spectral radius of a nonnegative square matrix, the maximum over its
/// strongly connected components.
pub fn spectral_radius(a: &IntMatrix) -> Result<f64> {
    graph_spectral_radius(&DirectedGraph::from_adjacency(a)?)
}

/// Spectral radius of the adjacency matrix, computed on the edge list.
pub fn graph_spectral_radius(g: &DirectedGraph) -> Result<f64> {
    let mut index = vec![usize::MAX; g.vertex_count()];
    let mut component = vec![usize::MAX; g.vertex_count()];
    let comps = g.strong_components();
    for (c, comp) in comps.iter().enumerate() {
        for (i, &v) in comp.iter().enumerate() {
            index[v] = i;
            component[v] = c;
        }
    }
    let mut rows: Vec<Vec<Vec<(usize, f64)>>> = comps.iter().map(|c| vec![Vec::new(); c.len()]).collect();
    for e in g.edges() {
        let c = component[e.source];
        if c == component[e.target] {
            rows[c][index[e.source]].push((index[e.target], 1.0));
        }
    }
    let mut best = 0.0f64;
    for comp in rows {
        let edges: usize = comp.iter().map(Vec::len).sum();
        let rho = match edges {
            0 => continue,
            // a strongly connected graph with as many edges as vertices is one cycle
            e if e == comp.len() => 1.0,
            _ => irreducible_perron_root(&comp)?,
        };
        best = best.max(rho);
    }
    Ok(best)
}

/// Power iteration on `A + I`, which is primitive when `A` is irreducible.
/// Stops when the Collatz-Wielandt bounds agree to the tolerance.
fn irreducible_perron_root(a: &[Vec<(usize, f64)>]) -> Result<f64> {
    let n = a.len();
    let mut x = vec![1.0f64; n];
    for _ in 0..PERRON_MAX_ITERATIONS {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + a[i].iter().map(|&(j, aij)| aij * x[j]).sum::<f64>())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| v / norm).collect();
        if hi - lo <= PERRON_TOLERANCE * hi {
            return Ok((hi + lo) / 2.0 - 1.0);
        }
    }
    Err(Error::NoConvergence {
        iterations: PERRON_MAX_ITERATIONS,
    })
}

/// `log2` of the spectral radius of the adjacency matrix.
pub fn perron_entropy(a: &IntMatrix) -> Result<EntropyEstimate> {
    if !a.is_square() {
        return Err(Error::Dimension("adjacency matrix must be square".into()));
    }
    graph_entropy(&DirectedGraph::from_adjacency(a)?)
}

/// [`perron_entropy`] of the graph's adjacency matrix without building it.
pub fn graph_entropy(g: &DirectedGraph) -> Result<EntropyEstimate> {
    let rho = graph_spectral_radius(g)?;
    Ok(EntropyEstimate {
        value: if rho > 1.0 { rho.log2() } else { 0.0 },
        method: EntropyMethod::Perron,
        n_used: None,
        empty_shift: rho == 0.0,
    })
}

/// Entropy of a sofic shift from a right-resolving presentation; other
/// presentations are determinized first.
pub fn sofic_entropy(lg: &LabeledGraph) -> Result<EntropyEstimate> {
    let rr = if lg.is_right_resolving() {
        lg.essentialize()
    } else {
        lg.determinize()
    };
    graph_entropy(rr.graph())
}

pub fn sft_entropy(x: &Sft) -> Result<EntropyEstimate> {
    graph_entropy(&x.edge_shift().graph)
}

/// Replaces every edge by a path of `n` edges. The edge shift of the result
/// is flow equivalent to the original and has `1/n` of its entropy.
pub fn scale_entropy_construction(g: &DirectedGraph, n: usize) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::Invalid("scale factor must be at least 1".into()));
    }
    if n == 1 {
        return Ok(g.clone());
    }
    let mut out = DirectedGraph::with_vertices(g.vertices().iter().cloned());
    for e in g.edges() {
        let mut prev = e.source;
        for k in 1..n {
            let v = out.add_vertex(format!("{}~{}", e.id, k));
            out.add_edge(prev, v);
            prev = v;
        }
        out.add_edge(prev, e.target);
    }
    Ok(out)
}

/// Contracts `b a^i` for `i = count, …, 1`, longest first. When `{a, b}`
/// spans a full 2-shift inside `x` the result contains a full
/// `count`-shift on the new symbols, so its entropy is at least `log2 count`.
pub fn boost_by_words(x: &Sft, a: &Symbol, b: &Symbol, count: usize) -> Result<MovePipeline> {
    if a == b {
        return Err(Error::Invalid("the two symbols must differ".into()));
    }
    if count == 0 {
        return Err(Error::Invalid("need at least one word to contract".into()));
    }
    // {a, b}^ℤ ⊆ X exactly when no forbidden word is spelled with a and b alone
    if let Some(w) = x
        .forbidden()
        .iter()
        .find(|w| w.symbols().iter().all(|s| s == a || s == b))
    {
        return Err(Error::Precondition(format!(
            "the full shift on {{{a}, {b}}} is not embedded: `{w}` is forbidden"
        )));
    }
    for s in [a, b] {
        if !x.alphabet().contains(s) {
            return Err(Error::UnknownSymbol(s.clone()));
        }
    }
    let mut p = MovePipeline::new(x.clone());
    for i in (1..=count).rev() {
        let w = Word::from_symbols([b.clone()]).concat(&Word::from_symbols([a.clone()]).pow(i));
        p.contract_word(&w)?;
    }
    Ok(p)
}

/// With `M = 2^bits`, contracts the words `b a^i`, `i = M, …, 1`.
/// The result has entropy at least `bits`.
pub fn boost_entropy_construction(
    x: &Sft,
    a: &Symbol,
    b: &Symbol,
    bits: u32,
) -> Result<MovePipeline> {
    let m = 1usize
        .checked_shl(bits)
        .filter(|&m| m <= 64)
        .ok_or_else(|| Error::Unsupported(format!("target of {bits} bits is too large")))?;
    boost_by_words(x, a, b, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> f64 {
        ((1.0 + 5f64.sqrt()) / 2.0).log2()
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn word_count_examples() {
        let full = Sft::from_chars("01", &[]).unwrap();
        assert_eq!(entropy_word_count_sft(&full, 10).unwrap().value, 1.0);
        let gm = Sft::from_chars("01", &["11"]).unwrap();
        assert!((entropy_word_count_sft(&gm, 24).unwrap().value - golden()).abs() < 0.05);
        let orbit = Sft::from_chars("ab", &["aa", "bb"]).unwrap();
        assert!((entropy_word_count_sft(&orbit, 10).unwrap().value - 0.1).abs() < 1e-12);
        let empty = Sft::from_chars("01", &["0", "1"]).unwrap();
        let e = entropy_word_count_sft(&empty, 5).unwrap();
        assert!(e.empty_shift && e.value == 0.0);
    }

    #[test]
    fn perron_examples() {
        assert_eq!(perron_entropy(&m(&[vec![2]])).unwrap().value, 1.0);
        let gm = perron_entropy(&m(&[vec![1, 1], vec![1, 0]])).unwrap().value;
        assert!((gm - golden()).abs() < 1e-9);
        assert_eq!(perron_entropy(&m(&[vec![1, 1], vec![0, 1]])).unwrap().value, 0.0);
        assert!(perron_entropy(&m(&[vec![0, 1], vec![0, 0]])).unwrap().empty_shift);
    }

    #[test]
    fn perron_on_periodic_matrix() {
        // period 2, eigenvalues ±√2
        let a = m(&[vec![0, 2], vec![1, 0]]);
        assert!((perron_entropy(&a).unwrap().value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn sofic_examples() {
        let even = LabeledGraph::from_edges(
            &["V1", "V2"],
            &[("V1", "V1", "1"), ("V1", "V2", "0"), ("V2", "V1", "0")],
        )
        .unwrap();
        assert!((sofic_entropy(&even).unwrap().value - golden()).abs() < 1e-9);
        let full = LabeledGraph::from_edges(&["W"], &[("W", "W", "0"), ("W", "W", "1")]).unwrap();
        assert_eq!(sofic_entropy(&full).unwrap().value, 1.0);
        let cycle = LabeledGraph::from_edges(&["A", "B"], &[("A", "B", "0"), ("B", "A", "1")]).unwrap();
        assert_eq!(sofic_entropy(&cycle).unwrap().value, 0.0);
    }

    #[test]
    fn scaling() {
        let two = DirectedGraph::from_adjacency(&m(&[vec![2]])).unwrap();
        let g = scale_entropy_construction(&two, 2).unwrap();
        assert!((perron_entropy(&g.adjacency()).unwrap().value - 0.5).abs() < 1e-9);
        assert_eq!(scale_entropy_construction(&two, 1).unwrap(), two);
        let gm = DirectedGraph::from_adjacency(&m(&[vec![1, 1], vec![1, 0]])).unwrap();
        let g = scale_entropy_construction(&gm, 3).unwrap();
        assert!((perron_entropy(&g.adjacency()).unwrap().value - 0.231414).abs() < 1e-6);
    }

    #[test]
    fn boost_rejects_missing_full_shift() {
        let gm = Sft::from_chars("01", &["11"]).unwrap();
        let err = boost_entropy_construction(&gm, &Symbol::from('0'), &Symbol::from('1'), 1);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn boost_one_bit() {
        let full = Sft::from_chars("ab", &[]).unwrap();
        let p = boost_entropy_construction(&full, &Symbol::from('a'), &Symbol::from('b'), 1).unwrap();
        assert!(entropy_word_count_sft(p.target(), 10).unwrap().value >= 1.0);
    }
}
