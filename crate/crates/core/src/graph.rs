//! Directed multigraphs with their essential parts and strongly connected components.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Stable id, assigned in construction order and kept through vertex removal.
    pub id: usize,
}

/// A finite directed graph. Parallel edges and self-loops are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    next_id: usize,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        DirectedGraph {
            vertices: names.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    /// Adds an edge and returns its id.
    pub fn add_edge(&mut self, source: usize, target: usize) -> usize {
        assert!(
            source < self.vertices.len() && target < self.vertices.len(),
            "edge endpoint out of range"
        );
        let id = self.next_id;
        self.next_id += 1;
        self.edges.push(Edge { source, target, id });
        id
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Graph whose entry `A[i][j]` counts the edges `i → j`. Vertices are named `1..n`.
    pub fn from_adjacency(a: &IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension("adjacency matrix must be square".into()));
        }
        let n = a.rows();
        let mut g = DirectedGraph::with_vertices((1..=n).map(|i| i.to_string()));
        for i in 0..n {
            for j in 0..n {
                let e = a.get(i, j);
                if e.is_negative() {
                    return Err(Error::NegativeEntry { row: i, col: j });
                }
                let count = e
                    .to_usize()
                    .ok_or_else(|| Error::Invalid(format!("entry [{i}][{j}] too large")))?;
                for _ in 0..count {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for e in &self.edges {
            let cur = a.get(e.source, e.target) + BigInt::from(1);
            a.set(e.source, e.target, cur);
        }
        a
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            d[e.source] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            d[e.target] += 1;
        }
        d
    }

    /// Keeps the vertices flagged in `keep` and the edges between them.
    /// Returns the new graph and, for each kept edge, its index in `self.edges`.
    pub fn retain_vertices(&self, keep: &[bool]) -> (DirectedGraph, Vec<usize>) {
        let mut remap = vec![usize::MAX; self.vertex_count()];
        let mut vertices = Vec::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if keep[i] {
                remap[i] = vertices.len();
                vertices.push(name.clone());
            }
        }
        let mut edges = Vec::new();
        let mut kept = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if keep[e.source] && keep[e.target] {
                edges.push(Edge {
                    source: remap[e.source],
                    target: remap[e.target],
                    id: e.id,
                });
                kept.push(k);
            }
        }
        (
            DirectedGraph {
                vertices,
                edges,
                next_id: self.next_id,
            },
            kept,
        )
    }

    /// Vertices that survive iterated removal of stranded vertices
    /// (no incoming or no outgoing edge).
    pub fn essential_vertices(&self) -> Vec<bool> {
        let n = self.vertex_count();
        let mut alive = vec![true; n];
        let mut indeg = self.in_degrees();
        let mut outdeg = self.out_degrees();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            out_edges[e.source].push(k);
            in_edges[e.target].push(k);
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &k in &out_edges[v] {
                let t = self.edges[k].target;
                if t != v && alive[t] {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
            for &k in &in_edges[v] {
                let s = self.edges[k].source;
                if s != v && alive[s] {
                    outdeg[s] -= 1;
                    if outdeg[s] == 0 {
                        stack.push(s);
                    }
                }
            }
        }
        alive
    }

    pub fn essentialize(&self) -> DirectedGraph {
        self.retain_vertices(&self.essential_vertices()).0
    }

    pub fn is_essential(&self) -> bool {
        self.essential_vertices().iter().all(|&a| a)
    }

    /// Strongly connected components as vertex lists, in order of their least vertex.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        // iterative Tarjan
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut next)) = call.last_mut() {
                if *next < adj[v].len() {
                    let w = adj[v][*next];
                    *next += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Maximal strongly connected subgraphs that carry at least one edge.
    pub fn scc_decompose(&self) -> Vec<DirectedGraph> {
        self.strong_components()
            .into_iter()
            .filter_map(|comp| {
                let mut keep = vec![false; self.vertex_count()];
                for &v in &comp {
                    keep[v] = true;
                }
                let (g, _) = self.retain_vertices(&keep);
                (g.edge_count() > 0).then_some(g)
            })
            .collect()
    }

    /// Strongly connected with at least one edge.
    pub fn is_irreducible(&self) -> bool {
        self.vertex_count() > 0
            && self.edge_count() > 0
            && self.strong_components().len() == 1
    }

    /// The whole graph is one directed cycle, so its edge shift is a single orbit.
    pub fn is_single_cycle(&self) -> bool {
        self.is_irreducible()
            && self.out_degrees().iter().all(|&d| d == 1)
            && self.in_degrees().iter().all(|&d| d == 1)
    }
}

/// Irreducibility of a nonnegative square matrix, read as an adjacency matrix.
pub fn matrix_is_irreducible(a: &IntMatrix) -> bool {
    let n = a.rows();
    if !a.is_square() || n == 0 {
        return false;
    }
    let mut g = DirectedGraph::with_vertices((0..n).map(|i| i.to_string()));
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j).is_zero() {
                g.add_edge(i, j);
            }
        }
    }
    g.is_irreducible()
}
