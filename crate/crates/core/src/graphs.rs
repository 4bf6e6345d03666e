//! The (extended) ADE graph catalog: bipartite graphs with a distinguished
//! base vertex, their even/odd decomposition, and exact loop counts.
//!
//! A graph here is always connected, simple and bipartite, with the
//! distinguished vertex in the even class. Vertices are ordered breadth-first
//! from the distinguished vertex, so the even block of the squared adjacency
//! matrix has the base vertex in its first row, which is exactly the row the
//! tail recursions delete.

use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Names for the catalog graphs.
///
/// `A(n)` is the path on `n` vertices, `D(n)` the fork-tailed graph on `n`
/// vertices, `F(a,b,c)` the triple point with tails of `a`, `b` and `c`
/// vertices (the distinguished vertex ends the `c`-tail; `c = 0` puts it at
/// the triple point). `A1ext(2n)` is the 2n-gon and `D1ext(n)` the affine
/// D-diagram on `n+1` vertices with the distinguished vertex at a fork end.
/// `AInf`, `DInf` and `AZZ` (the two-sided infinite path) are symbolic and
/// only exist through finite truncations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum GraphName {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    A1Ext(u32),
    D1Ext(u32),
    E6Ext,
    E7Ext,
    E8Ext,
    F(u32, u32, u32),
    AInf,
    DInf,
    AZz,
}

impl GraphName {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, GraphName::AInf | GraphName::DInf | GraphName::AZz)
    }
}

impl fmt::Display for GraphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphName::A(n) => write!(f, "A({n})"),
            GraphName::D(n) => write!(f, "D({n})"),
            GraphName::E6 => write!(f, "E6"),
            GraphName::E7 => write!(f, "E7"),
            GraphName::E8 => write!(f, "E8"),
            GraphName::A1Ext(n) => write!(f, "A1ext({n})"),
            GraphName::D1Ext(n) => write!(f, "D1ext({n})"),
            GraphName::E6Ext => write!(f, "E6ext"),
            GraphName::E7Ext => write!(f, "E7ext"),
            GraphName::E8Ext => write!(f, "E8ext"),
            GraphName::F(a, b, c) => write!(f, "F({a},{b},{c})"),
            GraphName::AInf => write!(f, "AInf"),
            GraphName::DInf => write!(f, "DInf"),
            GraphName::AZz => write!(f, "AZZ"),
        }
    }
}

impl FromStr for GraphName {
    type Err = Error;

    /// Case-insensitive, whitespace-free grammar: `A(n)`, `D(n)`, `E6`,
    /// `A1ext(2n)`, `D1ext(n)`, `E6ext`, `F(a,b,c)`, `AInf`, `DInf`, `AZZ`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let raw = s.trim();
        let lower = raw.to_ascii_lowercase();
        let unknown = || Error::UnknownGraph(raw.to_string());
        match lower.as_str() {
            "e6" => return Ok(GraphName::E6),
            "e7" => return Ok(GraphName::E7),
            "e8" => return Ok(GraphName::E8),
            "e6ext" => return Ok(GraphName::E6Ext),
            "e7ext" => return Ok(GraphName::E7Ext),
            "e8ext" => return Ok(GraphName::E8Ext),
            "ainf" => return Ok(GraphName::AInf),
            "dinf" => return Ok(GraphName::DInf),
            "azz" => return Ok(GraphName::AZz),
            _ => {}
        }
        let (head, args) = lower
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(unknown)?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| unknown())?;
        match (head, nums.as_slice()) {
            ("a", [n]) => Ok(GraphName::A(*n)),
            ("d", [n]) => Ok(GraphName::D(*n)),
            ("a1ext", [n]) => Ok(GraphName::A1Ext(*n)),
            ("d1ext", [n]) => Ok(GraphName::D1Ext(*n)),
            ("f", [a, b, c]) => Ok(GraphName::F(*a, *b, *c)),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for GraphName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Finite bipartite graph with a distinguished vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    adjacency: Vec<Vec<u8>>,
    distinguished: usize,
    parity: Vec<Parity>,
}

impl BipartiteGraph {
    /// Build from an edge list, re-ordering vertices breadth-first from the
    /// distinguished vertex and deriving parities from BFS depth.
    ///
    /// Panics if the data is not a connected simple bipartite graph; every
    /// constructor in this module goes through here, so a violation is a bug
    /// in the catalog and not a user error.
    pub fn from_edges(vertex_count: usize, distinguished: usize, edges: &[(usize, usize)]) -> Self {
        assert!(distinguished < vertex_count);
        let mut adj_list = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            assert!(u < vertex_count && v < vertex_count);
            adj_list[u].push(v);
            adj_list[v].push(u);
        }
        // BFS relabel: distinguished vertex first, then by depth, ties by
        // original index.
        let mut order = Vec::with_capacity(vertex_count);
        let mut depth = vec![usize::MAX; vertex_count];
        depth[distinguished] = 0;
        order.push(distinguished);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut next: Vec<usize> = adj_list[u]
                .iter()
                .copied()
                .filter(|&v| depth[v] == usize::MAX)
                .collect();
            next.sort_unstable();
            next.dedup();
            for v in next {
                depth[v] = depth[u] + 1;
                order.push(v);
            }
        }
        assert_eq!(order.len(), vertex_count, "graph must be connected");
        let mut relabel = vec![0usize; vertex_count];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut adjacency = vec![vec![0u8; vertex_count]; vertex_count];
        for &(u, v) in edges {
            let (a, b) = (relabel[u], relabel[v]);
            adjacency[a][b] = 1;
            adjacency[b][a] = 1;
        }
        let parity: Vec<Parity> = order
            .iter()
            .map(|&old| {
                if depth[old] % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .collect();
        // Bipartiteness: every edge joins opposite parities.
        for (u, row) in adjacency.iter().enumerate() {
            for (v, &e) in row.iter().enumerate() {
                if e == 1 {
                    assert_ne!(parity[u], parity[v], "edge inside a parity class");
                }
            }
        }
        BipartiteGraph {
            adjacency,
            distinguished: 0,
            parity,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    pub fn parity(&self, v: usize) -> Parity {
        self.parity[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().map(|&e| e as usize).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in (u + 1)..self.vertex_count() {
                if self.adjacency[u][v] == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Even/odd block data of the squared adjacency matrix: `M` maps odd to
/// even, `L = M M^t` acts on the even class (distinguished vertex first)
/// and `N = M^t M` on the odd class.
#[derive(Clone, Debug)]
pub struct BipartiteDecomposition {
    pub m: Vec<Vec<i64>>,
    pub l: Vec<Vec<i64>>,
    pub n: Vec<Vec<i64>>,
    /// Vertex indices of the even class, distinguished first.
    pub even_vertices: Vec<usize>,
    /// Vertex indices of the odd class.
    pub odd_vertices: Vec<usize>,
}

/// Split a graph into its `M`, `L`, `N` blocks.
pub fn decompose(g: &BipartiteGraph) -> BipartiteDecomposition {
    let even_vertices: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.parity(v) == Parity::Even)
        .collect();
    let odd_vertices: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.parity(v) == Parity::Odd)
        .collect();
    let m: Vec<Vec<i64>> = even_vertices
        .iter()
        .map(|&u| {
            odd_vertices
                .iter()
                .map(|&v| g.adjacency()[u][v] as i64)
                .collect()
        })
        .collect();
    let rows = even_vertices.len();
    let cols = odd_vertices.len();
    let mut l = vec![vec![0i64; rows]; rows];
    for i in 0..rows {
        for j in 0..rows {
            l[i][j] = (0..cols).map(|k| m[i][k] * m[j][k]).sum();
        }
    }
    let mut n = vec![vec![0i64; cols]; cols];
    for i in 0..cols {
        for j in 0..cols {
            n[i][j] = (0..rows).map(|k| m[k][i] * m[k][j]).sum();
        }
    }
    BipartiteDecomposition {
        m,
        l,
        n,
        even_vertices,
        odd_vertices,
    }
}

/// Number of closed walks of the given even length based at the
/// distinguished vertex, computed by exact integer matrix-vector powers.
///
/// Odd lengths are rejected rather than reported as zero, to catch caller
/// bugs early.
pub fn loop_count(g: &BipartiteGraph, length: usize) -> Result<BigInt, Error> {
    if !length.is_multiple_of(2) {
        return Err(Error::OddLoopLength(length));
    }
    Ok(loop_counts_upto(g, length / 2).pop().expect("nonempty"))
}

/// Loop counts `loop(0), loop(2), ..., loop(2*k_max)` in one sweep.
pub fn loop_counts_upto(g: &BipartiteGraph, k_max: usize) -> Vec<BigInt> {
    let n = g.vertex_count();
    let mut v = vec![BigInt::zero(); n];
    v[g.distinguished()] = BigInt::one();
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(BigInt::one());
    for _ in 0..k_max {
        for _ in 0..2 {
            let mut next = vec![BigInt::zero(); n];
            for (u, row) in g.adjacency().iter().enumerate() {
                if v[u].is_zero() {
                    continue;
                }
                for (w, &e) in row.iter().enumerate() {
                    if e == 1 {
                        next[w] += &v[u];
                    }
                }
            }
            v = next;
        }
        out.push(v[g.distinguished()].clone());
    }
    out
}

/// Entry `(1,1)` of the full adjacency power, including odd powers.
/// Only used by tests and the verification suite; `loop_count` is the API.
pub fn adjacency_power_entry(g: &BipartiteGraph, power: usize) -> BigInt {
    let n = g.vertex_count();
    let mut v = vec![BigInt::zero(); n];
    v[g.distinguished()] = BigInt::one();
    for _ in 0..power {
        let mut next = vec![BigInt::zero(); n];
        for (u, row) in g.adjacency().iter().enumerate() {
            if v[u].is_zero() {
                continue;
            }
            for (w, &e) in row.iter().enumerate() {
                if e == 1 {
                    next[w] += &v[u];
                }
            }
        }
        v = next;
    }
    v[g.distinguished()].clone()
}

/// Build a finite catalog graph.
pub fn build_graph(name: &GraphName) -> Result<BipartiteGraph, Error> {
    match *name {
        GraphName::A(n) => {
            if n < 1 {
                return Err(Error::InvalidParameter("A(n) needs n >= 1".into()));
            }
            Ok(path_graph(n as usize))
        }
        GraphName::D(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter("D(n) needs n >= 3".into()));
            }
            Ok(fork_graph(n as usize, false))
        }
        GraphName::E6 => build_graph(&GraphName::F(2, 1, 2)),
        GraphName::E7 => build_graph(&GraphName::F(2, 1, 3)),
        GraphName::E8 => build_graph(&GraphName::F(2, 1, 4)),
        GraphName::E6Ext => build_graph(&GraphName::F(2, 2, 2)),
        GraphName::E7Ext => build_graph(&GraphName::F(3, 1, 3)),
        GraphName::E8Ext => build_graph(&GraphName::F(2, 1, 5)),
        GraphName::A1Ext(v) => {
            if v < 4 || v % 2 != 0 {
                return Err(Error::InvalidParameter(
                    "A1ext(2n) needs an even vertex count >= 4; the 2-gon is not simple".into(),
                ));
            }
            Ok(cycle_graph(v as usize))
        }
        GraphName::D1Ext(n) => {
            if n < 4 {
                return Err(Error::InvalidParameter("D1ext(n) needs n >= 4".into()));
            }
            Ok(affine_d_graph(n as usize))
        }
        GraphName::F(a, b, c) => {
            if a < 1 || b < 1 {
                return Err(Error::InvalidParameter(
                    "F(a,b,c) needs a >= 1 and b >= 1".into(),
                ));
            }
            Ok(star_graph(a as usize, b as usize, c as usize))
        }
        GraphName::AInf | GraphName::DInf | GraphName::AZz => {
            Err(Error::SymbolicGraph(name.to_string()))
        }
    }
}

/// Finite stand-in for a symbolic graph, valid for loop lengths `2k < size`.
///
/// Closed walks of length `2k` never see vertices farther than `k` from the
/// base vertex, so any truncation of size at least `2k + 2` is exact inside
/// that window.
pub fn truncate_infinite(name: &GraphName, size: u32) -> Result<BipartiteGraph, Error> {
    if size < 4 {
        return Err(Error::InvalidParameter(
            "truncation size must be >= 4".into(),
        ));
    }
    match name {
        GraphName::AInf => Ok(path_graph(size as usize)),
        GraphName::DInf => Ok(fork_graph(size as usize, true)),
        GraphName::AZz => Ok(cycle_graph(2 * size as usize)),
        other => Err(Error::FiniteGraph(other.to_string())),
    }
}

/// Path on `n` vertices, distinguished at one end.
fn path_graph(n: usize) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    BipartiteGraph::from_edges(n, 0, &edges)
}

/// Cycle on `n` (even) vertices.
fn cycle_graph(n: usize) -> BipartiteGraph {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    BipartiteGraph::from_edges(n, 0, &edges)
}

/// D-diagram on `n` vertices: a path with two extra vertices at the far
/// end. With `fork_end_distinguished` the base vertex sits on one of the
/// fork tines instead of the tail end (the D-infinity truncation).
fn fork_graph(n: usize, fork_end_distinguished: bool) -> BipartiteGraph {
    // 0 - 1 - ... - (n-3), with (n-2) and (n-1) hanging off (n-3).
    let mut edges: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
    edges.push((n - 3, n - 2));
    edges.push((n - 3, n - 1));
    let distinguished = if fork_end_distinguished { n - 1 } else { 0 };
    BipartiteGraph::from_edges(n, distinguished, &edges)
}

/// Triple point with tails of `a`, `b`, `c` vertices; distinguished vertex
/// ends the `c`-tail (or is the triple point when `c = 0`).
fn star_graph(a: usize, b: usize, c: usize) -> BipartiteGraph {
    let n = a + b + c + 1;
    let center = 0usize;
    let mut edges = Vec::new();
    let mut next = 1usize;
    let mut tail = |len: usize, edges: &mut Vec<(usize, usize)>| -> Option<usize> {
        let mut prev = center;
        let mut last = None;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            last = Some(next);
            next += 1;
        }
        last
    };
    tail(a, &mut edges);
    tail(b, &mut edges);
    let c_end = tail(c, &mut edges);
    let distinguished = c_end.unwrap_or(center);
    BipartiteGraph::from_edges(n, distinguished, &edges)
}

/// Affine D-diagram on `n + 1` vertices: fork at both ends of a path,
/// distinguished vertex on a tine of the first fork.
fn affine_d_graph(n: usize) -> BipartiteGraph {
    // Central path c_0 .. c_{n-4} (n-3 vertices); tines 1,2 at c_0 and
    // tines 3,4 at the far end. n = 4 degenerates to a star on 5 vertices.
    let path_len = n - 3;
    let total = n + 1;
    let c0 = 0usize;
    let mut edges: Vec<(usize, usize)> = (0..path_len - 1).map(|i| (i, i + 1)).collect();
    let t1 = path_len;
    let t2 = path_len + 1;
    let t3 = path_len + 2;
    let t4 = path_len + 3;
    edges.push((c0, t1));
    edges.push((c0, t2));
    edges.push((path_len - 1, t3));
    edges.push((path_len - 1, t4));
    BipartiteGraph::from_edges(total, t1, &edges)
}

/// The finite instantiation ranges the verification suite runs over.
pub fn standard_catalog() -> Vec<GraphName> {
    let mut names = Vec::new();
    for n in 2..=12 {
        names.push(GraphName::A(n));
    }
    for n in 4..=12 {
        names.push(GraphName::D(n));
    }
    names.push(GraphName::E6);
    names.push(GraphName::E7);
    names.push(GraphName::E8);
    for n in 2..=8 {
        names.push(GraphName::A1Ext(2 * n));
    }
    for n in 4..=12 {
        names.push(GraphName::D1Ext(n));
    }
    names.push(GraphName::E6Ext);
    names.push(GraphName::E7Ext);
    names.push(GraphName::E8Ext);
    names
}

/// The symbolic entries, handled through truncations.
pub fn symbolic_catalog() -> Vec<GraphName> {
    vec![GraphName::AInf, GraphName::DInf, GraphName::AZz]
}
