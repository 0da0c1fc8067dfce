//! Finite simple graphs: the semiring operations (disjoint union, strong
//! product, complement), named generators, exact combinatorial invariants,
//! fractional clique covers and small-scale homomorphism search.
//!
//! Vertices are `0..n`; adjacency is stored as one bitset row per vertex.
//! Product vertex order is row-major (left-factor index major), fixed so that
//! witnesses are reproducible.

mod alpha;
pub mod cliques;
mod hom;
mod parse;

pub use alpha::{alpha_exact, clique_cover_exact, DEFAULT_ALPHA_BUDGET};
pub use cliques::{chifrac, dr_cover_from_fractional, DrCover, FractionalCover};
pub use hom::{exists_homomorphism, is_isomorphic_small, HomCert, HOM_SEARCH_LIMIT};
pub use parse::{parse_edge_list, parse_graph6};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Finite simple graph: symmetric loop-free adjacency on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` gives K0, which is valid
    /// everywhere; every bound evaluates to 0 on it by convention.
    pub fn new(n: usize) -> Self {
        Graph { n, rows: vec![BitSet::new(n); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Param(format!(
                "vertex out of range: edge ({u},{v}) on {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::Param(format!("loop edge ({u},{u}) not allowed")));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Non-neighbors of `v` excluding `v` itself: N_Ḡ(v).
    pub fn non_neighbors(&self, v: usize) -> BitSet {
        let mut s = BitSet::full(self.n);
        s.difference_with(&self.rows[v]);
        s.remove(v);
        s
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            g.rows[u] = self.non_neighbors(u);
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v).unwrap();
        }
        g
    }

    /// Strong product; vertex `(g, h)` maps to index `g * other.n() + h`.
    pub fn strong_product(&self, other: &Graph) -> Graph {
        let n = self.n * other.n;
        let mut g = Graph::new(n);
        for a in 0..self.n {
            for b in 0..other.n {
                let i = a * other.n + b;
                for c in 0..self.n {
                    for d in 0..other.n {
                        let j = c * other.n + d;
                        if j <= i {
                            continue;
                        }
                        let g_adj_or_eq = a == c || self.has_edge(a, c);
                        let h_adj_or_eq = b == d || other.has_edge(b, d);
                        if g_adj_or_eq && h_adj_or_eq {
                            g.add_edge(i, j).unwrap();
                        }
                    }
                }
            }
        }
        g
    }

    /// k-th strong power (k ≥ 1). `G^⊠1 = G`.
    pub fn strong_power(&self, k: u32) -> Graph {
        assert!(k >= 1, "strong power requires k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.strong_product(self);
        }
        acc
    }

    /// Check whether `set` is independent in `self`.
    pub fn is_independent(&self, set: &BitSet) -> bool {
        set.iter().all(|v| self.rows[v].is_disjoint(set))
    }

    /// Check whether `set` induces a clique.
    pub fn is_clique(&self, set: &BitSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.rows[v])
        })
    }

    /// Canonical emit: header plus sorted edge list.
    pub fn to_edge_list_string(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Named generator families with canonical vertex orderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Cycle on k ≥ 3 vertices, edges {i, i+1 mod k}.
    Cycle(usize),
    /// Complete graph K_d.
    Complete(usize),
    /// Empty graph K̄_d.
    Empty(usize),
    /// Kneser graph K(n, k), n ≥ 2k: vertices are the k-subsets of
    /// {0..n} in lexicographic order, edges join disjoint subsets.
    Kneser(usize, usize),
    /// Petersen graph: outer cycle 0..4, inner pentagram 5..9, spokes i—i+5.
    Petersen,
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Cycle(k) => {
            if k < 3 {
                return Err(Error::Param(format!("cycle requires k >= 3, got {k}")));
            }
            let mut g = Graph::new(k);
            for i in 0..k {
                g.add_edge(i, (i + 1) % k)?;
            }
            Ok(g)
        }
        Family::Complete(d) => {
            let mut g = Graph::new(d);
            for i in 0..d {
                for j in i + 1..d {
                    g.add_edge(i, j)?;
                }
            }
            Ok(g)
        }
        Family::Empty(d) => Ok(Graph::new(d)),
        Family::Kneser(n, k) => {
            if k == 0 || n < 2 * k {
                return Err(Error::Param(format!(
                    "kneser requires 1 <= k and n >= 2k, got n={n} k={k}"
                )));
            }
            let subsets = k_subsets(n, k);
            let mut g = Graph::new(subsets.len());
            for i in 0..subsets.len() {
                for j in i + 1..subsets.len() {
                    if subsets[i] & subsets[j] == 0 {
                        g.add_edge(i, j)?;
                    }
                }
            }
            Ok(g)
        }
        Family::Petersen => {
            let mut g = Graph::new(10);
            for i in 0..5 {
                g.add_edge(i, (i + 1) % 5)?;
                g.add_edge(5 + i, 5 + (i + 2) % 5)?;
                g.add_edge(i, 5 + i)?;
            }
            Ok(g)
        }
    }
}

/// All k-subsets of {0..n} as bitmasks, in lexicographic order of their
/// sorted element lists.
fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}
