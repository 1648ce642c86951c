//! Immutable undirected simple graphs on dense vertex ids `0..n`.
//!
//! Every graph keeps both sorted neighbour lists and bitset rows, so
//! adjacency queries are O(1) and neighbourhood set algebra is word-parallel.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{malformed, Result};

/// A set of vertex ids, kept sorted ascending.
pub type VertexSet = Vec<usize>;

/// Disjoint non-empty blocks covering a ground set.
pub type Partition = Vec<VertexSet>;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(malformed!("edge ({u}, {v}) has an endpoint >= {n}"));
            }
            if u == v {
                return Err(malformed!("self-loop at vertex {u}"));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph::from_rows(rows))
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_rows(vec![FixedBitSet::with_capacity(n); n])
    }

    pub fn complete(n: usize) -> Graph {
        Graph::edgeless(n).complement()
    }

    /// Rows must be symmetric and loop-free.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Graph {
        let n = rows.len();
        let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!((0..n).all(|u| !rows[u].contains(u)));
        Graph { n, m, adj, rows }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let all = full_set(self.n);
        let rows = (0..self.n)
            .map(|u| {
                let mut r = all.clone();
                r.difference_with(&self.rows[u]);
                r.set(u, false);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Flips every adjacency with both endpoints in `w`.
    pub fn partial_complement(&self, w: &[usize]) -> Graph {
        let mut inside = FixedBitSet::with_capacity(self.n);
        inside.extend(w.iter().copied());
        let mut rows = self.rows.clone();
        for &u in w {
            rows[u].symmetric_difference_with(&inside);
            rows[u].set(u, false);
        }
        Graph::from_rows(rows)
    }

    /// The subgraph induced by `w`. The returned vector maps new ids to old
    /// ones; it is `w` sorted, so old-to-new is the position in it.
    pub fn induced(&self, w: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if w.is_empty() {
            return Err(malformed!("induced subgraph on an empty vertex set"));
        }
        let mut to_old = w.to_vec();
        to_old.sort_unstable();
        to_old.dedup();
        if let Some(&bad) = to_old.iter().find(|&&v| v >= self.n) {
            return Err(malformed!("vertex {bad} out of range"));
        }
        Ok((self.induced_sorted(&to_old), to_old))
    }

    /// Induced subgraph on a sorted, duplicate-free, in-range id list.
    pub(crate) fn induced_sorted(&self, to_old: &[usize]) -> Graph {
        let k = to_old.len();
        let mut to_new = vec![usize::MAX; self.n];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = i;
        }
        let rows = to_old
            .iter()
            .map(|&v| {
                let mut r = FixedBitSet::with_capacity(k);
                for &u in &self.adj[v] {
                    let nu = to_new[u];
                    if nu != usize::MAX {
                        r.insert(nu);
                    }
                }
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![FixedBitSet::with_capacity(self.n); self.n];
        for u in 0..self.n {
            for &v in &self.adj[u] {
                rows[perm[u]].insert(perm[v]);
            }
        }
        Graph::from_rows(rows)
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }
}

pub(crate) fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// Connected components, each sorted, blocks ordered by smallest member.
pub fn connected_components(g: &Graph) -> Partition {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut block = Vec::new();
        while let Some(u) = stack.pop() {
            block.push(u);
            for &v in g.neighbours(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

/// Connected components of the complement, without building it.
pub fn co_connected_components(g: &Graph) -> Partition {
    let mut unvisited = full_set(g.n());
    let mut out = Vec::new();
    let mut stack = Vec::new();
    while let Some(s) = unvisited.minimum() {
        unvisited.set(s, false);
        stack.push(s);
        let mut block = Vec::new();
        while let Some(u) = stack.pop() {
            block.push(u);
            let mut next = unvisited.clone();
            next.difference_with(g.row(u));
            for v in next.ones() {
                unvisited.set(v, false);
                stack.push(v);
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

/// True iff every vertex outside `x` is adjacent to all of `x` or to none of it.
pub fn is_module(g: &Graph, x: &[usize]) -> bool {
    let mut inside = FixedBitSet::with_capacity(g.n());
    inside.extend(x.iter().copied());
    let size = inside.count_ones(..);
    (0..g.n()).filter(|&u| !inside.contains(u)).all(|u| {
        let hits = g.row(u).intersection_count(&inside);
        hits == 0 || hits == size
    })
}
