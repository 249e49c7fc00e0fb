//! Small simple undirected graphs stored as per-vertex neighbor bit rows.
//!
//! A [`Graph`] is an immutable value: operations such as [`Graph::with_edge`]
//! return a modified copy. Every vertex set fits in one `u32`, which caps the
//! order at [`MAX_ORDER`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 31;

/// Bit set of vertices.
pub type VertexSet = u32;

#[inline]
pub(crate) fn bit(v: usize) -> VertexSet {
    1 << v
}

/// Iterates the members of a vertex set in increasing order.
#[inline]
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [VertexSet; MAX_ORDER],
}

/// Result of [`Graph::diameter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::capacity("vertex count", n, MAX_ORDER));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let all = g.vertex_set();
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// The path on `n` vertices, `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::OutOfDomain(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::from_edge_list(n, &edges)
    }

    /// The star `K_{1,leaves}` with the center at index 0.
    pub fn star(leaves: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edge_list(leaves + 1, &edges)
    }

    /// Builds a graph from an edge list. Duplicate pairs are accepted.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor rows, checking symmetry and loops.
    pub fn from_rows(rows: &[VertexSet]) -> Result<Graph> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let all = g.vertex_set();
        for (v, &row) in rows.iter().enumerate() {
            if row & !all != 0 {
                let bad = (row & !all).trailing_zeros() as usize;
                return Err(Error::IndexOutOfRange { vertex: bad, n });
            }
            if row & bit(v) != 0 {
                return Err(Error::Loop(v));
            }
            g.adj[v] = row;
        }
        for u in 0..n {
            for v in members(g.adj[u]) {
                if g.adj[v] & bit(u) == 0 {
                    return Err(Error::Format(format!("asymmetric rows at ({u},{v})")));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        if self.n == 0 {
            0
        } else {
            u32::MAX >> (32 - self.n)
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in members(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Missing edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn nonedges(&self) -> Vec<(usize, usize)> {
        let all = self.vertex_set();
        let mut out = Vec::new();
        for u in 0..self.n {
            let missing = !self.adj[u] & all & !bit(u);
            for v in members(missing >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Copy of the graph with edge `uv` added (`G + e`).
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        debug_assert!(u < self.n && v < self.n && u != v);
        let mut g = *self;
        g.adj[u] |= bit(v);
        g.adj[v] |= bit(u);
        g
    }

    /// Copy of the graph with edge `uv` removed (`G - e`).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = *self;
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        g
    }

    /// Deletes vertex `v`, shifting higher indices down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n, "vertex {v} out of range");
        let low = bit(v) - 1;
        let squeeze = |row: VertexSet| (row & low) | ((row >> 1) & !low);
        let mut g = Graph {
            n: self.n - 1,
            adj: [0; MAX_ORDER],
        };
        for (dst, src) in (0..self.n).filter(|&u| u != v).enumerate() {
            g.adj[dst] = squeeze(self.adj[src] & !bit(v));
        }
        g
    }

    /// The subgraph induced by `set`, with vertices renumbered in increasing order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let verts: Vec<usize> = members(set & self.vertex_set()).collect();
        let mut g = Graph {
            n: verts.len(),
            adj: [0; MAX_ORDER],
        };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &w) in verts.iter().enumerate() {
                if self.has_edge(u, w) {
                    g.adj[i] |= bit(j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_set();
        let mut g = *self;
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & all & !bit(v);
        }
        g
    }

    /// Relabels the graph: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_ORDER],
        };
        for u in 0..self.n {
            for v in members(self.adj[u]) {
                g.adj[perm[u]] |= bit(perm[v]);
            }
        }
        g
    }

    /// `self ∨ other`: disjoint union plus every cross edge. `self` keeps
    /// indices `0..n(self)`, `other` is shifted after it.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = self.vertex_set();
        let right = other.vertex_set() << self.n;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// `self ∪ other` on disjoint vertex sets, `other` shifted after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::capacity("combined vertex count", n, MAX_ORDER));
        }
        let mut g = *self;
        g.n = n;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeated(&self, copies: usize) -> Result<Graph> {
        let mut g = Graph::empty(0)?;
        for _ in 0..copies {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        self.adj[u] & self.adj[v]
    }

    /// Vertices adjacent to every other vertex.
    pub fn conical_vertices(&self) -> VertexSet {
        let all = self.vertex_set();
        (0..self.n)
            .filter(|&v| self.adj[v] | bit(v) == all)
            .fold(0, |acc, v| acc | bit(v))
    }

    /// Eccentricity-based diameter via breadth-first search from every vertex.
    pub fn diameter(&self) -> Result<Diameter> {
        if self.n == 0 {
            return Err(Error::UndefinedInput("diameter of the empty graph"));
        }
        let all = self.vertex_set();
        let mut diam = 0;
        for s in 0..self.n {
            let mut seen = bit(s);
            let mut frontier = bit(s);
            let mut dist = 0;
            while seen != all {
                let next = members(frontier).fold(0, |acc, v| acc | self.adj[v]) & !seen;
                if next == 0 {
                    return Ok(Diameter::Infinite);
                }
                seen |= next;
                frontier = next;
                dist += 1;
            }
            diam = diam.max(dist);
        }
        Ok(Diameter::Finite(diam))
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.diameter() != Ok(Diameter::Infinite)
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertex_set();
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let next = members(frontier).fold(0, |acc, v| acc | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}
