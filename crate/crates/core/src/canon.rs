//! Canonical labeling.
//!
//! Up to [`EXHAUSTIVE_MAX_ORDER`] vertices the canonical form is the
//! relabeling whose graph6 string is lexicographically smallest. Because
//! graph6 lists the upper triangle column by column, fixing the vertex at
//! position `j` fixes column `j` completely, so the string is minimised
//! position by position with branch and bound ([`canonical_key_exhaustive`]).
//!
//! Above that order [`canonical_key_refined`] runs individualization and
//! refinement: the ordered partition is refined to an equitable one, the first
//! smallest non-singleton cell is split, and the smallest graph6 string among
//! the discrete leaves is kept. Branches that are images of explored ones under
//! known automorphisms (twin transpositions, plus those found at equal leaves)
//! are skipped. Its strings are not in general the lexicographic minimum, but
//! both functions are complete invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{bit, members, Graph, VertexSet, MAX_ORDER};
use crate::graph6;

/// Largest order for which [`canonical_key`] uses the exhaustive scan.
pub const EXHAUSTIVE_MAX_ORDER: usize = 9;

/// graph6 encoding of the canonical relabeling of a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Decodes the key back to its (canonically labeled) graph.
    pub fn graph(&self) -> Result<Graph> {
        graph6::decode(&self.0)
    }

    /// Wraps a graph6 string after checking that it is self-canonical.
    pub fn parse(text: &str) -> Result<CanonicalKey> {
        let g = graph6::decode(text)?;
        let key = canonical_key(&g);
        if key.0 != text.trim_end() {
            return Err(crate::Error::Format(format!("'{text}' is not in canonical form")));
        }
        Ok(key)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Min,
    Max,
}

type Perm = [u8; MAX_ORDER];

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    goal: Goal,
    /// Stop as soon as any string beats the initial bound.
    abort_on_improve: bool,
    use_automorphisms: bool,
    best: [i64; MAX_ORDER],
    best_perm: Perm,
    /// Set when `best` was overwritten and `best_perm` not yet updated.
    pending: bool,
    perm: Perm,
    generators: Vec<Perm>,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, goal: Goal, abort_on_improve: bool, use_automorphisms: bool) -> Self {
        let n = g.order();
        let mut identity = [0u8; MAX_ORDER];
        for (v, slot) in identity.iter_mut().enumerate().take(n) {
            *slot = v as u8;
        }
        // The identity labeling is a valid starting bound.
        let mut best = [0i64; MAX_ORDER];
        for (j, slot) in best.iter_mut().enumerate().take(n) {
            let col = g.neighbors(j) & (bit(j) - 1);
            *slot = column_value(col, j) as i64;
        }
        let mut s = Search {
            g,
            n,
            goal,
            abort_on_improve,
            use_automorphisms,
            best,
            best_perm: identity,
            pending: false,
            perm: [0; MAX_ORDER],
            generators: Vec::new(),
            aborted: false,
        };
        if use_automorphisms {
            s.generators = twin_transpositions(g);
        }
        s
    }

    #[inline]
    fn better(&self, a: i64, b: i64) -> bool {
        match self.goal {
            Goal::Min => a < b,
            Goal::Max => a > b,
        }
    }

    fn sentinel(&self) -> i64 {
        match self.goal {
            Goal::Min => i64::MAX,
            Goal::Max => -1,
        }
    }

    fn run(&mut self) {
        if self.n > 0 {
            self.dfs(0, 0, [0u32; MAX_ORDER]);
        }
    }

    /// `acc[v]` holds the column value vertex `v` would have at position `depth`.
    fn dfs(&mut self, depth: usize, used: VertexSet, acc: [u32; MAX_ORDER]) {
        if depth == self.n {
            self.leaf();
            return;
        }
        let free = self.g.vertex_set() & !used;
        let mut target = acc[free.trailing_zeros() as usize] as i64;
        for v in members(free) {
            let c = acc[v] as i64;
            if self.better(c, target) {
                target = c;
            }
        }
        if self.better(self.best[depth], target) {
            return;
        }
        if self.better(target, self.best[depth]) {
            if self.abort_on_improve {
                self.aborted = true;
                return;
            }
            self.best[depth] = target;
            let sentinel = self.sentinel();
            for slot in &mut self.best[depth + 1..self.n] {
                *slot = sentinel;
            }
            self.pending = true;
        }

        let mut explored: VertexSet = 0;
        for v in members(free) {
            if acc[v] as i64 != target {
                continue;
            }
            if self.use_automorphisms
                && explored != 0
                && equivalent_to_explored(&self.generators, self.n, &self.perm[..depth], v, explored)
            {
                continue;
            }
            explored |= bit(v);
            self.perm[depth] = v as u8;
            let row = self.g.neighbors(v);
            let mut next = [0u32; MAX_ORDER];
            for u in members(free & !bit(v)) {
                next[u] = (acc[u] << 1) | ((row >> u) & 1);
            }
            self.dfs(depth + 1, used | bit(v), next);
            if self.aborted {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        if self.pending {
            self.best_perm = self.perm;
            self.pending = false;
            return;
        }
        if !self.use_automorphisms {
            return;
        }
        // Same string as `best_perm`: the map best_perm[i] -> perm[i] is an automorphism.
        let mut sigma = [0u8; MAX_ORDER];
        let mut identity = true;
        for i in 0..self.n {
            sigma[self.best_perm[i] as usize] = self.perm[i];
            identity &= self.best_perm[i] == self.perm[i];
        }
        if !identity && !self.generators.contains(&sigma) {
            self.generators.push(sigma);
        }
    }
}

/// Is `v` in the orbit of an explored vertex under the automorphisms in
/// `generators` that fix `prefix` pointwise?
fn equivalent_to_explored(generators: &[Perm], n: usize, prefix: &[u8], v: usize, explored: VertexSet) -> bool {
    let mut parent: Perm = [0; MAX_ORDER];
    for (i, p) in parent.iter_mut().enumerate().take(n) {
        *p = i as u8;
    }
    fn find(parent: &mut Perm, mut x: usize) -> usize {
        while parent[x] as usize != x {
            let up = parent[parent[x] as usize];
            parent[x] = up;
            x = up as usize;
        }
        x
    }
    for sigma in generators {
        if prefix.iter().any(|&p| sigma[p as usize] != p) {
            continue;
        }
        for (x, &image) in sigma.iter().enumerate().take(n) {
            let a = find(&mut parent, x);
            let b = find(&mut parent, image as usize);
            if a != b {
                parent[a.max(b)] = a.min(b) as u8;
            }
        }
    }
    let root = find(&mut parent, v);
    members(explored).any(|u| find(&mut parent, u) == root)
}

/// Value of a column whose set bits are `rows` (all `< j`), read with row 0
/// as the most significant bit.
#[inline]
fn column_value(rows: VertexSet, j: usize) -> u32 {
    members(rows).fold(0, |acc, i| acc | 1 << (j - 1 - i))
}

/// Transpositions of consecutive members of each twin class
/// (`N(u) \ {v} = N(v) \ {u}`); together they generate every twin swap.
fn twin_transpositions(g: &Graph) -> Vec<Perm> {
    let n = g.order();
    let twins = |u: usize, v: usize| g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u);
    let mut rep = vec![0usize; n];
    let mut last = vec![0usize; n];
    let mut out = Vec::new();
    for v in 0..n {
        rep[v] = (0..v).find(|&u| rep[u] == u && twins(u, v)).unwrap_or(v);
        let r = rep[v];
        if r != v {
            let mut sigma = [0u8; MAX_ORDER];
            for (i, s) in sigma.iter_mut().enumerate().take(n) {
                *s = i as u8;
            }
            sigma.swap(last[r], v);
            out.push(sigma);
        }
        last[r] = v;
    }
    out
}

fn relabel_by_positions(g: &Graph, positions: &Perm) -> Graph {
    let n = g.order();
    let mut to_new = vec![0usize; n];
    for (pos, &v) in positions.iter().enumerate().take(n) {
        to_new[v as usize] = pos;
    }
    g.permuted(&to_new)
}

fn min_form(g: &Graph, use_automorphisms: bool) -> (Graph, Vec<usize>) {
    let mut s = Search::new(g, Goal::Min, false, use_automorphisms);
    s.run();
    let positions = s.best_perm;
    (
        relabel_by_positions(g, &positions),
        positions[..g.order()].iter().map(|&v| v as usize).collect(),
    )
}

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbor counts into earlier cells until the partition is
/// equitable. Every decision depends only on the cells as sets, so the result
/// commutes with relabeling.
fn refine(g: &Graph, cells: &mut Partition) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter: VertexSet = cells[s].iter().fold(0, |acc, &v| acc | bit(v));
            let mut changed = false;
            let mut i = 0;
            while i < cells.len() {
                let count = |v: &usize| (g.neighbors(*v) & splitter).count_ones();
                let first = count(&cells[i][0]);
                if cells[i].iter().all(|v| count(v) == first) {
                    i += 1;
                    continue;
                }
                let mut cell = std::mem::take(&mut cells[i]);
                cell.sort_by_key(|v| (count(v), *v));
                let mut parts: Partition = Vec::new();
                for v in cell {
                    match parts.last_mut() {
                        Some(last) if count(&last[0]) == count(&v) => last.push(v),
                        _ => parts.push(vec![v]),
                    }
                }
                let added = parts.len();
                cells.splice(i..=i, parts);
                i += added;
                changed = true;
            }
            if changed {
                continue 'outer;
            }
        }
        return;
    }
}

struct Refiner<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<(String, Perm)>,
    best: Option<(String, Perm)>,
    generators: Vec<Perm>,
    prefix: Vec<u8>,
}

impl Refiner<'_> {
    fn search(&mut self, mut cells: Partition) {
        refine(self.g, &mut cells);
        let Some(target) = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
        else {
            let mut positions: Perm = [0; MAX_ORDER];
            for (pos, cell) in cells.iter().enumerate() {
                positions[pos] = cell[0] as u8;
            }
            self.leaf(positions);
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: VertexSet = 0;
        for v in candidates {
            if explored != 0 && equivalent_to_explored(&self.generators, self.n, &self.prefix, v, explored) {
                continue;
            }
            explored |= bit(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            self.prefix.push(v as u8);
            self.search(child);
            self.prefix.pop();
        }
    }

    fn leaf(&mut self, positions: Perm) {
        let form = graph6::encode(&relabel_by_positions(self.g, &positions));
        for (seen, at) in [&self.first, &self.best].into_iter().flatten() {
            if *seen == form {
                // Both labelings give the same graph: at[i] -> positions[i] is an automorphism.
                let mut sigma: Perm = [0; MAX_ORDER];
                for i in 0..self.n {
                    sigma[at[i] as usize] = positions[i];
                }
                if (0..self.n).any(|i| sigma[i] as usize != i) && !self.generators.contains(&sigma) {
                    self.generators.push(sigma);
                }
            }
        }
        if self.first.is_none() {
            self.first = Some((form.clone(), positions));
        }
        if self.best.as_ref().is_none_or(|(b, _)| form < *b) {
            self.best = Some((form, positions));
        }
    }
}

fn refined_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (*g, Vec::new());
    }
    let mut r = Refiner { g, n, first: None, best: None, generators: twin_transpositions(g), prefix: Vec::new() };
    r.search(vec![(0..n).collect()]);
    let (_, positions) = r.best.expect("search reaches a leaf");
    (relabel_by_positions(g, &positions), positions[..n].iter().map(|&v| v as usize).collect())
}

/// Canonical relabeling of `g` together with the vertex placed at each position.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    if g.order() <= EXHAUSTIVE_MAX_ORDER {
        min_form(g, false)
    } else {
        refined_form(g)
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    CanonicalKey(graph6::encode(&canonical_form(g).0))
}

/// The lexicographically smallest graph6 string over all relabelings
/// (prefix-bound pruning only). Exponential on large symmetric graphs.
pub fn canonical_key_exhaustive(g: &Graph) -> CanonicalKey {
    CanonicalKey(graph6::encode(&min_form(g, false).0))
}

/// Canonical key by individualization and refinement.
pub fn canonical_key_refined(g: &Graph) -> CanonicalKey {
    CanonicalKey(graph6::encode(&refined_form(g).0))
}

/// Is `g` labeled exactly as its canonical form?
pub fn is_self_canonical(g: &Graph) -> bool {
    if g.order() > EXHAUSTIVE_MAX_ORDER {
        return canonical_key(g).as_str() == graph6::encode(g);
    }
    let mut s = Search::new(g, Goal::Min, true, true);
    s.run();
    !s.aborted
}

/// Is `g`'s graph6 bit string the lexicographically *largest* among its
/// relabelings? This is the acceptance test of orderly generation: such
/// strings stay maximal when their last edge is removed.
pub(crate) fn is_max_labeled(g: &Graph) -> bool {
    let mut s = Search::new(g, Goal::Max, true, true);
    s.run();
    !s.aborted
}

/// Isomorphism test with cheap invariant rejection before comparing keys.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_key(g) == canonical_key(h)
}
