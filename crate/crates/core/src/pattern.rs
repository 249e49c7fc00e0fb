//! Detection of `K_s ∨ P_k` subgraphs.
//!
//! A copy is a (not necessarily induced) subgraph: an `s`-clique, the
//! *center*, together with a path on `k` vertices, the *path part*, lying in
//! the common neighborhood of the center. [`contains_pattern`] enumerates
//! centers and runs a memoised path search on their common neighborhoods;
//! [`contains_pattern_oracle`] tries every ordered vertex selection and shares
//! nothing with it but [`Graph::has_edge`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph, VertexSet};

/// Largest vertex set the path search accepts.
pub const PATH_SEARCH_CAP: usize = 24;

/// The target graph `K_s ∨ P_k`.
///
/// For `k <= 2` the join is a clique, and the value is stored in the
/// normalized clique form `(p - 2, 2)` (or `(0, 1)` for `K_1`), so that
/// `K1vP2`, `K2vP1` and `K3` compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSpec {
    s: usize,
    k: usize,
}

impl PatternSpec {
    pub fn new(s: usize, k: usize) -> Result<PatternSpec> {
        if k == 0 {
            return Err(Error::OutOfDomain("path part needs k >= 1".into()));
        }
        Ok(if k <= 2 {
            PatternSpec::normalized_clique(s + k)
        } else {
            PatternSpec { s, k }
        })
    }

    fn normalized_clique(p: usize) -> PatternSpec {
        if p == 1 {
            PatternSpec { s: 0, k: 1 }
        } else {
            PatternSpec { s: p - 2, k: 2 }
        }
    }

    pub fn clique(p: usize) -> Result<PatternSpec> {
        if p == 0 {
            return Err(Error::OutOfDomain("clique pattern needs p >= 1".into()));
        }
        Ok(PatternSpec::normalized_clique(p))
    }

    pub fn path(k: usize) -> Result<PatternSpec> {
        PatternSpec::new(0, k)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.s + self.k
    }

    pub fn is_clique(&self) -> bool {
        self.k <= 2
    }

    /// `K_1 ∨ self`.
    pub fn cone(&self) -> PatternSpec {
        PatternSpec::new(self.s + 1, self.k).expect("k >= 1 already holds")
    }

    /// The pattern `H` with `self = K_1 ∨ H`, when `s >= 1`.
    pub fn apex_removed(&self) -> Option<PatternSpec> {
        if self.is_clique() {
            (self.order() >= 2).then(|| PatternSpec::normalized_clique(self.order() - 1))
        } else {
            (self.s >= 1).then(|| PatternSpec { s: self.s - 1, k: self.k })
        }
    }

    /// The pattern as a graph: the clique on `0..s`, the path on `s..s+k`.
    pub fn graph(&self) -> Result<Graph> {
        Graph::complete(self.s)?.join(&Graph::path(self.k)?)
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clique() {
            write!(f, "K{}", self.order())
        } else if self.s == 0 {
            write!(f, "P{}", self.k)
        } else {
            write!(f, "K{}vP{}", self.s, self.k)
        }
    }
}

impl fmt::Debug for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<PatternSpec> {
        let bad = || Error::PatternSyntax(text.to_string());
        let lower = text.to_ascii_lowercase();
        let number = |digits: &str| -> Result<usize> {
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            digits.parse().map_err(|_| bad())
        };
        if let Some(rest) = lower.strip_prefix('p') {
            return PatternSpec::path(number(rest)?).map_err(|_| bad());
        }
        let rest = lower.strip_prefix('k').ok_or_else(bad)?;
        match rest.split_once("vp") {
            Some((s, k)) => PatternSpec::new(number(s)?, number(k)?).map_err(|_| bad()),
            None => PatternSpec::clique(number(rest)?).map_err(|_| bad()),
        }
    }
}

impl Serialize for PatternSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PatternSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The image of one copy of `K_s ∨ P_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub center: Vec<usize>,
    /// Path vertices in path order.
    pub path: Vec<usize>,
}

impl PatternWitness {
    /// Re-checks the witness against `g` edge by edge.
    pub fn validate(&self, g: &Graph, p: &PatternSpec) -> bool {
        if self.center.len() != p.s() || self.path.len() != p.k() {
            return false;
        }
        let all: Vec<usize> = self.center.iter().chain(&self.path).copied().collect();
        if all.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let set = all.iter().fold(0u32, |acc, &v| acc | bit(v));
        if set.count_ones() as usize != all.len() {
            return false;
        }
        let center_ok = self.center.iter().enumerate().all(|(i, &c)| {
            self.center[i + 1..].iter().all(|&d| g.has_edge(c, d))
                && self.path.iter().all(|&v| g.has_edge(c, v))
        });
        center_ok && self.path.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    pub fn vertices(&self) -> VertexSet {
        self.center.iter().chain(&self.path).fold(0, |acc, &v| acc | bit(v))
    }
}

/// Does `within` contain `k` distinct vertices forming a path in `g`?
pub fn has_path_of_order(g: &Graph, within: VertexSet, k: usize) -> Result<bool> {
    Ok(find_path(g, within, k)?.is_some())
}

enum DeadStates {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

impl DeadStates {
    fn new(width: usize) -> Self {
        if width <= 12 {
            DeadStates::Dense(vec![0; 1 << width])
        } else {
            DeadStates::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn contains(&self, mask: u32, end: usize) -> bool {
        let ends = match self {
            DeadStates::Dense(v) => v[mask as usize],
            DeadStates::Sparse(m) => m.get(&mask).copied().unwrap_or(0),
        };
        ends & bit(end) != 0
    }

    #[inline]
    fn insert(&mut self, mask: u32, end: usize) {
        match self {
            DeadStates::Dense(v) => v[mask as usize] |= bit(end),
            DeadStates::Sparse(m) => *m.entry(mask).or_insert(0) |= bit(end),
        }
    }
}

struct PathSearch {
    adj: Vec<u32>,
    k: usize,
    dead: DeadStates,
    stack: Vec<usize>,
}

impl PathSearch {
    /// Depth-first extension over (visited set, endpoint) states; a state that
    /// failed once is never expanded again.
    fn extend(&mut self, mask: u32, end: usize, len: usize) -> bool {
        if len == self.k {
            return true;
        }
        for next in members(self.adj[end] & !mask) {
            let m = mask | bit(next);
            if self.dead.contains(m, next) {
                continue;
            }
            self.stack.push(next);
            if self.extend(m, next, len + 1) {
                return true;
            }
            self.stack.pop();
            self.dead.insert(m, next);
        }
        false
    }
}

/// A path on `k` vertices inside `within`, in path order, if one exists.
pub fn find_path(g: &Graph, within: VertexSet, k: usize) -> Result<Option<Vec<usize>>> {
    let within = within & g.vertex_set();
    let verts: Vec<usize> = members(within).collect();
    let width = verts.len();
    if width > PATH_SEARCH_CAP {
        return Err(Error::capacity("path search vertex set", width, PATH_SEARCH_CAP));
    }
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k > width {
        return Ok(None);
    }
    let adj: Vec<u32> = verts
        .iter()
        .map(|&v| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &u)| g.has_edge(v, u))
                .fold(0, |acc, (i, _)| acc | bit(i))
        })
        .collect();
    let mut search = PathSearch {
        adj,
        k,
        dead: DeadStates::new(width),
        stack: Vec::with_capacity(k),
    };
    for start in 0..width {
        search.stack.clear();
        search.stack.push(start);
        if search.extend(bit(start), start, 1) {
            return Ok(Some(search.stack.iter().map(|&i| verts[i]).collect()));
        }
    }
    Ok(None)
}

/// Visits the cliques of order `size` in lexicographic order of their sorted
/// vertex lists, passing each with its full common neighborhood, and stops at
/// the first `Some`. Cliques whose common neighborhood has fewer than
/// `min_common` vertices are skipped.
fn visit_cliques<R>(
    g: &Graph,
    size: usize,
    min_common: usize,
    visit: &mut impl FnMut(&[usize], VertexSet) -> Result<Option<R>>,
) -> Result<Option<R>> {
    fn rec<R>(
        g: &Graph,
        size: usize,
        min_common: usize,
        chosen: &mut Vec<usize>,
        extend: VertexSet,
        common: VertexSet,
        visit: &mut impl FnMut(&[usize], VertexSet) -> Result<Option<R>>,
    ) -> Result<Option<R>> {
        if chosen.len() == size {
            return visit(chosen, common);
        }
        if chosen.len() + (extend.count_ones() as usize) < size {
            return Ok(None);
        }
        for v in members(extend) {
            let common_v = common & g.neighbors(v);
            if (common_v.count_ones() as usize) < min_common {
                continue;
            }
            let above = !((bit(v) << 1) - 1);
            chosen.push(v);
            let found = rec(g, size, min_common, chosen, extend & g.neighbors(v) & above, common_v, visit)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
    let all = g.vertex_set();
    let mut chosen = Vec::with_capacity(size);
    rec(g, size, min_common, &mut chosen, all, all, visit)
}

/// Finds a copy of `p` in `g`.
pub fn contains_pattern(g: &Graph, p: &PatternSpec) -> Result<Option<PatternWitness>> {
    if p.order() > g.order() {
        return Ok(None);
    }
    if p.is_clique() {
        let found = visit_cliques(g, p.order(), 0, &mut |clique, _| Ok(Some(clique.to_vec())))?;
        return Ok(found.map(|mut clique| {
            let path = clique.split_off(p.s());
            PatternWitness { center: clique, path }
        }));
    }
    visit_cliques(g, p.s(), p.k(), &mut |center, common| {
        Ok(find_path(g, common, p.k())?.map(|path| PatternWitness {
            center: center.to_vec(),
            path,
        }))
    })
}

/// Exhaustive reference check: tries every ordered choice of `s` center
/// vertices followed by `k` path vertices.
pub fn contains_pattern_oracle(g: &Graph, p: &PatternSpec) -> bool {
    fn place(g: &Graph, s: usize, total: usize, slots: &mut Vec<usize>) -> bool {
        let i = slots.len();
        if i == total {
            return true;
        }
        for x in 0..g.order() {
            if slots.contains(&x) {
                continue;
            }
            let fits = if i < s {
                slots.iter().all(|&c| g.has_edge(c, x))
            } else {
                slots[..s].iter().all(|&c| g.has_edge(c, x)) && (i == s || g.has_edge(slots[i - 1], x))
            };
            if !fits {
                continue;
            }
            slots.push(x);
            if place(g, s, total, slots) {
                return true;
            }
            slots.pop();
        }
        false
    }
    let total = p.order();
    if total > g.order() {
        return false;
    }
    place(g, p.s(), total, &mut Vec::with_capacity(total))
}
