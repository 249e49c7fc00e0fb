//! Isomorph-free generation and the saturation-number search.
//!
//! Generation is orderly: the graphs kept at each edge count are those whose
//! graph6 bit string is the lexicographically *largest* over all their
//! relabelings. Deleting the last edge (in graph6 bit order) of such a graph
//! leaves another one, so every class is reached exactly once by adding, to
//! each kept graph, one edge placed after its current last edge and keeping
//! the child iff it is again maximal. Public outputs are converted to the
//! lexicographically smallest labeling, which is the canonical key.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, is_max_labeled, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternSpec;
use crate::saturation::{pruning_applies, saturated, structural_check};

/// Largest order accepted by the generator.
pub const MAX_ENUMERATION_ORDER: usize = 12;

/// Position of pair `(i, j)`, `i < j`, in the graph6 bit string.
fn pair_position(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn pair_at(pos: usize) -> (usize, usize) {
    let mut j = 1;
    while pair_position(0, j + 1) <= pos {
        j += 1;
    }
    (pos - pair_position(0, j), j)
}

fn last_edge_position(g: &Graph) -> Option<usize> {
    (1..g.order()).rev().find_map(|j| {
        let below = g.neighbors(j) & ((1 << j) - 1);
        (below != 0).then(|| pair_position(31 - below.leading_zeros() as usize, j))
    })
}

/// Level-by-level orderly generator on a fixed order.
#[derive(Clone, Copy, Debug)]
pub struct Generator {
    n: usize,
    max_degree: Option<usize>,
    parallel: bool,
}

impl Generator {
    pub fn new(n: usize) -> Result<Generator> {
        if n > MAX_ENUMERATION_ORDER {
            return Err(Error::capacity("enumeration order", n, MAX_ENUMERATION_ORDER));
        }
        Ok(Generator { n, max_degree: None, parallel: true })
    }

    /// Only generate graphs of maximum degree at most `d`.
    pub fn max_degree(mut self, d: usize) -> Generator {
        self.max_degree = Some(d);
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Generator {
        self.parallel = parallel;
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn pairs(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Children of a maximal graph, in increasing position of the new edge.
    pub fn children(&self, g: &Graph) -> Vec<Graph> {
        let start = last_edge_position(g).map_or(0, |p| p + 1);
        (start..self.pairs())
            .filter_map(|pos| {
                let (i, j) = pair_at(pos);
                if let Some(d) = self.max_degree {
                    if g.degree(i) >= d || g.degree(j) >= d {
                        return None;
                    }
                }
                let child = g.with_edge(i, j);
                is_max_labeled(&child).then_some(child)
            })
            .collect()
    }

    pub fn next_level(&self, level: &[Graph]) -> Vec<Graph> {
        if self.parallel {
            level.par_iter().flat_map_iter(|g| self.children(g)).collect()
        } else {
            level.iter().flat_map(|g| self.children(g)).collect()
        }
    }

    /// The single graph of level 0.
    pub fn root(&self) -> Graph {
        Graph::empty(self.n).expect("order checked in new")
    }

    /// Iterates the levels `m = 0, 1, ...` as `(m, graphs)`; graphs are in
    /// their maximal labeling. Each level is built when requested.
    pub fn levels(&self) -> Levels {
        Levels { generator: *self, previous: None, m: 0 }
    }

    /// Maximal representatives with exactly `m` edges below the given roots,
    /// which must all have the same edge count `from <= m`.
    pub fn level_below(&self, roots: Vec<Graph>, from: usize, m: usize) -> Vec<Graph> {
        let mut level = roots;
        for _ in from..m {
            if level.is_empty() {
                break;
            }
            level = self.next_level(&level);
        }
        level
    }

    pub fn level(&self, m: usize) -> Vec<Graph> {
        if m > self.pairs() {
            return Vec::new();
        }
        self.level_below(vec![self.root()], 0, m)
    }
}

pub struct Levels {
    generator: Generator,
    previous: Option<Arc<Vec<Graph>>>,
    m: usize,
}

impl Iterator for Levels {
    type Item = (usize, Arc<Vec<Graph>>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.m > self.generator.pairs() {
            return None;
        }
        let level = match &self.previous {
            None => vec![self.generator.root()],
            Some(prev) => self.generator.next_level(prev),
        };
        if level.is_empty() {
            return None;
        }
        let level = Arc::new(level);
        self.previous = Some(Arc::clone(&level));
        self.m += 1;
        Some((self.m - 1, level))
    }
}

/// Canonical keys of a set of graphs, sorted and deduplicated.
pub fn sorted_keys<'a>(graphs: impl IntoParallelIterator<Item = &'a Graph>) -> Vec<CanonicalKey> {
    let mut keys: Vec<CanonicalKey> = graphs.into_par_iter().map(canonical_key).collect();
    keys.sort();
    keys.dedup();
    keys
}

fn canonical_graphs(keys: Vec<CanonicalKey>) -> Vec<Graph> {
    keys.iter().map(|k| k.graph().expect("keys are valid graph6")).collect()
}

/// One representative per isomorphism class of graphs with `n` vertices and
/// `m` edges, each labeled canonically, in ascending key order.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<Graph>> {
    let level = Generator::new(n)?.level(m);
    Ok(canonical_graphs(sorted_keys(&level)))
}

/// Number of isomorphism classes on `n` vertices for each edge count.
pub fn class_counts(n: usize) -> Result<Vec<usize>> {
    Ok(Generator::new(n)?.levels().map(|(_, level)| level.len()).collect())
}

/// Classes of `d`-regular graphs on `n` vertices, canonically labeled.
pub fn enumerate_regular(n: usize, d: usize) -> Result<Vec<Graph>> {
    if (n * d) % 2 == 1 || (n > 0 && d >= n) {
        return Ok(Vec::new());
    }
    let level = Generator::new(n)?.max_degree(d).level(n * d / 2);
    let regular: Vec<&Graph> = level.iter().filter(|g| g.min_degree().unwrap_or(0) == d).collect();
    Ok(canonical_graphs(sorted_keys(regular)))
}

/// An independent subtree of the generation tree: every graph with `m` edges
/// whose first edges (in graph6 bit order) are exactly `prefix`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WorkChunk {
    pub n: usize,
    pub m: usize,
    pub prefix: Vec<(usize, usize)>,
}

/// Splits the `(n, m)` space into at least `target_chunks` subtrees where
/// possible: the chunks are the generated graphs at the shallowest level with
/// enough of them (never deeper than `m`).
pub fn split_work(n: usize, m: usize, target_chunks: usize) -> Result<Vec<WorkChunk>> {
    let generator = Generator::new(n)?;
    let mut level = vec![generator.root()];
    let mut depth = 0;
    while depth < m && level.len() < target_chunks.max(1) {
        level = generator.next_level(&level);
        depth += 1;
    }
    Ok(level
        .iter()
        .map(|g| WorkChunk { n, m, prefix: g.edges_in_bit_order() })
        .collect())
}

impl Graph {
    /// Edges sorted by their position in the graph6 bit string.
    pub fn edges_in_bit_order(&self) -> Vec<(usize, usize)> {
        let mut edges = self.edges();
        edges.sort_by_key(|&(i, j)| pair_position(i, j));
        edges
    }
}

/// Maximal-labeled graphs of a chunk's subtree, in generation order.
pub fn run_chunk_raw(chunk: &WorkChunk) -> Result<Vec<Graph>> {
    let generator = Generator::new(chunk.n)?.parallel(false);
    let root = Graph::from_edge_list(chunk.n, &chunk.prefix)?;
    if chunk.prefix.len() > chunk.m || !is_max_labeled(&root) {
        return Ok(Vec::new());
    }
    Ok(generator.level_below(vec![root], chunk.prefix.len(), chunk.m))
}

/// Canonical representatives of a chunk's classes, in ascending key order.
pub fn run_chunk(chunk: &WorkChunk) -> Result<Vec<Graph>> {
    Ok(canonical_graphs(sorted_keys(&run_chunk_raw(chunk)?)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip classes failing the structural necessary conditions. Ignored
    /// for patterns where those conditions are not proven.
    pub use_pruning: bool,
    /// Run single-threaded.
    pub sequential: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub pattern: PatternSpec,
    pub sat_number: usize,
    pub minimal_graphs: Vec<CanonicalKey>,
    /// Classes examined over all levels `0..=sat_number`.
    pub scanned: u64,
    /// Classes skipped by the structural pruner.
    pub pruned: u64,
    pub pruning_enabled: bool,
}

struct LevelOutcome {
    saturated: Vec<CanonicalKey>,
    pruned: u64,
}

fn test_level(level: &[Graph], p: &PatternSpec, prune: bool, sequential: bool) -> Result<LevelOutcome> {
    let verdict = |g: &Graph| -> Result<(bool, bool)> {
        if prune && !structural_check(g, p).passes() {
            return Ok((false, true));
        }
        Ok((saturated(g, p)?, false))
    };
    let verdicts: Vec<(bool, bool)> = if sequential {
        level.iter().map(verdict).collect::<Result<_>>()?
    } else {
        level.par_iter().map(verdict).collect::<Result<_>>()?
    };
    let hits: Vec<&Graph> = level.iter().zip(&verdicts).filter(|(_, v)| v.0).map(|(g, _)| g).collect();
    Ok(LevelOutcome {
        saturated: sorted_keys(hits),
        pruned: verdicts.iter().filter(|v| v.1).count() as u64,
    })
}

/// `sat(n, p)` by exhaustive search over edge counts `0, 1, 2, ...`.
pub fn find_saturation_number(n: usize, p: &PatternSpec, use_pruning: bool) -> Result<SearchResult> {
    find_saturation_number_with(n, p, SearchOptions { use_pruning, sequential: false })
}

pub fn find_saturation_number_with(n: usize, p: &PatternSpec, options: SearchOptions) -> Result<SearchResult> {
    let generator = Generator::new(n)?.parallel(!options.sequential);
    let prune = options.use_pruning && pruning_applies(p, n);
    let mut scanned = 0u64;
    let mut pruned = 0u64;
    for (m, level) in generator.levels() {
        let outcome = test_level(&level, p, prune, options.sequential)?;
        scanned += level.len() as u64;
        pruned += outcome.pruned;
        if !outcome.saturated.is_empty() {
            return Ok(SearchResult {
                n,
                pattern: *p,
                sat_number: m,
                minimal_graphs: outcome.saturated,
                scanned,
                pruned,
                pruning_enabled: options.use_pruning,
            });
        }
    }
    Err(Error::OutOfDomain(format!("no {p}-saturated graph of order {n} exists")))
}

/// All `p`-saturated classes of order `n` with exactly `m` edges, sorted.
pub fn enumerate_minimal_saturated(n: usize, p: &PatternSpec, m: usize) -> Result<Vec<CanonicalKey>> {
    let level = Generator::new(n)?.level(m);
    Ok(test_level(&level, p, false, false)?.saturated)
}

/// Outcome of scanning every class of one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullScan {
    pub n: usize,
    pub pattern: PatternSpec,
    pub scanned: u64,
    /// Smallest edge count of a saturated class and those classes.
    pub minimum: Option<(usize, Vec<CanonicalKey>)>,
    pub saturated_total: u64,
}

/// Tests every isomorphism class of order `n`, without stopping early.
pub fn scan_all(n: usize, p: &PatternSpec) -> Result<FullScan> {
    let mut scan = FullScan { n, pattern: *p, scanned: 0, minimum: None, saturated_total: 0 };
    for (m, level) in Generator::new(n)?.levels() {
        let outcome = test_level(&level, p, false, false)?;
        scan.scanned += level.len() as u64;
        scan.saturated_total += outcome.saturated.len() as u64;
        if scan.minimum.is_none() && !outcome.saturated.is_empty() {
            scan.minimum = Some((m, outcome.saturated));
        }
    }
    Ok(scan)
}
