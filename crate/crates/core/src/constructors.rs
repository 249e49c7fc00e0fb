//! Extremal constructions and the registry of sporadic minimal graphs.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::enumerate::{find_saturation_number, SearchResult};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternSpec;
use crate::saturation::strip_conical;

fn matching(pairs: usize) -> Result<Graph> {
    Graph::complete(2)?.repeated(pairs)
}

/// The minimal `P_k`-saturated graphs of order `n`, for `k` in `{3, 4}`.
pub fn minimal_path_saturated(n: usize, k: usize) -> Result<Vec<Graph>> {
    match (k, n) {
        (3, 3..) => Ok(vec![matching(n / 2)?.disjoint_union(&Graph::empty(n % 2)?)?]),
        (4, 4..) if n.is_multiple_of(2) => Ok(vec![matching(n / 2)?]),
        (4, 5..) => Ok(vec![
            Graph::complete(3)?.disjoint_union(&matching((n - 3) / 2)?)?,
            Graph::star(4)?.disjoint_union(&matching((n - 5) / 2)?)?,
        ]),
        (3 | 4, _) => Err(Error::OutOfDomain(format!("no minimal P{k}-saturated family at n = {n}"))),
        _ => Err(Error::OutOfDomain(format!("minimal P{k}-saturated graphs are only constructed for k = 3, 4"))),
    }
}

/// `K_{p-2} ∨ \bar K_{n-p+2}`, the minimal `K_p`-saturated graph.
pub fn clique_extremal(n: usize, p: usize) -> Result<Graph> {
    if p < 2 || n < p {
        return Err(Error::OutOfDomain(format!("clique extremal needs n >= p >= 2, got n = {n}, p = {p}")));
    }
    Graph::complete(p - 2)?.join(&Graph::empty(n - p + 2)?)
}

/// `K_s ∨ F` for every minimal `P_k`-saturated `F` of order `n - s`.
pub fn join_extremal(n: usize, s: usize, k: usize) -> Result<Vec<Graph>> {
    if !(1..=2).contains(&s) {
        return Err(Error::OutOfDomain(format!("join extremal needs s in 1..=2, got {s}")));
    }
    let inner = n
        .checked_sub(s)
        .ok_or_else(|| Error::OutOfDomain(format!("n = {n} is smaller than s = {s}")))?;
    let center = Graph::complete(s)?;
    minimal_path_saturated(inner, k)?.iter().map(|f| center.join(f)).collect()
}

/// A minimal saturated class that is not a cone over a minimal class of the
/// pattern with one fewer center vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SporadicEntry {
    /// Candidate label `H1`, `H2`, ... in (pattern, order, key) order.
    pub id: String,
    pub pattern: PatternSpec,
    pub order: usize,
    pub edges: usize,
    pub key: CanonicalKey,
    pub search_query: String,
    pub provenance: String,
}

/// How one minimal class decomposes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ClassKind {
    /// Has a conical vertex whose removal leaves `strip`, a minimal
    /// saturated graph for the pattern with one fewer center vertex.
    Join { strip: CanonicalKey },
    Sporadic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedSearch {
    pub query: String,
    pub result: SearchResult,
    pub kinds: Vec<ClassKind>,
}

impl ClassifiedSearch {
    pub fn sporadics(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.result
            .minimal_graphs
            .iter()
            .zip(&self.kinds)
            .filter(|(_, kind)| matches!(kind, ClassKind::Sporadic))
            .map(|(key, _)| key)
    }

    pub fn join_count(&self) -> usize {
        self.kinds.len() - self.sporadics().count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    pub searches: Vec<ClassifiedSearch>,
    pub entries: Vec<SporadicEntry>,
}

pub fn query_id(n: usize, p: &PatternSpec) -> String {
    format!("sat/n={n}/pattern={p}")
}

type SearchFn = dyn Fn(usize, &PatternSpec) -> Result<SearchResult> + Sync;

/// Memoised saturation searches, so lower patterns are searched once.
#[derive(Default)]
pub struct SearchMemo {
    results: HashMap<(usize, PatternSpec), SearchResult>,
    search: Option<Box<SearchFn>>,
}

impl SearchMemo {
    /// Uses `search` instead of [`find_saturation_number`], e.g. to go
    /// through a result cache.
    pub fn with_search(search: impl Fn(usize, &PatternSpec) -> Result<SearchResult> + Sync + 'static) -> Self {
        SearchMemo { results: HashMap::new(), search: Some(Box::new(search)) }
    }

    pub fn get(&mut self, n: usize, p: &PatternSpec) -> Result<&SearchResult> {
        if !self.results.contains_key(&(n, *p)) {
            let r = match &self.search {
                Some(f) => f(n, p)?,
                None => find_saturation_number(n, p, false)?,
            };
            self.results.insert((n, *p), r);
        }
        Ok(&self.results[&(n, *p)])
    }
}

/// Classifies every minimal class of `(n, p)` for a pattern with `s >= 1`.
pub fn classify(memo: &mut SearchMemo, n: usize, p: &PatternSpec) -> Result<ClassifiedSearch> {
    let lower = p
        .apex_removed()
        .ok_or_else(|| Error::OutOfDomain(format!("{p} has no center vertex to strip")))?;
    let result = memo.get(n, p)?.clone();
    let lower_minimal = if n >= 2 { memo.get(n - 1, &lower)?.minimal_graphs.clone() } else { Vec::new() };
    let kinds = result
        .minimal_graphs
        .iter()
        .map(|key| {
            let g = key.graph()?;
            Ok(match strip_conical(&g) {
                Some((_, h)) => {
                    let strip = canonical_key(&h);
                    if lower_minimal.binary_search(&strip).is_ok() {
                        ClassKind::Join { strip }
                    } else {
                        ClassKind::Sporadic
                    }
                }
                None => ClassKind::Sporadic,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ClassifiedSearch { query: query_id(n, p), result, kinds })
}

/// Searches `K_1 ∨ P_k` and `K_2 ∨ P_k` for `k` in `ks` at every order from
/// the pattern order to `n_max`, classifies every minimal class and labels
/// the sporadic ones. With `store` the registry is written to disk.
pub fn derive_sporadics_with(
    memo: &mut SearchMemo,
    ks: &[usize],
    n_max: usize,
    store: Option<&Path>,
) -> Result<Derivation> {
    let mut searches = Vec::new();
    let mut found: Vec<(PatternSpec, usize, CanonicalKey, usize, String)> = Vec::new();
    for s in 1..=2 {
        for &k in ks {
            let p = PatternSpec::new(s, k)?;
            for n in p.order()..=n_max {
                let c = classify(memo, n, &p)?;
                for key in c.sporadics() {
                    found.push((p, n, key.clone(), c.result.sat_number, c.query.clone()));
                }
                searches.push(c);
            }
        }
    }
    found.sort();
    let entries: Vec<SporadicEntry> = found
        .into_iter()
        .enumerate()
        .map(|(i, (pattern, order, key, edges, search_query))| SporadicEntry {
            id: format!("H{}", i + 1),
            pattern,
            order,
            edges,
            key,
            search_query,
            provenance: "derived-by-search".into(),
        })
        .collect();
    if let Some(dir) = store {
        write_store(dir, &entries)?;
    }
    Ok(Derivation { searches, entries })
}

/// [`derive_sporadics_with`] over `k = 3, 4, 5` and orders up to 8.
pub fn derive_sporadics(store: Option<&Path>) -> Result<Derivation> {
    derive_sporadics_with(&mut SearchMemo::default(), &[3, 4, 5], 8, store)
}

/// Writes `<dir>/<pattern>/<n>.g6` and `<dir>/index.json`, replacing any
/// previous registry contents.
pub fn write_store(dir: &Path, entries: &[SporadicEntry]) -> Result<()> {
    let mut files: BTreeMap<(String, usize), Vec<&str>> = BTreeMap::new();
    for e in entries {
        files.entry((e.pattern.to_string(), e.order)).or_default().push(e.key.as_str());
    }
    fs::create_dir_all(dir)?;
    for ((pattern, n), keys) in files {
        let sub = dir.join(pattern);
        fs::create_dir_all(&sub)?;
        let body: String = keys.iter().map(|k| format!("{k}\n")).collect();
        fs::write(sub.join(format!("{n}.g6")), body)?;
    }
    let index = serde_json::to_string_pretty(entries).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(dir.join("index.json"), index + "\n")?;
    Ok(())
}

pub fn read_store(dir: &Path) -> Result<Vec<SporadicEntry>> {
    let text = fs::read_to_string(dir.join("index.json"))?;
    serde_json::from_str(&text).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    #[test]
    fn path_families() {
        let g = &minimal_path_saturated(5, 3).unwrap()[0];
        assert_eq!((g.order(), g.edge_count()), (5, 2));
        assert_eq!(minimal_path_saturated(6, 4).unwrap(), vec![matching(3).unwrap()]);
        let odd = minimal_path_saturated(7, 4).unwrap();
        assert_eq!(odd.len(), 2);
        assert!(odd.iter().all(|g| g.edge_count() == 5 && g.order() == 7));
        assert!(!is_isomorphic(&odd[0], &odd[1]));
        assert_eq!(minimal_path_saturated(5, 4).unwrap().len(), 2);
        assert!(minimal_path_saturated(2, 3).is_err());
        assert!(minimal_path_saturated(3, 4).is_err());
        assert!(minimal_path_saturated(8, 5).is_err());
    }

    #[test]
    fn clique_family() {
        assert_eq!(clique_extremal(6, 4).unwrap().edge_count(), 9);
        assert_eq!(clique_extremal(4, 4).unwrap().edge_count(), 5);
        let star = clique_extremal(5, 3).unwrap();
        assert!(is_isomorphic(&star, &Graph::star(4).unwrap()));
        assert!(clique_extremal(3, 4).is_err());
    }

    #[test]
    fn join_families() {
        let j = join_extremal(5, 2, 3).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].edge_count(), 8);
        let j = join_extremal(8, 1, 4).unwrap();
        assert_eq!(j.iter().map(Graph::edge_count).collect::<Vec<_>>(), vec![12, 12]);
        assert_eq!(join_extremal(12, 2, 3).unwrap()[0].edge_count(), 26);
        assert!(join_extremal(8, 3, 3).is_err());
    }

    #[test]
    fn store_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let entry = SporadicEntry {
            id: "H1".into(),
            pattern: "K1vP3".parse().unwrap(),
            order: 4,
            edges: 4,
            key: canonical_key(&Graph::cycle(4).unwrap()),
            search_query: query_id(4, &"K1vP3".parse().unwrap()),
            provenance: "derived-by-search".into(),
        };
        write_store(dir.path(), std::slice::from_ref(&entry)).unwrap();
        assert_eq!(read_store(dir.path()).unwrap(), vec![entry.clone()]);
        let g6 = fs::read_to_string(dir.path().join("K1vP3").join("4.g6")).unwrap();
        assert_eq!(g6, format!("{}\n", entry.key));
    }
}
