//! The saturation predicate, its certificates, conical-vertex stripping and
//! the structural necessary conditions used as a search pruner.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::graph::{Diameter, Graph};
use crate::pattern::{contains_pattern, PatternSpec, PatternWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Saturated,
    ContainsCopy,
    MissesNonedge,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Saturated => "saturated",
            Status::ContainsCopy => "contains-copy",
            Status::MissesNonedge => "misses-nonedge",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub status: Status,
    /// A copy of the pattern in the graph itself.
    pub copy_witness: Option<PatternWitness>,
    /// The first non-edge whose addition creates no copy.
    pub failing_nonedge: Option<(usize, usize)>,
    /// One copy in `g + e` for every non-edge `e`.
    pub per_nonedge_witnesses: Option<BTreeMap<(usize, usize), PatternWitness>>,
}

impl SaturationVerdict {
    pub fn is_saturated(&self) -> bool {
        self.status == Status::Saturated
    }

    /// JSON form `{status, n, pattern, edges, failing_nonedge?, witnesses?}`,
    /// plus `copy_witness` when the graph already holds a copy.
    pub fn to_json(&self, g: &Graph, p: &PatternSpec) -> Value {
        let mut obj = json!({
            "status": self.status.as_str(),
            "n": g.order(),
            "pattern": p.to_string(),
            "edges": g.edges(),
        });
        let map = obj.as_object_mut().expect("object literal");
        if let Some(w) = &self.copy_witness {
            map.insert("copy_witness".into(), json!(w));
        }
        if let Some(e) = self.failing_nonedge {
            map.insert("failing_nonedge".into(), json!(e));
        }
        if let Some(ws) = &self.per_nonedge_witnesses {
            let keyed: serde_json::Map<String, Value> =
                ws.iter().map(|((u, v), w)| (format!("{u}-{v}"), json!(w))).collect();
            map.insert("witnesses".into(), Value::Object(keyed));
        }
        obj
    }
}

/// Is `g` `p`-saturated?
///
/// The copy check runs first, then the non-edges in lexicographic order; the
/// first failure is reported. A complete graph is saturated iff it has no
/// copy. With `want_certificates` a witness for every non-edge is collected
/// (checked in parallel, merged in non-edge order).
pub fn is_saturated(g: &Graph, p: &PatternSpec, want_certificates: bool) -> Result<SaturationVerdict> {
    if let Some(w) = contains_pattern(g, p)? {
        return Ok(SaturationVerdict {
            status: Status::ContainsCopy,
            copy_witness: Some(w),
            failing_nonedge: None,
            per_nonedge_witnesses: None,
        });
    }
    let nonedges = g.nonedges();
    let missing = |failing| SaturationVerdict {
        status: Status::MissesNonedge,
        copy_witness: None,
        failing_nonedge: Some(failing),
        per_nonedge_witnesses: None,
    };
    if !want_certificates {
        for &(u, v) in &nonedges {
            if contains_pattern(&g.with_edge(u, v), p)?.is_none() {
                return Ok(missing((u, v)));
            }
        }
        return Ok(SaturationVerdict {
            status: Status::Saturated,
            copy_witness: None,
            failing_nonedge: None,
            per_nonedge_witnesses: None,
        });
    }
    let found: Vec<Option<PatternWitness>> = nonedges
        .par_iter()
        .map(|&(u, v)| contains_pattern(&g.with_edge(u, v), p))
        .collect::<Result<_>>()?;
    if let Some(i) = found.iter().position(Option::is_none) {
        return Ok(missing(nonedges[i]));
    }
    Ok(SaturationVerdict {
        status: Status::Saturated,
        copy_witness: None,
        failing_nonedge: None,
        per_nonedge_witnesses: Some(nonedges.into_iter().zip(found.into_iter().flatten()).collect()),
    })
}

/// Shorthand for `is_saturated(g, p, false)?.is_saturated()`.
pub fn saturated(g: &Graph, p: &PatternSpec) -> Result<bool> {
    Ok(is_saturated(g, p, false)?.is_saturated())
}

/// The smallest-index conical vertex and the graph with it removed.
pub fn strip_conical(g: &Graph) -> Option<(usize, Graph)> {
    if g.order() < 2 {
        return None;
    }
    let u = crate::graph::members(g.conical_vertices()).next()?;
    Some((u, g.remove_vertex(u)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub diameter_ok: bool,
    /// Non-adjacent pairs with fewer than two common neighbors.
    pub bad_pairs: Vec<(usize, usize)>,
    /// Whether an empty `bad_pairs` is necessary for this pattern (`s = 2`).
    pub pair_condition_applies: bool,
}

impl StructuralReport {
    /// Both necessary conditions that apply to the pattern hold.
    pub fn passes(&self) -> bool {
        self.diameter_ok && (!self.pair_condition_applies || self.bad_pairs.is_empty())
    }
}

/// Diameter 2, and (for `s = 2`) at least two common neighbors per non-adjacent
/// pair. `bad_pairs` is filled for every pattern.
pub fn structural_check(g: &Graph, p: &PatternSpec) -> StructuralReport {
    let diameter_ok = g.order() >= 1 && g.diameter().ok() == Some(Diameter::Finite(2));
    let bad_pairs = g
        .nonedges()
        .into_iter()
        .filter(|&(u, v)| g.common_neighbors(u, v).count_ones() < 2)
        .collect();
    StructuralReport {
        diameter_ok,
        bad_pairs,
        pair_condition_applies: p.s() == 2 && !p.is_clique(),
    }
}

/// Whether the structural conditions are proven necessary for `p`-saturated
/// graphs of order `n`: `s >= 1`, `k >= 3`, and `n` at least the pattern order
/// (below it the only saturated graph is complete, of diameter 1).
pub fn pruning_applies(p: &PatternSpec, n: usize) -> bool {
    p.s() >= 1 && !p.is_clique() && n >= p.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(text: &str) -> PatternSpec {
        text.parse().unwrap()
    }

    #[test]
    fn k4_minus_edge_is_k4_saturated() {
        let g = Graph::complete(4).unwrap().without_edge(2, 3);
        let v = is_saturated(&g, &pat("K4"), true).unwrap();
        assert!(v.is_saturated());
        let ws = v.per_nonedge_witnesses.unwrap();
        assert_eq!(ws.len(), 1);
        assert!(ws[&(2, 3)].validate(&Graph::complete(4).unwrap(), &pat("K4")));
    }

    #[test]
    fn p3_contains_p3() {
        let g = Graph::path(3).unwrap();
        let v = is_saturated(&g, &pat("P3"), false).unwrap();
        assert_eq!(v.status, Status::ContainsCopy);
        assert!(v.copy_witness.unwrap().validate(&g, &pat("P3")));
    }

    #[test]
    fn c4_is_k1vp3_saturated() {
        let c4 = Graph::cycle(4).unwrap();
        let v = is_saturated(&c4, &pat("K1vP3"), true).unwrap();
        assert!(v.is_saturated());
        for ((u, v), w) in v.per_nonedge_witnesses.unwrap() {
            assert!(w.validate(&c4.with_edge(u, v), &pat("K1vP3")));
        }
    }

    #[test]
    fn first_failing_nonedge_is_lexicographic() {
        let g = Graph::empty(4).unwrap();
        let v = is_saturated(&g, &pat("P3"), false).unwrap();
        assert_eq!(v.status, Status::MissesNonedge);
        assert_eq!(v.failing_nonedge, Some((0, 1)));
        let with_certs = is_saturated(&g, &pat("P3"), true).unwrap();
        assert_eq!(with_certs, v);
    }

    #[test]
    fn boundary_convention() {
        // Below the pattern order only the complete graph is saturated.
        let p = pat("K2vP3");
        assert!(saturated(&Graph::complete(4).unwrap(), &p).unwrap());
        assert!(!saturated(&Graph::cycle(4).unwrap(), &p).unwrap());
        assert!(!saturated(&Graph::complete(5).unwrap(), &p).unwrap());
    }

    #[test]
    fn strip_examples() {
        let two_k2 = Graph::complete(2).unwrap().repeated(2).unwrap();
        let hub = Graph::complete(1).unwrap().join(&two_k2).unwrap();
        assert_eq!(strip_conical(&hub), Some((0, two_k2)));
        assert_eq!(strip_conical(&Graph::cycle(4).unwrap()), None);
        assert_eq!(strip_conical(&Graph::complete(4).unwrap()), Some((0, Graph::complete(3).unwrap())));
        assert_eq!(strip_conical(&Graph::complete(1).unwrap()), None);
    }

    #[test]
    fn structural_examples() {
        let r = structural_check(&Graph::path(4).unwrap(), &pat("K1vP3"));
        assert!(!r.diameter_ok);
        let r = structural_check(&Graph::cycle(5).unwrap(), &pat("K2vP3"));
        assert!(r.diameter_ok);
        assert_eq!(r.bad_pairs, vec![(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]);
        assert!(!r.passes());
        assert!(structural_check(&Graph::cycle(5).unwrap(), &pat("K1vP3")).passes());
    }

    #[test]
    fn verdict_json_shape() {
        let c4 = Graph::cycle(4).unwrap();
        let p = pat("K1vP3");
        let j = is_saturated(&c4, &p, true).unwrap().to_json(&c4, &p);
        assert_eq!(j["status"], "saturated");
        assert_eq!(j["pattern"], "K1vP3");
        assert_eq!(j["n"], 4);
        let keys: Vec<&String> = j["witnesses"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["0-2", "1-3"]);
        assert!(j.get("failing_nonedge").is_none());
    }
}
