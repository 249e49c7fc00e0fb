use std::collections::BTreeSet;

use satlab::canon::is_self_canonical;
use satlab::enumerate::{
    class_counts, enumerate_regular, find_saturation_number_with, run_chunk, run_chunk_raw, SearchOptions,
};
use satlab::{
    canonical_key, contains_pattern_oracle, enumerate_graphs, enumerate_minimal_saturated, find_saturation_number,
    graph6, is_isomorphic, split_work, CanonicalKey, Graph, PatternSpec,
};

fn pat(text: &str) -> PatternSpec {
    text.parse().unwrap()
}

fn labeled(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Classes per edge count from every labeled graph.
fn brute_force_levels(n: usize) -> Vec<BTreeSet<CanonicalKey>> {
    let pairs = n * (n - 1) / 2;
    let mut levels = vec![BTreeSet::new(); pairs + 1];
    for mask in 0..1u64 << pairs {
        levels[mask.count_ones() as usize].insert(canonical_key(&labeled(n, mask)));
    }
    levels
}

#[test]
fn levels_match_labeled_brute_force() {
    for n in 1..=6 {
        let brute = brute_force_levels(n);
        for (m, expected) in brute.iter().enumerate() {
            let got: BTreeSet<CanonicalKey> = enumerate_graphs(n, m).unwrap().iter().map(canonical_key).collect();
            assert_eq!(&got, expected, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn total_class_counts() {
    for (n, expected) in [(4, 11), (5, 34), (6, 156), (7, 1044), (8, 12346)] {
        assert_eq!(class_counts(n).unwrap().iter().sum::<usize>(), expected, "n = {n}");
    }
}

#[test]
fn seven_vertex_count_by_brute_force() {
    let keys: usize = brute_force_levels(7).iter().map(BTreeSet::len).sum();
    assert_eq!(keys, 1044);
}

#[test]
fn representatives_are_self_canonical_and_sorted() {
    for m in 0..=21 {
        let graphs = enumerate_graphs(7, m).unwrap();
        let encoded: Vec<String> = graphs.iter().map(graph6::encode).collect();
        assert!(encoded.windows(2).all(|w| w[0] < w[1]));
        for (g, e) in graphs.iter().zip(&encoded) {
            assert!(is_self_canonical(g));
            assert_eq!(canonical_key(g).as_str(), e);
            assert_eq!(g.edge_count(), m);
        }
    }
}

#[test]
fn small_level_examples() {
    let three = enumerate_graphs(4, 3).unwrap();
    assert_eq!(three.len(), 3);
    for named in [
        Graph::path(4).unwrap(),
        Graph::star(3).unwrap(),
        Graph::complete(3).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap(),
    ] {
        assert_eq!(three.iter().filter(|g| is_isomorphic(g, &named)).count(), 1);
    }
    assert_eq!(enumerate_graphs(3, 3).unwrap(), vec![Graph::complete(3).unwrap()]);
    assert_eq!(enumerate_graphs(5, 0).unwrap(), vec![Graph::empty(5).unwrap()]);
}

#[test]
fn chunks_cover_the_level() {
    let chunks = split_work(7, 9, 8).unwrap();
    assert!(chunks.len() >= 8);
    let mut union = BTreeSet::new();
    for c in &chunks {
        union.extend(run_chunk(c).unwrap().iter().map(canonical_key));
    }
    let full: BTreeSet<_> = enumerate_graphs(7, 9).unwrap().iter().map(canonical_key).collect();
    assert_eq!(union, full);
    assert_eq!(split_work(7, 9, 8).unwrap(), chunks);
}

#[test]
fn chunks_are_disjoint() {
    let chunks = split_work(8, 12, 4).unwrap();
    let prefixes: BTreeSet<_> = chunks.iter().map(|c| c.prefix.clone()).collect();
    assert_eq!(prefixes.len(), chunks.len());
    // Equal-length distinct prefixes root disjoint subtrees: every labeled
    // graph produced appears under exactly one chunk.
    assert!(chunks.iter().all(|c| c.prefix.len() == chunks[0].prefix.len()));
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for c in &chunks {
        for g in run_chunk_raw(c).unwrap() {
            assert_eq!(g.edges_in_bit_order()[..c.prefix.len()], c.prefix[..]);
            assert!(seen.insert(graph6::encode(&g)));
            total += 1;
        }
    }
    assert_eq!(total, enumerate_graphs(8, 12).unwrap().len());
}

#[test]
fn search_examples() {
    let r = find_saturation_number(5, &pat("K2vP3"), false).unwrap();
    assert_eq!(r.sat_number, 8);
    assert_eq!(r.minimal_graphs.len(), 2);
    let k2 = Graph::complete(2).unwrap();
    let join = k2.join(&k2.disjoint_union(&Graph::empty(1).unwrap()).unwrap()).unwrap();
    assert!(r.minimal_graphs.contains(&canonical_key(&join)));

    let r = find_saturation_number(4, &pat("K4"), false).unwrap();
    assert_eq!(r.sat_number, 5);
    assert_eq!(r.minimal_graphs, vec![canonical_key(&k2.join(&Graph::empty(2).unwrap()).unwrap())]);

    let r = find_saturation_number(6, &pat("P3"), false).unwrap();
    assert_eq!(r.sat_number, 3);
    assert!(r.minimal_graphs.contains(&canonical_key(&k2.repeated(3).unwrap())));
}

#[test]
fn search_matches_labeled_oracle_search() {
    // Minimum edge count of saturated labeled graphs, decided by the oracle.
    for (n, p) in [(5, "P4"), (5, "K1vP3"), (6, "P5"), (6, "K2vP3"), (5, "K4"), (6, "K1vP4")] {
        let p = pat(p);
        let pairs = n * (n - 1) / 2;
        let mut best: Option<(u32, BTreeSet<CanonicalKey>)> = None;
        for mask in 0..1u64 << pairs {
            let m = mask.count_ones();
            if best.as_ref().is_some_and(|(b, _)| m > *b) {
                continue;
            }
            let g = labeled(n, mask);
            let sat = !contains_pattern_oracle(&g, &p)
                && g.nonedges().iter().all(|&(u, v)| contains_pattern_oracle(&g.with_edge(u, v), &p));
            if sat {
                match &mut best {
                    Some((b, keys)) if *b == m => {
                        keys.insert(canonical_key(&g));
                    }
                    _ => best = Some((m, BTreeSet::from([canonical_key(&g)]))),
                }
            }
        }
        let (m, keys) = best.unwrap();
        let r = find_saturation_number(n, &p, false).unwrap();
        assert_eq!(r.sat_number, m as usize, "{p} at n = {n}");
        assert_eq!(r.minimal_graphs, keys.into_iter().collect::<Vec<_>>());
    }
}

#[test]
fn pruned_and_unpruned_searches_agree() {
    for s in 1..=2 {
        for k in 3..=5 {
            let p = PatternSpec::new(s, k).unwrap();
            for n in 2..=8 {
                let plain = find_saturation_number(n, &p, false).unwrap();
                let pruned = find_saturation_number(n, &p, true).unwrap();
                assert_eq!(plain.sat_number, pruned.sat_number, "{p} n = {n}");
                assert_eq!(plain.minimal_graphs, pruned.minimal_graphs, "{p} n = {n}");
                assert_eq!(plain.scanned, pruned.scanned);
                assert!(pruned.pruning_enabled && !plain.pruning_enabled);
            }
        }
    }
}

#[test]
fn parallel_and_sequential_searches_agree() {
    for (n, p) in [(7, "K2vP4"), (8, "K1vP4"), (8, "P5")] {
        let p = pat(p);
        let par = find_saturation_number_with(n, &p, SearchOptions { use_pruning: false, sequential: false }).unwrap();
        let seq = find_saturation_number_with(n, &p, SearchOptions { use_pruning: false, sequential: true }).unwrap();
        assert_eq!(par, seq);
        assert_eq!(serde_json::to_string(&par).unwrap(), serde_json::to_string(&seq).unwrap());
    }
}

#[test]
fn minimal_saturated_examples() {
    let p4 = pat("P4");
    let odd = enumerate_minimal_saturated(7, &p4, 5).unwrap();
    let k2 = Graph::complete(2).unwrap();
    let expected: BTreeSet<_> = [
        Graph::complete(3).unwrap().disjoint_union(&k2.repeated(2).unwrap()).unwrap(),
        Graph::star(4).unwrap().disjoint_union(&k2).unwrap(),
    ]
    .iter()
    .map(canonical_key)
    .collect();
    assert_eq!(odd, expected.into_iter().collect::<Vec<_>>());
    assert_eq!(enumerate_minimal_saturated(6, &p4, 3).unwrap(), vec![canonical_key(&k2.repeated(3).unwrap())]);
    assert_eq!(enumerate_minimal_saturated(6, &pat("K2vP3"), 11).unwrap().len(), 4);
}

#[test]
fn search_result_invariants() {
    for (n, p) in [(7, "K1vP5"), (8, "K2vP3"), (7, "P4")] {
        let p = pat(p);
        let r = find_saturation_number(n, &p, false).unwrap();
        assert!(r.minimal_graphs.windows(2).all(|w| w[0] < w[1]));
        for key in &r.minimal_graphs {
            let g = key.graph().unwrap();
            assert_eq!(g.edge_count(), r.sat_number);
            assert!(satlab::saturation::saturated(&g, &p).unwrap());
        }
        for m in 0..r.sat_number {
            assert!(enumerate_minimal_saturated(n, &p, m).unwrap().is_empty());
        }
    }
}

#[test]
fn cubic_classes() {
    let counts: Vec<(usize, usize)> = [6, 8, 10]
        .iter()
        .map(|&n| {
            let all = enumerate_regular(n, 3).unwrap();
            assert!(all.iter().all(|g| g.degrees().iter().all(|&d| d == 3)));
            (all.len(), all.iter().filter(|g| g.is_connected()).count())
        })
        .collect();
    assert_eq!(counts, vec![(2, 2), (6, 5), (21, 19)]);
}

#[test]
fn order_guard() {
    assert!(enumerate_graphs(13, 0).unwrap_err().is_capacity());
    assert!(find_saturation_number(13, &pat("P3"), false).unwrap_err().is_capacity());
}
