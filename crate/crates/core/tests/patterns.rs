use proptest::prelude::*;
use satlab::enumerate::Generator;
use satlab::{contains_pattern, contains_pattern_oracle, Graph, PatternSpec};

fn patterns_up_to(order: usize) -> Vec<PatternSpec> {
    let mut out = Vec::new();
    for s in 0..=3 {
        for k in 1..=order.saturating_sub(s) {
            let p = PatternSpec::new(s, k).unwrap();
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn fast_path_matches_oracle_on_all_classes_up_to_six() {
    let patterns = patterns_up_to(7);
    for n in 1..=6 {
        for (_, level) in Generator::new(n).unwrap().levels() {
            for g in level.iter() {
                for p in &patterns {
                    let fast = contains_pattern(g, p).unwrap();
                    assert_eq!(fast.is_some(), contains_pattern_oracle(g, p), "{g:?} {p}");
                    if let Some(w) = fast {
                        assert!(w.validate(g, p), "{g:?} {p} {w:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn clique_joined_with_matching_plus_vertex_has_no_k2vp3() {
    let k2 = Graph::complete(2).unwrap();
    let g = k2.join(&k2.disjoint_union(&Graph::empty(1).unwrap()).unwrap()).unwrap();
    let p: PatternSpec = "K2vP3".parse().unwrap();
    assert!(!contains_pattern_oracle(&g, &p));
    assert!(contains_pattern(&g, &p).unwrap().is_none());
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn arb_pattern() -> impl Strategy<Value = PatternSpec> {
    (0usize..=3, 1usize..=5).prop_map(|(s, k)| PatternSpec::new(s, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn adding_an_edge_keeps_a_copy(g in arb_graph(), p in arb_pattern()) {
        if contains_pattern(&g, &p).unwrap().is_some() {
            for (u, v) in g.nonedges() {
                prop_assert!(contains_pattern(&g.with_edge(u, v), &p).unwrap().is_some());
            }
        }
    }

    #[test]
    fn cone_over_a_copy_holds_the_coned_pattern(g in arb_graph(), p in arb_pattern()) {
        let cone = Graph::complete(1).unwrap().join(&g).unwrap();
        if contains_pattern(&g, &p).unwrap().is_some() {
            let w = contains_pattern(&cone, &p.cone()).unwrap();
            prop_assert!(w.is_some());
            prop_assert!(w.unwrap().validate(&cone, &p.cone()));
        }
    }

    #[test]
    fn witnesses_revalidate(g in arb_graph(), p in arb_pattern()) {
        let fast = contains_pattern(&g, &p).unwrap();
        prop_assert_eq!(fast.is_some(), contains_pattern_oracle(&g, &p));
        if let Some(w) = fast {
            prop_assert!(w.validate(&g, &p));
        }
    }

    #[test]
    fn pattern_text_round_trips(p in arb_pattern()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<PatternSpec>().unwrap(), p);
        prop_assert_eq!(text.to_lowercase().parse::<PatternSpec>().unwrap(), p);
    }
}
