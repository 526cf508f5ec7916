use exotic::dualgraph::{resolution_chain, xt_certificate, xt_matrix, BlowUpSite, WeightedGraph};
use exotic::fpgroups::xt_exponent;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

/// A tree on `1..=8` vertices; vertex `i` hangs off an earlier vertex.
fn tree() -> impl Strategy<Value = WeightedGraph> {
    (1usize..=8)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-4i64..=2, n),
                (0..n).map(|i| 0..i.max(1)).collect::<Vec<_>>(),
            )
        })
        .prop_map(|(weights, parents)| {
            let ids: Vec<String> = (1..=weights.len()).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String)> = (1..ids.len())
                .map(|i| (ids[parents[i]].clone(), ids[i].clone()))
                .collect();
            WeightedGraph::new(ids.into_iter().zip(weights).collect(), edges).unwrap()
        })
}

fn site(g: &WeightedGraph, pick: usize, on_edge: bool) -> BlowUpSite {
    let edges: Vec<(&str, &str)> = g.edges().collect();
    if on_edge && !edges.is_empty() {
        let (a, b) = edges[pick % edges.len()];
        BlowUpSite::Edge(a.to_string(), b.to_string())
    } else {
        BlowUpSite::Vertex(g.vertices()[pick % g.len()].0.clone())
    }
}

proptest! {
    #[test]
    fn contraction_undoes_blow_up(g in tree(), pick in 0usize..16, on_edge in any::<bool>()) {
        let s = site(&g, pick, on_edge);
        let (h, e) = g.blow_up(&s).unwrap();
        prop_assert_eq!(h.weight(&e), Some(-1));
        prop_assert_eq!(h.contract(&e).unwrap(), g.clone());
        let (dg, dh) = (g.intersection_matrix().determinant(), h.intersection_matrix().determinant());
        prop_assert_eq!(dg.abs(), dh.abs());
    }

    #[test]
    fn minimal_models_are_fixed_points(g in tree()) {
        let (m, _) = g.minimalize();
        let (again, contracted) = m.minimalize();
        prop_assert!(contracted.is_empty());
        prop_assert_eq!(again, m.clone());
        prop_assert_eq!(m.intersection_matrix().determinant().abs(), g.intersection_matrix().determinant().abs());
    }

    #[test]
    fn resolution_chains_of_coprime_pencils(m in 1u64..=12, n in 1u64..=12) {
        prop_assume!(m.gcd(&n) == 1);
        let chain = resolution_chain(m, n).unwrap();
        let g = &chain.graph;
        prop_assert!(g.is_linear());
        prop_assert_eq!(g.vertices().iter().filter(|(_, w)| *w == -1).count(), 1);
        prop_assert!(g.intersection_matrix().determinant().abs().is_one());
    }

    #[test]
    fn xt_determinant_is_the_exponent(e in prop::collection::vec(0i64..=6, 8)) {
        let t = xt_matrix(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7]);
        let det = xt_certificate(&t).unwrap().determinant().clone();
        prop_assert_eq!(det.abs(), xt_exponent(&t).unwrap().abs());
    }
}
