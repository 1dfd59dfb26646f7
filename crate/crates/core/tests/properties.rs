use lefschetz_core::complexes::SimplicialComplex;
use lefschetz_core::graphs::{nonisomorphic_graphs, Graph};
use lefschetz_core::lefschetz::{wlp_check, GradedMonomialAlgebra, MapStatus};
use lefschetz_core::perazzo::{apolarity_dims, idealization_hilbert, simplicial_form};
use lefschetz_core::rollercoaster::roller_coaster_hvector;
use proptest::prelude::*;

fn small_graphs() -> impl Iterator<Item = Graph> {
    (1..=6).flat_map(nonisomorphic_graphs)
}

#[test]
fn statuses_agree_with_ranks_and_propagate_on_pure_complexes() {
    for g in small_graphs() {
        let mut algebras = vec![GradedMonomialAlgebra::whiskered(&g, &vec![2; g.vertex_count()]).unwrap()];
        let ind = SimplicialComplex::independence_complex(&g);
        if ind.is_pure() {
            algebras.push(GradedMonomialAlgebra::squarefree(ind));
        }
        for a in &algebras {
            let rep = wlp_check(a);
            for m in &rep.maps {
                let (src, dst) = m.dims;
                assert!(m.rank <= src.min(dst));
                let expected = if m.rank < src.min(dst) {
                    MapStatus::Deficient
                } else if src == dst {
                    MapStatus::Bijective
                } else if src < dst {
                    MapStatus::Injective
                } else {
                    MapStatus::Surjective
                };
                assert_eq!(m.status, expected);
            }
            assert_eq!(rep.wlp, rep.maps.iter().all(|m| m.status != MapStatus::Deficient));
            assert!(rep.propagation_consistent(), "{}", g.to_edge_list());
        }
    }
}

#[test]
fn whiskered_hilbert_functions_decrease_late() {
    // h_{i-1} >= h_i once 3i >= 2n + 2
    for g in small_graphs() {
        let n = g.vertex_count();
        let h = GradedMonomialAlgebra::whiskered(&g, &vec![2; n]).unwrap().hilbert_function();
        for i in 1..h.len() {
            if 3 * i >= 2 * n + 2 {
                assert!(h[i - 1] >= h[i], "{} h={h:?} i={i}", g.to_edge_list());
            }
        }
    }
}

#[test]
fn idealization_matches_hvector_assembly() {
    for n in 1..=5 {
        for g in nonisomorphic_graphs(n) {
            let w = g.whisker().unwrap();
            let c = SimplicialComplex::independence_complex(&w);
            let ideal = idealization_hilbert(&c).unwrap();
            let assembled = roller_coaster_hvector(&w.independence_sequence(), ideal.d).unwrap();
            assert_eq!(ideal.h, assembled);
        }
    }
}

fn random_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len())
            .prop_map(move |keep| Graph::new(n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&p, _)| p)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn apolarity_equals_dimension_sum_on_random_whiskerings(g in random_graph(4)) {
        let c = SimplicialComplex::independence_complex(&g.whisker().unwrap());
        let h: Vec<u64> = apolarity_dims(&simplicial_form(&c).unwrap()).unwrap().into_iter().map(|x| x as u64).collect();
        prop_assert_eq!(h, idealization_hilbert(&c).unwrap().h);
    }

    #[test]
    fn relabeling_preserves_hilbert_and_wlp(g in random_graph(5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        let a = GradedMonomialAlgebra::whiskered(&g, &vec![2; n]).unwrap();
        let b = GradedMonomialAlgebra::whiskered(&h, &vec![2; n]).unwrap();
        prop_assert_eq!(a.hilbert_function(), b.hilbert_function());
        prop_assert_eq!(wlp_check(&a).wlp, wlp_check(&b).wlp);
    }
}
