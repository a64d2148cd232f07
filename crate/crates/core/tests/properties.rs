use num_bigint::BigUint;
use proptest::prelude::*;
use raag_core::{
    algebras_isomorphic, are_isomorphic, catalog, count_homs, cyclic, isomorphism_classes,
    raag_algebra, raag_presentation, racg_algebra, racg_presentation, reconstruct,
    remark_extension_presentation, BasisChange, Fp, Graph, Matrix, ReconstructOptions, SplitMix64,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}

proptest! {
    #[test]
    fn components_partition_the_graph(g in graph_strategy(9)) {
        let comps = g.components();
        let mut vertices: Vec<usize> = comps.iter().flat_map(|c| c.vertices.clone()).collect();
        vertices.sort_unstable();
        prop_assert_eq!(vertices, (0..g.vertex_count()).collect::<Vec<_>>());
        let mut edges: Vec<(usize, usize)> = comps
            .iter()
            .flat_map(|c| c.graph.edges().iter().map(|&(u, v)| (c.vertices[u], c.vertices[v])).collect::<Vec<_>>())
            .collect();
        edges.sort_unstable();
        prop_assert_eq!(edges.as_slice(), g.edges());
        for c in &comps {
            prop_assert!(c.graph.is_connected());
        }
    }

    #[test]
    fn permuted_graphs_are_isomorphic(g in graph_strategy(10), seed in any::<u64>()) {
        let perm = permutation(g.vertex_count(), seed);
        let h = g.permuted(&perm).unwrap();
        let w = are_isomorphic(&g, &h);
        prop_assert!(w.is_some());
        prop_assert!(w.unwrap().verify(&g, &h));
        prop_assert!(are_isomorphic(&h, &g).is_some());
    }

    #[test]
    fn isomorphism_verdict_is_symmetric(g in graph_strategy(6), h in graph_strategy(6)) {
        prop_assert_eq!(are_isomorphic(&g, &h).is_some(), are_isomorphic(&h, &g).is_some());
        if g.degree_sequence() != h.degree_sequence() {
            prop_assert!(are_isomorphic(&g, &h).is_none());
        }
    }

    #[test]
    fn cup_rank_equals_degree(g in graph_strategy(8), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let alg = raag_algebra(&g, p).unwrap();
        prop_assert_eq!(alg.dim2(), g.edge_count());
        prop_assert_eq!(racg_algebra(&g).dim2(), g.edge_count() + g.vertex_count());
        for v in 0..g.vertex_count() {
            let mut e = vec![0; g.vertex_count()];
            e[v] = 1;
            prop_assert_eq!(alg.cup_rank(&e).unwrap(), g.degree(v).unwrap());
        }
    }

    #[test]
    fn alternating_squares_vanish(
        g in graph_strategy(7),
        p in prop::sample::select(vec![2u64, 3, 5]),
        seed in any::<u64>(),
    ) {
        let (alg, _) = raag_algebra(&g, p).unwrap().random_scramble(seed);
        let mut rng = SplitMix64::new(seed ^ 0xABCD);
        for _ in 0..20 {
            let x: Vec<u32> = (0..alg.dim1()).map(|_| rng.below(p) as u32).collect();
            prop_assert!(alg.cup(&x, &x).unwrap().iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn basis_changes_compose(g in graph_strategy(6), s1 in any::<u64>(), s2 in any::<u64>()) {
        let alg = raag_algebra(&g, 3).unwrap();
        let (once, c1) = alg.random_scramble(s1);
        let (twice, c2) = once.random_scramble(s2);
        prop_assert_eq!(alg.apply_basis_change(&c1.then(&c2).unwrap()).unwrap(), twice);
        let id = BasisChange::identity(alg.field(), alg.dim1(), alg.dim2());
        prop_assert_eq!(alg.apply_basis_change(&id).unwrap(), alg.clone());
    }

    #[test]
    fn sigma_commutes_with_basis_change(g in graph_strategy(6), seed in any::<u64>()) {
        let alg = racg_algebra(&g);
        let (scrambled, change) = alg.random_scramble(seed);
        let expected = alg.sigma_subspace().unwrap().image(change.h2()).unwrap();
        prop_assert_eq!(scrambled.sigma_subspace().unwrap(), expected);
    }

    #[test]
    fn diagonal_rescaling_keeps_the_graph(
        g in graph_strategy(5),
        p in prop::sample::select(vec![3u64, 5]),
        seed in any::<u64>(),
    ) {
        let alg = raag_algebra(&g, p).unwrap();
        let f = Fp::new(p).unwrap();
        let n = g.vertex_count();
        let mut rng = SplitMix64::new(seed);
        let mut d = Matrix::zeros(f, n, n);
        for i in 0..n {
            d.set(i, i, 1 + rng.below(p - 1) as u32);
        }
        let change = BasisChange::new(d, Matrix::identity(f, alg.dim2())).unwrap();
        let scaled = alg.apply_basis_change(&change).unwrap();
        let r = reconstruct(&scaled, ReconstructOptions::default()).unwrap();
        prop_assert!(are_isomorphic(&r.graph, &g).is_some());
        let r0 = reconstruct(&alg, ReconstructOptions::default()).unwrap();
        prop_assert_eq!(r.graph.degree_sequence(), r0.graph.degree_sequence());
    }

    #[test]
    fn witness_reproduces_input(g in graph_strategy(6), p in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        let (s, _) = raag_algebra(&g, p).unwrap().random_scramble(seed);
        let r = reconstruct(&s, ReconstructOptions::default()).unwrap();
        let model = raag_algebra(&r.graph, p).unwrap();
        prop_assert_eq!(model.apply_basis_change(&r.witness).unwrap(), s);
    }

    #[test]
    fn abelian_targets_ignore_commutators(g in graph_strategy(6), p in prop::sample::select(vec![2usize, 3, 5])) {
        let q = cyclic(p).unwrap();
        prop_assert_eq!(count_homs(&raag_presentation(&g), &q), BigUint::from(p).pow(g.vertex_count() as u32));
    }
}

#[test]
fn sigma_has_full_dimension_up_to_seven_vertices() {
    let mut total = 0;
    for n in 0..=7 {
        for g in isomorphism_classes(n) {
            total += 1;
            assert_eq!(racg_algebra(&g).sigma_subspace().unwrap().dim(), n, "{g:?}");
        }
    }
    // 1 + 1 + 2 + 4 + 11 + 34 + 156 + 1044
    assert_eq!(total, 1253);
}

#[test]
fn reduced_coxeter_algebra_matches_artin_algebra() {
    for n in 0..=5 {
        for g in isomorphism_classes(n) {
            let (scrambled, _) = racg_algebra(&g).random_scramble(n as u64);
            for alg in [racg_algebra(&g), scrambled] {
                let reduced = alg.reduce_racg().unwrap();
                let raag = raag_algebra(&g, 2).unwrap();
                assert!(
                    algebras_isomorphic(&reduced, &raag, ReconstructOptions::default())
                        .unwrap()
                        .is_some(),
                    "{g:?}"
                );
            }
        }
    }
}

#[test]
fn hom_counts_are_isomorphism_invariant() {
    let groups = catalog(2, 16).unwrap();
    for n in 0..=4 {
        for g in isomorphism_classes(n) {
            let h = g.permuted(&permutation(n, n as u64 + 17)).unwrap();
            for q in &groups {
                assert_eq!(
                    count_homs(&raag_presentation(&g), q),
                    count_homs(&raag_presentation(&h), q)
                );
                assert_eq!(
                    count_homs(&racg_presentation(&g), q),
                    count_homs(&racg_presentation(&h), q)
                );
            }
        }
    }
}

#[test]
fn coxeter_homs_inject_into_extension_homs() {
    let groups = catalog(2, 8).unwrap();
    for n in 1..=4 {
        for g in isomorphism_classes(n) {
            for w in 0..n {
                let ext = remark_extension_presentation(&g, w).unwrap();
                for q in &groups {
                    assert!(count_homs(&racg_presentation(&g), q) <= count_homs(&ext, q));
                }
            }
        }
    }
}
