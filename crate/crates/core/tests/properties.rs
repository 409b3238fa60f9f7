mod common;

use proptest::prelude::*;
use spexlab::constructions::{
    construct, transform, transform_moves, transformation_chain_to, FamilySpec, PathPartition,
};
use spexlab::forbidden::{matching_number, BouquetReading, ForbiddenSpec};
use spexlab::recognition::{is_outerplanar, is_planar};
use spexlab::search::{canonical_form, canonical_graph};
use spexlab::spectral::{compare_spectral_radii, rayleigh_quotient, spectral_radius, Verdict};
use spexlab::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn partition() -> impl Strategy<Value = PathPartition> {
    proptest::collection::vec(1usize..8, 1..6).prop_map(|p| PathPartition::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in graph(20)) {
        let back = Graph::from_graph6(&g.to_graph6()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn adjacency_is_symmetric_and_loopless(g in graph(20)) {
        prop_assert!(g.is_well_formed());
        let m: usize = g.degrees().iter().sum();
        prop_assert_eq!(m, 2 * g.edge_count());
    }

    #[test]
    fn outerplanar_implies_planar(g in graph(9)) {
        if is_outerplanar(&g).planar {
            prop_assert!(is_planar(&g).planar);
        }
        if is_planar(&g).planar && g.n() >= 3 {
            prop_assert!(g.edge_count() <= 3 * g.n() - 6);
        }
        if is_outerplanar(&g).planar && g.n() >= 2 {
            prop_assert!(g.edge_count() <= 2 * g.n() - 3);
        }
    }

    #[test]
    fn outerplanar_iff_apex_extension_planar(g in graph(9)) {
        let apex = Graph::join(&Graph::empty(1).unwrap(), &g).unwrap();
        prop_assert_eq!(is_outerplanar(&g).planar, is_planar(&apex).planar);
    }

    #[test]
    fn recognition_is_label_invariant((g, p) in graph(9).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let h = g.relabel(&p).unwrap();
        prop_assert_eq!(is_planar(&g).planar, is_planar(&h).planar);
        prop_assert_eq!(is_outerplanar(&g).planar, is_outerplanar(&h).planar);
        prop_assert_eq!(matching_number(&g), matching_number(&h));
    }

    #[test]
    fn canonical_form_is_an_invariant((g, p) in graph(10).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let h = g.relabel(&p).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(canonical_graph(&g).unwrap().edge_count(), g.edge_count());
    }

    #[test]
    fn detectors_are_monotone_under_edge_addition(g in graph(8), u in 0usize..8, v in 0usize..8) {
        let n = g.n();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v);
        let h = g.with_edge(u, v).unwrap();
        for spec in [
            ForbiddenSpec::Cycle { l: 4 },
            ForbiddenSpec::Bouquet { t: 2, l: 3 },
            ForbiddenSpec::Matching { m: 3 },
        ] {
            if spec.detect(&g).unwrap().found {
                prop_assert!(spec.detect(&h).unwrap().found);
            }
        }
    }

    #[test]
    fn witnesses_validate(g in graph(9)) {
        for spec in [
            ForbiddenSpec::Cycle { l: 5 },
            ForbiddenSpec::Bouquet { t: 2, l: 4 },
            ForbiddenSpec::Matching { m: 2 },
        ] {
            let d = spec.detect(&g).unwrap();
            prop_assert_eq!(d.found, d.witness.is_some());
            if let Some(w) = d.witness {
                prop_assert!(w.validates(&g, &spec, BouquetReading::HubOnly));
            }
        }
    }

    #[test]
    fn rho_bounds_and_residual(g in graph(14)) {
        let e = spectral_radius(&g, 1e-10).unwrap();
        let degs = g.degrees();
        let dmax = *degs.iter().max().unwrap() as f64;
        let avg = 2.0 * g.edge_count() as f64 / g.n() as f64;
        prop_assert!(e.rho <= dmax + 1e-9);
        prop_assert!(e.rho >= avg - 1e-9);
        prop_assert!(e.residual <= 1e-10);
        prop_assert!(e.perron.iter().all(|&x| x >= 0.0));
        let rq = rayleigh_quotient(&g, &e.perron).unwrap();
        prop_assert!((rq - e.rho).abs() < 1e-9);
    }

    #[test]
    fn rho_is_monotone_in_subgraphs(g in graph(12), drop in 0usize..12) {
        let mut s = VertexSet::full(g.n());
        s.remove(drop % g.n());
        let sub = g.induced_subgraph(&s).unwrap();
        prop_assume!(sub.n() > 0);
        let a = spectral_radius(&g, 1e-10).unwrap().rho;
        let b = spectral_radius(&sub, 1e-10).unwrap().rho;
        prop_assert!(b <= a + 1e-9);
    }

    #[test]
    fn comparison_is_antisymmetric(a in graph(10), b in graph(10)) {
        let ab = compare_spectral_radii(&a, &b, 1e-10).unwrap();
        let ba = compare_spectral_radii(&b, &a, 1e-10).unwrap();
        let flipped = match ab.verdict {
            Verdict::Greater => Verdict::Less,
            Verdict::Less => Verdict::Greater,
            Verdict::Indeterminate => Verdict::Indeterminate,
        };
        prop_assert_eq!(ba.verdict, flipped);
    }

    #[test]
    fn transform_preserves_total_and_raises_squares(h in partition()) {
        let sq = |p: &PathPartition| p.parts().iter().map(|x| x * x).sum::<usize>();
        for step in transform_moves(&h) {
            prop_assert_eq!(step.result.total(), h.total());
            prop_assert!(sq(&step.result) > sq(&h));
            prop_assert_eq!(&transform(&h, step.i, step.j).unwrap(), &step.result);
            let chain = transformation_chain_to(&h, &step.result).unwrap();
            prop_assert_eq!(chain.len(), 1);
        }
    }

    #[test]
    fn chains_replay(h in partition(), picks in proptest::collection::vec(any::<usize>(), 0..6)) {
        let mut cur = h.clone();
        for k in picks {
            let moves = transform_moves(&cur);
            if moves.is_empty() {
                break;
            }
            cur = moves[k % moves.len()].result.clone();
        }
        let chain = transformation_chain_to(&h, &cur).unwrap();
        let mut at = h.clone();
        for s in &chain {
            at = transform(&at, s.i, s.j).unwrap();
            prop_assert_eq!(&at, &s.result);
        }
        prop_assert_eq!(at, cur);
    }

    #[test]
    fn families_have_their_order(t in 1usize..4, l in 3usize..7, extra in 0usize..40) {
        let spec = FamilySpec::K1Hop { t, l, n: 1 };
        let n = spec.min_n().unwrap() + extra;
        let g = construct(&spec.with_n(n)).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert!(g.is_connected());
        prop_assert!(is_outerplanar(&g).planar);
    }
}

#[test]
fn graph6_fuzz_large_orders() {
    let mut r = common::rng(7);
    for i in 0..2000 {
        let n = i % 63;
        let g = common::random_graph(&mut r, n.max(1), 0.3);
        assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }
}
