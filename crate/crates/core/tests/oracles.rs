mod common;

use common::*;
use spexlab::constructions::GraphClass;
use spexlab::forbidden::{
    contains_bouquet, contains_cycle_of_length, matching_number, max_l_cycles_at,
    BouquetReading, DetectionWitness, ForbiddenSpec,
};
use spexlab::recognition::{is_outerplanar, is_planar};
use spexlab::search::{canonical_form, enumerate_class};
use spexlab::spectral::spectral_radius;
use spexlab::Graph;

#[test]
fn planarity_matches_kuratowski_minors() {
    let mut r = rng(1);
    for i in 0..400 {
        let n = 5 + i % 3;
        let g = random_graph(&mut r, n, 0.45 + 0.4 * (i % 5) as f64 / 5.0);
        assert_eq!(is_planar(&g).planar, planar_oracle(&g), "{}", g.to_graph6());
    }
}

#[test]
fn outerplanarity_matches_forbidden_minors() {
    let mut r = rng(2);
    for i in 0..600 {
        let n = 4 + i % 4;
        let g = random_graph(&mut r, n, 0.25 + 0.5 * (i % 4) as f64 / 4.0);
        assert_eq!(is_outerplanar(&g).planar, outerplanar_oracle(&g), "{}", g.to_graph6());
    }
}

#[test]
fn non_planar_witnesses_are_present() {
    for g in [Graph::complete(5).unwrap(), Graph::complete_bipartite(3, 3).unwrap()] {
        let v = is_planar(&g);
        assert!(!v.planar && v.witness.is_some());
    }
}

#[test]
fn cycle_detection_matches_subset_search() {
    let mut r = rng(3);
    for i in 0..300 {
        let n = 5 + i % 4;
        let g = random_graph(&mut r, n, 0.3 + 0.1 * (i % 4) as f64);
        for l in 3..=n {
            let d = contains_cycle_of_length(&g, l).unwrap();
            assert_eq!(d.found, has_cycle_oracle(&g, l), "{} l={l}", g.to_graph6());
            if let Some(w) = d.witness {
                assert!(w.validates(&g, &ForbiddenSpec::Cycle { l }, BouquetReading::HubOnly));
            }
        }
    }
}

#[test]
fn hub_bouquets_match_packing_search() {
    let mut r = rng(4);
    for i in 0..200 {
        let n = 6 + i % 4;
        let g = random_graph(&mut r, n, 0.45);
        for l in 3..=4 {
            for v in 0..n {
                let (k, fam) = max_l_cycles_at(&g, v, l, n, BouquetReading::HubOnly).unwrap();
                assert_eq!(k, hub_bouquet_oracle(&g, v, l), "{} v={v} l={l}", g.to_graph6());
                assert_eq!(fam.len(), k);
            }
        }
        let d = contains_bouquet(&g, 2, 3).unwrap();
        let expect = (0..n).any(|v| hub_bouquet_oracle(&g, v, 3) >= 2);
        assert_eq!(d.found, expect);
        if let Some(w @ DetectionWitness::Bouquet { .. }) = d.witness {
            assert!(w.validates(&g, &ForbiddenSpec::Bouquet { t: 2, l: 3 }, BouquetReading::HubOnly));
        }
    }
}

#[test]
fn matching_number_matches_exhaustive() {
    let mut r = rng(5);
    for i in 0..400 {
        let n = 2 + i % 9;
        let g = random_graph(&mut r, n, 0.15 + 0.1 * (i % 5) as f64);
        assert_eq!(matching_number(&g), matching_oracle(&g), "{}", g.to_graph6());
    }
}

#[test]
fn spectral_radius_matches_dense_eigensolver() {
    let mut r = rng(6);
    for i in 0..200 {
        let n = 2 + i % 11;
        let g = random_graph(&mut r, n, 0.2 + 0.15 * (i % 5) as f64);
        let e = spectral_radius(&g, 1e-11).unwrap();
        let dense = dense_rho(&g);
        assert!((e.rho - dense).abs() < 1e-8, "{}: {} vs {dense}", g.to_graph6(), e.rho);
    }
}

fn class_oracle(class: GraphClass) -> fn(&Graph) -> bool {
    match class {
        GraphClass::Outerplanar => outerplanar_oracle,
        GraphClass::Planar => planar_oracle,
    }
}

#[test]
fn enumeration_matches_naive_generator() {
    let specs = [
        None,
        Some(ForbiddenSpec::Matching { m: 2 }),
        Some(ForbiddenSpec::Cycle { l: 4 }),
        Some(ForbiddenSpec::Bouquet { t: 2, l: 3 }),
    ];
    let all: Vec<Vec<Graph>> = (0..=6).map(|n| naive_classes(n.max(1), |_| true)).collect();
    for class in [GraphClass::Outerplanar, GraphClass::Planar] {
        for n in 1..=6 {
            for connected in [true, false] {
                for f in specs {
                    let fast = enumerate_class(n, class, f, connected).unwrap();
                    let naive: Vec<&Graph> = all[n]
                        .iter()
                        .filter(|g| {
                            (!connected || g.is_connected())
                                && class_oracle(class)(g)
                                && f.is_none_or(|f| !f.detect(g).unwrap().found)
                        })
                        .collect();
                    assert_eq!(fast.len(), naive.len(), "{class} n={n} connected={connected} {f:?}");
                    let mut a: Vec<Vec<u8>> = fast.iter().map(|g| canonical_form(g).unwrap()).collect();
                    let mut b: Vec<Vec<u8>> = naive.iter().map(|&g| canonical_form(g).unwrap()).collect();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn planar_connected_counts() {
    // connected planar graphs on 1..=6 vertices
    let expect = [1, 1, 2, 6, 20, 99];
    for (n, &c) in (1..=6).zip(&expect) {
        assert_eq!(enumerate_class(n, GraphClass::Planar, None, true).unwrap().len(), c);
    }
}
