use std::collections::BTreeSet;

use atoro_core::enumerate::{
    all_maps, all_maps_with_min_face, count_rooted_maps, enumerate_atoroidal, enumerate_recombinations, recombine,
    Catalogue, GluingChoice,
};
use atoro_core::{canonical_code, exception, is_atoroidal, is_hyperbolic, torus_graph, Chirality, ExceptionKind};

const M: Chirality = Chirality::ModReflection;

fn rooted_formula(n: u64) -> u64 {
    // 2 * 3^n * (2n)! / (n! (n+2)!)
    let mut binom = 1u64;
    for k in 0..n {
        binom = binom * (2 * n - k) / (k + 1);
    }
    2 * 3u64.pow(n as u32) * binom / ((n + 1) * (n + 2))
}

#[test]
fn rooted_counts_match_the_closed_form() {
    for v in 1..=7 {
        assert_eq!(count_rooted_maps(v as usize), rooted_formula(v), "V={v}");
    }
}

#[test]
fn every_atoroidal_map_is_in_the_store() {
    let store = enumerate_atoroidal(8).unwrap();
    for v in 1..=8 {
        let found: BTreeSet<_> =
            all_maps(v, M).iter().filter(|g| is_atoroidal(g)).map(|g| canonical_code(g, M).unwrap()).collect();
        assert_eq!(found, store.levels[&v], "V={v}");
    }
}

#[test]
fn hyperbolic_graphs_are_the_atoroidal_bigon_free_maps() {
    let store = enumerate_atoroidal(12).unwrap();
    let bigon_free = [1, 0, 1, 1, 3, 3, 13];
    for (i, v) in (6..=12).enumerate() {
        let maps = all_maps_with_min_face(v, M, 3);
        assert_eq!(maps.len(), bigon_free[i], "V={v}");
        let hyperbolic: BTreeSet<_> =
            maps.iter().filter(|g| is_atoroidal(g)).map(|g| canonical_code(g, M).unwrap()).collect();
        let from_store: BTreeSet<_> =
            store.levels[&v].iter().filter(|c| store.get(c).unwrap().hyperbolic).cloned().collect();
        assert_eq!(hyperbolic, from_store, "V={v}");
        assert!(store.levels[&v].iter().all(|c| is_hyperbolic(&store.get(c).unwrap().map)));
    }
}

#[test]
fn basic_polyhedra_miss_one_eleven_vertex_map() {
    let store = enumerate_atoroidal(11).unwrap();
    let basic = enumerate_recombinations(&store, 11, Catalogue::BasicPolyhedra);
    let bigon_free: BTreeSet<_> =
        all_maps_with_min_face(11, M, 3).iter().map(|g| canonical_code(g, M).unwrap()).collect();
    let at11: BTreeSet<_> = basic.iter().filter(|c| c.vertex_count() == 11).cloned().collect();
    assert_eq!(bigon_free.len(), 3);
    assert_eq!(at11.len(), 2);
    assert!(at11.is_subset(&bigon_free));
    let missing = bigon_free.difference(&at11).next().unwrap().clone();

    // It is T_3 glued to the composite of T_3 and the trefoil projection.
    let t3 = torus_graph(3).unwrap();
    let trefoil = exception(ExceptionKind::TrefoilProjection);
    let reached = GluingChoice::all().any(|c1| {
        let mid = recombine(&t3, 0, &trefoil, 0, c1).unwrap();
        (0..mid.vertex_count()).any(|v| {
            GluingChoice::all().any(|c2| canonical_code(&recombine(&t3, 0, &mid, v, c2).unwrap(), M).unwrap() == missing)
        })
    });
    assert!(reached);
}
