//! Structural consequences of H^2 = pH + dI checked on every k = 6 oriented
//! two-eigenvalue graph the searches find.

use hermspec_core::certify::{
    certify_two_ev, check_common_neighbor_rule, check_s_bound, walk_value_census,
};
use hermspec_core::constructions::named_graph;
use hermspec_core::cyclotomic::Order;
use hermspec_core::graph::{MixedGraph, OrientedGraph, SimpleGraph};
use hermspec_core::search::{scan_small_oriented_graphs, search_orientations, Filter, SearchOptions};

fn oriented_hits() -> Vec<MixedGraph> {
    let opts = SearchOptions::default();
    let mut out: Vec<MixedGraph> = scan_small_oriented_graphs(6, 5, true, &opts)
        .unwrap()
        .hits_up_to_iso
        .iter()
        .map(|h| h.mixed().unwrap().clone())
        .collect();
    for g in [SimpleGraph::complete_bipartite(3, 3), SimpleGraph::crown(5)] {
        let r = search_orientations(&g, 6, Filter::TwoEv, &opts).unwrap();
        out.extend(r.hits_up_to_iso.iter().map(|h| h.mixed().unwrap().clone()));
    }
    out
}

#[test]
fn hits_include_the_named_extremal_graphs() {
    let hits = oriented_hits();
    for name in ["directed-edge", "directed-triangle", "oriented-K33", "oriented-K55-M"] {
        let g = named_graph(name).unwrap();
        assert!(hits.iter().any(|h| hermspec_core::graph::are_isomorphic(h, &g)), "{name}");
    }
}

#[test]
fn symmetric_spectrum_forces_common_neighbors_divisible_by_three() {
    let mut seen = 0;
    for g in oriented_hits() {
        let c = certify_two_ev(&g, 6).unwrap();
        let (r, s) = (c.r().unwrap(), c.s().unwrap());
        if (r + s).abs() < 1e-12 {
            seen += 1;
            assert!(check_common_neighbor_rule(&g.underlying()), "{g:?}");
        }
    }
    assert!(seen >= 3);
}

#[test]
fn least_eigenvalue_bound() {
    let root = Order::Six.root();
    for g in oriented_hits() {
        let c = certify_two_ev(&g, 6).unwrap();
        assert!(check_s_bound(&c, &g, &root).unwrap(), "{g:?}");
        assert!(c.s().unwrap() >= -2.0 - 1e-9);
    }
}

#[test]
fn two_walk_census_follows_the_quadratic() {
    // (H^2)_uv = a + b w^2 + c w^4 = (a - b) + (b - c) w, since w^2 = w - 1
    // and w^4 = -w. Matching pH_uv gives a = b and b - c = p on arcs, and
    // a = b = c on non-adjacent pairs.
    for g in oriented_hits() {
        let c = certify_two_ev(&g, 6).unwrap();
        let p = (c.r().unwrap() + c.s().unwrap()).round() as i64;
        let d = OrientedGraph::try_from(g.clone()).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                let w = walk_value_census(&d, u, v).unwrap();
                if g.arcs().contains(&(u, v)) {
                    assert_eq!(w.a, w.b, "{g:?} ({u},{v})");
                    assert_eq!(w.b as i64 - w.c as i64, p, "{g:?} ({u},{v})");
                } else if !g.arcs().contains(&(v, u)) {
                    assert!(w.a == w.b && w.b == w.c, "{g:?} ({u},{v})");
                }
            }
        }
    }
}
