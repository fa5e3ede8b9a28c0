use super::*;
use crate::constructions::named_graph;
use crate::graph::OrientedGraph;

fn exact_opts() -> SearchOptions {
    SearchOptions {
        prefix_digits: 3,
        ..SearchOptions::single_threaded()
    }
}

#[test]
fn triangle_orientations() {
    let r = search_orientations(&SimpleGraph::complete(3), 6, Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.space_size, 8);
    assert_eq!(r.hits.len(), 2);
    assert_eq!(r.hits_up_to_iso.len(), 1);
    assert_eq!(r.class_sizes, vec![2]);
    let tri = named_graph("directed-triangle").unwrap();
    assert!(are_isomorphic(r.hits[0].mixed().unwrap(), &tri));
    assert!(hits_closed_under_reversal(&r));
}

#[test]
fn k33_orientations_form_one_class() {
    let r = search_orientations(
        &SimpleGraph::complete_bipartite(3, 3),
        6,
        Filter::TwoEv,
        &SearchOptions::default(),
    )
    .unwrap();
    assert_eq!(r.space_size, 512);
    assert!(!r.hits.is_empty());
    assert_eq!(r.hits_up_to_iso.len(), 1);
    let fixture = named_graph("oriented-K33").unwrap();
    assert!(r.hits.iter().all(|h| are_isomorphic(h.mixed().unwrap(), &fixture)));
}

#[test]
fn partition_and_thread_count_do_not_change_results() {
    let g = SimpleGraph::complete_bipartite(3, 3);
    let base = search_orientations(
        &g,
        6,
        Filter::TwoEv,
        &SearchOptions {
            prefix_digits: 0,
            ..SearchOptions::single_threaded()
        },
    )
    .unwrap();
    for (p, t) in [(1, Some(1)), (4, Some(3)), (9, None), (30, Some(2))] {
        let r = search_orientations(
            &g,
            6,
            Filter::TwoEv,
            &SearchOptions {
                prefix_digits: p,
                threads: t,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.hits, base.hits);
        assert_eq!(r.hits_up_to_iso, base.hits_up_to_iso);
    }
}

#[test]
fn mixed_c4_and_triangle() {
    let r = search_mixed_orientations(&SimpleGraph::cycle(4), 6, Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.space_size, 81);
    let fixture = named_graph("mixed-C4").unwrap();
    assert!(!r.hits.is_empty());
    assert!(r.hits.iter().all(|h| are_isomorphic(h.mixed().unwrap(), &fixture)));
    assert!(r.hits.iter().all(|h| !h.mixed().unwrap().is_oriented()));
    assert!(hits_closed_under_reversal(&r));

    let r = search_mixed_orientations(&SimpleGraph::complete(3), 6, Filter::TwoEv, &exact_opts()).unwrap();
    let undirected = MixedGraph::new(3, [], [(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(r.hits.iter().any(|h| h.mixed() == Some(&undirected)));
}

#[test]
fn custom_filter() {
    let tournament = |g: &MixedGraph| g.is_oriented() && g.is_regular();
    let r = search_mixed_orientations(
        &SimpleGraph::complete(3),
        6,
        Filter::Custom(&tournament),
        &exact_opts(),
    )
    .unwrap();
    assert_eq!(r.hits.len(), 2);
    assert!(r.hits.iter().all(|h| h.certificate.is_none()));
}

#[test]
fn signings() {
    let r = search_signings(&SimpleGraph::complete(2), Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.hits.len(), 2);
    assert_eq!(r.hits_up_to_iso.len(), 2);

    let c4 = SimpleGraph::cycle(4);
    let r = search_signings(&c4, Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.space_size, 16);
    assert_eq!(r.hits.len(), 8);
    for h in &r.hits {
        let s = h.signed().unwrap();
        assert_eq!(s.negative_edge_count() % 2, 1);
        let c = h.certificate.as_ref().unwrap();
        assert!((c.r().unwrap() - 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(c.multiplicities, Some((2, 2)));
    }
}

#[test]
fn float_path_for_large_k() {
    let r = search_orientations(&SimpleGraph::complete(3), 10, Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.method, Method::FloatCluster);
    assert!(r.hits.is_empty());
    let r = search_orientations(&SimpleGraph::complete(2), 10, Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.hits.len(), 2);
    assert_eq!(r.hits_up_to_iso.len(), 1);
}

#[test]
fn disconnected_and_oversized() {
    let g = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
    let r = search_orientations(&g, 6, Filter::TwoEv, &exact_opts()).unwrap();
    assert_eq!(r.skipped_disconnected, 4);
    assert!(r.hits.is_empty());
    let big = SimpleGraph::complete(8);
    assert!(matches!(
        search_orientations(&big, 6, Filter::TwoEv, &exact_opts()),
        Err(SearchError::SpaceTooLarge { .. })
    ));
    let k6 = SimpleGraph::complete(6);
    assert!(matches!(
        search_mixed_orientations(&SimpleGraph::complete(7), 6, Filter::TwoEv, &exact_opts()),
        Err(SearchError::SpaceTooLarge { .. })
    ));
    assert_eq!(
        search_orientations(&k6, 2, Filter::TwoEv, &exact_opts()),
        Err(SearchError::InvalidOrder(2))
    );
}

#[test]
fn connected_graph_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| connected_graphs_up_to_iso(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21]);
}

#[test]
fn small_scan() {
    let r = scan_small_oriented_graphs(10, 4, false, &exact_opts()).unwrap();
    assert_eq!(r.hits_up_to_iso.len(), 1);
    let edge = OrientedGraph::new(2, [(0, 1)]).unwrap();
    assert!(are_isomorphic(r.hits_up_to_iso[0].mixed().unwrap(), &edge));

    let control = scan_small_oriented_graphs(6, 3, true, &exact_opts()).unwrap();
    let tri = named_graph("directed-triangle").unwrap();
    assert!(control
        .hits_up_to_iso
        .iter()
        .any(|h| are_isomorphic(h.mixed().unwrap(), &tri)));

    assert_eq!(
        scan_small_oriented_graphs(6, 3, false, &exact_opts()),
        Err(SearchError::OrderOutsideRange(6))
    );
    assert!(matches!(
        scan_small_oriented_graphs(10, 7, false, &exact_opts()),
        Err(SearchError::TooManyVertices { .. })
    ));
}

#[test]
fn report_json() {
    let r = search_orientations(&SimpleGraph::complete(3), 6, Filter::TwoEv, &exact_opts()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["mode"], "oriented");
    assert_eq!(v["space_size"], 8);
    assert_eq!(v["hits"][0]["graph"]["kind"], "mixed");
    let back: SearchReport = serde_json::from_value(v).unwrap();
    assert_eq!(back.hits, r.hits);
}
