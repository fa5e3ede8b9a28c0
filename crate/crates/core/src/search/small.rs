use super::{finish, search_orientations, Filter, SearchError, SearchMode, SearchOptions, SearchReport};
use crate::certify::Method;
use crate::cyclotomic::Order;
use crate::graph::{are_isomorphic, MixedGraph, SimpleGraph};
use std::collections::HashMap;
use std::time::Instant;

pub const SMALL_SCAN_MAX_N: usize = 6;

/// One representative per isomorphism class of connected simple graphs on
/// exactly `n` vertices, found by enumerating edge subsets of `K_n`.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= SMALL_SCAN_MAX_N, "edge subset enumeration is limited to n <= 6");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut reps: Vec<SimpleGraph> = Vec::new();
    let mut buckets: HashMap<(usize, Vec<usize>), Vec<MixedGraph>> = HashMap::new();
    for mask in 0u32..(1 << pairs.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = SimpleGraph::new(n, edges).expect("valid pairs");
        if !g.is_connected() {
            continue;
        }
        let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        let as_mixed = MixedGraph::new(n, [], g.edges().iter().copied()).expect("valid");
        let bucket = buckets.entry((g.edges().len(), degrees)).or_default();
        if bucket.iter().any(|r| are_isomorphic(r, &as_mixed)) {
            continue;
        }
        bucket.push(as_mixed);
        reps.push(g);
    }
    reps
}

/// Scans every connected oriented graph on at most `n_max` vertices under
/// the principal root of order `k` (float clustering when `k > 8`).
///
/// Orientations of isomorphic underlying graphs give isomorphic oriented
/// graphs, so each underlying class is scanned once. `allow_small_k` admits
/// `k <= 8` as a control run.
pub fn scan_small_oriented_graphs(
    k: u32,
    n_max: usize,
    allow_small_k: bool,
    opts: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    if k < 3 {
        return Err(SearchError::InvalidOrder(k));
    }
    if k <= 8 && !allow_small_k {
        return Err(SearchError::OrderOutsideRange(k));
    }
    if n_max > SMALL_SCAN_MAX_N {
        return Err(SearchError::TooManyVertices {
            got: n_max,
            max: SMALL_SCAN_MAX_N,
        });
    }
    let mut report = SearchReport {
        underlying: format!("connected graphs on at most {n_max} vertices"),
        label: None,
        mode: SearchMode::Oriented,
        k,
        method: if Order::try_from(k).is_ok() {
            Method::ExactIdentity
        } else {
            Method::FloatCluster
        },
        space_size: 0,
        skipped_disconnected: 0,
        hits: Vec::new(),
        hits_up_to_iso: Vec::new(),
        class_sizes: Vec::new(),
        elapsed_secs: 0.0,
    };
    let mut hits = Vec::new();
    for n in 1..=n_max {
        for g in connected_graphs_up_to_iso(n) {
            let sub = search_orientations(&g, k, Filter::TwoEv, opts)?;
            report.space_size += sub.space_size;
            hits.extend(sub.hits);
        }
    }
    Ok(finish(report, hits, start))
}
