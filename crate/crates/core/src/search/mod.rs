//! Exhaustive scans over orientations, mixed orientations and signings of a
//! fixed underlying graph.
//!
//! Assignments are indexed in mixed radix (one digit per edge in sorted
//! edge order). The space is cut into work units by fixing the top digits;
//! each unit walks the remaining digits as an odometer and updates only the
//! matrix entries of digits that changed. Units are independent, and their
//! results are concatenated in unit order and then sorted by encoding, so
//! the report does not depend on the thread count.

mod small;

pub use small::{connected_graphs_up_to_iso, scan_small_oriented_graphs, SMALL_SCAN_MAX_N};

use crate::certify::{
    certify_signed_two_ev, certify_two_ev, exact_two_ev, Certificate, CertifyError, ExactTwoEv, Method,
};
use crate::cyclotomic::{exact_entry, ExactMatrix, Order, RootOfUnity};
use crate::graph::{
    are_isomorphic, are_isomorphic_signed, encode_digraph6, MixedGraph, Relation, Sign,
    SignedGraph, SimpleGraph,
};
use crate::spectra::{ComplexMatrix, Spectrum, DEFAULT_CLUSTER_TOL};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

/// Largest number of assignments any scan will enumerate.
pub const MAX_SPACE: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("search space {size} exceeds the limit {limit}")]
    SpaceTooLarge { size: u128, limit: u64 },
    #[error("root of unity order must be at least 3, got {0}")]
    InvalidOrder(u32),
    #[error("small graph scan requires k > 8 (got {0}); pass the override to run a control")]
    OrderOutsideRange(u32),
    #[error("small graph scan supports at most {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Oriented,
    Mixed,
    Signed,
}

impl SearchMode {
    fn base(self) -> u64 {
        match self {
            SearchMode::Mixed => 3,
            _ => 2,
        }
    }
}

/// Which assignments count as hits.
pub enum Filter<'a, G> {
    /// Exactly two distinct eigenvalues.
    TwoEv,
    Custom(&'a (dyn Fn(&G) -> bool + Sync)),
}

impl<G> Clone for Filter<'_, G> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<G> Copy for Filter<'_, G> {}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Worker threads; `Some(1)` runs on the calling thread, `None` uses
    /// rayon's default pool.
    pub threads: Option<usize>,
    /// Number of leading digits fixed per work unit.
    pub prefix_digits: u32,
    /// Cluster tolerance for float certification.
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            prefix_digits: 8,
            tol: DEFAULT_CLUSTER_TOL,
        }
    }
}

impl SearchOptions {
    pub fn single_threaded() -> Self {
        SearchOptions {
            threads: Some(1),
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "graph")]
pub enum HitGraph {
    Mixed(MixedGraph),
    Signed(SignedGraph),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    /// digraph6 for oriented and mixed hits; `<n>:<signs>` over the sorted
    /// edge list for signings.
    pub encoding: String,
    pub graph: HitGraph,
    /// Present for the two-eigenvalue filter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Hit {
    pub fn mixed(&self) -> Option<&MixedGraph> {
        match &self.graph {
            HitGraph::Mixed(g) => Some(g),
            HitGraph::Signed(_) => None,
        }
    }

    pub fn signed(&self) -> Option<&SignedGraph> {
        match &self.graph {
            HitGraph::Signed(g) => Some(g),
            HitGraph::Mixed(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    /// digraph6 of the underlying graph (undirected edges as digons), or a
    /// description for multi-graph scans.
    pub underlying: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub mode: SearchMode,
    /// Root order; `2` for signings.
    pub k: u32,
    pub method: Method,
    pub space_size: u64,
    /// Assignments skipped because the underlying graph is disconnected.
    pub skipped_disconnected: u64,
    pub hits: Vec<Hit>,
    pub hits_up_to_iso: Vec<Hit>,
    /// Number of hits in each class of `hits_up_to_iso`.
    pub class_sizes: Vec<usize>,
    pub elapsed_secs: f64,
}

fn underlying_id(g: &SimpleGraph) -> String {
    encode_digraph6(&MixedGraph::new(g.n(), [], g.edges().iter().copied()).expect("valid"))
}

fn space_size(m: usize, base: u64) -> Result<u64, SearchError> {
    let size = (base as u128).pow(m as u32);
    if size > MAX_SPACE as u128 {
        return Err(SearchError::SpaceTooLarge {
            size,
            limit: MAX_SPACE,
        });
    }
    Ok(size as u64)
}

/// Walks every digit vector of length `m` in base `base`. `set` is called
/// for each digit whose value changed before `visit` sees the full vector.
fn scan<S, T>(
    m: usize,
    base: u8,
    opts: &SearchOptions,
    init: impl Fn() -> S + Sync,
    set: impl Fn(&mut S, usize, u8) + Sync,
    visit: impl Fn(&mut S, &[u8]) -> Option<T> + Sync,
) -> Result<Vec<T>, SearchError>
where
    T: Send,
{
    let prefix = (opts.prefix_digits as usize).min(m);
    let low = m - prefix;
    let units = (base as u64).pow(prefix as u32);
    let run_unit = |unit: u64| -> Vec<T> {
        let mut digits = vec![0u8; m];
        let mut c = unit;
        for d in digits[low..].iter_mut() {
            *d = (c % base as u64) as u8;
            c /= base as u64;
        }
        let mut state = init();
        for (i, &d) in digits.iter().enumerate() {
            set(&mut state, i, d);
        }
        let mut out = Vec::new();
        loop {
            if let Some(t) = visit(&mut state, &digits) {
                out.push(t);
            }
            let mut i = 0;
            loop {
                if i == low {
                    return out;
                }
                digits[i] += 1;
                if digits[i] == base {
                    digits[i] = 0;
                    set(&mut state, i, 0);
                    i += 1;
                } else {
                    set(&mut state, i, digits[i]);
                    break;
                }
            }
        }
    };
    let nested: Vec<Vec<T>> = match opts.threads {
        Some(1) => (0..units).map(run_unit).collect(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?
            .install(|| (0..units).into_par_iter().map(run_unit).collect()),
        None => (0..units).into_par_iter().map(run_unit).collect(),
    };
    Ok(nested.into_iter().flatten().collect())
}

fn relation_of(mode: SearchMode, digit: u8) -> Relation {
    match (mode, digit) {
        (_, 0) => Relation::Forward,
        (_, 1) => Relation::Backward,
        (SearchMode::Mixed, 2) => Relation::Undirected,
        _ => unreachable!("digit out of range"),
    }
}

fn mixed_from_digits(n: usize, edges: &[(usize, usize)], mode: SearchMode, digits: &[u8]) -> MixedGraph {
    let mut arcs = Vec::new();
    let mut und = Vec::new();
    for (&(u, v), &d) in edges.iter().zip(digits) {
        match relation_of(mode, d) {
            Relation::Forward => arcs.push((u, v)),
            Relation::Backward => arcs.push((v, u)),
            _ => und.push((u, v)),
        }
    }
    MixedGraph::new(n, arcs, und).expect("edges of a simple graph")
}

fn signed_from_digits(n: usize, edges: &[(usize, usize)], digits: &[u8]) -> SignedGraph {
    SignedGraph::new(
        n,
        edges.iter().zip(digits).map(|(&(u, v), &d)| {
            (u, v, if d == 0 { Sign::Plus } else { Sign::Minus })
        }),
    )
    .expect("edges of a simple graph")
}

fn signed_encoding(g: &SignedGraph) -> String {
    let signs: String = g
        .edges()
        .iter()
        .map(|&(_, _, s)| if s == Sign::Plus { '+' } else { '-' })
        .collect();
    format!("{}:{signs}", g.n())
}

/// Groups hits (already sorted) into isomorphism classes; the first hit of
/// each class is its representative.
fn dedup<F>(hits: &[Hit], iso: F) -> (Vec<Hit>, Vec<usize>)
where
    F: Fn(&Hit, &Hit) -> bool,
{
    let mut reps: Vec<Hit> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    'outer: for h in hits {
        for (i, r) in reps.iter().enumerate() {
            if iso(r, h) {
                sizes[i] += 1;
                continue 'outer;
            }
        }
        reps.push(h.clone());
        sizes.push(1);
    }
    (reps, sizes)
}

pub(crate) fn mixed_iso(a: &Hit, b: &Hit) -> bool {
    match (a.mixed(), b.mixed()) {
        (Some(x), Some(y)) => are_isomorphic(x, y),
        _ => false,
    }
}

fn signed_iso(a: &Hit, b: &Hit) -> bool {
    match (a.signed(), b.signed()) {
        (Some(x), Some(y)) => are_isomorphic_signed(x, y),
        _ => false,
    }
}

/// Fills in hits, deduplication and timing.
fn finish(mut report: SearchReport, mut hits: Vec<Hit>, start: Instant) -> SearchReport {
    hits.sort_by(|a, b| a.encoding.cmp(&b.encoding));
    let (reps, sizes) = match report.mode {
        SearchMode::Signed => dedup(&hits, signed_iso),
        _ => dedup(&hits, mixed_iso),
    };
    report.hits = hits;
    report.hits_up_to_iso = reps;
    report.class_sizes = sizes;
    report.elapsed_secs = start.elapsed().as_secs_f64();
    report
}

struct ExactState {
    h: ExactMatrix,
}

struct FloatState {
    h: ComplexMatrix,
}

fn orientation_scan(
    g: &SimpleGraph,
    k: u32,
    mode: SearchMode,
    filter: Filter<'_, MixedGraph>,
    opts: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    if k < 3 {
        return Err(SearchError::InvalidOrder(k));
    }
    let edges = g.edges().to_vec();
    let m = edges.len();
    let base = mode.base();
    let size = space_size(m, base)?;
    let n = g.n();
    let exact = Order::try_from(k).ok();
    let mut report = SearchReport {
        underlying: underlying_id(g),
        label: None,
        mode,
        k,
        method: if exact.is_some() {
            Method::ExactIdentity
        } else {
            Method::FloatCluster
        },
        space_size: size,
        skipped_disconnected: 0,
        hits: Vec::new(),
        hits_up_to_iso: Vec::new(),
        class_sizes: Vec::new(),
        elapsed_secs: 0.0,
    };
    // Every assignment keeps the underlying graph, so connectivity and
    // regularity are properties of the whole space.
    if !g.is_connected() {
        report.skipped_disconnected = size;
        return Ok(finish(report, Vec::new(), start));
    }
    let to_hit = |digits: &[u8]| -> Result<Hit, CertifyError> {
        let graph = mixed_from_digits(n, &edges, mode, digits);
        let certificate = match filter {
            Filter::TwoEv => Some(certify_two_ev(&graph, k)?),
            Filter::Custom(_) => None,
        };
        Ok(Hit {
            encoding: encode_digraph6(&graph),
            graph: HitGraph::Mixed(graph),
            certificate,
        })
    };
    let raw: Vec<Result<Hit, CertifyError>> = match (filter, exact) {
        (Filter::Custom(f), _) => scan(
            m,
            base as u8,
            opts,
            || (),
            |_, _, _| {},
            |_, digits| {
                let graph = mixed_from_digits(n, &edges, mode, digits);
                f(&graph).then(|| to_hit(digits))
            },
        )?,
        (Filter::TwoEv, Some(order)) => {
            let Some(d) = g.regular_degree() else {
                return Ok(finish(report, Vec::new(), start));
            };
            if n < 2 {
                return Ok(finish(report, Vec::new(), start));
            }
            scan(
                m,
                base as u8,
                opts,
                || ExactState {
                    h: ExactMatrix::zeros(n, order),
                },
                |s, i, digit| {
                    let (u, v) = edges[i];
                    let rel = relation_of(mode, digit);
                    s.h.set(u, v, exact_entry(rel, order));
                    s.h.set(v, u, exact_entry(rel.reversed(), order));
                },
                |s, digits| match exact_two_ev(&s.h, d) {
                    ExactTwoEv::Yes { .. } => Some(to_hit(digits)),
                    ExactTwoEv::No(_) => None,
                },
            )?
        }
        (Filter::TwoEv, None) => {
            let root = RootOfUnity::principal(k).map_err(CertifyError::from)?;
            let sigma = root.value();
            let tol = opts.tol;
            scan(
                m,
                base as u8,
                opts,
                || FloatState {
                    h: ComplexMatrix::zeros(n),
                },
                |s, i, digit| {
                    let (u, v) = edges[i];
                    let z = match relation_of(mode, digit) {
                        Relation::Forward => sigma,
                        Relation::Backward => sigma.conj(),
                        _ => Complex64::new(1.0, 0.0),
                    };
                    s.h[(u, v)] = z;
                    s.h[(v, u)] = z.conj();
                },
                |s, digits| {
                    let spec = Spectrum::of(&s.h, tol).ok()?;
                    (spec.distinct() == 2).then(|| to_hit(digits))
                },
            )?
        }
    };
    let hits = raw.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(finish(report, hits, start))
}

/// All `2^|E|` orientations of `g`. Exact identity for `k in {3, 4, 6}`,
/// float clustering with the principal root otherwise.
pub fn search_orientations(
    g: &SimpleGraph,
    k: u32,
    filter: Filter<'_, MixedGraph>,
    opts: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    orientation_scan(g, k, SearchMode::Oriented, filter, opts)
}

/// All `3^|E|` assignments of forward arc, reversed arc or undirected edge.
pub fn search_mixed_orientations(
    g: &SimpleGraph,
    k: u32,
    filter: Filter<'_, MixedGraph>,
    opts: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    orientation_scan(g, k, SearchMode::Mixed, filter, opts)
}

/// All `2^|E|` signings of `g`, certified by float clustering of the real
/// signed adjacency matrix.
pub fn search_signings(
    g: &SimpleGraph,
    filter: Filter<'_, SignedGraph>,
    opts: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let edges = g.edges().to_vec();
    let m = edges.len();
    let size = space_size(m, 2)?;
    let n = g.n();
    let mut report = SearchReport {
        underlying: underlying_id(g),
        label: None,
        mode: SearchMode::Signed,
        k: 2,
        method: Method::FloatCluster,
        space_size: size,
        skipped_disconnected: 0,
        hits: Vec::new(),
        hits_up_to_iso: Vec::new(),
        class_sizes: Vec::new(),
        elapsed_secs: 0.0,
    };
    if !g.is_connected() {
        report.skipped_disconnected = size;
        return Ok(finish(report, Vec::new(), start));
    }
    let tol = opts.tol;
    let to_hit = |digits: &[u8], certificate: Option<Certificate>| {
        let graph = signed_from_digits(n, &edges, digits);
        Hit {
            encoding: signed_encoding(&graph),
            graph: HitGraph::Signed(graph),
            certificate,
        }
    };
    let hits = scan(
        m,
        2,
        opts,
        || FloatState {
            h: ComplexMatrix::zeros(n),
        },
        |s, i, digit| {
            let (u, v) = edges[i];
            let x = Complex64::new(if digit == 0 { 1.0 } else { -1.0 }, 0.0);
            s.h[(u, v)] = x;
            s.h[(v, u)] = x;
        },
        |s, digits| match filter {
            Filter::Custom(f) => {
                let graph = signed_from_digits(n, &edges, digits);
                f(&graph).then(|| to_hit(digits, None))
            }
            Filter::TwoEv => {
                let spec = Spectrum::of(&s.h, tol).ok()?;
                if spec.distinct() != 2 {
                    return None;
                }
                let graph = signed_from_digits(n, &edges, digits);
                let cert = certify_signed_two_ev(&graph, tol).ok().filter(|c| c.verdict);
                Some(to_hit(digits, cert))
            }
        },
    )?;
    Ok(finish(report, hits, start))
}

/// Whether the arc-reversal of every hit is also a hit.
pub fn hits_closed_under_reversal(report: &SearchReport) -> bool {
    let encodings: std::collections::HashSet<&str> =
        report.hits.iter().map(|h| h.encoding.as_str()).collect();
    report.hits.iter().all(|h| match h.mixed() {
        Some(g) => encodings.contains(encode_digraph6(&g.reversed()).as_str()),
        None => true,
    })
}

#[cfg(test)]
mod tests;
