//! Generators for the named extremal graphs, Paley skew-Hadamard matrices
//! and their tournaments, the bipartite signed/oriented transform, and the
//! signed hypercube family.

mod hadamard;
mod signed;

pub use hadamard::{
    is_prime, paley_skew_hadamard, skew_hadamard_from_tournament, tournament_from_skew_hadamard,
    SkewHadamard,
};
pub use signed::{
    huang_oriented_hypercube, huang_signed_hypercube, oriented_to_signed, signed_to_oriented,
    similarity_diagonal,
};

use crate::certify::{certify_two_ev, Certificate, CertifyError, EigenValue, ExactValue, Method};
use crate::graph::{GraphError, MixedGraph, OrientedGraph, SimpleGraph};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("unknown graph name '{0}'")]
    UnknownName(String),
    #[error("fixture {name} does not match its expected certificate: {detail}")]
    FixtureMismatch { name: String, detail: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 3 mod 4")]
    NotThreeModFour(u64),
    #[error("not a skew-Hadamard matrix: {0}")]
    InvalidHadamard(String),
    #[error("tournament precondition failed: {0}")]
    Tournament(String),
    #[error("underlying graph is not bipartite")]
    NotBipartite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// Names accepted by [`named_graph`]; `complete-K<n>` takes any `n >= 2`.
pub const NAMED_GRAPHS: [&str; 8] = [
    "directed-edge",
    "directed-triangle",
    "oriented-K33",
    "oriented-K55-M",
    "mixed-C4",
    "complete-K<n>",
    "cube",
    "regular-tournament-5",
];

/// A named graph with the certificate it must produce at order `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub graph: MixedGraph,
    pub k: u32,
    pub expected: Certificate,
}

impl Fixture {
    /// Certifies the graph and compares verdict, pair, multiplicities and
    /// method with the expected certificate.
    pub fn validate(&self) -> Result<Certificate, ConstructionError> {
        let got = certify_two_ev(&self.graph, self.k)?;
        let e = &self.expected;
        if got.verdict != e.verdict
            || got.pair != e.pair
            || got.multiplicities != e.multiplicities
            || got.method != e.method
        {
            return Err(ConstructionError::FixtureMismatch {
                name: self.name.clone(),
                detail: format!(
                    "expected verdict {} pair {:?} multiplicities {:?}, got verdict {} pair {:?} multiplicities {:?}",
                    e.verdict, e.pair, e.multiplicities, got.verdict, got.pair, got.multiplicities
                ),
            });
        }
        Ok(got)
    }
}

fn yes(k: u32, n: usize, r: ExactValue, s: ExactValue, m: usize) -> Certificate {
    Certificate {
        verdict: true,
        k,
        n,
        pair: Some((EigenValue::Exact(r), EigenValue::Exact(s))),
        multiplicities: Some((m, n - m)),
        method: Method::ExactIdentity,
        tol: None,
        failure_reason: None,
    }
}

fn no(k: u32, n: usize) -> Certificate {
    Certificate {
        verdict: false,
        k,
        n,
        pair: None,
        multiplicities: None,
        method: Method::ExactIdentity,
        tol: None,
        failure_reason: None,
    }
}

use ExactValue::Int;

fn oriented(n: usize, arcs: &[(usize, usize)]) -> MixedGraph {
    OrientedGraph::new(n, arcs.iter().copied())
        .expect("fixture arcs are valid")
        .into_mixed()
}

fn undirected(g: &SimpleGraph) -> MixedGraph {
    MixedGraph::new(g.n(), [], g.edges().iter().copied()).expect("simple graph edges are valid")
}

/// Parts `{0, 1, 2}` and `{3, 4, 5}`.
fn oriented_k33() -> MixedGraph {
    oriented(
        6,
        &[(0, 3), (3, 1), (1, 5), (5, 0), (0, 4), (1, 4), (2, 5), (2, 3), (4, 2)],
    )
}

/// Parts `{0..5}` and `{5..10}`, the removed matching is `{i, i + 5}`.
fn oriented_k55_m() -> MixedGraph {
    oriented(
        10,
        &[
            (0, 6),
            (0, 7),
            (8, 0),
            (9, 0),
            (1, 5),
            (7, 1),
            (1, 8),
            (9, 1),
            (2, 5),
            (6, 2),
            (8, 2),
            (2, 9),
            (5, 3),
            (3, 6),
            (7, 3),
            (3, 9),
            (5, 4),
            (6, 4),
            (4, 7),
            (4, 8),
        ],
    )
}

/// Directed path `0 -> 1 -> 2 -> 3` closed by the undirected edge `{3, 0}`.
fn mixed_c4() -> MixedGraph {
    MixedGraph::new(4, [(0, 1), (1, 2), (2, 3)], [(3, 0)]).expect("valid")
}

/// `i -> i + 1` and `i -> i + 2` modulo 5.
pub fn regular_tournament_5() -> OrientedGraph {
    OrientedGraph::new(5, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)]))
        .expect("valid")
}

fn complete_order(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("complete-K")?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    digits.parse().ok()
}

/// The unvalidated fixture for `name`.
pub fn fixture_unchecked(name: &str) -> Result<Fixture, ConstructionError> {
    let sqrt = |r: u64, neg: bool| ExactValue::Sqrt { radicand: r, negative: neg };
    let (graph, expected) = match name {
        "directed-edge" => (oriented(2, &[(0, 1)]), yes(6, 2, Int(1), Int(-1), 1)),
        "directed-triangle" => (
            oriented(3, &[(0, 1), (1, 2), (2, 0)]),
            yes(6, 3, Int(1), Int(-2), 2),
        ),
        "oriented-K33" => (oriented_k33(), yes(6, 6, sqrt(3, false), sqrt(3, true), 3)),
        "oriented-K55-M" => (oriented_k55_m(), yes(6, 10, Int(2), Int(-2), 5)),
        "mixed-C4" => (mixed_c4(), yes(6, 4, sqrt(2, false), sqrt(2, true), 2)),
        "cube" => (undirected(&SimpleGraph::hypercube(3)), no(6, 8)),
        "regular-tournament-5" => (regular_tournament_5().into_mixed(), no(6, 5)),
        _ => match complete_order(name) {
            Some(n) if n >= 2 => (
                undirected(&SimpleGraph::complete(n)),
                yes(6, n, Int(n as i64 - 1), Int(-1), 1),
            ),
            _ => return Err(ConstructionError::UnknownName(name.to_string())),
        },
    };
    Ok(Fixture {
        name: name.to_string(),
        graph,
        k: 6,
        expected,
    })
}

/// The fixture for `name`, certified against its expected certificate.
pub fn fixture(name: &str) -> Result<Fixture, ConstructionError> {
    let f = fixture_unchecked(name)?;
    f.validate()?;
    Ok(f)
}

pub fn named_graph(name: &str) -> Result<MixedGraph, ConstructionError> {
    Ok(fixture(name)?.graph)
}

/// Underlying graphs for searches: `K<n>`, `C<n>`, `P<n>`, `K<a>,<b>`,
/// `K55-M` (or `crown<m>` for `K_{m,m}` minus a perfect matching),
/// `cube`, `Q<d>`, or the underlying graph of any named fixture.
pub fn named_underlying(name: &str) -> Result<SimpleGraph, ConstructionError> {
    let unknown = || ConstructionError::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if name == "cube" {
        return Ok(SimpleGraph::hypercube(3));
    }
    if name == "K55-M" {
        return Ok(SimpleGraph::crown(5));
    }
    if let Ok(f) = fixture_unchecked(name) {
        return Ok(f.graph.underlying());
    }
    if let Some(m) = name.strip_prefix("crown") {
        return Ok(SimpleGraph::crown(num(m)?));
    }
    if let Some(d) = name.strip_prefix('Q') {
        let d = num(d)?;
        if d > 20 {
            return Err(ConstructionError::InvalidParameter(format!("hypercube dimension {d}")));
        }
        return Ok(SimpleGraph::hypercube(d as u32));
    }
    if let Some(n) = name.strip_prefix('C') {
        let n = num(n)?;
        if n < 3 {
            return Err(ConstructionError::InvalidParameter(format!("cycle length {n}")));
        }
        return Ok(SimpleGraph::cycle(n));
    }
    if let Some(n) = name.strip_prefix('P') {
        let n = num(n)?;
        return Ok(SimpleGraph::new(n, (1..n).map(|i| (i - 1, i)))?);
    }
    if let Some(rest) = name.strip_prefix('K') {
        if let Some((a, b)) = rest.split_once(',') {
            return Ok(SimpleGraph::complete_bipartite(num(a)?, num(b)?));
        }
        return Ok(SimpleGraph::complete(num(rest)?));
    }
    Err(unknown())
}
