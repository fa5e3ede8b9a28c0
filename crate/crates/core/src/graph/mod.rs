//! Graph data model: mixed graphs (arcs plus undirected edges), the oriented
//! and signed special cases, and the small amount of graph surgery the
//! spectral arguments lean on.
//!
//! Vertices are dense indices `0..n`. Arc and edge lists are kept sorted so
//! that structural equality, hashing and iteration order are canonical for a
//! fixed labeling.

mod format;
mod iso;
mod simple;

pub use format::{
    decode_digraph6, encode_digraph6, parse_graph_text, parse_mixed_text, parse_signed_text,
    to_mixed_text, to_signed_text, GraphText,
};
pub use iso::{are_isomorphic, are_isomorphic_signed, find_isomorphism, RelationMatrix};
pub use simple::SimpleGraph;

use serde::{Deserialize, Serialize};
use std::ops::Deref;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair {{{0}, {1}}} carries more than one arc or edge")]
    DuplicatePair(usize, usize),
    #[error("graph has undirected edges and is not oriented")]
    NotOriented,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// How an ordered pair `(u, v)` is related in a mixed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    None,
    /// `u -> v`
    Forward,
    /// `v -> u`
    Backward,
    Undirected,
}

impl Relation {
    pub fn is_adjacent(self) -> bool {
        self != Relation::None
    }

    pub fn reversed(self) -> Relation {
        match self {
            Relation::Forward => Relation::Backward,
            Relation::Backward => Relation::Forward,
            r => r,
        }
    }
}

/// A mixed graph `(V, A, E)` on vertices `0..n`.
///
/// Every unordered pair carries at most one of: the arc `u -> v`, the arc
/// `v -> u`, or the undirected edge `{u, v}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMixedGraph")]
pub struct MixedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawMixedGraph {
    n: usize,
    #[serde(default)]
    arcs: Vec<(usize, usize)>,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawMixedGraph> for MixedGraph {
    type Error = GraphError;

    fn try_from(raw: RawMixedGraph) -> Result<Self, Self::Error> {
        MixedGraph::new(raw.n, raw.arcs, raw.edges)
    }
}

fn check_vertex(v: usize, n: usize) -> Result<(), GraphError> {
    if v >= n {
        Err(GraphError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

impl MixedGraph {
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        let mut pairs = Vec::with_capacity(arcs.len() + edges.len());
        for &(u, v) in arcs.iter().chain(edges.iter()) {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicatePair(w[0].0, w[0].1));
        }
        arcs.sort_unstable();
        edges.sort_unstable();
        Ok(MixedGraph { n, arcs, edges })
    }

    pub fn empty(n: usize) -> Self {
        MixedGraph {
            n,
            arcs: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Builds a graph from a dense relation table (row-major, `n * n`).
    /// Only the upper triangle is read.
    pub fn from_relations(n: usize, rel: &[Relation]) -> Self {
        debug_assert_eq!(rel.len(), n * n);
        let mut arcs = Vec::new();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                match rel[u * n + v] {
                    Relation::None => {}
                    Relation::Forward => arcs.push((u, v)),
                    Relation::Backward => arcs.push((v, u)),
                    Relation::Undirected => edges.push((u, v)),
                }
            }
        }
        arcs.sort_unstable();
        MixedGraph { n, arcs, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of adjacent pairs, `|A| + |E|`.
    pub fn size(&self) -> usize {
        self.arcs.len() + self.edges.len()
    }

    pub fn is_oriented(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn relation(&self, u: usize, v: usize) -> Relation {
        if self.arcs.binary_search(&(u, v)).is_ok() {
            Relation::Forward
        } else if self.arcs.binary_search(&(v, u)).is_ok() {
            Relation::Backward
        } else if self.edges.binary_search(&(u.min(v), u.max(v))).is_ok() && u != v {
            Relation::Undirected
        } else {
            Relation::None
        }
    }

    /// Dense row-major relation table.
    pub fn relations(&self) -> Vec<Relation> {
        let n = self.n;
        let mut rel = vec![Relation::None; n * n];
        for &(u, v) in &self.arcs {
            rel[u * n + v] = Relation::Forward;
            rel[v * n + u] = Relation::Backward;
        }
        for &(u, v) in &self.edges {
            rel[u * n + v] = Relation::Undirected;
            rel[v * n + u] = Relation::Undirected;
        }
        rel
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees = vec![VertexDegree::default(); self.n];
        for &(u, v) in &self.arcs {
            degrees[u].out_degree += 1;
            degrees[v].in_degree += 1;
        }
        for &(u, v) in &self.edges {
            degrees[u].undirected += 1;
            degrees[v].undirected += 1;
        }
        DegreeProfile { degrees }
    }

    /// The simple graph obtained by forgetting directions.
    pub fn underlying(&self) -> SimpleGraph {
        let edges = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .chain(self.edges.iter().copied());
        SimpleGraph::new(self.n, edges).expect("mixed graph invariants imply a simple graph")
    }

    pub fn is_connected(&self) -> bool {
        self.underlying().is_connected()
    }

    /// True iff every vertex has the same (out, in, undirected) degree triple.
    /// For oriented graphs this is the usual notion of a regular digraph.
    pub fn is_regular(&self) -> bool {
        let profile = self.degree_profile();
        profile.degrees.windows(2).all(|w| w[0] == w[1])
    }

    /// The subgraph induced by `subset`, relabeled `0..|S|` in sorted order
    /// of `subset`.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<MixedGraph, GraphError> {
        let mut vertices = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            check_vertex(v, self.n)?;
            index[v] = i;
        }
        let keep = |&(u, v): &(usize, usize)| {
            (index[u] != usize::MAX && index[v] != usize::MAX).then(|| (index[u], index[v]))
        };
        let arcs = self.arcs.iter().filter_map(keep).collect::<Vec<_>>();
        let edges = self.edges.iter().filter_map(keep).collect::<Vec<_>>();
        MixedGraph::new(vertices.len(), arcs, edges)
    }

    /// Reverses every arc. The Hermitian matrix of the result is the
    /// transpose of the original, so the two are cospectral.
    pub fn reversed(&self) -> MixedGraph {
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        arcs.sort_unstable();
        MixedGraph {
            n: self.n,
            arcs,
            edges: self.edges.clone(),
        }
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<MixedGraph, GraphError> {
        MixedGraph::new(
            self.n,
            self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])),
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
        )
    }

    pub fn into_oriented(self) -> Result<OrientedGraph, GraphError> {
        OrientedGraph::try_from(self)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexDegree {
    pub out_degree: usize,
    pub in_degree: usize,
    pub undirected: usize,
}

impl VertexDegree {
    pub fn total(&self) -> usize {
        self.out_degree + self.in_degree + self.undirected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<VertexDegree>,
}

impl DegreeProfile {
    pub fn total_degree_sum(&self) -> usize {
        self.degrees.iter().map(VertexDegree::total).sum()
    }

    /// Degree triples in sorted order; an isomorphism invariant.
    pub fn sorted(&self) -> Vec<VertexDegree> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}

/// A mixed graph without undirected edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MixedGraph", into = "MixedGraph")]
pub struct OrientedGraph(MixedGraph);

impl TryFrom<MixedGraph> for OrientedGraph {
    type Error = GraphError;

    fn try_from(g: MixedGraph) -> Result<Self, Self::Error> {
        if g.is_oriented() {
            Ok(OrientedGraph(g))
        } else {
            Err(GraphError::NotOriented)
        }
    }
}

impl From<OrientedGraph> for MixedGraph {
    fn from(g: OrientedGraph) -> Self {
        g.0
    }
}

impl Deref for OrientedGraph {
    type Target = MixedGraph;

    fn deref(&self) -> &MixedGraph {
        &self.0
    }
}

impl AsRef<MixedGraph> for OrientedGraph {
    fn as_ref(&self) -> &MixedGraph {
        &self.0
    }
}

impl OrientedGraph {
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Ok(OrientedGraph(MixedGraph::new(n, arcs, [])?))
    }

    pub fn into_mixed(self) -> MixedGraph {
        self.0
    }

    pub fn is_tournament(&self) -> bool {
        let n = self.n();
        self.arcs().len() == n * n.saturating_sub(1) / 2
    }

    /// The bipartite double: vertices `u` and `u' = u + n`, with arcs
    /// `u -> v'` and `u' -> v` for every arc `u -> v`. Its Hermitian matrix
    /// is the block matrix with `H(D)` in both off-diagonal blocks.
    pub fn bipartite_double(&self) -> OrientedGraph {
        let n = self.n();
        let arcs = self
            .arcs()
            .iter()
            .flat_map(|&(u, v)| [(u, v + n), (u + n, v)]);
        OrientedGraph::new(2 * n, arcs).expect("double of an oriented graph is oriented")
    }

    pub fn reversed(&self) -> OrientedGraph {
        OrientedGraph(self.0.reversed())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A signed graph `(G, phi)`; edges stored as `(u, v, sign)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignedGraph")]
pub struct SignedGraph {
    n: usize,
    edges: Vec<(usize, usize, Sign)>,
}

#[derive(Deserialize)]
struct RawSignedGraph {
    n: usize,
    edges: Vec<(usize, usize, Sign)>,
}

impl TryFrom<RawSignedGraph> for SignedGraph {
    type Error = GraphError;

    fn try_from(raw: RawSignedGraph) -> Result<Self, Self::Error> {
        SignedGraph::new(raw.n, raw.edges)
    }
}

impl SignedGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Sign)>,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v, s)| if u < v { (u, v, s) } else { (v, u, s) })
            .collect();
        for &(u, v, _) in &edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(GraphError::DuplicatePair(w[0].0, w[0].1));
        }
        Ok(SignedGraph { n, edges })
    }

    /// All edges of `g` with the same sign.
    pub fn uniform(g: &SimpleGraph, sign: Sign) -> Self {
        SignedGraph {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| (u, v, sign)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Sign)] {
        &self.edges
    }

    pub fn underlying(&self) -> SimpleGraph {
        SimpleGraph::new(self.n, self.edges.iter().map(|&(u, v, _)| (u, v)))
            .expect("signed graph invariants imply a simple graph")
    }

    /// Signed adjacency matrix, row-major.
    pub fn adjacency(&self) -> Vec<i64> {
        let n = self.n;
        let mut a = vec![0; n * n];
        for &(u, v, s) in &self.edges {
            a[u * n + v] = s.value();
            a[v * n + u] = s.value();
        }
        a
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.2 == Sign::Minus).count()
    }
}
