use super::{check_vertex, GraphError};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Undirected simple graph on `0..n`. Edges are stored as sorted `(u, v)`
/// pairs with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSimpleGraph", into = "RawSimpleGraph")]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawSimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawSimpleGraph> for SimpleGraph {
    type Error = GraphError;

    fn try_from(raw: RawSimpleGraph) -> Result<Self, GraphError> {
        SimpleGraph::new(raw.n, raw.edges)
    }
}

impl From<SimpleGraph> for RawSimpleGraph {
    fn from(g: SimpleGraph) -> Self {
        RawSimpleGraph {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl SimpleGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicatePair(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        SimpleGraph::new(a + b, edges).unwrap()
    }

    /// `K_{m,m}` minus the perfect matching `{i, i + m}`.
    pub fn crown(m: usize) -> Self {
        let edges = (0..m).flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v + m)));
        SimpleGraph::new(2 * m, edges).unwrap()
    }

    /// The `d`-dimensional hypercube on `2^d` vertices; `u ~ v` iff their
    /// labels differ in one bit.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let edges = (0..n).flat_map(|u| {
            (0..d)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        });
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// `|N(u) ∩ N(v)|`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| self.common_neighbors(u, v) == 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Proper 2-coloring, if one exists. Each component's least vertex gets
    /// color 0, which makes the coloring the lexicographically least one.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_neighbor_counts() {
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        assert_eq!(k33.common_neighbors(0, 1), 3);
        assert_eq!(k33.common_neighbors(0, 3), 0);
        let k4 = SimpleGraph::complete(4);
        assert_eq!(k4.common_neighbors(0, 1), 2);
        let crown = SimpleGraph::crown(5);
        // {0, 5} is a removed matching pair
        assert!(!crown.has_edge(0, 5));
        // same part, distance 2
        assert_eq!(crown.common_neighbors(0, 1), 3);
    }

    #[test]
    fn triangle_freeness() {
        assert!(SimpleGraph::crown(5).is_triangle_free());
        assert!(!SimpleGraph::complete(4).is_triangle_free());
        assert!(SimpleGraph::hypercube(3).is_triangle_free());
    }

    #[test]
    fn families_have_expected_shape() {
        let crown = SimpleGraph::crown(5);
        assert_eq!(crown.n(), 10);
        assert_eq!(crown.regular_degree(), Some(4));
        assert_eq!(crown.edges().len(), 20);
        let q3 = SimpleGraph::hypercube(3);
        assert_eq!(q3.edges().len(), 12);
        assert_eq!(q3.regular_degree(), Some(3));
        assert!(SimpleGraph::cycle(4).is_bipartite());
        assert!(!SimpleGraph::cycle(5).is_bipartite());
    }

    #[test]
    fn coloring_is_lexicographically_least() {
        let g = SimpleGraph::new(4, [(1, 2), (0, 3)]).unwrap();
        assert_eq!(g.two_coloring(), Some(vec![0, 0, 1, 1]));
    }

    #[test]
    fn connectivity() {
        assert!(SimpleGraph::complete(1).is_connected());
        assert!(!SimpleGraph::new(3, [(0, 1)]).unwrap().is_connected());
    }
}
