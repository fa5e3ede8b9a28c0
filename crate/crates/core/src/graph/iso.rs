//! Isomorphism testing for small labeled structures by backtracking with
//! degree-refined candidate pruning. Intended for `n <= 12`.

use super::{MixedGraph, Relation, SignedGraph};

/// Dense table of small relation codes; code `0` means "not adjacent".
/// A bijection `pi` is an isomorphism `a -> b` iff
/// `b.code(pi[u], pi[v]) == a.code(u, v)` for all `u, v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    n: usize,
    codes: Vec<u8>,
}

impl RelationMatrix {
    pub fn new(n: usize, codes: Vec<u8>) -> Self {
        assert_eq!(codes.len(), n * n);
        RelationMatrix { n, codes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn code(&self, u: usize, v: usize) -> u8 {
        self.codes[u * self.n + v]
    }

    fn max_code(&self) -> usize {
        self.codes.iter().copied().max().unwrap_or(0) as usize
    }

    /// Per-vertex counts of each nonzero code along its row, refined once by
    /// the sorted multiset of neighbor signatures.
    fn vertex_invariants(&self, width: usize) -> Vec<Vec<usize>> {
        let n = self.n;
        let base: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                let mut counts = vec![0; width];
                for v in 0..n {
                    let c = self.code(u, v) as usize;
                    if c != 0 {
                        counts[c - 1] += 1;
                    }
                }
                counts
            })
            .collect();
        (0..n)
            .map(|u| {
                let mut neigh: Vec<(u8, &Vec<usize>)> = (0..n)
                    .filter(|&v| self.code(u, v) != 0)
                    .map(|v| (self.code(u, v), &base[v]))
                    .collect();
                neigh.sort();
                let mut inv = base[u].clone();
                for (c, b) in neigh {
                    inv.push(c as usize);
                    inv.extend_from_slice(b);
                }
                inv
            })
            .collect()
    }
}

impl From<&MixedGraph> for RelationMatrix {
    fn from(g: &MixedGraph) -> Self {
        let codes = g
            .relations()
            .into_iter()
            .map(|r| match r {
                Relation::None => 0,
                Relation::Forward => 1,
                Relation::Backward => 2,
                Relation::Undirected => 3,
            })
            .collect();
        RelationMatrix::new(g.n(), codes)
    }
}

impl From<&SignedGraph> for RelationMatrix {
    fn from(g: &SignedGraph) -> Self {
        let codes = g
            .adjacency()
            .into_iter()
            .map(|x| match x {
                0 => 0,
                1 => 1,
                _ => 2,
            })
            .collect();
        RelationMatrix::new(g.n(), codes)
    }
}

/// Finds a bijection `pi` with `b.code(pi[u], pi[v]) == a.code(u, v)`.
pub fn find_isomorphism(a: &RelationMatrix, b: &RelationMatrix) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() {
        return None;
    }
    let width = a.max_code().max(b.max_code());
    let inv_a = a.vertex_invariants(width);
    let inv_b = b.vertex_invariants(width);
    {
        let mut sa = inv_a.clone();
        let mut sb = inv_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }

    // Map the most constrained vertices first: fewest candidates, then
    // prefer vertices adjacent to ones already ordered.
    let class_size = |u: usize| inv_b.iter().filter(|x| **x == inv_a[u]).count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| {
                let linked = order.iter().any(|&w| a.code(u, w) != 0);
                (!linked, class_size(u), u)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&x| inv_b[x] == inv_a[u]).collect())
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &order, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &RelationMatrix,
    b: &RelationMatrix,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for &x in &candidates[u] {
        if used[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let y = map[w];
            a.code(u, w) == b.code(x, y) && a.code(w, u) == b.code(y, x)
        });
        if !consistent {
            continue;
        }
        map[u] = x;
        used[x] = true;
        if extend(a, b, order, candidates, depth + 1, map, used) {
            return true;
        }
        used[x] = false;
        map[u] = usize::MAX;
    }
    false
}

/// Mixed-graph isomorphism: arcs map to arcs with direction, edges to edges.
pub fn are_isomorphic(a: &MixedGraph, b: &MixedGraph) -> bool {
    if a.n() != b.n() || a.arcs().len() != b.arcs().len() || a.edges().len() != b.edges().len() {
        return false;
    }
    find_isomorphism(&a.into(), &b.into()).is_some()
}

/// Signed-graph isomorphism preserving signs (not up to switching).
pub fn are_isomorphic_signed(a: &SignedGraph, b: &SignedGraph) -> bool {
    a.n() == b.n()
        && a.edges().len() == b.edges().len()
        && find_isomorphism(&a.into(), &b.into()).is_some()
}
