use super::ConstructionError;
use crate::graph::{OrientedGraph, Sign, SignedGraph, SimpleGraph};
use num_complex::Complex64;

fn coloring(g: &SimpleGraph) -> Result<Vec<u8>, ConstructionError> {
    g.two_coloring().ok_or(ConstructionError::NotBipartite)
}

/// Orients a signed bipartite graph so that `H_i(D) = U S U*` with
/// [`similarity_diagonal`] `U`: positive edges point from part 0 to part 1,
/// negative edges from part 1 to part 0. Parts come from the
/// lexicographically least 2-coloring.
pub fn signed_to_oriented(s: &SignedGraph) -> Result<OrientedGraph, ConstructionError> {
    let color = coloring(&s.underlying())?;
    let arcs = s.edges().iter().map(|&(u, v, sign)| {
        let (a, b) = if color[u] == 0 { (u, v) } else { (v, u) };
        match sign {
            Sign::Plus => (a, b),
            Sign::Minus => (b, a),
        }
    });
    Ok(OrientedGraph::new(s.n(), arcs)?)
}

/// Inverse of [`signed_to_oriented`] on the same bipartition.
pub fn oriented_to_signed(d: &OrientedGraph) -> Result<SignedGraph, ConstructionError> {
    let color = coloring(&d.underlying())?;
    let edges = d.arcs().iter().map(|&(u, v)| {
        let sign = if color[u] == 0 { Sign::Plus } else { Sign::Minus };
        (u.min(v), u.max(v), sign)
    });
    Ok(SignedGraph::new(d.n(), edges)?)
}

/// `U = diag(1 on part 0, -i on part 1)` for the least 2-coloring of `g`.
pub fn similarity_diagonal(g: &SimpleGraph) -> Result<Vec<Complex64>, ConstructionError> {
    Ok(coloring(g)?
        .into_iter()
        .map(|c| {
            if c == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, -1.0)
            }
        })
        .collect())
}

pub const MAX_HYPERCUBE_DIM: u32 = 16;

/// Signing of the `n`-cube from `S_1 = [[0, 1], [1, 0]]` and
/// `S_{m+1} = [[S_m, I], [I, -S_m]]`; vertex `x` in the lower block and
/// `x + 2^m` in the upper one differ in bit `m`. Checks `S^2 = nI`.
pub fn huang_signed_hypercube(n: u32) -> Result<SignedGraph, ConstructionError> {
    if n == 0 || n > MAX_HYPERCUBE_DIM {
        return Err(ConstructionError::InvalidParameter(format!(
            "hypercube dimension must be in 1..={MAX_HYPERCUBE_DIM}, got {n}"
        )));
    }
    let mut edges: Vec<(usize, usize, Sign)> = vec![(0, 1, Sign::Plus)];
    for m in 1..n {
        let half = 1usize << m;
        let mut next = Vec::with_capacity(edges.len() * 2 + half);
        next.extend(edges.iter().copied());
        next.extend(edges.iter().map(|&(u, v, s)| (u + half, v + half, s.flipped())));
        next.extend((0..half).map(|x| (x, x + half, Sign::Plus)));
        edges = next;
    }
    let g = SignedGraph::new(1 << n, edges)?;
    check_square(&g, n as i64)?;
    Ok(g)
}

/// `S^2 = dI` over the integers, using adjacency lists.
fn check_square(g: &SignedGraph, d: i64) -> Result<(), ConstructionError> {
    let size = g.n();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); size];
    for &(u, v, s) in g.edges() {
        adj[u].push((v, s.value()));
        adj[v].push((u, s.value()));
    }
    let mut row = vec![0i64; size];
    for u in 0..size {
        row.iter_mut().for_each(|x| *x = 0);
        for &(x, a) in &adj[u] {
            for &(v, b) in &adj[x] {
                row[v] += a * b;
            }
        }
        for (v, &val) in row.iter().enumerate() {
            if val != if u == v { d } else { 0 } {
                return Err(ConstructionError::InvalidParameter(format!(
                    "signed hypercube square differs from {d}I at ({u}, {v})"
                )));
            }
        }
    }
    Ok(())
}

pub fn huang_oriented_hypercube(n: u32) -> Result<OrientedGraph, ConstructionError> {
    signed_to_oriented(&huang_signed_hypercube(n)?)
}
