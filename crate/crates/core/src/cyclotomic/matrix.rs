use super::{CycError, CycInt, Order, RootOfUnity};
use crate::graph::{MixedGraph, Relation};
use crate::spectra::ComplexMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::Deref;

/// Square matrix over `Z[zeta_k]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    order: Order,
    entries: Vec<CycInt>,
}

impl ExactMatrix {
    pub fn zeros(n: usize, order: Order) -> Self {
        ExactMatrix {
            n,
            order,
            entries: vec![CycInt::zero(order); n * n],
        }
    }

    /// `I`
    pub fn identity(n: usize, order: Order) -> Self {
        let mut m = ExactMatrix::zeros(n, order);
        for i in 0..n {
            m.set(i, i, CycInt::one(order));
        }
        m
    }

    /// `J`, the all-ones matrix.
    pub fn all_ones(n: usize, order: Order) -> Self {
        ExactMatrix {
            n,
            order,
            entries: vec![CycInt::one(order); n * n],
        }
    }

    /// `j`, the all-ones vector.
    pub fn ones_vector(n: usize, order: Order) -> Vec<CycInt> {
        vec![CycInt::one(order); n]
    }

    pub fn from_entries(n: usize, order: Order, entries: Vec<CycInt>) -> Result<Self, CycError> {
        if entries.len() != n * n {
            return Err(CycError::DimensionMismatch(n, (entries.len() as f64).sqrt() as usize));
        }
        if let Some(e) = entries.iter().find(|e| e.order() != order) {
            return Err(CycError::OrderMismatch(order.k(), e.order().k()));
        }
        Ok(ExactMatrix { n, order, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> Order {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> CycInt {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: CycInt) {
        debug_assert_eq!(x.order(), self.order);
        self.entries[i * self.n + j] = x;
    }

    fn check_compatible(&self, other: &ExactMatrix) -> Result<(), CycError> {
        if self.n != other.n {
            return Err(CycError::DimensionMismatch(self.n, other.n));
        }
        if self.order != other.order {
            return Err(CycError::OrderMismatch(self.order.k(), other.order.k()));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix, CycError> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = ExactMatrix::zeros(n, self.order);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] = out.entries[i * n + j] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, CycError> {
        self.check_compatible(other)?;
        Ok(ExactMatrix {
            n: self.n,
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| *a + *b)
                .collect(),
        })
    }

    pub fn scale(&self, c: i64) -> ExactMatrix {
        ExactMatrix {
            n: self.n,
            order: self.order,
            entries: self.entries.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycInt::is_zero)
    }

    pub fn conj_transpose(&self) -> ExactMatrix {
        let n = self.n;
        let mut out = ExactMatrix::zeros(n, self.order);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.get(j, i) == self.get(i, j).conj()))
    }

    pub fn embed(&self) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).embed()).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    }

    /// Whether `H^2 - p H + q I = 0` holds exactly.
    ///
    /// Each entry of `H^2` is formed on the fly and compared, so no matrix
    /// is allocated and the scan stops at the first nonzero entry. Only
    /// `i <= j` is examined when the matrix is Hermitian (the identity's
    /// left side is then Hermitian too).
    pub fn satisfies_quadratic(&self, p: i64, q: i64) -> bool {
        let n = self.n;
        let hermitian = self.is_hermitian();
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            let start = if hermitian { i } else { 0 };
            for j in start..n {
                let mut acc = CycInt::zero(self.order);
                for (k, &a) in row.iter().enumerate() {
                    if !a.is_zero() {
                        let b = self.entries[k * n + j];
                        if !b.is_zero() {
                            acc = acc + a * b;
                        }
                    }
                }
                acc = acc - self.get(i, j).scale(p);
                if i == j {
                    acc = acc + CycInt::from_int(q, self.order);
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_pairs(&self) -> Vec<Vec<[i64; 2]>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| [self.get(i, j).a, self.get(i, j).b]).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ExactMatrixJson {
    k: u32,
    entries: Vec<Vec<[i64; 2]>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExactMatrixJson {
            k: self.order.k(),
            entries: self.to_pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ExactMatrixJson::deserialize(d)?;
        let order = Order::try_from(raw.k).map_err(D::Error::custom)?;
        let n = raw.entries.len();
        if raw.entries.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix rows must all have length n"));
        }
        let entries = raw
            .entries
            .into_iter()
            .flatten()
            .map(|[a, b]| CycInt::new(a, b, order))
            .collect();
        ExactMatrix::from_entries(n, order, entries).map_err(D::Error::custom)
    }
}

/// An [`ExactMatrix`] known to satisfy `M = M*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ExactHermitianMatrix(ExactMatrix);

impl TryFrom<ExactMatrix> for ExactHermitianMatrix {
    type Error = CycError;

    fn try_from(m: ExactMatrix) -> Result<Self, CycError> {
        for i in 0..m.n {
            for j in i..m.n {
                if m.get(j, i) != m.get(i, j).conj() {
                    return Err(CycError::NotHermitian(i, j));
                }
            }
        }
        Ok(ExactHermitianMatrix(m))
    }
}

impl<'de> Deserialize<'de> for ExactHermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ExactHermitianMatrix::try_from(ExactMatrix::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Deref for ExactHermitianMatrix {
    type Target = ExactMatrix;

    fn deref(&self) -> &ExactMatrix {
        &self.0
    }
}

impl ExactHermitianMatrix {
    pub fn into_inner(self) -> ExactMatrix {
        self.0
    }
}

#[inline]
pub(crate) fn exact_entry(r: Relation, order: Order) -> CycInt {
    match r {
        Relation::None => CycInt::zero(order),
        Relation::Forward => CycInt::zeta(order),
        Relation::Backward => CycInt::zeta(order).conj(),
        Relation::Undirected => CycInt::one(order),
    }
}

/// `H(D)` over `Z[zeta_k]`: `zeta` for `u -> v`, `conj(zeta)` for `v -> u`,
/// `1` for an undirected edge, `0` otherwise.
pub fn build_exact_h(g: &MixedGraph, order: Order) -> ExactHermitianMatrix {
    let n = g.n();
    let entries = g
        .relations()
        .into_iter()
        .map(|r| exact_entry(r, order))
        .collect();
    ExactHermitianMatrix(ExactMatrix { n, order, entries })
}

/// `H(D)` in double precision for an arbitrary root of unity.
pub fn build_float_h(g: &MixedGraph, root: &RootOfUnity) -> ComplexMatrix {
    let n = g.n();
    let s = root.value();
    let mut h = ComplexMatrix::zeros(n);
    for &(u, v) in g.arcs() {
        h[(u, v)] = s;
        h[(v, u)] = s.conj();
    }
    for &(u, v) in g.edges() {
        h[(u, v)] = Complex64::new(1.0, 0.0);
        h[(v, u)] = Complex64::new(1.0, 0.0);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrientedGraph;
    use proptest::prelude::*;

    const SIX: Order = Order::Six;

    fn edge() -> MixedGraph {
        MixedGraph::new(2, [(0, 1)], []).unwrap()
    }

    fn triangle() -> MixedGraph {
        MixedGraph::new(3, [(0, 1), (1, 2), (2, 0)], []).unwrap()
    }

    #[test]
    fn exact_h_of_small_graphs() {
        let h = build_exact_h(&edge(), SIX);
        assert_eq!(h.to_pairs(), vec![vec![[0, 0], [0, 1]], vec![[1, -1], [0, 0]]]);

        let h = build_exact_h(&triangle(), SIX);
        let w = CycInt::zeta(SIX);
        for i in 0..3 {
            assert_eq!(h.get(i, (i + 1) % 3), w);
            assert_eq!(h.get((i + 1) % 3, i), w.conj());
        }

        let m = MixedGraph::new(2, [], [(0, 1)]).unwrap();
        assert_eq!(
            build_exact_h(&m, SIX).to_pairs(),
            vec![vec![[0, 0], [1, 0]], vec![[1, 0], [0, 0]]]
        );
    }

    #[test]
    fn float_h_of_small_graphs() {
        let root = RootOfUnity::principal(10).unwrap();
        let h = build_float_h(&edge(), &root);
        let t = std::f64::consts::PI / 5.0;
        assert!((h[(0, 1)] - Complex64::new(t.cos(), t.sin())).norm() < 1e-15);
        assert!((h[(1, 0)] - Complex64::new(t.cos(), -t.sin())).norm() < 1e-15);
        let empty = build_float_h(&MixedGraph::empty(3), &root);
        assert_eq!(empty, ComplexMatrix::zeros(3));
    }

    #[test]
    fn quadratic_identities() {
        let h = build_exact_h(&triangle(), SIX);
        assert!(h.satisfies_quadratic(-1, -2));
        assert!(!h.satisfies_quadratic(0, -2));

        // 0 -> 1 -> 2: (H^2)_{0,2} = omega^2 != 0
        let path = MixedGraph::new(3, [(0, 1), (1, 2)], []).unwrap();
        let h = build_exact_h(&path, SIX);
        assert!(!h.satisfies_quadratic(0, -2));
        let h2 = h.matmul(&h).unwrap();
        assert_eq!(h2.get(0, 2), CycInt::zeta(SIX).pow(2));
        assert_eq!(h2.get(0, 0), CycInt::one(SIX));
        assert_eq!(h2.get(1, 1), CycInt::from_int(2, SIX));
    }

    #[test]
    fn matmul_errors() {
        let a = ExactMatrix::identity(2, SIX);
        let b = ExactMatrix::identity(3, SIX);
        assert_eq!(a.matmul(&b), Err(CycError::DimensionMismatch(2, 3)));
        let c = ExactMatrix::identity(2, Order::Four);
        assert_eq!(a.matmul(&c), Err(CycError::OrderMismatch(6, 4)));
    }

    #[test]
    fn constants() {
        let j = ExactMatrix::all_ones(3, SIX);
        assert_eq!(j.matmul(&j).unwrap(), j.scale(3));
        assert_eq!(ExactMatrix::ones_vector(3, SIX).len(), 3);
        assert!(ExactMatrix::identity(2, SIX).is_hermitian());
    }

    #[test]
    fn json_round_trip() {
        let h = build_exact_h(&triangle(), SIX);
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.starts_with(r#"{"k":6,"entries":[[[0,0],[0,1],[1,-1]]"#), "{s}");
        let back: ExactHermitianMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        let bad = r#"{"k":6,"entries":[[[0,0],[0,1]],[[0,1],[0,0]]]}"#;
        assert!(serde_json::from_str::<ExactHermitianMatrix>(bad).is_err());
        assert!(serde_json::from_str::<ExactMatrix>(r#"{"k":5,"entries":[]}"#).is_err());
    }

    fn arb_mixed(max_n: usize) -> impl Strategy<Value = MixedGraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0u8..4, n * (n - 1) / 2).prop_map(move |codes| {
                let mut rel = vec![Relation::None; n * n];
                let mut it = codes.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        let r = [
                            Relation::None,
                            Relation::Forward,
                            Relation::Backward,
                            Relation::Undirected,
                        ][it.next().unwrap() as usize];
                        rel[u * n + v] = r;
                        rel[v * n + u] = r.reversed();
                    }
                }
                MixedGraph::from_relations(n, &rel)
            })
        })
    }

    proptest! {
        #[test]
        fn exact_and_float_agree(g in arb_mixed(8)) {
            for order in Order::ALL {
                let exact = build_exact_h(&g, order).embed();
                let float = build_float_h(&g, &order.root());
                prop_assert!(exact.max_abs_diff(&float) <= 1e-15);
            }
        }

        #[test]
        fn order_three_is_negated_order_six(g in arb_mixed(8)) {
            let o = OrientedGraph::try_from(MixedGraph::new(g.n(), g.arcs().to_vec(), []).unwrap()).unwrap();
            let h3 = build_exact_h(&o, Order::Three).embed();
            let h6 = build_exact_h(&o, Order::Six).embed().scaled(-1.0);
            prop_assert!(h3.max_abs_diff(&h6) < 1e-15);
        }

        #[test]
        fn quadratic_check_matches_float(g in arb_mixed(6), p in -3i64..4, q in -6i64..3, k in 0usize..3) {
            let order = Order::ALL[k];
            let h = build_exact_h(&g, order);
            let f = h.embed();
            let f2 = f.matmul(&f);
            let n = g.n();
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let mut z = f2[(i, j)] - f[(i, j)] * p as f64;
                    if i == j {
                        z += q as f64;
                    }
                    worst = worst.max(z.norm());
                }
            }
            prop_assert_eq!(h.satisfies_quadratic(p, q), worst < 1e-8);
            // and the allocation-free check matches full multiplication
            let full = h.matmul(&h).unwrap()
                .add(&h.scale(-p)).unwrap()
                .add(&ExactMatrix::identity(n, order).scale(q)).unwrap();
            prop_assert_eq!(h.satisfies_quadratic(p, q), full.is_zero());
        }
    }
}
