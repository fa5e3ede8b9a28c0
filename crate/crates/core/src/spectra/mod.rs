//! Floating-point Hermitian spectra: a dense cyclic Jacobi eigensolver,
//! clustering of eigenvalues into distinct values, and the interlacing test
//! for principal submatrices.

mod jacobi;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Index, IndexMut};
use thiserror::Error;

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
pub const INTERLACING_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("matrix is not Hermitian: |a[{0}][{1}] - conj(a[{1}][{0}])| = {2:e}")]
    NotHermitian(usize, usize, f64),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NotConverged(usize),
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        ComplexMatrix {
            n,
            data: rows.concat(),
        }
    }

    /// Real symmetric input, row-major `n * n`.
    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n);
        ComplexMatrix {
            n,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scaled(&self, c: f64) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Largest `|a_ij - conj(a_ji)|` and where it occurs.
    fn hermitian_defect(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.2 {
                    worst = (i, j, d);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect().2 <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<(), SpectrumError> {
    let (i, j, d) = h.hermitian_defect();
    if d > HERMITIAN_TOL {
        Err(SpectrumError::NotHermitian(i, j, d))
    } else {
        Ok(())
    }
}

fn sorted_diagonal(a: &ComplexMatrix) -> Vec<f64> {
    let mut eig: Vec<f64> = (0..a.n()).map(|i| a[(i, i)].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>, SpectrumError> {
    check_hermitian(h)?;
    let mut a = h.clone();
    jacobi::diagonalize(&mut a, None)?;
    Ok(sorted_diagonal(&a))
}

/// Eigenvalues (descending) and the matching unit eigenvectors as columns.
/// Used for residual checks; the public product is the eigenvalue list.
pub fn hermitian_eigensystem(
    h: &ComplexMatrix,
) -> Result<(Vec<f64>, ComplexMatrix), SpectrumError> {
    check_hermitian(h)?;
    let n = h.n();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    jacobi::diagonalize(&mut a, Some(&mut v))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let mut vecs = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vecs[(row, col)] = v[(row, src)];
        }
    }
    Ok((order.iter().map(|&i| a[(i, i)].re).collect(), vecs))
}

/// Groups descending eigenvalues into `(value, multiplicity)` pairs.
/// Consecutive values closer than `tol` are merged; a cluster's value is the
/// mean of its members.
pub fn cluster(eigs: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut sum = 0.0;
    let mut prev = f64::NAN;
    for &x in eigs {
        match out.last_mut() {
            Some(last) if (prev - x).abs() <= tol => {
                last.1 += 1;
                sum += x;
                last.0 = sum / last.1 as f64;
            }
            _ => {
                out.push((x, 1));
                sum = x;
            }
        }
        prev = x;
    }
    out
}

/// A real spectrum, descending, with its clustering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<(f64, usize)>,
    pub tol: f64,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, tol: f64) -> Self {
        eigenvalues.sort_by(|x, y| y.total_cmp(x));
        let clusters = cluster(&eigenvalues, tol);
        Spectrum {
            eigenvalues,
            clusters,
            tol,
        }
    }

    pub fn of(h: &ComplexMatrix, tol: f64) -> Result<Self, SpectrumError> {
        Ok(Spectrum::from_eigenvalues(hermitian_eigenvalues(h)?, tol))
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn distinct(&self) -> usize {
        self.clusters.len()
    }

    /// Largest gap between matched eigenvalues of two equal-length spectra.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        assert_eq!(self.dimension(), other.dimension());
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Cauchy interlacing: with `n = dim(parent)` and `m = dim(child)`,
/// `theta_{i+n-m}(parent) <= theta_i(child) <= theta_i(parent)` for every
/// `1 <= i <= m` (descending order), each with slack [`INTERLACING_TOL`].
pub fn interlaces(parent: &Spectrum, child: &Spectrum) -> bool {
    let (n, m) = (parent.dimension(), child.dimension());
    if m > n {
        return false;
    }
    let a = &parent.eigenvalues;
    let b = &child.eigenvalues;
    (0..m).all(|i| a[i + n - m] - INTERLACING_TOL <= b[i] && b[i] <= a[i] + INTERLACING_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn omega() -> Complex64 {
        c(0.5, 3f64.sqrt() / 2.0)
    }

    #[test]
    fn directed_edge_and_triangle() {
        let w = omega();
        let edge = ComplexMatrix::from_rows(&[vec![c(0., 0.), w], vec![w.conj(), c(0., 0.)]]);
        let e = hermitian_eigenvalues(&edge).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] + 1.0).abs() < 1e-12);

        let z = c(0., 0.);
        let tri = ComplexMatrix::from_rows(&[
            vec![z, w, w.conj()],
            vec![w.conj(), z, w],
            vec![w, w.conj(), z],
        ]);
        let e = hermitian_eigenvalues(&tri).unwrap();
        for (x, y) in e.iter().zip([1.0, 1.0, -2.0]) {
            assert!((x - y).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn oriented_path_has_root_two_spectrum_for_any_root() {
        for k in [3.0, 4.0, 6.0, 10.0, 17.0] {
            let t = 2.0 * std::f64::consts::PI / k;
            let s = c(t.cos(), t.sin());
            let z = c(0., 0.);
            // 0 -> 1 <- 2
            let p = ComplexMatrix::from_rows(&[
                vec![z, s, z],
                vec![s.conj(), z, s.conj()],
                vec![z, s, z],
            ]);
            let e = hermitian_eigenvalues(&p).unwrap();
            let r2 = 2f64.sqrt();
            assert!((e[0] - r2).abs() < 1e-12 && e[1].abs() < 1e-12 && (e[2] + r2).abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_sizes() {
        assert!(hermitian_eigenvalues(&ComplexMatrix::zeros(0)).unwrap().is_empty());
        let one = ComplexMatrix::from_real(1, &[3.5]);
        assert_eq!(hermitian_eigenvalues(&one).unwrap(), vec![3.5]);
        assert_eq!(hermitian_eigenvalues(&ComplexMatrix::zeros(3)).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(SpectrumError::NotHermitian(0, 1, _))
        ));
    }

    #[test]
    fn clustering() {
        assert_eq!(
            cluster(&[1.0000000001, 1.0, -2.0], 1e-6)
                .iter()
                .map(|&(v, m)| ((v * 1e6).round() / 1e6, m))
                .collect::<Vec<_>>(),
            vec![(1.0, 2), (-2.0, 1)]
        );
        let r3 = 3f64.sqrt();
        let cl = cluster(&[r3, r3, r3, -r3, -r3, -r3], DEFAULT_CLUSTER_TOL);
        assert_eq!(cl.len(), 2);
        assert!((cl[0].0 - r3).abs() < 1e-15 && cl[0].1 == 3);
        assert!((cl[1].0 + r3).abs() < 1e-15 && cl[1].1 == 3);
        assert!(cluster(&[], 1e-6).is_empty());
    }

    #[test]
    fn interlacing_examples() {
        let tri = Spectrum::from_eigenvalues(vec![1.0, 1.0, -2.0], 1e-6);
        let edge = Spectrum::from_eigenvalues(vec![1.0, -1.0], 1e-6);
        assert!(interlaces(&tri, &edge));
        let zero = Spectrum::from_eigenvalues(vec![0.0; 3], 1e-6);
        assert!(!interlaces(&zero, &edge));
        assert!(interlaces(&tri, &tri));
    }

    fn arb_hermitian() -> impl Strategy<Value = ComplexMatrix> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n).prop_map(move |v| {
                let mut m = ComplexMatrix::zeros(n);
                for i in 0..n {
                    for j in i..n {
                        let (re, im) = v[i * n + j];
                        if i == j {
                            m[(i, i)] = c(re, 0.0);
                        } else {
                            m[(i, j)] = c(re, im);
                            m[(j, i)] = c(re, -im);
                        }
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn trace_frobenius_and_residuals(h in arb_hermitian()) {
            let (eig, vecs) = hermitian_eigensystem(&h).unwrap();
            let n = h.n();
            prop_assert!(eig.windows(2).all(|w| w[0] >= w[1]));
            let tr: f64 = eig.iter().sum();
            prop_assert!((tr - h.trace().re).abs() < 1e-9);
            let sq: f64 = eig.iter().map(|x| x * x).sum();
            prop_assert!((sq - h.frobenius_norm().powi(2)).abs() < 1e-8);
            let fro = h.frobenius_norm().max(1e-300);
            for (col, &theta) in eig.iter().enumerate() {
                let mut res = 0.0;
                for i in 0..n {
                    let mut hv = c(0.0, 0.0);
                    for j in 0..n {
                        hv += h[(i, j)] * vecs[(j, col)];
                    }
                    res += (hv - vecs[(i, col)] * theta).norm_sqr();
                }
                prop_assert!(res.sqrt() < 1e-10 * fro, "residual {}", res.sqrt());
            }
            let unitary = vecs.conj_transpose().matmul(&vecs);
            prop_assert!(unitary.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
            // eigenvalues only path agrees
            let eig2 = hermitian_eigenvalues(&h).unwrap();
            prop_assert_eq!(eig, eig2);
        }
    }
}
