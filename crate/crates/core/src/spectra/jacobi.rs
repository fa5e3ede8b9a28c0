//! Cyclic Jacobi for dense complex Hermitian matrices.
//!
//! Each pivot `(p, q)` is annihilated in two steps: a diagonal phase makes
//! `a[p][q]` real and non-negative, then a real symmetric Jacobi rotation
//! zeroes it. Both are unitary, so the spectrum is preserved exactly up to
//! rounding.

use super::{ComplexMatrix, SpectrumError};
use num_complex::Complex64;

pub(crate) const MAX_SWEEPS: usize = 100;
pub(crate) const OFF_DIAGONAL_TOL: f64 = 1e-13;

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes `a` in place. When `vectors` is given it accumulates the
/// unitary `V` with `A_original = V diag(lambda) V*`.
pub(crate) fn diagonalize(
    a: &mut ComplexMatrix,
    mut vectors: Option<&mut ComplexMatrix>,
) -> Result<(), SpectrumError> {
    let n = a.n();
    if n < 2 {
        return Ok(());
    }
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(());
    }
    let threshold = OFF_DIAGONAL_TOL * scale;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a) < threshold {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Phase: scale column q by e^{-i phi} and row q by e^{i phi}.
                let phase = apq / mag;
                let phase_conj = phase.conj();
                for k in 0..n {
                    a[(k, q)] *= phase_conj;
                }
                for k in 0..n {
                    a[(q, k)] *= phase;
                }
                if let Some(v) = vectors.as_deref_mut() {
                    for k in 0..n {
                        v[(k, q)] *= phase_conj;
                    }
                }

                // Real rotation on the now-real 2x2 block.
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                if let Some(v) = vectors.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * s;
                        v[(k, q)] = vkp * s + vkq * c;
                    }
                }
            }
        }
    }
    if off_diagonal_norm(a) < threshold {
        Ok(())
    } else {
        Err(SpectrumError::NotConverged(MAX_SWEEPS))
    }
}
