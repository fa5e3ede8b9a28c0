//! Eigenvalues recomputed without the Jacobi solver: characteristic
//! polynomial by Faddeev-LeVerrier, roots by Durand-Kerner.

use hermspec_core::cyclotomic::{build_float_h, RootOfUnity};
use hermspec_core::graph::{MixedGraph, Relation};
use hermspec_core::spectra::{hermitian_eigenvalues, ComplexMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-8;

/// Coefficients `c[0..=n]` of `det(xI - H)`, leading first.
fn char_poly(h: &ComplexMatrix) -> Vec<Complex64> {
    let n = h.n();
    let mut c = vec![Complex64::new(1.0, 0.0)];
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        // M_k = H M_{k-1} + c_{k-1} I
        let mut next = h.matmul(&m);
        let mut data = next.data().to_vec();
        for i in 0..n {
            data[i * n + i] += c[k - 1];
        }
        next = ComplexMatrix::from_rows(&data.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>());
        let hm = h.matmul(&next);
        c.push(-hm.trace() / k as f64);
        m = next;
    }
    c
}

fn durand_kerner(c: &[Complex64]) -> Vec<f64> {
    let n = c.len() - 1;
    let eval = |x: Complex64| c.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * 3.0).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    // Newton polish on the real part; the roots are real.
    let d: Vec<Complex64> = c[..n].iter().enumerate().map(|(i, &a)| a * (n - i) as f64).collect();
    let mut roots: Vec<f64> = z
        .iter()
        .map(|r| {
            let mut x = Complex64::new(r.re, 0.0);
            for _ in 0..5 {
                let dv = d.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a);
                if dv.norm() < 1e-12 {
                    break;
                }
                x -= eval(x) / dv;
            }
            x.re
        })
        .collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> MixedGraph {
    let mut rel = vec![Relation::None; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let r = [Relation::Forward, Relation::Backward, Relation::Undirected, Relation::None][rng.gen_range(0..4)];
            rel[u * n + v] = r;
            rel[v * n + u] = r.reversed();
        }
    }
    MixedGraph::from_relations(n, &rel)
}

#[test]
fn jacobi_matches_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let g = random_graph(&mut rng, n);
        let k = rng.gen_range(3..=12);
        let root = RootOfUnity::principal(k).unwrap();
        let h = build_float_h(&g, &root);
        let cp = char_poly(&h);
        let want = durand_kerner(&cp);
        let got = hermitian_eigenvalues(&h).unwrap();
        for (a, b) in got.iter().zip(&want) {
            // Repeated roots lose half their digits in Durand-Kerner; compare
            // on the polynomial side instead when they cluster.
            let val = cp.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * *a + c);
            assert!((a - b).abs() < TOL || val.norm() < TOL, "{g:?} k={k}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn char_poly_of_triangle_matches_hand_computation() {
    // det(xI - H) = x^3 - 3x - 2 cos(3 theta) with theta = pi/3: x^3 - 3x + 2.
    let g = MixedGraph::new(3, [(0, 1), (1, 2), (2, 0)], []).unwrap();
    let c = char_poly(&build_float_h(&g, &RootOfUnity::principal(6).unwrap()));
    let want = [1.0, 0.0, -3.0, 2.0];
    for (a, b) in c.iter().zip(want) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn trace_of_square_counts_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let g = random_graph(&mut rng, n);
        let h = build_float_h(&g, &RootOfUnity::principal(rng.gen_range(3..=12)).unwrap());
        let t = h.matmul(&h).trace();
        assert!((t.re - 2.0 * g.size() as f64).abs() < 1e-9);
        assert!(t.im.abs() < 1e-9);
    }
}
