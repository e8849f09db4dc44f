//! The Jacobi kernels checked against nalgebra on random matrices.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sep3q::linalg::{hermitian_eigen, singular_values, CMatrix};
use sep3q::Complex64;

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

fn to_nalgebra(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

fn descending(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

#[test]
fn singular_values_match_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let rows = rng.random_range(1..=8);
        let cols = rng.random_range(1..=8);
        let m = gaussian(&mut rng, rows, cols);
        let ours = singular_values(&m).unwrap().values;
        let theirs = descending(
            to_nalgebra(&m)
                .svd(false, false)
                .singular_values
                .iter()
                .copied()
                .collect(),
        );
        assert_eq!(ours.len(), rows.min(cols));
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-12, "{ours:?} vs {theirs:?}");
        }
    }
}

#[test]
fn singular_values_frobenius_and_transposes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let (rows, cols) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let m = gaussian(&mut rng, rows, cols);
        let s = singular_values(&m).unwrap().values;
        let fro = m.frobenius_norm_sqr();
        let sum: f64 = s.iter().map(|x| x * x).sum();
        assert!((sum - fro).abs() <= 1e-10 * fro);
        for other in [m.transpose(), m.adjoint()] {
            let t = singular_values(&other).unwrap().values;
            for (a, b) in s.iter().zip(&t) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn symmetric_matrices_transpose_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..500 {
        let g = gaussian(&mut rng, 8, 8);
        let sym = CMatrix::from_fn(8, 8, |r, c| g[(r, c)] + g[(c, r)]);
        let a = singular_values(&sym).unwrap().values;
        let b = singular_values(&sym.transpose()).unwrap().values;
        assert_eq!(a.len(), 8);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn hermitian_eigen_reconstructs_and_matches_nalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let n = rng.random_range(1..=8);
        let g = gaussian(&mut rng, n, n);
        let h = CMatrix::from_fn(n, n, |r, c| 0.5 * (g[(r, c)] + g[(c, r)].conj()));
        let (values, vectors) = hermitian_eigen(&h).unwrap();

        assert!(values.windows(2).all(|w| w[0] >= w[1]));
        let theirs = descending(
            to_nalgebra(&h)
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .collect(),
        );
        for (a, b) in values.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-10, "{values:?} vs {theirs:?}");
        }

        let gram = &vectors.adjoint() * &vectors;
        assert!(gram.max_abs_diff(&CMatrix::identity(n)) < 1e-12);
        let diag = CMatrix::from_diagonal(
            &values
                .iter()
                .map(|&l| Complex64::new(l, 0.0))
                .collect::<Vec<_>>(),
        );
        let back = &(&vectors * &diag) * &vectors.adjoint();
        assert!(back.max_abs_diff(&h) < 1e-10);
    }
}

#[test]
fn results_are_bit_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let m = gaussian(&mut rng, 8, 8);
    assert_eq!(
        singular_values(&m).unwrap(),
        singular_values(&m.clone()).unwrap()
    );
    let h = &m * &m.adjoint();
    assert_eq!(
        hermitian_eigen(&h).unwrap().0,
        hermitian_eigen(&h).unwrap().0
    );
}
