use proptest::prelude::*;
use sep3q::diagnostics::{partial_transpose, partial_transpose_matrix, ppt_report, Subsystem};
use sep3q::library::{
    dct_state, random_density, random_pure, random_separable_mixed, shifts_complement, shifts_upb,
    DctParams,
};
use sep3q::linalg::CMatrix;
use sep3q::states::{
    density_from_pure, eig_hermitian, pure_from_amplitudes, validate_density, State, StateFile,
    DEFAULT_RANK_TOL,
};
use sep3q::Complex64;

fn amplitudes() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8).prop_map(|v| {
        v.into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect()
    })
}

/// Nonnegative (a, b, c, d, e) scaled onto the unit-trace plane.
fn dct_params() -> impl Strategy<Value = DctParams> {
    prop::array::uniform5(0.0f64..1.0)
        .prop_filter("nonzero", |v| v.iter().sum::<f64>() > 1e-3)
        .prop_map(|[a, b, c, d, e]| {
            let t = a + b + 2.0 * (c + d + e);
            DctParams {
                a: a / t,
                b: b / t,
                c: c / t,
                d: d / t,
                e: e / t,
            }
        })
}

proptest! {
    #[test]
    fn normalization_keeps_direction(raw in amplitudes()) {
        let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(n > 1e-6);
        let psi = pure_from_amplitudes(&raw, true).unwrap();
        for (a, r) in psi.amplitudes().iter().zip(&raw) {
            prop_assert!((a * n - r).norm() < 1e-13);
        }
        prop_assert!(validate_density(density_from_pure(&psi).matrix()).is_ok());
    }

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>()) {
        for rho in [random_density(seed), random_separable_mixed(seed, 1 + (seed % 16) as usize).unwrap()] {
            let eig = eig_hermitian(&rho, DEFAULT_RANK_TOL).unwrap();
            prop_assert!(eig.reconstruct().max_abs_diff(rho.matrix()) < 1e-10);
            prop_assert!((eig.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn state_files_round_trip(seed in any::<u64>()) {
        for state in [State::Pure(random_pure(seed)), State::Density(random_density(seed))] {
            let json = StateFile::from_state(&state).to_json();
            prop_assert_eq!(StateFile::parse(&json).unwrap(), state);
        }
    }

    #[test]
    fn dct_states_are_valid(p in dct_params()) {
        let rho = dct_state(&p).unwrap();
        let eig = eig_hermitian(&rho, DEFAULT_RANK_TOL).unwrap();
        prop_assert!(eig.eigenvalues.iter().all(|&l| l >= 0.0));
        prop_assert_eq!(rho.matrix().clone(), rho.matrix().adjoint());
    }

    #[test]
    fn partial_transpose_is_a_trace_preserving_involution(seed in any::<u64>()) {
        let rho = random_density(seed);
        for sub in Subsystem::ALL {
            let pt = partial_transpose(&rho, sub);
            prop_assert_eq!(&partial_transpose_matrix(&pt, sub), rho.matrix());
            prop_assert!((pt.trace() - rho.matrix().trace()).norm() < 1e-15);
            prop_assert_eq!(pt.adjoint(), pt.clone());
        }
    }

    #[test]
    fn separable_states_are_ppt(seed in any::<u64>(), k in 1usize..=16) {
        prop_assert!(ppt_report(&random_separable_mixed(seed, k).unwrap()).unwrap().all_ppt());
    }
}

#[test]
fn random_constructors_are_deterministic() {
    for seed in [0, 1, u64::MAX] {
        assert_eq!(random_density(seed), random_density(seed));
        assert_eq!(
            random_separable_mixed(seed, 5).unwrap(),
            random_separable_mixed(seed, 5).unwrap()
        );
    }
}

#[test]
fn shifts_complement_annihilates_the_upb() {
    let rho = shifts_complement();
    let mut p = CMatrix::zeros(8, 8);
    for psi in shifts_upb() {
        p.add_scaled(Complex64::new(1.0, 0.0), density_from_pure(&psi).matrix());
    }
    let product = rho.matrix() * &p;
    assert!(product.max_abs_diff(&CMatrix::zeros(8, 8)) < 1e-12);
}
