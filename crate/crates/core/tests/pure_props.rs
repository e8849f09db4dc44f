use proptest::prelude::*;
use sep3q::diagnostics::wootters_concurrence_pure;
use sep3q::library::{random_product_pure, random_pure, random_two_qubit};
use sep3q::pure::{
    brute_force_product_check, build_s_operators, c_vector, is_fully_separable_pure,
    lemma1_residuals, OperatorVariant, DEFAULT_TOL_SEP,
};
use sep3q::states::{pure_from_amplitudes, PureState};
use sep3q::Complex64;

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn embed_with_zero(phi: &[Complex64; 4]) -> PureState {
    let mut raw = [Complex64::new(0.0, 0.0); 8];
    for (ij, a) in phi.iter().enumerate() {
        raw[2 * ij] = *a;
    }
    pure_from_amplitudes(&raw, true).unwrap()
}

fn sorted_moduli(psi: &PureState) -> Vec<f64> {
    let mut m: Vec<f64> = c_vector(psi, &build_s_operators(OperatorVariant::Full9))
        .components
        .iter()
        .map(|z| z.norm())
        .collect();
    m.sort_by(f64::total_cmp);
    m
}

proptest! {
    #[test]
    fn verdict_agrees_with_reshape_oracle(seed in any::<u64>(), product in any::<bool>()) {
        let psi = if product { random_product_pure(seed) } else { random_pure(seed) };
        let (verdict, c) = is_fully_separable_pure(&psi, DEFAULT_TOL_SEP);
        prop_assert_eq!(verdict, brute_force_product_check(&psi, DEFAULT_TOL_SEP));
        if product {
            prop_assert!(c.norm < 1e-10);
        }
    }

    #[test]
    fn components_scale_with_twice_the_phase(seed in any::<u64>(), theta in -10.0f64..10.0) {
        let ops = build_s_operators(OperatorVariant::Full9);
        let psi = random_pure(seed);
        let c0 = c_vector(&psi, &ops);
        let c1 = c_vector(&psi.with_global_phase(theta), &ops);
        let factor = Complex64::from_polar(1.0, 2.0 * theta);
        for (a, b) in c0.components.iter().zip(&c1.components) {
            prop_assert!((a * factor - b).norm() < 1e-14);
        }
        prop_assert!((c0.norm - c1.norm).abs() < 1e-14);
    }

    #[test]
    fn residuals_vanish_with_the_norm(seed in any::<u64>(), product in any::<bool>()) {
        let psi = if product { random_product_pure(seed) } else { random_pure(seed) };
        let small_residuals = lemma1_residuals(&psi).max() < 1e-12;
        let small_norm = is_fully_separable_pure(&psi, DEFAULT_TOL_SEP).1.norm < 1e-11;
        prop_assert_eq!(small_residuals, small_norm);
        prop_assert_eq!(small_norm, product);
    }

    #[test]
    fn qubit_permutations_permute_moduli(seed in any::<u64>()) {
        let psi = random_pure(seed);
        let base = sorted_moduli(&psi);
        for perm in PERMUTATIONS {
            let moved = sorted_moduli(&psi.permute_qubits(perm));
            for (a, b) in base.iter().zip(&moved) {
                prop_assert!((a - b).abs() < 1e-14, "{perm:?}: {base:?} vs {moved:?}");
            }
        }
    }

    #[test]
    fn two_qubit_embedding_gives_concurrence(seed in any::<u64>()) {
        let phi = random_two_qubit(seed);
        let c = is_fully_separable_pure(&embed_with_zero(&phi), DEFAULT_TOL_SEP).1.norm;
        let direct = 2.0 * (phi[0] * phi[3] - phi[1] * phi[2]).norm();
        prop_assert!((c - direct).abs() < 1e-12);
        prop_assert!((c - wootters_concurrence_pure(&phi).unwrap()).abs() < 1e-12);
    }
}
