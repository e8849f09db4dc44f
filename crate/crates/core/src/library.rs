//! Reference states: GHZ, W, products, the SHIFTS UPB and its bound
//! entangled complement, the Dür–Cirac–Tarrach family, and seeded random
//! ensembles.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::states::{
    density_from_pure, pure_from_amplitudes, validate_density, DensityMatrix, PureState, DIM,
};

/// Largest number of product terms in [`random_separable_mixed`].
pub const MAX_SEPARABLE_TERMS: usize = 16;

const TOL_DCT_TRACE: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn basis_sum(indices: &[usize]) -> PureState {
    let mut raw = [c(0.0, 0.0); DIM];
    for &i in indices {
        raw[i] = c(1.0, 0.0);
    }
    pure_from_amplitudes(&raw, true).expect("nonzero basis combination")
}

/// (|000⟩ + |111⟩)/√2
pub fn ghz() -> PureState {
    basis_sum(&[0, 7])
}

/// (|001⟩ + |010⟩ + |100⟩)/√3
pub fn w() -> PureState {
    basis_sum(&[1, 2, 4])
}

/// `|u⟩ ⊗ |v⟩ ⊗ |t⟩` with each factor normalized first.
pub fn product(u: [Complex64; 2], v: [Complex64; 2], t: [Complex64; 2]) -> Result<PureState> {
    let unit = |x: [Complex64; 2]| -> Result<[Complex64; 2]> {
        let n = (x[0].norm_sqr() + x[1].norm_sqr()).sqrt();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n < 1e-14 {
            return Err(Error::ZeroVector { threshold: 1e-14 });
        }
        Ok([x[0] / n, x[1] / n])
    };
    let (u, v, t) = (unit(u)?, unit(v)?, unit(t)?);
    let mut raw = [c(0.0, 0.0); DIM];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                raw[4 * i + 2 * j + k] = u[i] * v[j] * t[k];
            }
        }
    }
    pure_from_amplitudes(&raw, true)
}

/// The SHIFTS unextendible product basis
/// `{|0,1,+⟩, |1,+,0⟩, |+,0,1⟩, |−,−,−⟩}`, in that order.
pub fn shifts_upb() -> [PureState; 4] {
    let zero = [c(1.0, 0.0), c(0.0, 0.0)];
    let one = [c(0.0, 0.0), c(1.0, 0.0)];
    let plus = [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)];
    let minus = [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)];
    [
        product(zero, one, plus),
        product(one, plus, zero),
        product(plus, zero, one),
        product(minus, minus, minus),
    ]
    .map(|p| p.expect("fixed nonzero factors"))
}

/// `(I − Σᵢ |ψᵢ⟩⟨ψᵢ|)/4` over the SHIFTS UPB: PPT across every cut, yet entangled.
pub fn shifts_complement() -> DensityMatrix {
    let mut m = CMatrix::identity(DIM);
    for psi in shifts_upb() {
        m.add_scaled(c(-1.0, 0.0), density_from_pure(&psi).matrix());
    }
    validate_density(&m.scale(c(0.25, 0.0))).expect("UPB complement is a valid state")
}

/// Parameters of the Dür–Cirac–Tarrach family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DctParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl DctParams {
    /// a = 1/3, c = d = 1/6, b = e = 0
    pub fn reference() -> Self {
        DctParams {
            a: 1.0 / 3.0,
            b: 0.0,
            c: 1.0 / 6.0,
            d: 1.0 / 6.0,
            e: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
        ];
        for (name, v) in named {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
            if v < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be nonnegative"
                )));
            }
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > TOL_DCT_TRACE {
            return Err(Error::InvalidParams(format!(
                "a + b + 2(c + d + e) = {trace} must equal 1"
            )));
        }
        Ok(())
    }

    pub fn trace(&self) -> f64 {
        self.a + self.b + 2.0 * (self.c + self.d + self.e)
    }
}

/// Diagonal `((a+b)/2, c, d, e, e, d, c, (a+b)/2)` with `(a−b)/2` on the
/// (0,7) and (7,0) corners.
pub fn dct_state(p: &DctParams) -> Result<DensityMatrix> {
    p.validate()?;
    let diag = [
        (p.a + p.b) / 2.0,
        p.c,
        p.d,
        p.e,
        p.e,
        p.d,
        p.c,
        (p.a + p.b) / 2.0,
    ];
    let mut m = CMatrix::from_diagonal(&diag.map(|x| c(x, 0.0)));
    m[(0, 7)] = c((p.a - p.b) / 2.0, 0.0);
    m[(7, 0)] = c((p.a - p.b) / 2.0, 0.0);
    validate_density(&m)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn draw_pure<R: Rng>(rng: &mut R) -> PureState {
    loop {
        let raw: Vec<Complex64> = (0..DIM).map(|_| complex_normal(rng)).collect();
        if let Ok(psi) = pure_from_amplitudes(&raw, true) {
            return psi;
        }
    }
}

fn draw_qubit<R: Rng>(rng: &mut R) -> [Complex64; 2] {
    loop {
        let q = [complex_normal(rng), complex_normal(rng)];
        if q[0].norm_sqr() + q[1].norm_sqr() > 1e-20 {
            return q;
        }
    }
}

fn draw_product<R: Rng>(rng: &mut R) -> PureState {
    let (u, v, t) = (draw_qubit(rng), draw_qubit(rng), draw_qubit(rng));
    product(u, v, t).expect("nonzero factors")
}

/// Haar-random pure state.
pub fn random_pure(seed: u64) -> PureState {
    draw_pure(&mut rng(seed))
}

/// Product of three independently Haar-random qubits.
pub fn random_product_pure(seed: u64) -> PureState {
    draw_product(&mut rng(seed))
}

/// Haar-random two-qubit state, amplitudes ordered `a₀₀, a₀₁, a₁₀, a₁₁`.
pub fn random_two_qubit(seed: u64) -> [Complex64; 4] {
    let mut r = rng(seed);
    let raw: [Complex64; 4] = std::array::from_fn(|_| complex_normal(&mut r));
    let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.map(|z| z / n)
}

/// `Σᵢ wᵢ |πᵢ⟩⟨πᵢ|` over `k` random product states with Dirichlet(1, …, 1) weights.
pub fn random_separable_mixed(seed: u64, k: usize) -> Result<DensityMatrix> {
    if !(1..=MAX_SEPARABLE_TERMS).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "number of product terms k = {k} must lie in [1, {MAX_SEPARABLE_TERMS}]"
        )));
    }
    let mut r = rng(seed);
    let weights: Vec<f64> = (0..k)
        .map(|_| r.sample::<f64, _>(Exp1) + f64::MIN_POSITIVE)
        .collect();
    let total: f64 = weights.iter().sum();
    let mut m = CMatrix::zeros(DIM, DIM);
    for w in &weights {
        let p = density_from_pure(&draw_product(&mut r));
        m.add_scaled(c(w / total, 0.0), p.matrix());
    }
    let trace = m.trace().re;
    validate_density(&m.scale(c(1.0 / trace, 0.0)))
}

/// `G G† / tr(G G†)` for a complex Gaussian 8×8 `G`.
pub fn random_density(seed: u64) -> DensityMatrix {
    let mut r = rng(seed);
    let g = CMatrix::from_fn(DIM, DIM, |_, _| complex_normal(&mut r));
    let mut m = &g * &g.adjoint();
    for i in 0..DIM {
        m[(i, i)].im = 0.0;
    }
    let trace = m.trace().re;
    validate_density(&m.scale(c(1.0 / trace, 0.0))).expect("Gram matrix is a valid state")
}
