//! Exact full-separability test for three-qubit pure states.
//!
//! A pure state is fully separable exactly when every face and every
//! diagonal plane of its 2×2×2 coefficient cube has rank one. Each of those
//! 2×2 minors is a complex symmetric bilinear form `ψ^T s ψ`; collecting the
//! nine forms gives the vector `C(ψ)`, which vanishes iff the state is a
//! product `|a⟩⊗|b⟩⊗|c⟩`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{singular_values, CMatrix};
use crate::states::{PureState, DIM};

/// Default threshold on `|C(ψ)|` below which a pure state is separable.
pub const DEFAULT_TOL_SEP: f64 = 1e-8;

type Mat8 = [[Complex64; DIM]; DIM];

/// Nonzero entries `(row, col, re, im)` of one operator.
type Entries = &'static [(usize, usize, i8, i8)];

const fn dense(entries: Entries) -> Mat8 {
    let mut m = [[Complex64::new(0.0, 0.0); DIM]; DIM];
    let mut k = 0;
    while k < entries.len() {
        let (r, c, re, im) = entries[k];
        m[r][c] = Complex64::new(re as f64, im as f64);
        k += 1;
    }
    m
}

// s¹..s⁶ pick one face of the cube (σ_y⊗σ_y on two qubits, a projector on
// the third); s⁷..s⁹ couple opposite faces through Iv = σ_x.
const S1: Entries = &[(0, 6, 1, 0), (2, 4, -1, 0), (4, 2, -1, 0), (6, 0, 1, 0)];
const S2: Entries = &[(1, 7, 1, 0), (3, 5, -1, 0), (5, 3, -1, 0), (7, 1, 1, 0)];
const S3: Entries = &[(0, 5, 1, 0), (1, 4, -1, 0), (4, 1, -1, 0), (5, 0, 1, 0)];
const S4: Entries = &[(2, 7, 1, 0), (3, 6, -1, 0), (6, 3, -1, 0), (7, 2, 1, 0)];
const S5: Entries = &[(0, 3, 1, 0), (1, 2, -1, 0), (2, 1, -1, 0), (3, 0, 1, 0)];
const S6: Entries = &[(4, 7, 1, 0), (5, 6, -1, 0), (6, 5, -1, 0), (7, 4, 1, 0)];
const S7: Entries = &[
    (0, 7, 1, 0),
    (1, 6, -1, 0),
    (2, 5, -1, 0),
    (3, 4, 1, 0),
    (4, 3, 1, 0),
    (5, 2, -1, 0),
    (6, 1, -1, 0),
    (7, 0, 1, 0),
];
const S8: Entries = &[
    (0, 7, 1, 0),
    (1, 6, -1, 0),
    (2, 5, 1, 0),
    (3, 4, -1, 0),
    (4, 3, -1, 0),
    (5, 2, 1, 0),
    (6, 1, -1, 0),
    (7, 0, 1, 0),
];
const S9: Entries = &[
    (0, 7, 1, 0),
    (1, 6, 1, 0),
    (2, 5, -1, 0),
    (3, 4, -1, 0),
    (4, 3, -1, 0),
    (5, 2, -1, 0),
    (6, 1, 1, 0),
    (7, 0, 1, 0),
];
// Reduced replacements for s¹..s⁶, using diag(1, i) on the third factor.
const R1: Entries = &[
    (0, 6, 1, 0),
    (1, 7, 0, 1),
    (2, 4, -1, 0),
    (3, 5, 0, -1),
    (4, 2, -1, 0),
    (5, 3, 0, -1),
    (6, 0, 1, 0),
    (7, 1, 0, 1),
];
const R2: Entries = &[
    (0, 5, 1, 0),
    (1, 4, -1, 0),
    (2, 7, 0, 1),
    (3, 6, 0, -1),
    (4, 1, -1, 0),
    (5, 0, 1, 0),
    (6, 3, 0, -1),
    (7, 2, 0, 1),
];
const R3: Entries = &[
    (0, 3, 1, 0),
    (1, 2, -1, 0),
    (2, 1, -1, 0),
    (3, 0, 1, 0),
    (4, 7, 0, 1),
    (5, 6, 0, -1),
    (6, 5, 0, -1),
    (7, 4, 0, 1),
];

static FULL9: [Mat8; 9] = [
    dense(S1),
    dense(S2),
    dense(S3),
    dense(S4),
    dense(S5),
    dense(S6),
    dense(S7),
    dense(S8),
    dense(S9),
];

static REDUCED: [Mat8; 6] = [
    dense(R1),
    dense(R2),
    dense(R3),
    dense(S7),
    dense(S8),
    dense(S9),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorVariant {
    /// s¹..s⁹
    Full9,
    /// S¹..S³ followed by s⁷..s⁹. Not a valid separability test on its own.
    Reduced,
}

/// The constant complex symmetric operators defining `C(ψ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SOperatorSet {
    variant: OperatorVariant,
    matrices: Vec<CMatrix>,
}

impl SOperatorSet {
    pub fn variant(&self) -> OperatorVariant {
        self.variant
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn count(&self) -> usize {
        self.matrices.len()
    }
}

pub fn build_s_operators(variant: OperatorVariant) -> SOperatorSet {
    let table: &[Mat8] = match variant {
        OperatorVariant::Full9 => &FULL9,
        OperatorVariant::Reduced => &REDUCED,
    };
    let matrices = table
        .iter()
        .map(|m| CMatrix::from_fn(DIM, DIM, |r, c| m[r][c]))
        .collect();
    SOperatorSet { variant, matrices }
}

/// Complex symmetric bilinear form `x^T s y` (no conjugation).
pub fn bilinear(x: &[Complex64], s: &CMatrix, y: &[Complex64]) -> Complex64 {
    let sy = s.mul_vec(y);
    x.iter().zip(&sy).map(|(a, b)| a * b).sum()
}

/// The vector `C(ψ)` and its Euclidean length.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    pub components: Vec<Complex64>,
    pub norm: f64,
}

impl CVector {
    fn new(components: Vec<Complex64>) -> Self {
        let norm = components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        CVector { components, norm }
    }
}

/// `C^α = ψ^T s^α ψ` for every operator, with `|C| = √(Σ|C^α|²)`.
pub fn c_vector(psi: &PureState, ops: &SOperatorSet) -> CVector {
    let a = psi.amplitudes();
    CVector::new(ops.matrices().iter().map(|s| bilinear(a, s, a)).collect())
}

/// Face and diagonal-plane minors of the coefficient cube.
///
/// The first three entries are sums of moduli of the two face determinants
/// perpendicular to one axis; the last three are moduli of the signed sums
/// for the three diagonal planes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Residuals(pub [f64; 6]);

impl Lemma1Residuals {
    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

pub fn lemma1_residuals(psi: &PureState) -> Lemma1Residuals {
    let a = |i: usize, j: usize, k: usize| psi.coeff(i, j, k);
    let face = |f: &dyn Fn(usize) -> Complex64| (0..2).map(|i| f(i).norm()).sum::<f64>();
    let plane = |f: &dyn Fn(usize, usize) -> Complex64| {
        (0..2).map(|i| f(i, 1 - i)).sum::<Complex64>().norm()
    };
    Lemma1Residuals([
        face(&|i| a(i, 0, 0) * a(i, 1, 1) - a(i, 0, 1) * a(i, 1, 0)),
        face(&|i| a(0, i, 0) * a(1, i, 1) - a(0, i, 1) * a(1, i, 0)),
        face(&|i| a(0, 0, i) * a(1, 1, i) - a(0, 1, i) * a(1, 0, i)),
        plane(&|i, j| a(0, i, 0) * a(1, j, 1) - a(0, j, 1) * a(1, i, 0)),
        plane(&|i, j| a(i, 0, 0) * a(j, 1, 1) - a(j, 0, 1) * a(i, 1, 0)),
        plane(&|i, j| a(0, 0, i) * a(1, 1, j) - a(0, 1, j) * a(1, 0, i)),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Separability {
    Separable,
    Entangled,
}

/// Separable iff `|C(ψ)| < tol_sep`, always evaluated with the full operator set.
pub fn is_fully_separable_pure(psi: &PureState, tol_sep: f64) -> (Separability, CVector) {
    let c = c_vector(psi, &build_s_operators(OperatorVariant::Full9));
    let verdict = if c.norm < tol_sep {
        Separability::Separable
    } else {
        Separability::Entangled
    };
    (verdict, c)
}

/// Product test via Schmidt ranks, independent of the s-operators.
///
/// The A|BC reshape must have rank one; the BC factor (the larger row of
/// that reshape, normalized) must in turn have B|C rank one.
pub fn brute_force_product_check(psi: &PureState, tol: f64) -> Separability {
    let a = psi.amplitudes();
    let a_vs_bc = CMatrix::from_fn(2, 4, |i, jk| a[4 * i + jk]);
    let sv = singular_values(&a_vs_bc).expect("finite 2x4 matrix");
    if sv.values[1] >= tol {
        return Separability::Entangled;
    }
    let row_norm = |r: usize| {
        a_vs_bc
            .row(r)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let r = if row_norm(0) >= row_norm(1) { 0 } else { 1 };
    let n = row_norm(r);
    let bc = a_vs_bc.row(r);
    let b_vs_c = CMatrix::from_fn(2, 2, |j, k| bc[2 * j + k] / n);
    let sv = singular_values(&b_vs_c).expect("finite 2x2 matrix");
    if sv.values[1] < tol {
        Separability::Separable
    } else {
        Separability::Entangled
    }
}
