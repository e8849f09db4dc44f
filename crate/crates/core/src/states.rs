//! Three-qubit pure states and density matrices.
//!
//! Basis ordering is big-endian: amplitude `a_{ijk}` of `|i⟩_A|j⟩_B|k⟩_C`
//! lives at flat index `4i + 2j + k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};

pub const DIM: usize = 8;

/// Tolerance on `Σ|a|² = 1`.
pub const TOL_NORM: f64 = 1e-10;
/// Entrywise tolerance on `ρ = ρ†`.
pub const TOL_HERMITIAN: f64 = 1e-12;
/// Tolerance on `tr ρ = 1`.
pub const TOL_TRACE: f64 = 1e-10;
/// Eigenvalues in `[-TOL_PSD, 0)` are rounding noise and clamped to zero.
pub const TOL_PSD: f64 = 1e-10;
/// Default relative threshold below which an eigenvalue is outside the support.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;
/// Amplitude moduli below this make a vector count as zero.
pub const ZERO_VECTOR_TOL: f64 = 1e-14;

/// Flat index of `a_{ijk}`.
#[inline]
pub const fn flat_index(i: usize, j: usize, k: usize) -> usize {
    4 * i + 2 * j + k
}

fn check_finite(z: &[Complex64]) -> Result<()> {
    if z.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Unit-norm three-qubit state vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    amp: [Complex64; DIM],
}

impl PureState {
    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amp
    }

    /// Coefficient `a_{ijk}`.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.amp[flat_index(i, j, k)]
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> PureState {
        let ph = Complex64::from_polar(1.0, theta);
        PureState {
            amp: self.amp.map(|a| a * ph),
        }
    }

    /// Relabels qubits: qubit `q` of the result is qubit `perm[q]` of `self`.
    pub fn permute_qubits(&self, perm: [usize; 3]) -> PureState {
        let mut amp = [Complex64::new(0.0, 0.0); DIM];
        for (idx, slot) in amp.iter_mut().enumerate() {
            let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
            let mut src = [0usize; 3];
            for q in 0..3 {
                src[perm[q]] = bits[q];
            }
            *slot = self.amp[flat_index(src[0], src[1], src[2])];
        }
        PureState { amp }
    }
}

/// Builds a pure state from eight raw amplitudes.
///
/// With `normalize` the vector is divided by its Euclidean norm; otherwise the
/// norm must already be 1 within [`TOL_NORM`].
pub fn pure_from_amplitudes(raw: &[Complex64], normalize: bool) -> Result<PureState> {
    if raw.len() != DIM {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            found: raw.len(),
        });
    }
    check_finite(raw)?;
    if raw.iter().all(|a| a.norm() < ZERO_VECTOR_TOL) {
        return Err(Error::ZeroVector {
            threshold: ZERO_VECTOR_TOL,
        });
    }
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let mut amp = [Complex64::new(0.0, 0.0); DIM];
    amp.copy_from_slice(raw);
    if normalize {
        for a in amp.iter_mut() {
            *a /= norm;
        }
    } else if (norm - 1.0).abs() > TOL_NORM {
        return Err(Error::NotNormalized { norm });
    }
    Ok(PureState { amp })
}

/// Validated 8×8 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.m[(r, c)]
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    /// Convex combination `Σ wᵢ ρᵢ`. Weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
        let mut m = CMatrix::zeros(DIM, DIM);
        for (w, rho) in parts {
            if w.is_nan() || *w < 0.0 {
                return Err(Error::InvalidParams(format!("negative mixture weight {w}")));
            }
            m.add_scaled(Complex64::new(*w, 0.0), &rho.m);
        }
        validate_density(&m)
    }
}

/// `|ψ⟩⟨ψ|`
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    let a = psi.amplitudes();
    let mut m = CMatrix::from_fn(DIM, DIM, |p, q| a[p] * a[q].conj());
    for i in 0..DIM {
        m[(i, i)].im = 0.0;
    }
    DensityMatrix { m }
}

/// Checks the density-matrix invariants and returns the validated matrix.
///
/// The stored matrix is the exact Hermitian part `(m + m†)/2`.
pub fn validate_density(m: &CMatrix) -> Result<DensityMatrix> {
    if m.rows() != DIM || m.cols() != DIM {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            found: if m.rows() != DIM { m.rows() } else { m.cols() },
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    for r in 0..DIM {
        for c in r..DIM {
            let deviation = (m[(r, c)] - m[(c, r)].conj()).norm();
            if deviation > TOL_HERMITIAN {
                return Err(Error::NotHermitian {
                    row: r,
                    col: c,
                    deviation,
                });
            }
        }
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TOL_TRACE {
        return Err(Error::TraceNotOne { trace });
    }
    let sym = CMatrix::from_fn(DIM, DIM, |r, c| 0.5 * (m[(r, c)] + m[(c, r)].conj()));
    let (values, _) = hermitian_eigen(&sym)?;
    let min = values[DIM - 1];
    if min < -TOL_PSD {
        return Err(Error::NotPositive { eigenvalue: min });
    }
    Ok(DensityMatrix { m: sym })
}

/// `ρ = Φ M Φ†` with eigenvalues in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigDecomposition {
    /// Descending; entries at or below the rank threshold are clamped to 0.
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors.
    pub eigenvectors: CMatrix,
    /// Number of eigenvalues above the rank threshold.
    pub rank: usize,
}

impl EigDecomposition {
    pub fn reconstruct(&self) -> CMatrix {
        let d: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&l| Complex64::new(l, 0.0))
            .collect();
        let phi = &self.eigenvectors;
        &(phi * &CMatrix::from_diagonal(&d)) * &phi.adjoint()
    }
}

/// Hermitian eigendecomposition of a density matrix with rank truncation.
///
/// `rank_tol` is relative to the (unit) trace.
pub fn eig_hermitian(rho: &DensityMatrix, rank_tol: f64) -> Result<EigDecomposition> {
    let (mut eigenvalues, eigenvectors) = hermitian_eigen(&rho.m)?;
    let cutoff = rank_tol * rho.m.trace().re.abs().max(f64::MIN_POSITIVE);
    let mut rank = 0;
    for l in eigenvalues.iter_mut() {
        if *l > cutoff {
            rank += 1;
        } else {
            *l = 0.0;
        }
    }
    Ok(EigDecomposition {
        eigenvalues,
        eigenvectors,
        rank,
    })
}

/// On-disk state description.
///
/// Serialized as `{"kind": "pure", "data": [[re, im], ...]}` (8 pairs) or
/// `{"kind": "density", "data": [[[re, im], ...], ...]}` (8×8 pairs).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum StateFile {
    Pure(Vec<Vec<f64>>),
    Density(Vec<Vec<Vec<f64>>>),
}

/// A parsed and validated state.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Pure(PureState),
    Density(DensityMatrix),
}

impl State {
    /// Density matrix, promoting pure states by outer product.
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            State::Pure(psi) => density_from_pure(psi),
            State::Density(rho) => rho.clone(),
        }
    }
}

fn pair(v: &[f64], what: &str) -> Result<Complex64> {
    match v {
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(Error::Parse(format!(
            "{what}: expected an [re, im] pair, found {} numbers",
            v.len()
        ))),
    }
}

impl StateFile {
    pub fn from_pure(psi: &PureState) -> Self {
        StateFile::Pure(psi.amplitudes().iter().map(|a| vec![a.re, a.im]).collect())
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        StateFile::Density(
            (0..DIM)
                .map(|r| {
                    rho.matrix()
                        .row(r)
                        .iter()
                        .map(|a| vec![a.re, a.im])
                        .collect()
                })
                .collect(),
        )
    }

    pub fn from_state(state: &State) -> Self {
        match state {
            State::Pure(psi) => Self::from_pure(psi),
            State::Density(rho) => Self::from_density(rho),
        }
    }

    /// Checks shapes and invariants. Pure data must already be normalized.
    pub fn into_state(self) -> Result<State> {
        match self {
            StateFile::Pure(data) => {
                if data.len() != DIM {
                    return Err(Error::Parse(format!(
                        "pure data: expected an array of 8 [re, im] pairs, found {} entries",
                        data.len()
                    )));
                }
                let amps = data
                    .iter()
                    .enumerate()
                    .map(|(i, v)| pair(v, &format!("pure data entry {i}")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(State::Pure(pure_from_amplitudes(&amps, false)?))
            }
            StateFile::Density(rows) => {
                if rows.len() != DIM || rows.iter().any(|r| r.len() != DIM) {
                    return Err(Error::Parse(format!(
                        "density data: expected an 8x8 array of [re, im] pairs, found {} rows with lengths {:?}",
                        rows.len(),
                        rows.iter().map(Vec::len).collect::<Vec<_>>()
                    )));
                }
                let mut entries = Vec::with_capacity(DIM * DIM);
                for (r, row) in rows.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        entries.push(pair(v, &format!("density data entry ({r}, {c})"))?);
                    }
                }
                Ok(State::Density(validate_density(&CMatrix::from_vec(
                    DIM, DIM, entries,
                ))?))
            }
        }
    }

    pub fn parse(text: &str) -> Result<State> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_state()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serialization cannot fail")
    }
}
