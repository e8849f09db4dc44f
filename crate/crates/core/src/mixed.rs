//! Entanglement certificate for three-qubit mixed states.
//!
//! For `ρ = Φ M Φ†` restricted to its support, the operators are pulled back
//! to `A^α = M^{1/2} Φ^T s^α Φ M^{1/2}`. For every unit vector `z`,
//! `σ₁(T) − Σ_{i>1} σᵢ(T)` with `T = Σ_α z_α A^α` is a lower bound on the
//! convex roof of `|C(ψ)|`, so a positive value anywhere certifies that `ρ`
//! is not fully separable. The maximization over `z` is done by seeded
//! random sampling followed by a local ascent.
//!
//! A zero certificate proves nothing: the bound may simply not be tight or
//! the search may have missed the maximizer.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, CMatrix};
use crate::pure::{build_s_operators, OperatorVariant, SOperatorSet};
use crate::states::{eig_hermitian, DensityMatrix, DEFAULT_RANK_TOL};

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_REFINE_ITERS: usize = 200;
pub const DEFAULT_SEED: u64 = 0;
/// Certificates above this count as detected entanglement.
pub const DEFAULT_VERDICT_TOL: f64 = 1e-6;

/// Samples per random stream. Sample `i` is drawn from stream `i / BATCH`
/// at offset `i % BATCH`, so its value depends only on `(seed, i)`.
const BATCH: usize = 1024;
const REFINE_STREAM: u64 = u64::MAX;
const REFINE_INITIAL_STEP: f64 = 0.1;
const REFINE_MIN_STEP: f64 = 1e-9;

/// `A^α` for every operator, each `r × r` with `r = rank ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct AMatrixSet {
    matrices: Vec<CMatrix>,
    /// Sum of the retained eigenvalues of ρ, the scale of rounding in `matrices`.
    weight: f64,
    rank: usize,
}

impl AMatrixSet {
    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn count(&self) -> usize {
        self.matrices.len()
    }

    /// `Σ_α z_α A^α`
    pub fn combine(&self, z: &[Complex64]) -> Result<CMatrix> {
        if z.len() != self.count() {
            return Err(Error::DimensionMismatch {
                expected: self.count(),
                found: z.len(),
            });
        }
        let mut t = CMatrix::zeros(self.rank, self.rank);
        for (&za, a) in z.iter().zip(&self.matrices) {
            if za != Complex64::new(0.0, 0.0) {
                t.add_scaled(za, a);
            }
        }
        Ok(t)
    }

    /// Rounding-error scale of `Σ_α z_α A^α`, below which a score is noise.
    fn noise_floor(&self, z: &[Complex64]) -> f64 {
        let l1: f64 = z.iter().map(|za| za.norm()).sum();
        64.0 * self.rank.max(1) as f64 * f64::EPSILON * l1 * self.weight
    }
}

pub fn build_a_matrices(
    rho: &DensityMatrix,
    ops: &SOperatorSet,
    rank_tol: f64,
) -> Result<AMatrixSet> {
    let eig = eig_hermitian(rho, rank_tol)?;
    let r = eig.rank;
    let n = eig.eigenvectors.rows();
    let phi_r = CMatrix::from_fn(n, r, |row, col| eig.eigenvectors[(row, col)]);
    let phi_r_t = phi_r.transpose();
    let sqrt_l: Vec<f64> = eig.eigenvalues[..r].iter().map(|l| l.sqrt()).collect();

    let matrices = ops
        .matrices()
        .iter()
        .map(|s| {
            let core = &(&phi_r_t * s) * &phi_r;
            // symmetrize away rounding; A^α inherits s^α = (s^α)^T
            CMatrix::from_fn(r, r, |i, j| {
                0.5 * (core[(i, j)] + core[(j, i)]) * (sqrt_l[i] * sqrt_l[j])
            })
        })
        .collect::<Vec<CMatrix>>();
    let weight = eig.eigenvalues[..r].iter().sum();
    Ok(AMatrixSet {
        matrices,
        weight,
        rank: r,
    })
}

/// How random `z` vectors are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZMode {
    /// I.i.d. standard complex normal entries, normalized.
    Complex,
    /// I.i.d. `|N(0, 1)|` entries, normalized. Only a global phase remains free.
    #[serde(rename = "real")]
    RealNonnegative,
}

/// Unit vector of combination weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ZCandidate {
    z: Vec<Complex64>,
}

impl ZCandidate {
    /// Normalizes `z`. Returns `None` for a zero or non-finite vector.
    pub fn new(z: Vec<Complex64>) -> Option<Self> {
        let n = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if !n.is_finite() || n <= 0.0 {
            return None;
        }
        Some(ZCandidate {
            z: z.into_iter().map(|x| x / n).collect(),
        })
    }

    pub fn basis(len: usize, alpha: usize) -> Self {
        let mut z = vec![Complex64::new(0.0, 0.0); len];
        z[alpha] = Complex64::new(1.0, 0.0);
        ZCandidate { z }
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    fn draw<R: Rng>(rng: &mut R, len: usize, mode: ZMode) -> Self {
        loop {
            let z: Vec<Complex64> = (0..len)
                .map(|_| match mode {
                    ZMode::Complex => {
                        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                    }
                    ZMode::RealNonnegative => {
                        Complex64::new(rng.sample::<f64, _>(StandardNormal).abs(), 0.0)
                    }
                })
                .collect();
            if let Some(c) = ZCandidate::new(z) {
                return c;
            }
        }
    }
}

/// Search parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub samples: usize,
    pub seed: u64,
    pub z_mode: ZMode,
    pub refine_iters: usize,
    pub operator_variant: OperatorVariant,
    pub rank_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            z_mode: ZMode::Complex,
            refine_iters: DEFAULT_REFINE_ITERS,
            operator_variant: OperatorVariant::Full9,
            rank_tol: DEFAULT_RANK_TOL,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::InvalidParams("samples must be at least 1".into()));
        }
        if !self.rank_tol.is_finite() || self.rank_tol < 0.0 {
            return Err(Error::InvalidParams(format!(
                "rank_tol = {} must be a nonnegative number",
                self.rank_tol
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixedVerdict {
    EntangledCertified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    /// `max(0, best_score)`
    pub certificate: f64,
    /// Best `σ₁ − Σ_{i>1} σᵢ` found, after refinement.
    pub best_score: f64,
    pub best_z: ZCandidate,
    /// Candidates scored before refinement: fixed ones plus random samples.
    pub samples_evaluated: usize,
    /// Best score before refinement.
    pub sampled_score: f64,
    /// `best_score − sampled_score`, never negative.
    pub refinement_gain: f64,
    pub rank: usize,
}

impl SearchResult {
    pub fn verdict(&self, verdict_tol: f64) -> MixedVerdict {
        if self.certificate > verdict_tol {
            MixedVerdict::EntangledCertified
        } else {
            MixedVerdict::Inconclusive
        }
    }
}

/// `σ₁ − Σ_{i>1} σᵢ` of `Σ_α z_α A^α`.
///
/// Values within rounding error of the summed matrices are returned as
/// exactly 0, so a balanced spectrum never yields a spurious certificate.
pub fn score(z: &ZCandidate, a: &AMatrixSet) -> Result<f64> {
    let t = a.combine(z.as_slice())?;
    let s = singular_values(&t)?.leading_minus_rest();
    Ok(if s.abs() <= a.noise_floor(z.as_slice()) {
        0.0
    } else {
        s
    })
}

/// Closed-form maximizer for a rank-1 set: `z = conj(c)/‖c‖`, `e₁` if `c = 0`.
pub fn optimal_z_rank1(a: &AMatrixSet) -> Result<ZCandidate> {
    if a.rank != 1 {
        return Err(Error::WrongRank { rank: a.rank });
    }
    let z = a.matrices.iter().map(|m| m[(0, 0)].conj()).collect();
    Ok(ZCandidate::new(z).unwrap_or_else(|| ZCandidate::basis(a.count(), 0)))
}

#[derive(Clone)]
struct Best {
    score: f64,
    index: usize,
    z: ZCandidate,
}

impl Best {
    /// Higher score wins; ties go to the earlier candidate.
    fn merge(self, other: Best) -> Best {
        if other.score > self.score || (other.score == self.score && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

fn sample_batch(
    a: &AMatrixSet,
    cfg: &SearchConfig,
    batch: usize,
    offset: usize,
) -> Result<Option<Best>> {
    let start = batch * BATCH;
    let end = cfg.samples.min(start + BATCH);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(batch as u64);
    let mut best: Option<Best> = None;
    for i in start..end {
        let z = ZCandidate::draw(&mut rng, a.count(), cfg.z_mode);
        let s = score(&z, a)?;
        if best.as_ref().is_none_or(|b| s > b.score) {
            best = Some(Best {
                score: s,
                index: offset + i,
                z,
            });
        }
    }
    Ok(best)
}

/// Maximizes the score over basis vectors, the rank-1 closed form when it
/// applies, and `cfg.samples` random vectors, then refines the winner.
///
/// The result is bit-identical for a fixed configuration whatever the size
/// of the rayon thread pool.
pub fn random_search(a: &AMatrixSet, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let len = a.count();

    let mut fixed: Vec<ZCandidate> = (0..len)
        .map(|alpha| ZCandidate::basis(len, alpha))
        .collect();
    if a.rank() == 1 {
        fixed.push(optimal_z_rank1(a)?);
    }
    let offset = fixed.len();

    let mut best: Option<Best> = None;
    for (index, z) in fixed.into_iter().enumerate() {
        let s = score(&z, a)?;
        let cand = Best { score: s, index, z };
        best = Some(match best {
            Some(b) => b.merge(cand),
            None => cand,
        });
    }

    let batches = cfg.samples.div_ceil(BATCH);
    let per_batch: Vec<Option<Best>> = (0..batches)
        .into_par_iter()
        .map(|b| sample_batch(a, cfg, b, offset))
        .collect::<Result<_>>()?;
    for cand in per_batch.into_iter().flatten() {
        best = Some(match best {
            Some(b) => b.merge(cand),
            None => cand,
        });
    }
    let best = best.expect("at least one candidate");

    let refined = refine_from(
        &best.z,
        best.score,
        a,
        cfg.refine_iters,
        cfg.seed,
        cfg.z_mode,
    )?;
    let best_score = refined.1;
    Ok(SearchResult {
        certificate: best_score.max(0.0),
        best_score,
        best_z: refined.0,
        samples_evaluated: offset + cfg.samples,
        sampled_score: best.score,
        refinement_gain: best_score - best.score,
        rank: a.rank(),
    })
}

/// Local ascent on the unit sphere: a (1+1) evolution strategy with a
/// success-adapted step. Only strict improvements are accepted, so the
/// returned score is never below that of `z0`.
pub fn refine(
    z0: &ZCandidate,
    a: &AMatrixSet,
    iters: usize,
    seed: u64,
    mode: ZMode,
) -> Result<ZCandidate> {
    let s0 = score(z0, a)?;
    Ok(refine_from(z0, s0, a, iters, seed, mode)?.0)
}

fn refine_from(
    z0: &ZCandidate,
    s0: f64,
    a: &AMatrixSet,
    iters: usize,
    seed: u64,
    mode: ZMode,
) -> Result<(ZCandidate, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(REFINE_STREAM);
    let mut z = z0.clone();
    let mut s = s0;
    let mut step = REFINE_INITIAL_STEP;
    for _ in 0..iters {
        let proposal: Vec<Complex64> = z
            .as_slice()
            .iter()
            .map(|&x| match mode {
                ZMode::Complex => {
                    x + step
                        * Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                }
                ZMode::RealNonnegative => Complex64::new(
                    (x.re + step * rng.sample::<f64, _>(StandardNormal)).abs(),
                    0.0,
                ),
            })
            .collect();
        let Some(cand) = ZCandidate::new(proposal) else {
            step = (step * 0.85).max(REFINE_MIN_STEP);
            continue;
        };
        let sc = score(&cand, a)?;
        if sc > s {
            z = cand;
            s = sc;
            step = (step * 1.5).min(1.0);
        } else {
            step = (step * 0.9).max(REFINE_MIN_STEP);
        }
    }
    Ok((z, s))
}

/// Builds the `A^α` for `ρ` and runs [`random_search`].
pub fn c_mixed(rho: &DensityMatrix, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let ops = build_s_operators(cfg.operator_variant);
    let a = build_a_matrices(rho, &ops, cfg.rank_tol)?;
    random_search(&a, cfg)
}
