//! Small dense complex linear algebra.
//!
//! Everything here works on matrices of dimension at most 8, so both
//! decompositions are cyclic Jacobi methods: simple, accurate to a few ulps
//! of the largest singular value or eigenvalue, and deterministic for a given
//! input (fixed sweep order, no randomized pivoting).

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from a row-major vector. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        CMatrix { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Outer product `u v^T` (no conjugation).
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: Complex64, other: &CMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
        a[(r / b.rows, c / b.cols)] * b[(r % b.rows, c % b.cols)]
    })
}

/// Singular values sorted in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
}

impl SingularSpectrum {
    /// `σ₁ − Σ_{i>1} σᵢ`
    pub fn leading_minus_rest(&self) -> f64 {
        match self.values.split_first() {
            Some((first, rest)) => first - rest.iter().sum::<f64>(),
            None => 0.0,
        }
    }
}

fn sweep_budget(n: usize) -> usize {
    100 * n.max(1) * n.max(1)
}

/// Unitary 2×2 Jacobi rotation that diagonalizes the Hermitian block
/// `[[app, apq], [conj(apq), aqq]]` under `J† · block · J`.
///
/// Returned as `(jpp, jpq, jqp, jqq)`.
#[inline]
fn jacobi_rotation(
    app: f64,
    aqq: f64,
    apq: Complex64,
) -> (Complex64, Complex64, Complex64, Complex64) {
    let mag = apq.norm();
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
    (
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        -phase.conj() * s,
        phase.conj() * c,
    )
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
///
/// The input is symmetrized as `(m + m†)/2` first. Returns eigenvalues in
/// descending order and the unitary whose columns are the matching
/// eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.rows;
    let mut a = CMatrix::from_fn(n, n, |r, c| 0.5 * (m[(r, c)] + m[(c, r)].conj()));
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm_sqr().sqrt();

    let budget = sweep_budget(n);
    let mut converged = scale == 0.0 || n < 2;
    let mut sweeps = 0;
    while !converged {
        if sweeps == budget {
            return Err(Error::ConvergenceFailure {
                routine: "hermitian_eigen",
                budget,
            });
        }
        sweeps += 1;

        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if !off.is_finite() {
            return Err(Error::NonFinite);
        }
        if off.sqrt() <= f64::EPSILON * 1e-2 * scale {
            break;
        }

        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Skip rotations that cannot change the diagonal in floating point.
                if apq.norm()
                    <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()).max(f64::MIN_POSITIVE)
                {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                rotated = true;
                let (jpp, jpq, jqp, jqq) = jacobi_rotation(app, aqq, apq);
                // a <- a J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                // a <- J† a
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                // v <- v J
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
        converged = !rotated;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

/// Singular values of a dense complex matrix by one-sided (Hestenes) Jacobi.
///
/// Works on whichever of `m` and `m†` has at least as many rows as columns,
/// orthogonalizing columns until every pair is orthogonal to working
/// precision. The column norms are then the singular values.
pub fn singular_values(m: &CMatrix) -> Result<SingularSpectrum> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    // Column-major working copy, one Vec per column.
    let (rows, cols, mut g) = if m.rows >= m.cols {
        let g: Vec<Vec<Complex64>> = (0..m.cols)
            .map(|c| (0..m.rows).map(|r| m[(r, c)]).collect())
            .collect();
        (m.rows, m.cols, g)
    } else {
        let g: Vec<Vec<Complex64>> = (0..m.rows)
            .map(|r| m.row(r).iter().map(|z| z.conj()).collect())
            .collect();
        (m.cols, m.rows, g)
    };
    let mut norms: Vec<f64> = g
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let tol = rows as f64 * f64::EPSILON;
    // Columns below this squared norm are numerically zero relative to `m`.
    let negligible = (f64::EPSILON * f64::EPSILON) * norms.iter().sum::<f64>();

    let budget = sweep_budget(cols);
    let mut sweeps = 0;
    loop {
        if sweeps == budget {
            return Err(Error::ConvergenceFailure {
                routine: "singular_values",
                budget,
            });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = norms[p];
                let beta = norms[q];
                let gamma: Complex64 = g[p].iter().zip(&g[q]).map(|(x, y)| x.conj() * y).sum();
                let gmag = gamma.norm();
                if !gmag.is_finite() {
                    return Err(Error::NonFinite);
                }
                if alpha.min(beta) <= negligible || gmag <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (jpp, jpq, jqp, jqq) = jacobi_rotation(alpha, beta, gamma);
                let (lo, hi) = g.split_at_mut(q);
                let (cp, cq) = (&mut lo[p], &mut hi[0]);
                for k in 0..rows {
                    let x = cp[k];
                    let y = cq[k];
                    cp[k] = x * jpp + y * jqp;
                    cq[k] = x * jpq + y * jqq;
                }
                norms[p] = cp.iter().map(|z| z.norm_sqr()).sum();
                norms[q] = cq.iter().map(|z| z.norm_sqr()).sum();
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<f64> = norms.iter().map(|s| s.sqrt()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(SingularSpectrum { values })
}
