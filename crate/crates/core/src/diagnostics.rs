//! Independent cross-checks: partial transposes and the two-qubit concurrence.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::states::{DensityMatrix, DIM, TOL_NORM, TOL_PSD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::A, Subsystem::B, Subsystem::C];

    /// Bit of the flat basis index carrying this qubit.
    fn mask(self) -> usize {
        match self {
            Subsystem::A => 0b100,
            Subsystem::B => 0b010,
            Subsystem::C => 0b001,
        }
    }

    pub fn bipartition(self) -> &'static str {
        match self {
            Subsystem::A => "A|BC",
            Subsystem::B => "B|AC",
            Subsystem::C => "C|AB",
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.bipartition())
    }
}

/// Transposes the indices of one qubit: the qubit's row and column bits swap.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: Subsystem) -> CMatrix {
    partial_transpose_matrix(rho.matrix(), subsystem)
}

/// [`partial_transpose`] on an arbitrary 8×8 matrix.
pub fn partial_transpose_matrix(m: &CMatrix, subsystem: Subsystem) -> CMatrix {
    assert_eq!(
        (m.rows(), m.cols()),
        (DIM, DIM),
        "three-qubit operator expected"
    );
    let mask = subsystem.mask();
    CMatrix::from_fn(DIM, DIM, |r, c| {
        let r_src = (r & !mask) | (c & mask);
        let c_src = (c & !mask) | (r & mask);
        m[(r_src, c_src)]
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PptEntry {
    pub subsystem: Subsystem,
    pub min_eigenvalue: f64,
    pub ppt: bool,
}

/// Smallest partial-transpose eigenvalue for each one-vs-two cut.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PptReport {
    pub entries: [PptEntry; 3],
}

impl PptReport {
    pub fn all_ppt(&self) -> bool {
        self.entries.iter().all(|e| e.ppt)
    }

    pub fn get(&self, subsystem: Subsystem) -> &PptEntry {
        &self.entries[subsystem as usize]
    }
}

pub fn ppt_report(rho: &DensityMatrix) -> Result<PptReport> {
    let mut entries = [PptEntry {
        subsystem: Subsystem::A,
        min_eigenvalue: 0.0,
        ppt: true,
    }; 3];
    for (slot, sub) in entries.iter_mut().zip(Subsystem::ALL) {
        let (values, _) = hermitian_eigen(&partial_transpose(rho, sub))?;
        let min = values[DIM - 1];
        *slot = PptEntry {
            subsystem: sub,
            min_eigenvalue: min,
            ppt: min >= -TOL_PSD,
        };
    }
    Ok(PptReport { entries })
}

/// `2|a₀₀a₁₁ − a₀₁a₁₀|` for a normalized two-qubit state `(a₀₀, a₀₁, a₁₀, a₁₁)`.
pub fn wootters_concurrence_pure(phi: &[Complex64; 4]) -> Result<f64> {
    if phi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > TOL_NORM {
        return Err(Error::NotNormalized { norm });
    }
    Ok(2.0 * (phi[0] * phi[3] - phi[1] * phi[2]).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{ghz, random_density, random_separable_mixed, shifts_complement};
    use crate::states::density_from_pure;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn diagonal_state_is_unchanged() {
        let rho = random_separable_mixed(4, 1).unwrap();
        let diag = crate::states::validate_density(&CMatrix::from_fn(DIM, DIM, |r, col| {
            if r == col {
                rho.get(r, r)
            } else {
                c(0.0)
            }
        }))
        .unwrap();
        for sub in Subsystem::ALL {
            assert_eq!(&partial_transpose(&diag, sub), diag.matrix());
        }
    }

    #[test]
    fn ghz_fails_every_cut() {
        let rho = density_from_pure(&ghz());
        let report = ppt_report(&rho).unwrap();
        for e in report.entries {
            assert!((e.min_eigenvalue + 0.5).abs() < 1e-14, "{e:?}");
            assert!(!e.ppt);
        }
    }

    #[test]
    fn shifts_complement_is_ppt() {
        let report = ppt_report(&shifts_complement()).unwrap();
        assert!(report.all_ppt(), "{report:?}");
    }

    #[test]
    fn involution_and_trace() {
        for seed in 0..10 {
            let rho = random_density(seed);
            for sub in Subsystem::ALL {
                let pt = partial_transpose(&rho, sub);
                assert!((pt.trace() - c(1.0)).norm() < 1e-14);
                assert_eq!(pt, pt.adjoint());
                assert_eq!(&partial_transpose_matrix(&pt, sub), rho.matrix());
            }
        }
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(
            wootters_concurrence_pure(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap(),
            0.0
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = wootters_concurrence_pure(&[c(h), c(0.0), c(0.0), c(h)]).unwrap();
        assert!((bell - 1.0).abs() < 1e-15);
        assert_eq!(wootters_concurrence_pure(&[c(0.5); 4]).unwrap(), 0.0);
        assert!(matches!(
            wootters_concurrence_pure(&[c(1.0); 4]),
            Err(Error::NotNormalized { .. })
        ));
    }
}
