//! Full-separability criteria for three-qubit states.
//!
//! Pure states are decided exactly from the vector of 2×2 minors of their
//! coefficient cube ([`pure`]). Mixed states get a one-sided certificate: a
//! positive value of [`mixed::c_mixed`] proves the state is not fully
//! separable, while zero is inconclusive.
//!
//! ```
//! use sep3q::{library, pure};
//!
//! let (verdict, c) = pure::is_fully_separable_pure(&library::ghz(), pure::DEFAULT_TOL_SEP);
//! assert_eq!(verdict, pure::Separability::Entangled);
//! assert!((c.norm - 3f64.sqrt()).abs() < 1e-12);
//! ```

pub mod diagnostics;
pub mod error;
pub mod library;
pub mod linalg;
pub mod mixed;
pub mod pure;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
