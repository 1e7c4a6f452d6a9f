//! Directional Gaussian quantum correlations of two-mode squeezed thermal
//! states.
//!
//! States are described by their 4×4 covariance matrix in the standard form
//!
//! ```text
//!     | n   0   c1  0  |
//!     | 0   n   0   c2 |
//!     | c1  0   m   0  |
//!     | 0   c2  0   m  |
//! ```
//!
//! over the quadratures `(X_A, P_A, X_B, P_B)`.
//!
//! **Normalization:** the vacuum variance is 1, so `ΔX ΔP ≥ 1` and a
//! physical state has `n, m ≥ 1`. Literature using the `1/2` (or `2`)
//! vacuum convention must be rescaled before feeding values in.
//!
//! The crate computes:
//!
//! * symplectic invariants and eigenvalues ([`gaussian`]),
//! * PPT, EPR-variance, Duan, steering and discord measures ([`measures`]),
//! * Venn-class membership and the unified steering signature ([`classify`]),
//! * closed-form squeezing thresholds with a bisection cross-check
//!   ([`thresholds`]),
//! * parameter-grid scans with contour extraction ([`scan`]),
//! * teleportation fidelity and direction diagnostics ([`teleport`]).

pub mod classify;
pub mod cli;
pub mod error;
pub mod format;
pub mod gaussian;
pub mod measures;
pub mod scan;
pub mod teleport;
pub mod thresholds;

pub use classify::{classify, unified_signature, ClassFlags, ClassLabel, Signature, Verdict};
pub use error::{Error, Result};
pub use gaussian::{
    is_physical, sts_covariance, symplectic_spectrum, CovarianceMatrix, StsParams,
    SymplecticSpectrum,
};
pub use measures::{CorrelationReport, Direction};
pub use thresholds::{bisection_threshold, closed_form_thresholds, Criterion, ThresholdSet};

/// Width of the indeterminate band around every classification threshold.
pub const BOUNDARY_BAND: f64 = 1e-9;
