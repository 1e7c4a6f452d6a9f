//! Two-mode Gaussian covariance matrices and their symplectic spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance of the `c2 = -c1` test.
pub const STS_FORM_TOL: f64 = 1e-12;
/// Negative discriminants down to `-DISCRIMINANT_TOL` are clamped to zero.
pub const DISCRIMINANT_TOL: f64 = 1e-9;
/// Slack allowed on `d_- >= 1`, scaled by `max(1, n m)`.
pub const PHYSICAL_TOL: f64 = 1e-12;

/// Standard-form covariance matrix of a two-mode Gaussian state.
///
/// Vacuum variance is normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceMatrix {
    /// Variance of mode A (both quadratures).
    pub n: f64,
    /// Variance of mode B (both quadratures).
    pub m: f64,
    /// `<X_A X_B>` correlation.
    pub c1: f64,
    /// `<P_A P_B>` correlation.
    pub c2: f64,
}

impl CovarianceMatrix {
    pub fn new(n: f64, m: f64, c1: f64, c2: f64) -> Result<Self> {
        for (name, v) in [("n", n), ("m", m), ("c1", c1), ("c2", c2)] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} = {v} is not finite")));
            }
        }
        Ok(Self { n, m, c1, c2 })
    }

    /// Squeezed-thermal form with `c1 = c`, `c2 = -c`.
    pub fn sts(n: f64, m: f64, c: f64) -> Result<Self> {
        Self::new(n, m, c, -c)
    }

    pub fn vacuum() -> Self {
        Self {
            n: 1.0,
            m: 1.0,
            c1: 0.0,
            c2: 0.0,
        }
    }

    pub fn is_sts_form(&self) -> bool {
        let scale = self.c1.abs().max(self.c2.abs());
        (self.c1 + self.c2).abs() <= STS_FORM_TOL * scale
    }

    /// The single correlation `c = c1` of an STS-form matrix.
    pub fn sts_correlation(&self) -> Result<f64> {
        if self.is_sts_form() {
            Ok(self.c1)
        } else {
            Err(Error::NotStsForm {
                c1: self.c1,
                c2: self.c2,
            })
        }
    }

    /// The same state with modes A and B exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            n: self.m,
            m: self.n,
            ..*self
        }
    }

    /// Dense 4×4 matrix over `(X_A, P_A, X_B, P_B)`.
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let Self { n, m, c1, c2 } = *self;
        [
            [n, 0.0, c1, 0.0],
            [0.0, n, 0.0, c2],
            [c1, 0.0, m, 0.0],
            [0.0, c2, 0.0, m],
        ]
    }

    pub fn spectrum(&self) -> Result<SymplecticSpectrum> {
        symplectic_spectrum(self)
    }

    pub fn is_physical(&self) -> bool {
        is_physical(self)
    }
}

/// Squeezing and thermal occupations of a two-mode squeezed thermal state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StsParams {
    pub r: f64,
    pub n_a: f64,
    pub n_b: f64,
}

impl StsParams {
    pub fn new(r: f64, n_a: f64, n_b: f64) -> Result<Self> {
        let p = Self { r, n_a, n_b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("r", self.r), ("nA", self.n_a), ("nB", self.n_b)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "{name} = {v} must be finite and non-negative"
                )));
            }
        }
        Ok(())
    }

    /// Parameters with the thermal noises exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            r: self.r,
            n_a: self.n_b,
            n_b: self.n_a,
        }
    }

    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        sts_covariance(self)
    }
}

/// Covariance matrix of the squeezed thermal state.
///
/// `n = (2nA+1)cosh²r + (2nB+1)sinh²r`, `m` mirrored, `c1 = -c2 = (nA+nB+1)sinh 2r`.
/// The `m` expression is the exact mirror of `n`, so exchanging the noises
/// exchanges `n` and `m` bit for bit.
pub fn sts_covariance(p: &StsParams) -> Result<CovarianceMatrix> {
    p.validate()?;
    let ch2 = p.r.cosh().powi(2);
    let sh2 = p.r.sinh().powi(2);
    let a = 2.0 * p.n_a + 1.0;
    let b = 2.0 * p.n_b + 1.0;
    let n = a * ch2 + b * sh2;
    let m = b * ch2 + a * sh2;
    let c = (p.n_a + p.n_b + 1.0) * (2.0 * p.r).sinh();
    CovarianceMatrix::sts(n, m, c)
}

/// Symplectic invariants and eigenvalues of a covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    /// `det C`.
    pub i4: f64,
    /// `I1 + I2 + 2 I3`.
    pub delta: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    /// Smallest symplectic eigenvalue of the partial transpose (`I3 -> -I3`).
    pub d_minus_pt: f64,
}

/// Computes the invariants and `d±`, `d̃-`.
///
/// The discriminant is evaluated in the factored form
/// `(n²-m²)² + 4(n c1 + m c2)(m c1 + n c2)`, which equals `Δ² - 4 det C`
/// but vanishes exactly for symmetric pure states; STS-form matrices use
/// a further factorization. The minus branch is taken as
/// `sqrt(det C) / d+` to avoid cancellation.
pub fn symplectic_spectrum(cm: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let CovarianceMatrix { n, m, c1, c2 } = *cm;
    if ![n, m, c1, c2].iter().all(|v| v.is_finite()) {
        return Err(Error::Domain(
            "covariance matrix entries must be finite".into(),
        ));
    }
    let i1 = n * n;
    let i2 = m * m;
    let i3 = c1 * c2;
    let block1 = n * m - c1 * c1;
    let block2 = n * m - c2 * c2;
    let i4 = block1 * block2;
    let delta = i1 + i2 + 2.0 * i3;

    let diff = i1 - i2;
    let (d_plus, d_minus) = if c2 == -c1 {
        sts_pair(n, m, c1.abs(), i4)?
    } else {
        let disc = diff * diff + 4.0 * (n * c1 + m * c2) * (m * c1 + n * c2);
        branch_pair(delta, clamp_discriminant(disc)?, i4)
    };

    let delta_pt = i1 + i2 - 2.0 * i3;
    let disc_pt = diff * diff + 4.0 * (n * c1 - m * c2) * (m * c1 - n * c2);
    let disc_pt = clamp_discriminant(disc_pt)?;
    let (_, d_minus_pt) = branch_pair(delta_pt, disc_pt, i4);

    Ok(SymplecticSpectrum {
        i1,
        i2,
        i3,
        i4,
        delta,
        d_plus,
        d_minus,
        d_minus_pt,
    })
}

fn clamp_discriminant(disc: f64) -> Result<f64> {
    if disc < -DISCRIMINANT_TOL {
        Err(Error::InconsistentSpectrum(disc))
    } else {
        Ok(disc.max(0.0))
    }
}

/// STS form: the discriminant is `(n-m)² (n+m-2c)(n+m+2c)` and
/// `d+ = (sqrt((n+m)² - 4c²) + |n-m|) / 2`, free of the quartic
/// cancellation of the general route at large squeezing.
fn sts_pair(n: f64, m: f64, c: f64, det: f64) -> Result<(f64, f64)> {
    let q = (n + m - 2.0 * c) * (n + m + 2.0 * c);
    let spread = (n - m).abs();
    let q = if q < 0.0 {
        clamp_discriminant(spread * spread * q)?;
        0.0
    } else {
        q
    };
    let plus = 0.5 * (q.sqrt() + spread);
    if plus <= 0.0 {
        return Ok((0.0, 0.0));
    }
    Ok((plus, det.max(0.0).sqrt() / plus))
}

fn branch_pair(delta: f64, disc: f64, det: f64) -> (f64, f64) {
    let plus_sq = 0.5 * (delta + disc.sqrt());
    if plus_sq <= 0.0 {
        return (0.0, 0.0);
    }
    let minus_sq = (det / plus_sq).max(0.0);
    (plus_sq.sqrt(), minus_sq.sqrt())
}

/// True iff the 4×4 matrix is positive definite and `d- >= 1`.
///
/// The `d- >= 1` test allows `PHYSICAL_TOL * max(1, n m)` of slack: the
/// entries of a strongly squeezed state carry rounding of order
/// `eps * n m`, which propagates one-to-one into `d-`.
pub fn is_physical(cm: &CovarianceMatrix) -> bool {
    let CovarianceMatrix { n, m, c1, c2 } = *cm;
    if ![n, m, c1, c2].iter().all(|v| v.is_finite()) {
        return false;
    }
    // Leading principal minors of the block matrix, per quadrature pair.
    if !(n > 0.0 && m > 0.0 && n * m - c1 * c1 > 0.0 && n * m - c2 * c2 > 0.0) {
        return false;
    }
    match symplectic_spectrum(cm) {
        Ok(s) => s.d_minus >= 1.0 - PHYSICAL_TOL * (n * m).max(1.0),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_from_zero_params() {
        let cm = sts_covariance(&StsParams::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(
            cm,
            CovarianceMatrix {
                n: 1.0,
                m: 1.0,
                c1: 0.0,
                c2: -0.0
            }
        );
        let s = cm.spectrum().unwrap();
        assert_eq!((s.d_plus, s.d_minus, s.d_minus_pt), (1.0, 1.0, 1.0));
        assert!(cm.is_physical());
    }

    #[test]
    fn pure_tmsv_entries_and_spectrum() {
        let cm = sts_covariance(&StsParams::new(0.6, 0.0, 0.0).unwrap()).unwrap();
        assert!((cm.n - 1.2f64.cosh()).abs() < 1e-14);
        assert!((cm.m - 1.2f64.cosh()).abs() < 1e-14);
        assert!((cm.c1 - 1.2f64.sinh()).abs() < 1e-14);
        let s = cm.spectrum().unwrap();
        assert!((s.delta - 2.0).abs() < 1e-13);
        assert!((s.i4 - 1.0).abs() < 1e-13);
        assert!((s.d_plus - 1.0).abs() < 1e-13);
        assert!((s.d_minus - 1.0).abs() < 1e-13);
        assert!(s.d_minus_pt < 1.0);
    }

    #[test]
    fn asymmetric_noise_entries() {
        // mpmath, 40 digits: scripts/reference_values.py
        let cm = sts_covariance(&StsParams::new(0.6, 0.0, 1.0).unwrap()).unwrap();
        assert!((cm.n - 2.621_311_134_648_75).abs() < 1e-12);
        assert!((cm.m - 4.621_311_134_648_75).abs() < 1e-12);
        assert!((cm.c1 - 3.018_922_710_824_345).abs() < 1e-12);
        let s = cm.spectrum().unwrap();
        assert!(s.d_minus >= 1.0 - 1e-12);
        assert!(s.d_minus_pt < 1.0);
        // d± of an STS are 2nA+1 and 2nB+1
        assert!((s.d_plus - 3.0).abs() < 1e-12);
        assert!((s.d_minus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(StsParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(StsParams::new(0.1, -1.0, 0.0).is_err());
        assert!(StsParams::new(f64::NAN, 0.0, 0.0).is_err());
        let bad = StsParams {
            r: 0.2,
            n_a: 0.0,
            n_b: f64::INFINITY,
        };
        assert!(matches!(sts_covariance(&bad), Err(Error::Domain(_))));
        assert!(CovarianceMatrix::new(1.0, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn vacuum_diagonals_cannot_carry_correlation() {
        let cm = CovarianceMatrix::sts(1.0, 1.0, 0.5).unwrap();
        let s = cm.spectrum().unwrap();
        assert!((s.d_minus - 0.75f64.sqrt()).abs() < 1e-12);
        assert!(!cm.is_physical());
    }

    #[test]
    fn not_positive_definite_is_unphysical() {
        let cm = CovarianceMatrix::sts(1.0, 1.0, 2.0).unwrap();
        assert!(!cm.is_physical());
        let cm = CovarianceMatrix::new(-1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(!cm.is_physical());
    }

    #[test]
    fn inconsistent_discriminant_is_an_error() {
        // |c| far above (n + m) / 2 with n ≠ m: (n-m)²((n+m)² - 4c²) ≈ -1
        let cm = CovarianceMatrix::sts(1.0, 1.05, 10.0).unwrap();
        assert!(matches!(cm.spectrum(), Err(Error::InconsistentSpectrum(_))));
        assert!(!cm.is_physical());
        // with n = m the same correlation leaves the discriminant at zero
        let cm = CovarianceMatrix::sts(1.0, 1.0, 10.0).unwrap();
        assert!(cm.spectrum().is_ok());
    }

    #[test]
    fn sts_form_predicate() {
        assert!(CovarianceMatrix::vacuum().is_sts_form());
        assert!(CovarianceMatrix::sts(2.0, 3.0, 1.5).unwrap().is_sts_form());
        let near = CovarianceMatrix::new(2.0, 3.0, 1.5, -1.5 * (1.0 + 1e-13)).unwrap();
        assert!(near.is_sts_form());
        let off = CovarianceMatrix::new(2.0, 3.0, 1.5, -1.4).unwrap();
        assert!(!off.is_sts_form());
        assert!(matches!(
            off.sts_correlation(),
            Err(Error::NotStsForm { .. })
        ));
    }

    #[test]
    fn exchange_of_noises_swaps_variances_exactly() {
        let p = StsParams::new(0.83, 0.37, 2.9).unwrap();
        let a = p.covariance().unwrap();
        let b = p.swapped().covariance().unwrap();
        assert_eq!(a.n, b.m);
        assert_eq!(a.m, b.n);
        assert_eq!(a.c1, b.c1);
        assert_eq!(a.swapped(), b);
    }
}
