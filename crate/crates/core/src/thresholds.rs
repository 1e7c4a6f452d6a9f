//! Squeezing thresholds of each correlation class of an STS state.
//!
//! Closed forms (with `S = nA + nB + 1`):
//!
//! | class              | threshold                                  |
//! |--------------------|--------------------------------------------|
//! | PPT entanglement   | `cosh² r = (nA+1)(nB+1) / S`               |
//! | steering A\|B      | `cosh² r = (2nA+1)(nB+1) / S`              |
//! | steering B\|A      | `cosh² r = (nA+1)(2nB+1) / S`              |
//! | Duan (`Δ_ent < 1`) | `r = ln √S`                                 |
//! | secure (`< 0.5`)   | `r = ln √(2S)`                              |
//!
//! The `cosh²` thresholds are evaluated as `asinh √(cosh² r - 1)` with the
//! numerator simplified (`nA nB`, `nA (2nB+1)`, `nB (2nA+1)`), which is
//! exactly zero when the state is correlated for every `r > 0`.
//! [`bisection_threshold`] locates the same roots directly from the
//! measures, as an independent check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::StsParams;
use crate::measures::{self, Direction};

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_TOL: f64 = 1e-10;
pub const DEFAULT_R_MAX: f64 = 10.0;
/// Samples used to verify monotonicity before bisecting.
pub const MONOTONE_SAMPLES: usize = 64;
/// Relative slack of the monotonicity check, scaled by `max(1, |margin|, nm)`.
pub const MONOTONE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet {
    pub r_ent: f64,
    pub r_steer_ab: f64,
    pub r_steer_ba: f64,
    pub r_qt_duan: f64,
    pub r_st_duan: f64,
}

impl ThresholdSet {
    pub fn get(&self, criterion: Criterion) -> f64 {
        match criterion {
            Criterion::EntPpt => self.r_ent,
            Criterion::SteerAb => self.r_steer_ab,
            Criterion::SteerBa => self.r_steer_ba,
            Criterion::DuanQt => self.r_qt_duan,
            Criterion::DuanSt => self.r_st_duan,
        }
    }
}

fn check_noise(n_a: f64, n_b: f64) -> Result<()> {
    for (name, v) in [("nA", n_a), ("nB", n_b)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain(format!(
                "{name} = {v} must be finite and non-negative"
            )));
        }
    }
    Ok(())
}

pub fn closed_form_thresholds(n_a: f64, n_b: f64) -> Result<ThresholdSet> {
    check_noise(n_a, n_b)?;
    let s = n_a + n_b + 1.0;
    let from_sinh2 = |num: f64| (num / s).sqrt().asinh();
    Ok(ThresholdSet {
        r_ent: from_sinh2(n_a * n_b),
        r_steer_ab: from_sinh2(n_a * (2.0 * n_b + 1.0)),
        r_steer_ba: from_sinh2(n_b * (2.0 * n_a + 1.0)),
        r_qt_duan: 0.5 * s.ln(),
        r_st_duan: 0.5 * (2.0 * s).ln(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Criterion {
    EntPpt,
    SteerAb,
    SteerBa,
    DuanQt,
    DuanSt,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::EntPpt,
        Criterion::SteerAb,
        Criterion::SteerBa,
        Criterion::DuanQt,
        Criterion::DuanSt,
    ];

    /// Signed distance from the class boundary at squeezing `r`; negative
    /// means the criterion is satisfied.
    pub fn margin(self, n_a: f64, n_b: f64, r: f64) -> Result<f64> {
        let cm = StsParams::new(r, n_a, n_b)?.covariance()?;
        Ok(match self {
            Criterion::EntPpt => measures::ent_ppt(&cm)?,
            Criterion::SteerAb => measures::steering(&cm, Direction::AB, None)?.value - 1.0,
            Criterion::SteerBa => measures::steering(&cm, Direction::BA, None)?.value - 1.0,
            Criterion::DuanQt => measures::duan(&cm)? - 1.0,
            Criterion::DuanSt => measures::duan(&cm)? - 0.5,
        })
    }
}

/// Root of the criterion boundary in `r ∈ [0, r_max]` by bisection.
///
/// Returns `Some(0.0)` when the criterion already holds at `r = 0`
/// (margin `<= 0`; every margin vanishes or is positive there), `None`
/// when it still fails at `r_max`. The margin must be non-increasing, up
/// to [`MONOTONE_TOL`], on [`MONOTONE_SAMPLES`] equispaced points,
/// otherwise [`Error::NonMonotone`].
pub fn bisection_threshold(
    n_a: f64,
    n_b: f64,
    criterion: Criterion,
    r_max: f64,
) -> Result<Option<f64>> {
    check_noise(n_a, n_b)?;
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::Domain(format!("r_max = {r_max} must be positive")));
    }
    let h = |r: f64| criterion.margin(n_a, n_b, r);

    let at_zero = h(0.0)?;
    let mut prev = at_zero;
    for k in 1..MONOTONE_SAMPLES {
        let r = r_max * k as f64 / (MONOTONE_SAMPLES - 1) as f64;
        let cur = h(r)?;
        // rounding of the entries alone moves every margin by ~eps·nm
        let cm = StsParams::new(r, n_a, n_b)?.covariance()?;
        let slack = MONOTONE_TOL * prev.abs().max(cm.n * cm.m).max(1.0);
        if cur > prev + slack {
            return Err(Error::NonMonotone { r });
        }
        prev = cur;
    }

    if at_zero <= 0.0 {
        return Ok(Some(0.0));
    }
    if h(r_max)? >= 0.0 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, r_max);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if h(mid)? < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}
