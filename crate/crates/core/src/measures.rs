//! Scalar correlation measures of an STS-form covariance matrix.
//!
//! All formulas are written in `(n, m, c)` with `c = c1 = -c2`. A
//! [`Direction`] picks which party is inferred: `AB` reads "A given B"
//! (Bob measures, Alice's mode is inferred), `BA` is the mirror. Every
//! directional measure is evaluated through [`Oriented`], so the `BA`
//! value of a state is computed by the very same arithmetic as the `AB`
//! value of its mirror image.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, SymplecticSpectrum};

/// Arguments of the entropy function within this distance below 1 are
/// treated as 1.
pub const ENTROPY_ARG_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// A|B: inference of A from measurements on B.
    #[serde(rename = "A|B")]
    AB,
    /// B|A: inference of B from measurements on A.
    #[serde(rename = "B|A")]
    BA,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::AB => Direction::BA,
            Direction::BA => Direction::AB,
        }
    }
}

/// `(own, other, c)` variances as seen from the inferred party.
#[derive(Debug, Clone, Copy)]
struct Oriented {
    own: f64,
    other: f64,
    c: f64,
}

impl Oriented {
    fn new(cm: &CovarianceMatrix, dir: Direction) -> Result<Self> {
        let c = cm.sts_correlation()?;
        Ok(match dir {
            Direction::AB => Self {
                own: cm.n,
                other: cm.m,
                c,
            },
            Direction::BA => Self {
                own: cm.m,
                other: cm.n,
                c,
            },
        })
    }
}

/// Simon PPT quantity `(nm - c²)² + 1 - (n² + m² + 2c²)`; negative iff entangled.
///
/// Evaluated as `(x + 1 - n - m)(x + 1 + n + m)` with `x = nm - c²`.
pub fn ent_ppt(cm: &CovarianceMatrix) -> Result<f64> {
    let c = cm.sts_correlation()?;
    let (n, m) = (cm.n, cm.m);
    let x = n * m - c * c;
    Ok((x + 1.0 - (n + m)) * (x + 1.0 + (n + m)))
}

/// Normalized EPR variance `Δ²(X_A - g X_B) / (1 + g²)` (mirrored for `BA`).
pub fn ent_gain(cm: &CovarianceMatrix, g: f64, dir: Direction) -> Result<f64> {
    if !g.is_finite() {
        return Err(Error::Domain(format!("gain g = {g} is not finite")));
    }
    let o = Oriented::new(cm, dir)?;
    Ok((o.own - 2.0 * g * o.c + g * g * o.other) / (1.0 + g * g))
}

/// The gain minimizing [`ent_gain`]: `(n - m + sqrt((n-m)² + 4c²)) / 2c`.
///
/// Evaluated in the rationalized form when `n < m` so that the two
/// directions stay exact reciprocals.
pub fn optimal_gain_sym(cm: &CovarianceMatrix, dir: Direction) -> Result<f64> {
    let o = Oriented::new(cm, dir)?;
    if o.c == 0.0 {
        return Err(Error::ProductState("g_sym"));
    }
    let d = o.own - o.other;
    let root = d.hypot(2.0 * o.c);
    Ok(if d >= 0.0 {
        (d + root) / (2.0 * o.c)
    } else {
        2.0 * o.c / (root - d)
    })
}

/// Duan parameter `(n + m - 2c) / 2`.
pub fn duan(cm: &CovarianceMatrix) -> Result<f64> {
    let c = cm.sts_correlation()?;
    Ok((cm.n + cm.m - 2.0 * c) / 2.0)
}

/// Steering parameter together with the gain it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Steering {
    pub value: f64,
    pub gain: f64,
}

/// Inferred-variance product `E(g) = n + g²m - 2gc` (mirrored for `BA`).
///
/// Without a gain the optimum `n - c²/m` at `g = c/m` is returned.
pub fn steering(cm: &CovarianceMatrix, dir: Direction, g: Option<f64>) -> Result<Steering> {
    let o = Oriented::new(cm, dir)?;
    if o.other.is_nan() || o.other <= 0.0 {
        return Err(Error::Domain(format!(
            "steering needs a positive conditioning variance, got {}",
            o.other
        )));
    }
    match g {
        Some(g) if !g.is_finite() => Err(Error::Domain(format!("gain g = {g} is not finite"))),
        Some(g) => Ok(Steering {
            value: o.own + g * g * o.other - 2.0 * g * o.c,
            gain: g,
        }),
        None => Ok(Steering {
            value: o.own - o.c * o.c / o.other,
            gain: o.c / o.other,
        }),
    }
}

/// `f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2)`, in nats.
///
/// With `v = (x-1)/2` this is `ln(v+1) + v ln(1 + 1/v)`, which has no
/// cancellation for large `x` and tends to 0 as `x → 1⁺`.
pub fn entropy_f(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 1.0 - ENTROPY_ARG_TOL {
        return Err(Error::Unphysical(format!(
            "entropy argument {x} is below the vacuum level"
        )));
    }
    let v = ((x - 1.0) / 2.0).max(0.0);
    if v == 0.0 {
        return Ok(0.0);
    }
    Ok(v.ln_1p() + v * v.recip().ln_1p())
}

/// Gaussian discord and its two conditional-entropy terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discord {
    /// `H - S`.
    pub value: f64,
    /// `f(d+) + f(d-) - f(m)` for `A|B`.
    pub s_cond: f64,
    /// `f(z)` with `z = (n + mn - c²)/(m + 1)` for `A|B`.
    pub h_cond: f64,
}

/// Gaussian discord `f(m) - f(d+) - f(d-) + f(z)`; `BA` exchanges `n ↔ m`.
pub fn discord(cm: &CovarianceMatrix, dir: Direction) -> Result<Discord> {
    let spectrum = cm.spectrum()?;
    discord_with_spectrum(cm, &spectrum, dir)
}

pub(crate) fn discord_with_spectrum(
    cm: &CovarianceMatrix,
    spectrum: &SymplecticSpectrum,
    dir: Direction,
) -> Result<Discord> {
    let o = Oriented::new(cm, dir)?;
    let z = (o.own + o.other * o.own - o.c * o.c) / (o.other + 1.0);
    let s_cond = entropy_f(spectrum.d_plus)? + entropy_f(spectrum.d_minus)? - entropy_f(o.other)?;
    let h_cond = entropy_f(z)?;
    // Product states: the terms cancel analytically, not always in floating point.
    let value = if o.c == 0.0 { 0.0 } else { h_cond - s_cond };
    Ok(Discord {
        value,
        s_cond,
        h_cond,
    })
}

/// Every scalar measure of one STS-form state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub ent_ppt: f64,
    pub duan: f64,
    pub e_ab: f64,
    pub e_ba: f64,
    pub g_ab_opt: f64,
    pub g_ba_opt: f64,
    /// Undefined (`None`) for product states.
    pub g_sym_ab: Option<f64>,
    pub g_sym_ba: Option<f64>,
    pub d_ab: f64,
    pub d_ba: f64,
    pub s_cond_ab: f64,
    pub h_cond_ab: f64,
    pub s_cond_ba: f64,
    pub h_cond_ba: f64,
}

impl CorrelationReport {
    /// Evaluates all measures. Fails on non-STS or unphysical input.
    pub fn evaluate(cm: &CovarianceMatrix) -> Result<Self> {
        let c = cm.sts_correlation()?;
        let spectrum = cm.spectrum()?;
        let sab = steering(cm, Direction::AB, None)?;
        let sba = steering(cm, Direction::BA, None)?;
        let dab = discord_with_spectrum(cm, &spectrum, Direction::AB)?;
        let dba = discord_with_spectrum(cm, &spectrum, Direction::BA)?;
        let (g_sym_ab, g_sym_ba) = if c == 0.0 {
            (None, None)
        } else {
            (
                Some(optimal_gain_sym(cm, Direction::AB)?),
                Some(optimal_gain_sym(cm, Direction::BA)?),
            )
        };
        Ok(Self {
            ent_ppt: ent_ppt(cm)?,
            duan: duan(cm)?,
            e_ab: sab.value,
            e_ba: sba.value,
            g_ab_opt: sab.gain,
            g_ba_opt: sba.gain,
            g_sym_ab,
            g_sym_ba,
            d_ab: dab.value,
            d_ba: dba.value,
            s_cond_ab: dab.s_cond,
            h_cond_ab: dab.h_cond,
            s_cond_ba: dba.s_cond,
            h_cond_ba: dba.h_cond,
        })
    }

    /// The report of the mode-exchanged state.
    pub fn mirrored(&self) -> Self {
        Self {
            ent_ppt: self.ent_ppt,
            duan: self.duan,
            e_ab: self.e_ba,
            e_ba: self.e_ab,
            g_ab_opt: self.g_ba_opt,
            g_ba_opt: self.g_ab_opt,
            g_sym_ab: self.g_sym_ba,
            g_sym_ba: self.g_sym_ab,
            d_ab: self.d_ba,
            d_ba: self.d_ab,
            s_cond_ab: self.s_cond_ba,
            h_cond_ab: self.h_cond_ba,
            s_cond_ba: self.s_cond_ab,
            h_cond_ba: self.h_cond_ab,
        }
    }
}
