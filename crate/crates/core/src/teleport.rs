//! Teleportation diagnostics of an STS resource.
//!
//! Direction convention: the resource teleports from Alice to Bob when
//! `g_sym(A|B) < 1` and from Bob to Alice when `g_sym(A|B) > 1`. For the
//! usual asymmetric resource with more noise on Bob (`nB > nA`) this gives
//! `A_TO_B`, with Bell measurement at A and the amplified output at B.
//! The operating point of that protocol is `E_B|A(ḡ) = ḡ² - 1` with
//! `ḡ = g_sym(B|A) ≥ 1`; `B_TO_A` uses the mirrored condition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::measures::{self, Direction};
use crate::BOUNDARY_BAND;

/// `|E(ḡ) - (ḡ² - 1)|` below which the protocol fidelity `1/ḡ²` is reported.
pub const CONDITION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TeleportDirection {
    AToB,
    BToA,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TeleportReport {
    /// `1 / (1 + Δ_ent)` of the standard symmetric protocol.
    pub fidelity_sym: f64,
    /// `F > 2/3`.
    pub secure: bool,
    /// `F > 1/2`.
    pub qt_sym: bool,
    pub direction: TeleportDirection,
    /// Protocol gain, the `≥ 1` member of the reciprocal `g_sym` pair.
    pub gbar: f64,
    /// `E(ḡ) - (ḡ² - 1)` in the teleporting direction.
    pub condition_residual: f64,
    /// `1 / ḡ²`, present only when the residual is below [`CONDITION_TOL`].
    pub f_g: Option<f64>,
}

/// `1 / (1 + Δ_ent)`.
pub fn fidelity(cm: &CovarianceMatrix) -> Result<f64> {
    Ok(1.0 / (1.0 + measures::duan(cm)?))
}

/// Grosshans–Grangier condition `Δ_ent < 0.5` (equivalently `F > 2/3`).
pub fn secure_teleport_check(cm: &CovarianceMatrix) -> Result<bool> {
    Ok(measures::duan(cm)? < 0.5)
}

pub fn teleport_report(cm: &CovarianceMatrix) -> Result<TeleportReport> {
    let c = cm.sts_correlation()?;
    if c == 0.0 {
        return Err(Error::ProductState("teleportation resource"));
    }
    if !cm.is_physical() {
        return Err(Error::Unphysical(
            "teleportation needs a physical resource".into(),
        ));
    }
    let duan = measures::duan(cm)?;
    let fidelity_sym = 1.0 / (1.0 + duan);

    let g_ab = measures::optimal_gain_sym(cm, Direction::AB)?;
    let g_ba = measures::optimal_gain_sym(cm, Direction::BA)?;
    let direction = if (g_ab.abs() - 1.0).abs() < BOUNDARY_BAND {
        TeleportDirection::Symmetric
    } else if g_ab.abs() < 1.0 {
        TeleportDirection::AToB
    } else {
        TeleportDirection::BToA
    };
    // ḡ carries the sign of c, so the steering variance is evaluated with
    // the correlated sign; ḡ² and |ḡ| are sign-free.
    let (signed_gbar, inferred) = match direction {
        TeleportDirection::AToB | TeleportDirection::Symmetric => (g_ba, Direction::BA),
        TeleportDirection::BToA => (g_ab, Direction::AB),
    };
    let gbar = signed_gbar.abs();
    let e = measures::steering(cm, inferred, Some(signed_gbar))?.value;
    let condition_residual = e - (gbar * gbar - 1.0);
    let f_g = (condition_residual.abs() < CONDITION_TOL).then(|| 1.0 / (gbar * gbar));

    Ok(TeleportReport {
        fidelity_sym,
        secure: duan < 0.5,
        qt_sym: duan < 1.0,
        direction,
        gbar,
        condition_residual,
        f_g,
    })
}
