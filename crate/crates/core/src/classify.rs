//! Venn-class membership of STS states and the unified steering signature.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::measures::{CorrelationReport, Direction};
use crate::BOUNDARY_BAND;

/// A measure whose value fell inside the indeterminate band of its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundaryMeasure {
    /// `Ent_PPT` vs 0.
    EntPpt,
    /// `Δ_ent` vs 1.
    Duan,
    /// `Δ_ent` vs 0.5.
    SymmetricEpr,
    /// `E_A|B` vs 1.
    SteerAb,
    /// `E_B|A` vs 1.
    SteerBa,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassFlags {
    pub physical: bool,
    pub product: bool,
    pub discord_ab: bool,
    pub discord_ba: bool,
    pub entangled_ppt: bool,
    pub duan_entangled: bool,
    pub steer_ab: bool,
    pub steer_ba: bool,
    pub two_way_steer: bool,
    pub symmetric_epr: bool,
    pub boundary: BTreeSet<BoundaryMeasure>,
}

/// Strongest satisfied class; variants are ordered weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassLabel {
    Unphysical,
    Product,
    DiscordOnly,
    EntangledPptOnly,
    DuanEntangled,
    OneWaySteerAb,
    OneWaySteerBa,
    TwoWaySteer,
    SymmetricEpr,
    Boundary,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 10] = [
        ClassLabel::Unphysical,
        ClassLabel::Product,
        ClassLabel::DiscordOnly,
        ClassLabel::EntangledPptOnly,
        ClassLabel::DuanEntangled,
        ClassLabel::OneWaySteerAb,
        ClassLabel::OneWaySteerBa,
        ClassLabel::TwoWaySteer,
        ClassLabel::SymmetricEpr,
        ClassLabel::Boundary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Unphysical => "UNPHYSICAL",
            ClassLabel::Product => "PRODUCT",
            ClassLabel::DiscordOnly => "DISCORD_ONLY",
            ClassLabel::EntangledPptOnly => "ENTANGLED_PPT_ONLY",
            ClassLabel::DuanEntangled => "DUAN_ENTANGLED",
            ClassLabel::OneWaySteerAb => "ONE_WAY_STEER_AB",
            ClassLabel::OneWaySteerBa => "ONE_WAY_STEER_BA",
            ClassLabel::TwoWaySteer => "TWO_WAY_STEER",
            ClassLabel::SymmetricEpr => "SYMMETRIC_EPR",
            ClassLabel::Boundary => "BOUNDARY",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown class label {s:?}")))
    }
}

/// Strict `value < threshold`, reporting values within the band separately.
fn below(
    value: f64,
    threshold: f64,
    tag: BoundaryMeasure,
    band: &mut BTreeSet<BoundaryMeasure>,
) -> bool {
    if (value - threshold).abs() < BOUNDARY_BAND {
        band.insert(tag);
        false
    } else {
        value < threshold
    }
}

/// Flags of every Venn set plus the strongest-class label.
///
/// Unphysical states short-circuit with only `physical = false`. Product
/// states (`c = 0`) are labelled `PRODUCT` even though they sit on every
/// threshold. Otherwise any measure in the indeterminate band turns the
/// label into `BOUNDARY`; the flags stay the strict-inequality verdicts.
pub fn classify(cm: &CovarianceMatrix) -> Result<(ClassFlags, ClassLabel)> {
    let c = cm.sts_correlation()?;
    if !cm.is_physical() {
        return Ok((ClassFlags::default(), ClassLabel::Unphysical));
    }
    let report = CorrelationReport::evaluate(cm)?;
    Ok(classify_report(c, &report))
}

pub(crate) fn classify_report(c: f64, report: &CorrelationReport) -> (ClassFlags, ClassLabel) {
    let mut boundary = BTreeSet::new();
    let product = c == 0.0;
    let entangled_ppt = below(report.ent_ppt, 0.0, BoundaryMeasure::EntPpt, &mut boundary);
    let duan_entangled = below(report.duan, 1.0, BoundaryMeasure::Duan, &mut boundary);
    let symmetric_epr = below(
        report.duan,
        0.5,
        BoundaryMeasure::SymmetricEpr,
        &mut boundary,
    );
    let steer_ab = below(report.e_ab, 1.0, BoundaryMeasure::SteerAb, &mut boundary);
    let steer_ba = below(report.e_ba, 1.0, BoundaryMeasure::SteerBa, &mut boundary);
    let flags = ClassFlags {
        physical: true,
        product,
        discord_ab: report.d_ab > 0.0,
        discord_ba: report.d_ba > 0.0,
        entangled_ppt,
        duan_entangled,
        steer_ab,
        steer_ba,
        two_way_steer: steer_ab && steer_ba,
        symmetric_epr,
        boundary,
    };
    let label = label_of(&flags);
    (flags, label)
}

fn label_of(f: &ClassFlags) -> ClassLabel {
    if !f.physical {
        ClassLabel::Unphysical
    } else if f.product {
        ClassLabel::Product
    } else if !f.boundary.is_empty() {
        ClassLabel::Boundary
    } else if f.symmetric_epr {
        ClassLabel::SymmetricEpr
    } else if f.two_way_steer {
        ClassLabel::TwoWaySteer
    } else if f.steer_ba {
        ClassLabel::OneWaySteerBa
    } else if f.steer_ab {
        ClassLabel::OneWaySteerAb
    } else if f.duan_entangled {
        ClassLabel::DuanEntangled
    } else if f.entangled_ppt {
        ClassLabel::EntangledPptOnly
    } else if f.discord_ab || f.discord_ba {
        ClassLabel::DiscordOnly
    } else {
        ClassLabel::Product
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Steering,
    Entanglement,
    DiscordBeyondEntanglement,
}

/// Steering parameter placed against the steering bound (1) and the
/// entanglement bound `(m + n - 1)/m` (`/n` for `B|A`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub direction: Direction,
    pub e: f64,
    pub steering_bound: f64,
    pub entanglement_bound: f64,
    pub verdict: Verdict,
    /// `e` lies within the indeterminate band of either bound.
    pub boundary: bool,
}

pub fn unified_signature(cm: &CovarianceMatrix, dir: Direction) -> Result<Signature> {
    cm.sts_correlation()?;
    if !cm.is_physical() {
        return Err(Error::Unphysical(
            "unified signature needs a physical state".into(),
        ));
    }
    let e = crate::measures::steering(cm, dir, None)?.value;
    let conditioning = match dir {
        Direction::AB => cm.m,
        Direction::BA => cm.n,
    };
    let entanglement_bound = (cm.m + cm.n - 1.0) / conditioning;
    let verdict = if e < 1.0 {
        Verdict::Steering
    } else if e < entanglement_bound {
        Verdict::Entanglement
    } else {
        Verdict::DiscordBeyondEntanglement
    };
    let boundary =
        (e - 1.0).abs() < BOUNDARY_BAND || (e - entanglement_bound).abs() < BOUNDARY_BAND;
    Ok(Signature {
        direction: dir,
        e,
        steering_bound: 1.0,
        entanglement_bound,
        verdict,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::StsParams;

    fn sts(r: f64, na: f64, nb: f64) -> CovarianceMatrix {
        StsParams::new(r, na, nb).unwrap().covariance().unwrap()
    }

    #[test]
    fn vacuum_is_product() {
        let (flags, label) = classify(&CovarianceMatrix::vacuum()).unwrap();
        assert_eq!(label, ClassLabel::Product);
        assert!(flags.product && !flags.discord_ab && !flags.discord_ba);
    }

    #[test]
    fn one_way_example() {
        let (flags, label) = classify(&sts(0.6, 0.0, 1.0)).unwrap();
        assert_eq!(label, ClassLabel::OneWaySteerAb);
        assert!(flags.steer_ab && !flags.steer_ba && flags.entangled_ppt);
    }

    #[test]
    fn pure_state_is_symmetric_epr() {
        let (flags, label) = classify(&sts(0.6, 0.0, 0.0)).unwrap();
        assert_eq!(label, ClassLabel::SymmetricEpr);
        assert!(flags.two_way_steer && flags.duan_entangled);
    }

    #[test]
    fn unphysical_short_circuits() {
        let cm = CovarianceMatrix::sts(1.0, 1.0, 0.5).unwrap();
        let (flags, label) = classify(&cm).unwrap();
        assert_eq!(label, ClassLabel::Unphysical);
        assert_eq!(flags, ClassFlags::default());
    }

    #[test]
    fn non_sts_is_a_form_error() {
        let cm = CovarianceMatrix::new(2.0, 2.0, 1.0, 0.3).unwrap();
        assert!(matches!(classify(&cm), Err(Error::NotStsForm { .. })));
        assert!(matches!(
            unified_signature(&cm, Direction::AB),
            Err(Error::NotStsForm { .. })
        ));
    }

    #[test]
    fn band_gives_boundary_label() {
        // n = m = 1.5, c = 1: Δ_ent = 0.5 exactly
        let cm = CovarianceMatrix::sts(1.5, 1.5, 1.0).unwrap();
        let (flags, label) = classify(&cm).unwrap();
        assert!(flags.boundary.contains(&BoundaryMeasure::SymmetricEpr));
        assert!(!flags.symmetric_epr);
        assert_eq!(label, ClassLabel::Boundary);
    }

    #[test]
    fn label_tokens_round_trip() {
        for l in ClassLabel::ALL {
            assert_eq!(l.as_str().parse::<ClassLabel>().unwrap(), l);
            assert_eq!(
                serde_json::to_string(&l).unwrap(),
                format!("\"{}\"", l.as_str())
            );
        }
        assert!("steering".parse::<ClassLabel>().is_err());
    }

    #[test]
    fn signature_examples() {
        let s = unified_signature(&sts(0.6, 0.0, 1.0), Direction::AB).unwrap();
        assert_eq!(s.verdict, Verdict::Steering);
        assert!((s.e - 0.649_166_418_921_071).abs() < 1e-12);

        let v = unified_signature(&CovarianceMatrix::vacuum(), Direction::AB).unwrap();
        assert_eq!(v.e, 1.0);
        assert_eq!(v.entanglement_bound, 1.0);
        assert!(v.boundary);
        assert_eq!(v.verdict, Verdict::DiscordBeyondEntanglement);

        let cm = sts(0.3, 1.0, 1.0);
        let s = unified_signature(&cm, Direction::AB).unwrap();
        assert!((s.entanglement_bound - (2.0 - 1.0 / cm.n)).abs() < 1e-15);
    }

    #[test]
    fn signature_rejects_unphysical() {
        let cm = CovarianceMatrix::sts(1.0, 1.0, 0.5).unwrap();
        assert!(matches!(
            unified_signature(&cm, Direction::AB),
            Err(Error::Unphysical(_))
        ));
    }
}
