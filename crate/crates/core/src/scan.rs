//! Parameter-grid sweeps of the correlation measures and class labels.
//!
//! Two grids are supported: thermal noises `(nA, nB)` at fixed squeezing
//! (`STS_NOISE_GRID`), and raw variances `(n, m)` at fixed correlation `c`
//! (`RAW_NM_GRID`), where part of the plane is unphysical. Cells are
//! stored row-major with the first axis slowest.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_report, ClassLabel};
use crate::error::{Error, Result};
use crate::format::{round_sig, sig};
use crate::gaussian::{CovarianceMatrix, StsParams};
use crate::measures::CorrelationReport;

pub const DEFAULT_STEPS: usize = 201;
pub const DEFAULT_RANGE: (f64, f64) = (0.0, 2.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScanMode {
    /// Fixed `r`; axis 1 is `nA`, axis 2 is `nB`.
    StsNoiseGrid,
    /// Fixed `c`; axis 1 is `n`, axis 2 is `m`.
    RawNmGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quantity {
    EntPpt,
    Duan,
    EAb,
    EBa,
    DAb,
    DBa,
    /// `S(ρ_A|B)` term of the A|B discord.
    SCond,
    /// `H(ρ_A|B)` term of the A|B discord.
    HCond,
    /// The class label; always emitted, listed for completeness.
    Label,
}

impl Quantity {
    pub const NUMERIC: [Quantity; 8] = [
        Quantity::EntPpt,
        Quantity::Duan,
        Quantity::EAb,
        Quantity::EBa,
        Quantity::DAb,
        Quantity::DBa,
        Quantity::SCond,
        Quantity::HCond,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::EntPpt => "ENT_PPT",
            Quantity::Duan => "DUAN",
            Quantity::EAb => "E_AB",
            Quantity::EBa => "E_BA",
            Quantity::DAb => "D_AB",
            Quantity::DBa => "D_BA",
            Quantity::SCond => "S_COND",
            Quantity::HCond => "H_COND",
            Quantity::Label => "LABEL",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Quantity::NUMERIC
            .into_iter()
            .chain([Quantity::Label])
            .find(|q| q.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Spec(format!("unknown quantity {s:?}")))
    }

    fn extract(self, r: &CorrelationReport) -> Option<f64> {
        Some(match self {
            Quantity::EntPpt => r.ent_ppt,
            Quantity::Duan => r.duan,
            Quantity::EAb => r.e_ab,
            Quantity::EBa => r.e_ba,
            Quantity::DAb => r.d_ab,
            Quantity::DBa => r.d_ba,
            Quantity::SCond => r.s_cond_ab,
            Quantity::HCond => r.h_cond_ab,
            Quantity::Label => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    /// Parses `lo:hi:steps`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return Err(Error::Spec(format!("axis {s:?} is not lo:hi:steps")));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Spec(format!("bad number {t:?} in axis {s:?}")))
        };
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Spec(format!("bad step count in axis {s:?}")))?;
        Ok(Self {
            lo: num(lo)?,
            hi: num(hi)?,
            steps,
        })
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Spec(format!(
                "{name}: need at least 2 steps, got {}",
                self.steps
            )));
        }
        if !self.lo.is_finite() || !self.hi.is_finite() || self.lo >= self.hi {
            return Err(Error::Spec(format!(
                "{name}: range [{}, {}] must be finite with lo < hi",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }

    pub fn cell_width(&self) -> f64 {
        (self.hi - self.lo) / (self.steps - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub mode: ScanMode,
    /// `r` for `STS_NOISE_GRID`, `c` for `RAW_NM_GRID`.
    pub fixed: f64,
    pub axis1: AxisRange,
    pub axis2: AxisRange,
    pub quantities: Vec<Quantity>,
}

impl ScanSpec {
    /// Default noise grid: `[0, 2]²`, 201 × 201, every quantity.
    pub fn sts_default(r: f64) -> Self {
        let (lo, hi) = DEFAULT_RANGE;
        Self {
            mode: ScanMode::StsNoiseGrid,
            fixed: r,
            axis1: AxisRange::new(lo, hi, DEFAULT_STEPS),
            axis2: AxisRange::new(lo, hi, DEFAULT_STEPS),
            quantities: Quantity::NUMERIC.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate("axis1")?;
        self.axis2.validate("axis2")?;
        if !self.fixed.is_finite() {
            return Err(Error::Spec(format!(
                "fixed parameter {} is not finite",
                self.fixed
            )));
        }
        if self.mode == ScanMode::StsNoiseGrid {
            if self.fixed < 0.0 {
                return Err(Error::Spec(format!(
                    "squeezing r = {} must be >= 0",
                    self.fixed
                )));
            }
            if self.axis1.lo < 0.0 || self.axis2.lo < 0.0 {
                return Err(Error::Spec(
                    "thermal noise axes must be non-negative".into(),
                ));
            }
        }
        Ok(())
    }

    /// Requested numeric quantities in request order, duplicates and
    /// `LABEL` removed.
    pub fn numeric_quantities(&self) -> Vec<Quantity> {
        let mut out = Vec::new();
        for &q in &self.quantities {
            if q != Quantity::Label && !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.axis1.steps * self.axis2.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn state_at(&self, x: f64, y: f64) -> Result<CovarianceMatrix> {
        match self.mode {
            ScanMode::StsNoiseGrid => StsParams::new(self.fixed, x, y)?.covariance(),
            ScanMode::RawNmGrid => CovarianceMatrix::sts(x, y, self.fixed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub axis1: f64,
    pub axis2: f64,
    /// One entry per numeric quantity; `None` for unphysical or failed cells.
    pub values: Vec<Option<f64>>,
    pub label: ClassLabel,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: ScanSpec,
    pub quantities: Vec<Quantity>,
    pub cells: Vec<Cell>,
    pub boundary_cells: usize,
    pub unphysical_cells: usize,
}

impl ScanResult {
    pub fn dims(&self) -> (usize, usize) {
        (self.spec.axis1.steps, self.spec.axis2.steps)
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i * self.spec.axis2.steps + j]
    }

    pub fn quantity_index(&self, q: Quantity) -> Result<usize> {
        self.quantities
            .iter()
            .position(|&x| x == q)
            .ok_or_else(|| Error::MissingQuantity(q.as_str().into()))
    }

    /// Row-major field of one quantity.
    pub fn field(&self, q: Quantity) -> Result<Vec<Option<f64>>> {
        let k = self.quantity_index(q)?;
        Ok(self.cells.iter().map(|c| c.values[k]).collect())
    }

    /// CSV: `axis1,axis2,<quantity...>,label`, 12 significant digits,
    /// empty fields for missing values.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("axis1,axis2");
        for q in &self.quantities {
            out.push(',');
            out.push_str(q.as_str());
        }
        out.push_str(",label\n");
        for cell in &self.cells {
            let _ = write!(out, "{},{}", sig(cell.axis1), sig(cell.axis2));
            for v in &cell.values {
                out.push(',');
                if let Some(v) = v {
                    out.push_str(&sig(*v));
                }
            }
            let _ = writeln!(out, ",{}", cell.label);
        }
        out
    }

    /// JSON document: spec echo, axis values, one row-major array per
    /// quantity (`null` where missing), labels and cell counters.
    pub fn to_json(&self) -> serde_json::Value {
        let round = |v: &Option<f64>| v.map(round_sig);
        let mut fields = serde_json::Map::new();
        for (k, q) in self.quantities.iter().enumerate() {
            let col: Vec<Option<f64>> = self.cells.iter().map(|c| round(&c.values[k])).collect();
            fields.insert(q.as_str().into(), serde_json::json!(col));
        }
        let errors: Vec<serde_json::Value> = self
            .cells
            .iter()
            .enumerate()
            .filter_map(|(idx, c)| {
                c.error
                    .as_ref()
                    .map(|e| serde_json::json!({ "index": idx, "error": e }))
            })
            .collect();
        serde_json::json!({
            "spec": self.spec,
            "dims": [self.spec.axis1.steps, self.spec.axis2.steps],
            "axis1": self.spec.axis1.values().into_iter().map(round_sig).collect::<Vec<_>>(),
            "axis2": self.spec.axis2.values().into_iter().map(round_sig).collect::<Vec<_>>(),
            "quantities": fields,
            "labels": self.cells.iter().map(|c| c.label).collect::<Vec<_>>(),
            "boundary_cells": self.boundary_cells,
            "unphysical_cells": self.unphysical_cells,
            "errors": errors,
        })
    }
}

fn evaluate_cell(spec: &ScanSpec, quantities: &[Quantity], x: f64, y: f64) -> Cell {
    let empty = |label, error| Cell {
        axis1: x,
        axis2: y,
        values: vec![None; quantities.len()],
        label,
        error,
    };
    let cm = match spec.state_at(x, y) {
        Ok(cm) => cm,
        Err(e) => return empty(ClassLabel::Unphysical, Some(e.to_string())),
    };
    if !cm.is_physical() {
        return empty(ClassLabel::Unphysical, None);
    }
    match CorrelationReport::evaluate(&cm) {
        Ok(report) => {
            let (_, label) = classify_report(cm.c1, &report);
            Cell {
                axis1: x,
                axis2: y,
                values: quantities.iter().map(|q| q.extract(&report)).collect(),
                label,
                error: None,
            }
        }
        Err(e) => empty(ClassLabel::Unphysical, Some(e.to_string())),
    }
}

/// Evaluates every cell; numeric failures are recorded in the cell.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanResult> {
    spec.validate()?;
    let quantities = spec.numeric_quantities();
    let xs = spec.axis1.values();
    let ys = spec.axis2.values();
    let cols = ys.len();
    let cells: Vec<Cell> = (0..xs.len() * cols)
        .into_par_iter()
        .map(|idx| evaluate_cell(spec, &quantities, xs[idx / cols], ys[idx % cols]))
        .collect();
    let boundary_cells = cells
        .iter()
        .filter(|c| c.label == ClassLabel::Boundary)
        .count();
    let unphysical_cells = cells
        .iter()
        .filter(|c| c.label == ClassLabel::Unphysical)
        .count();
    Ok(ScanResult {
        spec: spec.clone(),
        quantities,
        cells,
        boundary_cells,
        unphysical_cells,
    })
}

/// A point where a scalar field crosses a level along a grid edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub axis1: f64,
    pub axis2: f64,
}

/// Level crossings by linear interpolation along grid edges.
///
/// Cells are visited row-major; for each cell the edge towards the next
/// `axis2` neighbour is examined before the edge towards the next `axis1`
/// neighbour. Edges touching a missing value are skipped.
pub fn extract_boundary(
    result: &ScanResult,
    quantity: Quantity,
    level: f64,
) -> Result<Vec<Crossing>> {
    if !level.is_finite() {
        return Err(Error::Domain(format!(
            "contour level {level} is not finite"
        )));
    }
    let field = result.field(quantity)?;
    let (rows, cols) = result.dims();
    let at = |i: usize, j: usize| field[i * cols + j];
    let mut out = Vec::new();
    let mut edge = |(i0, j0): (usize, usize), (i1, j1): (usize, usize)| {
        let (Some(v0), Some(v1)) = (at(i0, j0), at(i1, j1)) else {
            return;
        };
        if (v0 < level) == (v1 < level) {
            return;
        }
        let t = (level - v0) / (v1 - v0);
        let (c0, c1) = (result.cell(i0, j0), result.cell(i1, j1));
        out.push(Crossing {
            axis1: c0.axis1 + t * (c1.axis1 - c0.axis1),
            axis2: c0.axis2 + t * (c1.axis2 - c0.axis2),
        });
    };
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edge((i, j), (i, j + 1));
            }
            if i + 1 < rows {
                edge((i, j), (i + 1, j));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(mode: ScanMode, fixed: f64, lo: f64, hi: f64, steps: usize) -> ScanSpec {
        ScanSpec {
            mode,
            fixed,
            axis1: AxisRange::new(lo, hi, steps),
            axis2: AxisRange::new(lo, hi, steps),
            quantities: vec![
                Quantity::EntPpt,
                Quantity::EAb,
                Quantity::EBa,
                Quantity::Label,
            ],
        }
    }

    #[test]
    fn spec_validation() {
        let mut s = small(ScanMode::StsNoiseGrid, 0.6, 0.0, 2.0, 5);
        assert!(s.validate().is_ok());
        s.axis1.steps = 1;
        assert!(matches!(run_scan(&s), Err(Error::Spec(_))));
        let s = small(ScanMode::StsNoiseGrid, 0.6, 2.0, 2.0, 5);
        assert!(s.validate().is_err());
        let s = small(ScanMode::StsNoiseGrid, -0.1, 0.0, 2.0, 5);
        assert!(s.validate().is_err());
        let s = small(ScanMode::StsNoiseGrid, 0.6, -1.0, 2.0, 5);
        assert!(s.validate().is_err());
        let s = small(ScanMode::RawNmGrid, f64::NAN, 1.0, 3.0, 5);
        assert!(s.validate().is_err());
    }

    #[test]
    fn axis_parsing() {
        assert_eq!(
            AxisRange::parse("0:2:201").unwrap(),
            AxisRange::new(0.0, 2.0, 201)
        );
        assert!(AxisRange::parse("0:2").is_err());
        assert!(AxisRange::parse("0:x:3").is_err());
        assert!(AxisRange::parse("0:1:-3").is_err());
    }

    #[test]
    fn record_count_and_order() {
        let mut s = small(ScanMode::StsNoiseGrid, 0.6, 0.0, 1.0, 3);
        s.axis2 = AxisRange::new(0.0, 2.0, 4);
        let r = run_scan(&s).unwrap();
        assert_eq!(r.cells.len(), 12);
        assert_eq!(
            r.quantities,
            vec![Quantity::EntPpt, Quantity::EAb, Quantity::EBa]
        );
        assert_eq!((r.cells[1].axis1, r.cells[1].axis2), (0.0, 2.0 / 3.0));
        assert_eq!((r.cells[4].axis1, r.cells[4].axis2), (0.5, 0.0));
    }

    #[test]
    fn raw_grid_marks_unphysical_cells() {
        let s = small(ScanMode::RawNmGrid, 1.0, 1.0, 3.0, 21);
        let r = run_scan(&s).unwrap();
        assert!(r.unphysical_cells > 0);
        for cell in &r.cells {
            let cm = CovarianceMatrix::sts(cell.axis1, cell.axis2, 1.0).unwrap();
            if !cm.is_physical() {
                assert_eq!(cell.label, ClassLabel::Unphysical);
                assert!(cell.values.iter().all(Option::is_none));
            } else {
                assert_ne!(cell.label, ClassLabel::Unphysical);
            }
        }
    }

    #[test]
    fn constant_field_has_no_crossings() {
        let mut s = small(ScanMode::StsNoiseGrid, 0.6, 0.0, 1.0, 6);
        s.quantities = vec![Quantity::DAb];
        let r = run_scan(&s).unwrap();
        let pts = extract_boundary(&r, Quantity::DAb, -5.0).unwrap();
        assert!(pts.is_empty());
        assert!(matches!(
            extract_boundary(&r, Quantity::EAb, 1.0),
            Err(Error::MissingQuantity(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let s = small(ScanMode::StsNoiseGrid, 0.6, 0.0, 1.0, 2);
        let csv = run_scan(&s).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "axis1,axis2,ENT_PPT,E_AB,E_BA,label");
        assert_eq!(lines.clone().count(), 4);
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "0");
        assert_eq!(first[5], "SYMMETRIC_EPR");
    }

    #[test]
    fn quantity_tokens() {
        for q in Quantity::NUMERIC {
            assert_eq!(Quantity::parse(q.as_str()).unwrap(), q);
            assert_eq!(
                serde_json::to_string(&q).unwrap(),
                format!("\"{}\"", q.as_str())
            );
        }
        assert_eq!(Quantity::parse("label").unwrap(), Quantity::Label);
        assert!(Quantity::parse("FOO").is_err());
    }
}
