//! C ABI over `gqc-core`.
//!
//! States live behind an opaque `GqcState` handle created by
//! `gqc_state_from_sts` / `gqc_state_from_cm` and released with
//! `gqc_state_free`. Every fallible call returns a `GqcStatus`; on failure
//! `gqc_last_error_message` holds a description for the calling thread.
//! Results are written through caller-provided out pointers. Strings
//! returned by `gqc_scan` are owned by the caller and released with
//! `gqc_string_free`.
//!
//! The header `include/gqc.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gqc_core::classify::{BoundaryMeasure, ClassFlags, ClassLabel};
use gqc_core::measures::CorrelationReport;
use gqc_core::scan::{run_scan, ScanSpec};
use gqc_core::teleport::{teleport_report, TeleportDirection};
use gqc_core::{
    bisection_threshold, classify, closed_form_thresholds, CovarianceMatrix, Criterion, Error,
    StsParams,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotStsForm = 3,
    Unphysical = 4,
    ProductState = 5,
    Numeric = 6,
    Panic = 7,
}

/// Opaque state handle.
pub struct GqcState {
    cm: CovarianceMatrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GqcCovariance {
    pub n: f64,
    pub m: f64,
    pub c1: f64,
    pub c2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GqcSpectrum {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub delta: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    pub d_minus_pt: f64,
}

/// All measures of a physical STS state. `g_sym_*` are NaN for product states.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GqcReport {
    pub ent_ppt: f64,
    pub duan: f64,
    pub e_ab: f64,
    pub e_ba: f64,
    pub g_ab_opt: f64,
    pub g_ba_opt: f64,
    pub g_sym_ab: f64,
    pub g_sym_ba: f64,
    pub d_ab: f64,
    pub d_ba: f64,
    pub s_cond_ab: f64,
    pub h_cond_ab: f64,
    pub s_cond_ba: f64,
    pub h_cond_ba: f64,
}

/// Bits of `GqcClassFlags::boundary_mask`.
pub const GQC_BOUNDARY_ENT_PPT: u32 = 1;
pub const GQC_BOUNDARY_DUAN: u32 = 1 << 1;
pub const GQC_BOUNDARY_SYMMETRIC_EPR: u32 = 1 << 2;
pub const GQC_BOUNDARY_STEER_AB: u32 = 1 << 3;
pub const GQC_BOUNDARY_STEER_BA: u32 = 1 << 4;

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GqcClassFlags {
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
    pub boundary_mask: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqcLabel {
    Unphysical = 0,
    Product = 1,
    DiscordOnly = 2,
    EntangledPptOnly = 3,
    DuanEntangled = 4,
    OneWaySteerAb = 5,
    OneWaySteerBa = 6,
    TwoWaySteer = 7,
    SymmetricEpr = 8,
    Boundary = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqcDirection {
    AToB = 0,
    BToA = 1,
    Symmetric = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GqcTeleport {
    pub fidelity_sym: f64,
    pub secure: bool,
    pub qt_sym: bool,
    pub direction: GqcDirection,
    pub gbar: f64,
    pub condition_residual: f64,
    /// `f_g` is meaningful only when this is true.
    pub has_f_g: bool,
    pub f_g: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GqcThresholds {
    pub r_ent: f64,
    pub r_steer_ab: f64,
    pub r_steer_ba: f64,
    pub r_qt_duan: f64,
    pub r_st_duan: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqcCriterion {
    EntPpt = 0,
    SteerAb = 1,
    SteerBa = 2,
    DuanQt = 3,
    DuanSt = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqcScanFormat {
    Json = 0,
    Csv = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

struct Failure(GqcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) | Error::Spec(_) | Error::MissingQuantity(_) => {
                GqcStatus::InvalidArgument
            }
            Error::NotStsForm { .. } => GqcStatus::NotStsForm,
            Error::Unphysical(_) => GqcStatus::Unphysical,
            Error::ProductState(_) => GqcStatus::ProductState,
            Error::InconsistentSpectrum(_) | Error::NonMonotone { .. } => GqcStatus::Numeric,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GqcStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GqcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            GqcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            GqcStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn state<'a>(handle: *const GqcState) -> Result<&'a GqcState, Failure> {
    handle.as_ref().ok_or_else(|| null("state"))
}

fn boxed(cm: CovarianceMatrix) -> *mut GqcState {
    Box::into_raw(Box::new(GqcState { cm }))
}

/// Creates a squeezed thermal state from `r`, `nA`, `nB`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_from_sts(
    r: f64,
    n_a: f64,
    n_b: f64,
    out: *mut *mut GqcState,
) -> GqcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cm = StsParams::new(r, n_a, n_b)?.covariance()?;
        out.write(boxed(cm));
        Ok(())
    })
}

/// Creates a state from raw STS-form entries `n, m, c` (`c1 = c`, `c2 = -c`).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_from_cm(
    n: f64,
    m: f64,
    c: f64,
    out: *mut *mut GqcState,
) -> GqcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(boxed(CovarianceMatrix::sts(n, m, c)?));
        Ok(())
    })
}

/// Releases a handle. `NULL` is ignored.
///
/// # Safety
/// `state` must come from a `gqc_state_from_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_free(state: *mut GqcState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_covariance(
    state: *const GqcState,
    out: *mut GqcCovariance,
) -> GqcStatus {
    guard(|| {
        let CovarianceMatrix { n, m, c1, c2 } = self::state(state)?.cm;
        write(out, GqcCovariance { n, m, c1, c2 }, "out")
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_is_physical(
    state: *const GqcState,
    out: *mut bool,
) -> GqcStatus {
    guard(|| write(out, self::state(state)?.cm.is_physical(), "out"))
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_spectrum(
    state: *const GqcState,
    out: *mut GqcSpectrum,
) -> GqcStatus {
    guard(|| {
        let s = self::state(state)?.cm.spectrum()?;
        let value = GqcSpectrum {
            i1: s.i1,
            i2: s.i2,
            i3: s.i3,
            i4: s.i4,
            delta: s.delta,
            d_plus: s.d_plus,
            d_minus: s.d_minus,
            d_minus_pt: s.d_minus_pt,
        };
        write(out, value, "out")
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_report(
    state: *const GqcState,
    out: *mut GqcReport,
) -> GqcStatus {
    guard(|| {
        let r = CorrelationReport::evaluate(&self::state(state)?.cm)?;
        let value = GqcReport {
            ent_ppt: r.ent_ppt,
            duan: r.duan,
            e_ab: r.e_ab,
            e_ba: r.e_ba,
            g_ab_opt: r.g_ab_opt,
            g_ba_opt: r.g_ba_opt,
            g_sym_ab: r.g_sym_ab.unwrap_or(f64::NAN),
            g_sym_ba: r.g_sym_ba.unwrap_or(f64::NAN),
            d_ab: r.d_ab,
            d_ba: r.d_ba,
            s_cond_ab: r.s_cond_ab,
            h_cond_ab: r.h_cond_ab,
            s_cond_ba: r.s_cond_ba,
            h_cond_ba: r.h_cond_ba,
        };
        write(out, value, "out")
    })
}

fn c_flags(f: &ClassFlags) -> GqcClassFlags {
    let boundary_mask = f.boundary.iter().fold(0, |mask, b| {
        mask | match b {
            BoundaryMeasure::EntPpt => GQC_BOUNDARY_ENT_PPT,
            BoundaryMeasure::Duan => GQC_BOUNDARY_DUAN,
            BoundaryMeasure::SymmetricEpr => GQC_BOUNDARY_SYMMETRIC_EPR,
            BoundaryMeasure::SteerAb => GQC_BOUNDARY_STEER_AB,
            BoundaryMeasure::SteerBa => GQC_BOUNDARY_STEER_BA,
        }
    });
    GqcClassFlags {
        physical: f.physical,
        product: f.product,
        discord_ab: f.discord_ab,
        discord_ba: f.discord_ba,
        entangled_ppt: f.entangled_ppt,
        duan_entangled: f.duan_entangled,
        steer_ab: f.steer_ab,
        steer_ba: f.steer_ba,
        two_way_steer: f.two_way_steer,
        symmetric_epr: f.symmetric_epr,
        boundary_mask,
    }
}

fn c_label(l: ClassLabel) -> GqcLabel {
    match l {
        ClassLabel::Unphysical => GqcLabel::Unphysical,
        ClassLabel::Product => GqcLabel::Product,
        ClassLabel::DiscordOnly => GqcLabel::DiscordOnly,
        ClassLabel::EntangledPptOnly => GqcLabel::EntangledPptOnly,
        ClassLabel::DuanEntangled => GqcLabel::DuanEntangled,
        ClassLabel::OneWaySteerAb => GqcLabel::OneWaySteerAb,
        ClassLabel::OneWaySteerBa => GqcLabel::OneWaySteerBa,
        ClassLabel::TwoWaySteer => GqcLabel::TwoWaySteer,
        ClassLabel::SymmetricEpr => GqcLabel::SymmetricEpr,
        ClassLabel::Boundary => GqcLabel::Boundary,
    }
}

/// Writes the class flags and label. Either out pointer may be `NULL`.
///
/// # Safety
/// `state` must be a live handle; non-null out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_classify(
    state: *const GqcState,
    flags: *mut GqcClassFlags,
    label: *mut GqcLabel,
) -> GqcStatus {
    guard(|| {
        let (f, l) = classify(&self::state(state)?.cm)?;
        if !flags.is_null() {
            flags.write(c_flags(&f));
        }
        if !label.is_null() {
            label.write(c_label(l));
        }
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_state_teleport(
    state: *const GqcState,
    out: *mut GqcTeleport,
) -> GqcStatus {
    guard(|| {
        let t = teleport_report(&self::state(state)?.cm)?;
        let value = GqcTeleport {
            fidelity_sym: t.fidelity_sym,
            secure: t.secure,
            qt_sym: t.qt_sym,
            direction: match t.direction {
                TeleportDirection::AToB => GqcDirection::AToB,
                TeleportDirection::BToA => GqcDirection::BToA,
                TeleportDirection::Symmetric => GqcDirection::Symmetric,
            },
            gbar: t.gbar,
            condition_residual: t.condition_residual,
            has_f_g: t.f_g.is_some(),
            f_g: t.f_g.unwrap_or(f64::NAN),
        };
        write(out, value, "out")
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_thresholds(n_a: f64, n_b: f64, out: *mut GqcThresholds) -> GqcStatus {
    guard(|| {
        let t = closed_form_thresholds(n_a, n_b)?;
        let value = GqcThresholds {
            r_ent: t.r_ent,
            r_steer_ab: t.r_steer_ab,
            r_steer_ba: t.r_steer_ba,
            r_qt_duan: t.r_qt_duan,
            r_st_duan: t.r_st_duan,
        };
        write(out, value, "out")
    })
}

/// Bisection root of one criterion; `*found` is false when the criterion
/// still fails at `r_max` (then `*r` is NaN).
///
/// # Safety
/// `r` and `found` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_bisection_threshold(
    n_a: f64,
    n_b: f64,
    criterion: GqcCriterion,
    r_max: f64,
    r: *mut f64,
    found: *mut bool,
) -> GqcStatus {
    guard(|| {
        if r.is_null() || found.is_null() {
            return Err(null("out"));
        }
        let criterion = match criterion {
            GqcCriterion::EntPpt => Criterion::EntPpt,
            GqcCriterion::SteerAb => Criterion::SteerAb,
            GqcCriterion::SteerBa => Criterion::SteerBa,
            GqcCriterion::DuanQt => Criterion::DuanQt,
            GqcCriterion::DuanSt => Criterion::DuanSt,
        };
        let root = bisection_threshold(n_a, n_b, criterion, r_max)?;
        r.write(root.unwrap_or(f64::NAN));
        found.write(root.is_some());
        Ok(())
    })
}

/// Runs a scan described by a JSON spec and returns the CSV or JSON
/// document through `out`; release it with `gqc_string_free`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gqc_scan(
    spec_json: *const c_char,
    format: GqcScanFormat,
    out: *mut *mut c_char,
) -> GqcStatus {
    guard(|| {
        if spec_json.is_null() {
            return Err(null("spec_json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(spec_json)
            .to_str()
            .map_err(|_| Failure(GqcStatus::InvalidArgument, "spec is not UTF-8".into()))?;
        let spec: ScanSpec = serde_json::from_str(text).map_err(|e| {
            Failure(
                GqcStatus::InvalidArgument,
                format!("invalid scan spec: {e}"),
            )
        })?;
        let result = run_scan(&spec)?;
        let doc = match format {
            GqcScanFormat::Csv => result.to_csv(),
            GqcScanFormat::Json => result.to_json().to_string(),
        };
        let c =
            CString::new(doc).map_err(|_| Failure(GqcStatus::Numeric, "NUL in output".into()))?;
        out.write(c.into_raw());
        Ok(())
    })
}

/// Releases a string returned by this library. `NULL` is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gqc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Stable uppercase token of a label, e.g. `"ONE_WAY_STEER_AB"`.
#[no_mangle]
pub extern "C" fn gqc_label_name(label: GqcLabel) -> *const c_char {
    let s: &'static CStr = match label {
        GqcLabel::Unphysical => c"UNPHYSICAL",
        GqcLabel::Product => c"PRODUCT",
        GqcLabel::DiscordOnly => c"DISCORD_ONLY",
        GqcLabel::EntangledPptOnly => c"ENTANGLED_PPT_ONLY",
        GqcLabel::DuanEntangled => c"DUAN_ENTANGLED",
        GqcLabel::OneWaySteerAb => c"ONE_WAY_STEER_AB",
        GqcLabel::OneWaySteerBa => c"ONE_WAY_STEER_BA",
        GqcLabel::TwoWaySteer => c"TWO_WAY_STEER",
        GqcLabel::SymmetricEpr => c"SYMMETRIC_EPR",
        GqcLabel::Boundary => c"BOUNDARY",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gqc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gqc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
