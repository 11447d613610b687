//! C ABI over the `unmating` library.
//!
//! Maps and curves are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`UnmatingStatus`]; on failure
//! the message is available from [`unmating_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use unmating::curve::{CurveSpec, JordanCurve};
use unmating::equator::{MapContext, Outcome};
use unmating::families::{capture_parameters, lookup_curve, lookup_map};
use unmating::map::{postcritical_set, RationalMap};
use unmating::numeric::{Polynomial, SpherePoint, ToleranceConfig, C64};
use unmating::semigroup::{CompositionTable, FiniteSelfMap};
use unmating::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnmatingStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownId = 3,
    /// Root finding, orbit budget or branch matching failed.
    Numerical = 4,
    /// The curve passes too close to the postcritical set.
    BadCurve = 5,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnmatingOutcome {
    Equator = 0,
    OrEquator = 1,
    Splits = 2,
    NotIsotopic = 3,
    Inessential = 4,
    PartitionIncompatible = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct UnmatingVerdict {
    pub outcome: UnmatingOutcome,
    /// Number of preimage components; 1 unless the outcome is `Splits`.
    pub components: usize,
    pub level: u32,
}

/// A point of the sphere; `is_infinity` is 1 for ∞, in which case `re` and
/// `im` are zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct UnmatingPoint {
    pub re: f64,
    pub im: f64,
    pub is_infinity: u8,
}

/// Opaque rational map.
pub struct UnmatingMap {
    map: RationalMap,
}

/// Opaque sampled Jordan curve.
pub struct UnmatingCurve {
    curve: JordanCurve,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> UnmatingStatus {
    match e {
        Error::UnknownId(_) => UnmatingStatus::UnknownId,
        Error::CurveHitsPostcritical { .. } | Error::PointOnCurve | Error::SelfIntersecting(_) | Error::TooFewSamples(_) | Error::GapTooLarge { .. } => {
            UnmatingStatus::BadCurve
        }
        Error::NonConvergence { .. } | Error::OrbitBudgetExceeded(_) | Error::NearCriticalValue(_) | Error::ChartSearchFailed | Error::TangentCrossing => {
            UnmatingStatus::Numerical
        }
        Error::Io(_) | Error::Json(_) => UnmatingStatus::Internal,
        _ => UnmatingStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (UnmatingStatus, String)>) -> UnmatingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UnmatingStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            UnmatingStatus::Internal
        }
    }
}

fn lib<T>(r: unmating::Result<T>) -> Result<T, (UnmatingStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (UnmatingStatus, String) {
    (UnmatingStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (UnmatingStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (UnmatingStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn to_point(p: &SpherePoint) -> UnmatingPoint {
    match p.affine() {
        Some(z) => UnmatingPoint { re: z.re, im: z.im, is_infinity: 0 },
        None => UnmatingPoint { re: 0.0, im: 0.0, is_infinity: 1 },
    }
}

fn from_point(p: &UnmatingPoint) -> SpherePoint {
    if p.is_infinity != 0 {
        SpherePoint::INFINITY
    } else {
        SpherePoint::from_re_im(p.re, p.im)
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn unmating_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn unmating_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a catalog map such as `omega+2` or `capture:3/2`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn unmating_map_from_catalog(id: *const c_char, out: *mut *mut UnmatingMap) -> UnmatingStatus {
    guard(|| {
        let id = read_str(id, "id")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let entry = lib(lookup_map(id, &ToleranceConfig::default()))?;
        *out = Box::into_raw(Box::new(UnmatingMap { map: entry.map }));
        Ok(())
    })
}

/// Builds `num / den` from coefficient arrays in increasing degree.
///
/// # Safety
/// `num` and `den` must point to `num_len` and `den_len` readable
/// [`UnmatingPoint`]s (used as complex coefficients; `is_infinity` is
/// ignored), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_map_from_coefficients(
    num: *const UnmatingPoint,
    num_len: usize,
    den: *const UnmatingPoint,
    den_len: usize,
    out: *mut *mut UnmatingMap,
) -> UnmatingStatus {
    guard(|| {
        if num.is_null() || den.is_null() || out.is_null() {
            return Err(null("coefficient or output pointer"));
        }
        let poly = |p: *const UnmatingPoint, n: usize| {
            Polynomial::new(std::slice::from_raw_parts(p, n).iter().map(|c| C64::new(c.re, c.im)).collect())
        };
        let map = lib(RationalMap::new(poly(num, num_len), poly(den, den_len)))?;
        *out = Box::into_raw(Box::new(UnmatingMap { map }));
        Ok(())
    })
}

/// # Safety
/// `map` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn unmating_map_free(map: *mut UnmatingMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// `map` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn unmating_map_degree(map: *const UnmatingMap) -> usize {
    map.as_ref().map_or(0, |m| m.map.degree())
}

/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_map_evaluate(map: *const UnmatingMap, z: UnmatingPoint, out: *mut UnmatingPoint) -> UnmatingStatus {
    guard(|| {
        let m = map.as_ref().ok_or_else(|| null("map"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = to_point(&lib(m.map.evaluate(&from_point(&z)))?);
        Ok(())
    })
}

/// Writes the postcritical points and the index of each point's image.
///
/// On success `*len` is the number of points. When `capacity` is too small
/// nothing but `*len` is written and `BufferTooSmall` is returned, so a
/// call with `capacity = 0` queries the size.
///
/// # Safety
/// `points` and `successors` must hold `capacity` writable elements (they
/// may be null when `capacity` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_postcritical_set(
    map: *const UnmatingMap,
    points: *mut UnmatingPoint,
    successors: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> UnmatingStatus {
    guard(|| {
        let m = map.as_ref().ok_or_else(|| null("map"))?;
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        let (set, graph) = lib(postcritical_set(&m.map, &ToleranceConfig::default()))?;
        *len = set.len();
        if capacity < set.len() {
            return Err((UnmatingStatus::BufferTooSmall, format!("{} points need a larger buffer", set.len())));
        }
        if points.is_null() || successors.is_null() {
            return Err(null("output buffer"));
        }
        let pts = std::slice::from_raw_parts_mut(points, capacity);
        let succ = std::slice::from_raw_parts_mut(successors, capacity);
        for (i, p) in set.points.iter().enumerate() {
            pts[i] = to_point(p);
            succ[i] = graph.successor[i];
        }
        Ok(())
    })
}

/// Circle `|z - center| = radius` sampled at `resolution` points.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_curve_circle(center: UnmatingPoint, radius: f64, resolution: usize, out: *mut *mut UnmatingCurve) -> UnmatingStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if !(radius > 0.0) || center.is_infinity != 0 {
            return Err((UnmatingStatus::InvalidArgument, "circle needs a finite centre and positive radius".into()));
        }
        let curve = lib(CurveSpec::circle(C64::new(center.re, center.im), radius).sample(resolution))?;
        *out = Box::into_raw(Box::new(UnmatingCurve { curve }));
        Ok(())
    })
}

/// One of the figure curves `fig4` .. `fig20`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_curve_from_catalog(id: *const c_char, resolution: usize, out: *mut *mut UnmatingCurve) -> UnmatingStatus {
    guard(|| {
        let id = read_str(id, "id")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let curve = lib(lookup_curve(id).and_then(|c| c.sample(resolution)))?;
        *out = Box::into_raw(Box::new(UnmatingCurve { curve }));
        Ok(())
    })
}

/// # Safety
/// `curve` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn unmating_curve_free(curve: *mut UnmatingCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Equator verdict of `curve` for the `level`-th iterate of `map`.
///
/// # Safety
/// `map` and `curve` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_classify(
    map: *const UnmatingMap,
    curve: *const UnmatingCurve,
    level: u32,
    out: *mut UnmatingVerdict,
) -> UnmatingStatus {
    guard(|| {
        let m = map.as_ref().ok_or_else(|| null("map"))?;
        let c = curve.as_ref().ok_or_else(|| null("curve"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if level == 0 {
            return Err((UnmatingStatus::InvalidArgument, "level must be at least 1".into()));
        }
        let tol = ToleranceConfig::default();
        let v = lib(MapContext::new(&m.map, &tol).and_then(|ctx| ctx.classify(level, &c.curve)))?;
        let (outcome, components) = match v.outcome {
            Outcome::Equator => (UnmatingOutcome::Equator, 1),
            Outcome::OREquator => (UnmatingOutcome::OrEquator, 1),
            Outcome::Splits(n) => (UnmatingOutcome::Splits, n),
            Outcome::NotIsotopic => (UnmatingOutcome::NotIsotopic, 1),
            Outcome::Inessential => (UnmatingOutcome::Inessential, 1),
            Outcome::PartitionIncompatible => (UnmatingOutcome::PartitionIncompatible, v.diagnostics.components.unwrap_or(0)),
        };
        *out = UnmatingVerdict { outcome, components, level: v.level };
        Ok(())
    })
}

/// Capture parameters of one generation (2 to 8), with the same buffer
/// protocol as [`unmating_postcritical_set`].
///
/// # Safety
/// `params` must hold `capacity` writable elements (or be null when
/// `capacity` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_capture_parameters(generation: u32, params: *mut UnmatingPoint, capacity: usize, len: *mut usize) -> UnmatingStatus {
    guard(|| {
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        if !(2..=8).contains(&generation) {
            return Err((UnmatingStatus::InvalidArgument, format!("generation {generation} is outside 2..=8")));
        }
        let roots = lib(capture_parameters(generation, &ToleranceConfig::default()))?;
        *len = roots.len();
        if capacity < roots.len() {
            return Err((UnmatingStatus::BufferTooSmall, format!("{} parameters need a larger buffer", roots.len())));
        }
        if params.is_null() {
            return Err(null("params"));
        }
        let out = std::slice::from_raw_parts_mut(params, capacity);
        for (o, a) in out.iter_mut().zip(&roots) {
            *o = UnmatingPoint { re: a.re, im: a.im, is_infinity: 0 };
        }
        Ok(())
    })
}

/// Size of the semigroup generated by self-maps of four points, each given
/// as four zero-based images (`images[4 * i .. 4 * i + 4]`).
///
/// # Safety
/// `images` must point to `4 * count` readable bytes and `size` be writable.
#[no_mangle]
pub unsafe extern "C" fn unmating_semigroup_closure_size(images: *const u8, count: usize, size: *mut usize) -> UnmatingStatus {
    guard(|| {
        if images.is_null() {
            return Err(null("images"));
        }
        let size = size.as_mut().ok_or_else(|| null("size"))?;
        let raw = std::slice::from_raw_parts(images, 4 * count);
        let codes: Vec<u8> = raw
            .chunks(4)
            .map(|c| FiniteSelfMap::new(c.to_vec()).map(|f| f.code() as u8))
            .collect::<unmating::Result<_>>()
            .map_err(|e| (UnmatingStatus::InvalidArgument, e.to_string()))?;
        *size = CompositionTable::new().closure_size(&codes, 256).0;
        Ok(())
    })
}
