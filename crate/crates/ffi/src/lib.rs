//! C interface to `alphasectors`.
//!
//! Functions return an [`AsStatus`]; on failure `as_last_error` gives a
//! message for the calling thread. Handles are created by the library and
//! released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use alphasectors::io::{self, SpecFile, TheoremChoice};
use alphasectors::model::DEFAULT_POLE_TOL;
use alphasectors::theorems::{predict_next_sector, VerifyOptions};
use alphasectors::winding::{sector_census, DEFAULT_QUAD_TOL};
use alphasectors::{alpha_points, AlphaPoint, Error, Evaluation, FunctionSpec, SectorIndex, SolveOptions, StructuredFunction};
use num_complex::Complex64;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidSpec = 3,
    /// The function has a pole at the argument.
    Pole = 4,
    NotConverged = 5,
    /// The winding count was not close to an integer.
    Inconclusive = 6,
    Panic = 7,
    Utf8 = 8,
    /// Index or radius outside the valid range.
    OutOfRange = 9,
}

/// Verifier selection for `as_verify`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsTheorem {
    Auto = 0,
    Main = 1,
    Main2 = 2,
    First = 3,
    K2 = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AsComplex {
    pub re: f64,
    pub im: f64,
}

/// One alpha-point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AsPoint {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub sector: u32,
    /// 1 when the point lies on the ray starting sector `sector`.
    pub boundary: i32,
    pub multiplicity: u32,
    pub residual: f64,
}

/// Opaque function handle.
pub struct AsFunction {
    spec: SpecFile,
    func: FunctionSpec,
}

/// Opaque list of alpha-points sorted by modulus.
pub struct AsPointSet {
    points: Vec<AlphaPoint>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> AsStatus {
    match e {
        Error::InvalidSpec(_) | Error::NotCoprime { .. } | Error::NotRational => AsStatus::InvalidSpec,
        Error::NotConverged { .. } | Error::UnresolvedCluster { .. } => AsStatus::NotConverged,
        Error::Inconclusive { .. } | Error::PoleAdjacent { .. } => AsStatus::Inconclusive,
        Error::BeyondTrustRadius { .. } | Error::DegreeTooLarge(_) | Error::TooFewCoefficients { .. } => AsStatus::OutOfRange,
        _ => AsStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (AsStatus, String)>) -> AsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            AsStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            AsStatus::Panic
        }
    }
}

fn lib<T>(r: alphasectors::Result<T>) -> Result<T, (AsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (AsStatus, String) {
    (AsStatus::NullPointer, format!("{what} is null"))
}

fn cpx(z: AsComplex) -> Complex64 {
    Complex64::new(z.re, z.im)
}

unsafe fn slice<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], (AsStatus, String)> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

fn boxed(spec: SpecFile) -> Result<*mut AsFunction, (AsStatus, String)> {
    let func = lib(spec.to_function())?;
    Ok(Box::into_raw(Box::new(AsFunction { spec, func })))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn as_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a JSON spec (`{"type":"rational",...}` or `{"type":"series",...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn as_function_from_json(json: *const c_char, out: *mut *mut AsFunction) -> AsStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(json).to_str().map_err(|e| (AsStatus::Utf8, e.to_string()))?;
        let spec = lib(io::parse_spec_str(s))?;
        *out = boxed(spec)?;
        Ok(())
    })
}

/// `z^p prod(z^k + a_i) / prod(z^k - b_j)`.
///
/// # Safety
/// `a` and `b` must point to `na` and `nb` doubles (may be null when the
/// count is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn as_function_rational(
    p: i64,
    k: u32,
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    out: *mut *mut AsFunction,
) -> AsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let a = slice(a, na, "a")?.to_vec();
        let b = slice(b, nb, "b")?.to_vec();
        let f = lib(StructuredFunction::rational(p, k, a, b))?;
        *out = boxed(SpecFile::Rational(f))?;
        Ok(())
    })
}

/// # Safety
/// `f` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn as_function_free(f: *mut AsFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluates the function; `AS_STATUS_POLE` at a pole.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn as_function_evaluate(f: *const AsFunction, z: AsComplex, out: *mut AsComplex) -> AsStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("function"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let z = cpx(z);
        let v = match &f.func {
            FunctionSpec::Structured(g) => match lib(g.evaluate_g(z, DEFAULT_POLE_TOL))? {
                Evaluation::Finite(v) => v,
                Evaluation::Pole => return Err((AsStatus::Pole, format!("pole at {z}"))),
            },
            FunctionSpec::Series(s) => {
                if z.norm() > s.trust_radius {
                    return Err((AsStatus::OutOfRange, format!("|z| = {} exceeds the trust radius {}", z.norm(), s.trust_radius)));
                }
                s.evaluate(z)
            }
        };
        *out = AsComplex { re: v.re, im: v.im };
        Ok(())
    })
}

/// Solutions of `F(z) = alpha` with `0 < |z| <= radius`.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn as_alpha_points(f: *const AsFunction, alpha: AsComplex, radius: f64, out: *mut *mut AsPointSet) -> AsStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("function"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let points = lib(alpha_points(&f.func, cpx(alpha), radius, &SolveOptions::default()))?;
        *out = Box::into_raw(Box::new(AsPointSet { points }));
        Ok(())
    })
}

/// Number of points; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn as_point_set_len(s: *const AsPointSet) -> usize {
    s.as_ref().map_or(0, |s| s.points.len())
}

/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn as_point_set_get(s: *const AsPointSet, index: usize, out: *mut AsPoint) -> AsStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("point set"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = s
            .points
            .get(index)
            .ok_or_else(|| (AsStatus::OutOfRange, format!("index {index} >= {}", s.points.len())))?;
        *out = AsPoint {
            re: p.value.re,
            im: p.value.im,
            modulus: p.modulus,
            sector: p.sector.s,
            boundary: p.boundary as i32,
            multiplicity: p.multiplicity as u32,
            residual: p.residual,
        };
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn as_point_set_free(s: *mut AsPointSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs a verifier (`theorem` is an `AsTheorem` value); `*passed` is 1 when
/// every predicate holds.
///
/// # Safety
/// Handles must be live and `passed` valid.
#[no_mangle]
pub unsafe extern "C" fn as_verify(
    f: *const AsFunction,
    points: *const AsPointSet,
    alpha: AsComplex,
    theorem: i32,
    passed: *mut i32,
) -> AsStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("function"))?;
        let s = points.as_ref().ok_or_else(|| null("point set"))?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let t = match theorem {
            x if x == AsTheorem::Auto as i32 => TheoremChoice::Auto,
            x if x == AsTheorem::Main as i32 => TheoremChoice::Main,
            x if x == AsTheorem::Main2 as i32 => TheoremChoice::Main2,
            x if x == AsTheorem::First as i32 => TheoremChoice::First,
            x if x == AsTheorem::K2 as i32 => TheoremChoice::K2,
            x => return Err((AsStatus::InvalidArgument, format!("unknown theorem code {x}"))),
        };
        let r = lib(io::verify_points(&f.spec, &s.points, cpx(alpha), t, &VerifyOptions::default()))?;
        *passed = r.passed as i32;
        Ok(())
    })
}

/// Sector of the next point by modulus, given the sectors of `alpha` and
/// of the current point.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn as_predict_next_sector(p: i64, k: u32, alpha_sector: u32, current: u32, out: *mut u32) -> AsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if k < 2 || alpha_sector >= 2 * k || current >= 2 * k {
            return Err((AsStatus::OutOfRange, format!("sector indices must be below 2k = {}", 2 * k as u64)));
        }
        let n = lib(predict_next_sector(p, k, SectorIndex::new(alpha_sector as i64, k), SectorIndex::new(current as i64, k)))?;
        *out = n.s;
        Ok(())
    })
}

/// Argument-principle counts per sector over `r_in < |z| < r_out`; `counts`
/// receives `2k` entries.
///
/// # Safety
/// `f` must be a live handle and `counts` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn as_census(f: *const AsFunction, alpha: AsComplex, r_in: f64, r_out: f64, counts: *mut u32, len: usize) -> AsStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("function"))?;
        if counts.is_null() {
            return Err(null("counts"));
        }
        let k = f.func.k();
        if len < 2 * k as usize {
            return Err((AsStatus::OutOfRange, format!("counts needs {} entries, got {len}", 2 * k)));
        }
        let c = lib(sector_census(&f.func, cpx(alpha), r_in, r_out, k, DEFAULT_QUAD_TOL))?;
        std::slice::from_raw_parts_mut(counts, len)[..c.counts.len()].copy_from_slice(&c.counts);
        Ok(())
    })
}
