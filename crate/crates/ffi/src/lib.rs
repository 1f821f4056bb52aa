//! C ABI for centkit.
//!
//! Matrices are passed as opaque handles. Every fallible function returns a
//! [`CentkitStatus`]; results (and, on failure, an error object) are written
//! as NUL-terminated JSON strings that the caller releases with
//! [`centkit_string_free`].

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use centkit::json::{
    certificate_to_json, cycle_type_to_json, error_to_json, generalized_type_to_json, green_type_to_json,
    matrix_from_str, matrix_to_json, variation_report_to_json,
};
use centkit::verify::{run_suite, VerifyOptions};
use centkit::{
    an_cent_equal, centralizers_conjugate, cycle_type, generalized_type, green_type, sn_cent_equal, Error, Matrix,
    Permutation,
};
use serde_json::{json, Value};

/// Status codes. Negative values are ABI misuse, positive values mirror
/// the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentkitStatus {
    Ok = 0,
    /// A decision procedure answered "no".
    False = 1,
    ParseError = 2,
    UnsupportedField = 3,
    Failed = 4,
    Panic = 5,
    NullPointer = -1,
    InvalidUtf8 = -2,
}

/// Opaque matrix handle.
pub struct CentkitMatrix {
    inner: Matrix,
}

/// Group selector for [`centkit_perm_cent_equal`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentkitGroup {
    Symmetric = 0,
    Alternating = 1,
}

fn status_of(e: &Error) -> CentkitStatus {
    match centkit::json::exit_code(e) {
        2 => CentkitStatus::ParseError,
        3 => CentkitStatus::UnsupportedField,
        _ => CentkitStatus::Failed,
    }
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) {
    if out.is_null() {
        return;
    }
    let s = CString::new(v.to_string()).expect("JSON has no interior NUL");
    *out = s.into_raw();
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CentkitStatus> {
    if p.is_null() {
        return Err(CentkitStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| CentkitStatus::InvalidUtf8)
}

/// Runs `f`, writing its JSON (or an error object) to `out`.
unsafe fn guarded<F>(out: *mut *mut c_char, f: F) -> CentkitStatus
where
    F: FnOnce() -> Result<(Value, CentkitStatus), Result<Error, CentkitStatus>>,
{
    if !out.is_null() {
        *out = ptr::null_mut();
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok((v, status))) => {
            write_json(out, &v);
            status
        }
        Ok(Err(Ok(e))) => {
            write_json(out, &error_to_json(&e));
            status_of(&e)
        }
        Ok(Err(Err(status))) => status,
        Err(_) => {
            write_json(out, &json!({"error": {"kind": "Panic", "message": "internal panic"}}));
            CentkitStatus::Panic
        }
    }
}

/// Parses a matrix from its JSON form `{"field": ..., "rows": [...]}`.
/// On success `*out` receives a handle owned by the caller.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn centkit_matrix_from_json(json: *const c_char, out: *mut *mut CentkitMatrix) -> CentkitStatus {
    if out.is_null() {
        return CentkitStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let s = match read_str(json) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match catch_unwind(|| matrix_from_str(s)) {
        Ok(Ok(m)) => {
            *out = Box::into_raw(Box::new(CentkitMatrix { inner: m }));
            CentkitStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => CentkitStatus::Panic,
    }
}

/// # Safety
/// `m` must be null or a handle from [`centkit_matrix_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn centkit_matrix_free(m: *mut CentkitMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of rows of a matrix handle, or 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn centkit_matrix_rows(m: *const CentkitMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn centkit_matrix_to_json(m: *const CentkitMatrix, out: *mut *mut c_char) -> CentkitStatus {
    let Some(m) = m.as_ref() else {
        return CentkitStatus::NullPointer;
    };
    guarded(out, || Ok((matrix_to_json(&m.inner), CentkitStatus::Ok)))
}

/// Cycle, Green and generalized types of a matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn centkit_mtype(m: *const CentkitMatrix, out: *mut *mut c_char) -> CentkitStatus {
    let Some(m) = m.as_ref() else {
        return CentkitStatus::NullPointer;
    };
    guarded(out, || {
        let ct = cycle_type(&m.inner).map_err(Ok)?;
        let gen = generalized_type(&m.inner).map_err(Ok)?;
        let v = json!({
            "cycle_type": cycle_type_to_json(&ct),
            "green_type": green_type_to_json(&green_type(&ct)),
            "generalized_type": generalized_type_to_json(&gen),
        });
        Ok((v, CentkitStatus::Ok))
    })
}

/// Decides conjugacy of the centralizers of `x` and `y`. Returns
/// [`CentkitStatus::Ok`] when conjugate and [`CentkitStatus::False`] when
/// not; the certificate is written to `out` in both cases.
///
/// # Safety
/// `x`, `y` must be live handles; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn centkit_centconj(
    x: *const CentkitMatrix,
    y: *const CentkitMatrix,
    out: *mut *mut c_char,
) -> CentkitStatus {
    let (Some(x), Some(y)) = (x.as_ref(), y.as_ref()) else {
        return CentkitStatus::NullPointer;
    };
    guarded(out, || {
        let cert = centralizers_conjugate(&x.inner, &y.inner).map_err(Ok)?;
        let status = if cert.verdict { CentkitStatus::Ok } else { CentkitStatus::False };
        Ok((certificate_to_json(&cert), status))
    })
}

/// Decides whether two permutations (cycle notation or JSON image arrays)
/// have equal centralizers in `S_n` or `A_n`. `n` of 0 means the largest
/// point mentioned. `group` is a [`CentkitGroup`] value.
///
/// # Safety
/// `g`, `h` must be valid NUL-terminated strings; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn centkit_perm_cent_equal(
    g: *const c_char,
    h: *const c_char,
    n: usize,
    group: c_int,
    out: *mut *mut c_char,
) -> CentkitStatus {
    let (g, h) = match (read_str(g), read_str(h)) {
        (Ok(g), Ok(h)) => (g, h),
        (Err(st), _) | (_, Err(st)) => return st,
    };
    guarded(out, || {
        let n = (n > 0).then_some(n);
        let g = Permutation::parse(g, n).map_err(Ok)?;
        let h = Permutation::parse(h, n).map_err(Ok)?;
        let m = g.n().max(h.n());
        let (g, h) = (g.extend(m), h.extend(m));
        let report = match group {
            g_ if g_ == CentkitGroup::Symmetric as c_int => sn_cent_equal(&g, &h),
            g_ if g_ == CentkitGroup::Alternating as c_int => an_cent_equal(&g, &h),
            other => Err(Error::Parse(format!("unknown group selector {other}"))),
        }
        .map_err(Ok)?;
        let status = if report.equal { CentkitStatus::Ok } else { CentkitStatus::False };
        Ok((variation_report_to_json(&report), status))
    })
}

/// Runs a verification suite. `scale` of 0 selects the suite default,
/// `jobs` of 0 uses every core. Returns [`CentkitStatus::False`] when the
/// suite found counterexamples.
///
/// # Safety
/// `suite` must be a valid NUL-terminated string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn centkit_verify(
    suite: *const c_char,
    seed: u64,
    scale: usize,
    jobs: usize,
    out: *mut *mut c_char,
) -> CentkitStatus {
    let suite = match read_str(suite) {
        Ok(s) => s,
        Err(st) => return st,
    };
    guarded(out, || {
        let opts = VerifyOptions { seed, scale: (scale > 0).then_some(scale), jobs };
        let report = run_suite(suite, &opts).map_err(Ok)?;
        let status = if report.passed() { CentkitStatus::Ok } else { CentkitStatus::False };
        Ok((report.to_json(false), status))
    })
}

/// Releases a string returned through an `out` parameter.
///
/// # Safety
/// `s` must be null or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn centkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn centkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Nonzero when `status` denotes an error rather than a verdict.
#[no_mangle]
pub extern "C" fn centkit_status_is_error(status: CentkitStatus) -> c_int {
    !matches!(status, CentkitStatus::Ok | CentkitStatus::False) as c_int
}
