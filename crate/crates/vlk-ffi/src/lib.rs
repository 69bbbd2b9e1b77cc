//! C ABI for the `vlk` virtual-link invariant library.
//!
//! Diagrams are opaque handles created by the parse functions and released
//! with [`vlk_diagram_free`]. Every fallible call returns a [`VlkStatus`]
//! code and writes its result through an out-pointer, which is left
//! untouched on failure. Strings returned through out-pointers are
//! NUL-terminated, UTF-8, owned by the library, and must be released with
//! [`vlk_string_free`].
//!
//! No call ever unwinds across the ABI: internal panics are caught and
//! reported as [`VlkStatus::InternalError`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use vlk::diagram::{parse_gauss, parse_vld, serialize_vld, DiagramCode};
use vlk::report::{alexander_report, conway_report};

/// Result code of every fallible ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VlkStatus {
    /// The call succeeded and the out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text was not a well-formed diagram code.
    ParseError = 3,
    /// A numeric argument was rejected (for example a non-prime modulus).
    BadArgument = 4,
    /// An internal invariant failed; the out-parameters are untouched.
    InternalError = 5,
}

/// Opaque diagram handle. Allocate via parsing, release with
/// [`vlk_diagram_free`].
pub struct VlkDiagram {
    code: DiagramCode,
}

fn guarded<F: FnOnce() -> VlkStatus + UnwindSafe>(f: F) -> VlkStatus {
    catch_unwind(f).unwrap_or(VlkStatus::InternalError)
}

/// Reads a NUL-terminated UTF-8 string; the caller has already checked for
/// NULL.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, VlkStatus> {
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| VlkStatus::InvalidUtf8)
}

fn give_string(s: String, out: *mut *mut c_char) -> VlkStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            VlkStatus::Ok
        }
        Err(_) => VlkStatus::InternalError,
    }
}

fn give_diagram(code: DiagramCode, out: *mut *mut VlkDiagram) -> VlkStatus {
    unsafe { *out = Box::into_raw(Box::new(VlkDiagram { code })) };
    VlkStatus::Ok
}

/// Parse crossing-code ("VLD") text into a new diagram handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_parse(
    text: *const c_char,
    out: *mut *mut VlkDiagram,
) -> VlkStatus {
    if text.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    guarded(|| {
        let s = match read_str(text) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match parse_vld(s) {
            Ok(code) => give_diagram(code, out),
            Err(_) => VlkStatus::ParseError,
        }
    })
}

/// Parse a one-line Gauss code (e.g. `O1+U2+O3+U1+O2+U3+`) into a new
/// diagram handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_parse_gauss(
    text: *const c_char,
    out: *mut *mut VlkDiagram,
) -> VlkStatus {
    if text.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    guarded(|| {
        let s = match read_str(text) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match parse_gauss(s.trim()) {
            Ok(code) => give_diagram(code, out),
            Err(_) => VlkStatus::ParseError,
        }
    })
}

/// Release a diagram handle. NULL is ignored.
///
/// # Safety
/// `diagram` must be NULL or a handle produced by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_free(diagram: *mut VlkDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string produced by this library that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn vlk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of classical crossings.
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_crossing_count(
    diagram: *const VlkDiagram,
    out: *mut usize,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    *out = (*diagram).code.n_crossings();
    VlkStatus::Ok
}

/// Writhe: positive minus negative crossings.
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_writhe(
    diagram: *const VlkDiagram,
    out: *mut i64,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    *out = (*diagram).code.writhe();
    VlkStatus::Ok
}

/// Number of link components (closed strands plus free loops).
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_component_count(
    diagram: *const VlkDiagram,
    out: *mut usize,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    guarded(|| {
        let n = d.code.components().count();
        *out = n;
        VlkStatus::Ok
    })
}

/// New handle for the mirror image (all crossing signs flipped by exchanging
/// over- and under-strands).
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_mirror(
    diagram: *const VlkDiagram,
    out: *mut *mut VlkDiagram,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    guarded(|| give_diagram(d.code.mirror(), out))
}

/// Crossing-code text of the diagram (round-trips through
/// [`vlk_diagram_parse`]).
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_diagram_serialize(
    diagram: *const VlkDiagram,
    out: *mut *mut c_char,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    guarded(|| give_string(serialize_vld(&d.code), out))
}

/// Canonical string form of the two-variable polynomial invariant, e.g.
/// `"-1 + 1*x*y"`; `"0"` for the zero polynomial.
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_conway_canonical(
    diagram: *const VlkDiagram,
    out: *mut *mut c_char,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    guarded(|| {
        give_string(
            vlk::conway::z_polynomial(&d.code).to_canonical_with("x", "y"),
            out,
        )
    })
}

/// Canonical string form of the unit-normalized one-variable polynomial
/// invariant in `t`.
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_alexander_canonical(
    diagram: *const VlkDiagram,
    out: *mut *mut c_char,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    guarded(|| {
        give_string(
            vlk::alexander::alexander_polynomial(&d.code).to_canonical_with("t"),
            out,
        )
    })
}

/// Full two-variable invariant record as one JSON object (same shape as the
/// CLI's JSON output, minus the file name).
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlk_conway_json(
    diagram: *const VlkDiagram,
    out: *mut *mut c_char,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    guarded(|| {
        let rec = conway_report(&d.code);
        match serde_json::to_string(&rec) {
            Ok(json) => give_string(json, out),
            Err(_) => VlkStatus::InternalError,
        }
    })
}

/// Full one-variable invariant record as one JSON object, refined modulo
/// each of the `n_primes` moduli in `primes` (may be NULL when `n_primes`
/// is 0). Rejects non-prime moduli with [`VlkStatus::BadArgument`].
///
/// # Safety
/// `diagram` must be a live handle, `out` a valid pointer, and `primes`
/// must point to at least `n_primes` readable values (or be NULL when
/// `n_primes` is 0).
#[no_mangle]
pub unsafe extern "C" fn vlk_alexander_json(
    diagram: *const VlkDiagram,
    primes: *const u64,
    n_primes: usize,
    out: *mut *mut c_char,
) -> VlkStatus {
    if diagram.is_null() || out.is_null() || (primes.is_null() && n_primes > 0) {
        return VlkStatus::NullArgument;
    }
    let d = &*diagram;
    let ps: Vec<u64> = if n_primes == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(primes, n_primes).to_vec()
    };
    guarded(move || {
        let rec = match alexander_report(&d.code, &ps) {
            Ok(rec) => rec,
            Err(_) => return VlkStatus::BadArgument,
        };
        match serde_json::to_string(&rec) {
            Ok(json) => give_string(json, out),
            Err(_) => VlkStatus::InternalError,
        }
    })
}
