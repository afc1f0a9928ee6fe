//! C ABI over `tangle-core`.
//!
//! Permutations and tangles are handed out as opaque pointers that must be
//! released with the matching `*_free` function. Every fallible call returns
//! a [`TangleStatus`]; on failure a message for the calling thread is kept
//! until the next call and can be read with [`tangle_last_error_message`].
//! Strings returned through `char **` outputs are owned by the caller and
//! freed with [`tangle_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tangle_core::{Error, Permutation, RenderOptions, Tangle, Verdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangleStatus {
    Ok = 0,
    NotPerfect = 1,
    Contains321 = 2,
    InvalidInput = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Opaque permutation handle.
pub struct TanglePermutation(Permutation);

/// Opaque tangle handle.
pub struct TangleDiagram(Tangle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(e: &Error) -> TangleStatus {
    match e {
        Error::NotPerfect(_) => TangleStatus::NotPerfect,
        Error::Contains321 { .. } => TangleStatus::Contains321,
        Error::InvariantViolation(_) => TangleStatus::Internal,
        _ => TangleStatus::InvalidInput,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (TangleStatus, String)>) -> TangleStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TangleStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            TangleStatus::Internal
        }
    }
}

fn core<T>(r: tangle_core::Result<T>) -> Result<T, (TangleStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, (TangleStatus, String)> {
    p.as_ref().ok_or((
        TangleStatus::NullPointer,
        "null pointer argument".to_string(),
    ))
}

unsafe fn input_str<'a>(p: *const c_char) -> Result<&'a str, (TangleStatus, String)> {
    if p.is_null() {
        return Err((
            TangleStatus::NullPointer,
            "null string argument".to_string(),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        (
            TangleStatus::InvalidInput,
            "string is not UTF-8".to_string(),
        )
    })
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (TangleStatus, String)> {
    if out.is_null() {
        return Err((TangleStatus::NullPointer, "null output pointer".to_string()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Parses whitespace- or comma-separated one-line notation.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_permutation_parse(
    text: *const c_char,
    out: *mut *mut TanglePermutation,
) -> TangleStatus {
    guard(|| {
        let p = core(Permutation::parse(input_str(text)?))?;
        put(out, Box::into_raw(Box::new(TanglePermutation(p))))
    })
}

/// # Safety
/// `p` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tangle_permutation_free(p: *mut TanglePermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of entries, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tangle_permutation_len(p: *const TanglePermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Decides perfection. Returns `OK` with the marking as text (lines
/// `element: marks`, `-` for empty) when perfect and `NOT_PERFECT` with a
/// reason in the error message otherwise. `marking_out` may be null.
///
/// # Safety
/// `p` must be a live handle; `marking_out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_recognize(
    p: *const TanglePermutation,
    marking_out: *mut *mut c_char,
) -> TangleStatus {
    guard(|| {
        let p = deref(p)?;
        match core(tangle_core::recognize(&p.0))? {
            Verdict::Perfect(m) => {
                if !marking_out.is_null() {
                    marking_out.write(owned_string(m.to_text()));
                }
                Ok(())
            }
            Verdict::NotPerfect(why) => Err((TangleStatus::NotPerfect, why.to_string())),
        }
    })
}

/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_build_direct(
    p: *const TanglePermutation,
    out: *mut *mut TangleDiagram,
) -> TangleStatus {
    guard(|| {
        let t = core(tangle_core::build_direct(&deref(p)?.0))?;
        put(out, Box::into_raw(Box::new(TangleDiagram(t))))
    })
}

/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_build_perfect(
    p: *const TanglePermutation,
    out: *mut *mut TangleDiagram,
) -> TangleStatus {
    guard(|| {
        let t = core(tangle_core::build_perfect(&deref(p)?.0))?;
        put(out, Box::into_raw(Box::new(TangleDiagram(t.tangle))))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_from_json(
    json: *const c_char,
    out: *mut *mut TangleDiagram,
) -> TangleStatus {
    guard(|| {
        let t = core(tangle_core::read_tangle(input_str(json)?))?;
        put(out, Box::into_raw(Box::new(TangleDiagram(t))))
    })
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_to_json(
    t: *const TangleDiagram,
    out: *mut *mut c_char,
) -> TangleStatus {
    guard(|| {
        let json = core(tangle_core::write_tangle(&deref(t)?.0))?;
        put(out, owned_string(json))
    })
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_to_svg(
    t: *const TangleDiagram,
    unit: u32,
    rounded: bool,
    colored: bool,
    out: *mut *mut c_char,
) -> TangleStatus {
    guard(|| {
        let opts = RenderOptions {
            unit,
            rounded,
            colored,
            ..RenderOptions::default()
        };
        let svg = core(tangle_core::to_svg(&deref(t)?.0, &opts))?;
        put(out, owned_string(svg))
    })
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_corner_count(
    t: *const TangleDiagram,
    out: *mut usize,
) -> TangleStatus {
    guard(|| {
        let total = deref(t)?.0.corner_count().total;
        put(out, total)
    })
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_is_simple(
    t: *const TangleDiagram,
    out: *mut bool,
) -> TangleStatus {
    guard(|| {
        let simple = core(deref(t)?.0.is_simple())?;
        put(out, simple)
    })
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_is_direct(
    t: *const TangleDiagram,
    out: *mut bool,
) -> TangleStatus {
    guard(|| {
        let direct = deref(t)?.0.is_direct();
        put(out, direct)
    })
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_is_perfect(
    t: *const TangleDiagram,
    out: *mut bool,
) -> TangleStatus {
    guard(|| {
        let perfect = core(deref(t)?.0.is_perfect())?;
        put(out, perfect)
    })
}

/// # Safety
/// `t` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tangle_diagram_free(t: *mut TangleDiagram) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn tangle_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn tangle_status_str(status: TangleStatus) -> *const c_char {
    let s: &'static CStr = match status {
        TangleStatus::Ok => c"ok",
        TangleStatus::NotPerfect => c"permutation is not perfect",
        TangleStatus::Contains321 => c"permutation contains 321",
        TangleStatus::InvalidInput => c"invalid input",
        TangleStatus::NullPointer => c"null pointer",
        TangleStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tangle_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}
