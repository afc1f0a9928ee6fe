use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tangle_ffi::*;

fn text(s: *const c_char) -> String {
    unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string()
}

fn take(s: *mut c_char) -> String {
    let out = text(s);
    unsafe { tangle_string_free(s) };
    out
}

fn parse(s: &str) -> *mut TanglePermutation {
    let c = CString::new(s).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_permutation_parse(c.as_ptr(), &mut p) },
        TangleStatus::Ok
    );
    p
}

#[test]
fn parse_and_free() {
    let p = parse("3 1 2");
    assert_eq!(unsafe { tangle_permutation_len(p) }, 3);
    unsafe { tangle_permutation_free(p) };
    unsafe { tangle_permutation_free(ptr::null_mut()) };
}

#[test]
fn invalid_input_sets_a_message() {
    let c = CString::new("1 1").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_permutation_parse(c.as_ptr(), &mut p) },
        TangleStatus::InvalidInput
    );
    assert!(p.is_null());
    assert!(text(tangle_last_error_message()).contains("bijection"));
    let q = parse("1 2");
    assert!(tangle_last_error_message().is_null());
    unsafe { tangle_permutation_free(q) };
}

#[test]
fn null_pointers_are_reported() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_permutation_parse(ptr::null(), &mut p) },
        TangleStatus::NullPointer
    );
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_build_direct(ptr::null(), &mut t) },
        TangleStatus::NullPointer
    );
    let q = parse("2 1");
    assert_eq!(
        unsafe { tangle_build_direct(q, ptr::null_mut()) },
        TangleStatus::NullPointer
    );
    unsafe { tangle_permutation_free(q) };
}

#[test]
fn recognize_reports_markings_and_reasons() {
    let p = parse("3 4 1 2");
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tangle_recognize(p, &mut m) }, TangleStatus::Ok);
    assert_eq!(take(m), "1: L\n2: L\n3: R\n4: R\n");
    assert_eq!(
        unsafe { tangle_recognize(p, ptr::null_mut()) },
        TangleStatus::Ok
    );
    unsafe { tangle_permutation_free(p) };

    let p = parse("7 3 2 4 6 5 1");
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_recognize(p, &mut m) },
        TangleStatus::NotPerfect
    );
    assert!(m.is_null());
    assert!(text(tangle_last_error_message()).contains("irregular"));
    unsafe { tangle_permutation_free(p) };
}

#[test]
fn builders_and_predicates() {
    let p = parse("4 1 5 2 6 3");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { tangle_build_perfect(p, &mut t) }, TangleStatus::Ok);
    let (mut simple, mut direct, mut perfect) = (false, false, false);
    let mut corners = 0usize;
    unsafe {
        assert_eq!(tangle_diagram_is_simple(t, &mut simple), TangleStatus::Ok);
        assert_eq!(tangle_diagram_is_direct(t, &mut direct), TangleStatus::Ok);
        assert_eq!(tangle_diagram_is_perfect(t, &mut perfect), TangleStatus::Ok);
        assert_eq!(
            tangle_diagram_corner_count(t, &mut corners),
            TangleStatus::Ok
        );
    }
    assert!(simple && direct && perfect);
    assert_eq!(corners, 12);
    unsafe { tangle_diagram_free(t) };
    unsafe { tangle_permutation_free(p) };

    let p = parse("3 2 1");
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_build_direct(p, &mut t) },
        TangleStatus::Contains321
    );
    assert_eq!(unsafe { tangle_build_perfect(p, &mut t) }, TangleStatus::Ok);
    unsafe { tangle_diagram_free(t) };
    unsafe { tangle_permutation_free(p) };

    let p = parse("3 6 1 4 7 2 5");
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_build_perfect(p, &mut t) },
        TangleStatus::NotPerfect
    );
    unsafe { tangle_permutation_free(p) };
}

#[test]
fn json_and_svg() {
    let json = CString::new(r#"{"n":2,"start":[2,1],"rows":[[],[1],[]]}"#).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_diagram_from_json(json.as_ptr(), &mut t) },
        TangleStatus::Ok
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tangle_diagram_to_json(t, &mut out) },
        TangleStatus::Ok
    );
    assert_eq!(take(out), json.to_str().unwrap());
    assert_eq!(
        unsafe { tangle_diagram_to_svg(t, 24, true, true, &mut out) },
        TangleStatus::Ok
    );
    assert!(take(out).starts_with("<svg"));
    assert_eq!(
        unsafe { tangle_diagram_to_svg(t, 2, false, false, &mut out) },
        TangleStatus::InvalidInput
    );
    unsafe { tangle_diagram_free(t) };

    let bad = CString::new(r#"{"n":2,"start":[2,1],"rows":[[1]]}"#).unwrap();
    assert_eq!(
        unsafe { tangle_diagram_from_json(bad.as_ptr(), &mut t) },
        TangleStatus::InvalidInput
    );
}

#[test]
fn status_strings() {
    assert_eq!(text(tangle_status_str(TangleStatus::Ok)), "ok");
    assert_eq!(
        text(tangle_status_str(TangleStatus::Contains321)),
        "permutation contains 321"
    );
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tangle_ffi.h"))
            .unwrap();
    for name in [
        "tangle_permutation_parse",
        "tangle_recognize",
        "tangle_build_perfect",
        "tangle_diagram_to_svg",
        "tangle_last_error_message",
        "typedef struct TangleDiagram TangleDiagram;",
        "TANGLE_STATUS_NOT_PERFECT = 1",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
