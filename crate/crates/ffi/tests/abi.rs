use std::ffi::{CStr, CString};
use std::ptr;

use steinerlab_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { sl_string_free(p) };
    s
}

fn last_error() -> String {
    let p = sl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn shape(s: SlShape, n: usize) -> *mut SlComplex {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_shape(s, n, &mut c) }, SlStatus::Ok);
    c
}

fn count(c: *const SlComplex, k: usize) -> usize {
    let mut n = 0;
    assert_eq!(unsafe { sl_complex_count(c, k, &mut n) }, SlStatus::Ok);
    n
}

#[test]
fn cube_counts_and_steiner_report() {
    let c = shape(SlShape::Cube, 3);
    assert_eq!([0, 1, 2, 3].map(|k| count(c, k)), [8, 12, 6, 1]);
    let mut top = 0;
    assert_eq!(unsafe { sl_complex_top_degree(c, &mut top) }, SlStatus::Ok);
    assert_eq!(top, 3);

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_is_steiner(c, &mut r) }, SlStatus::Ok);
    assert_eq!(unsafe { sl_report_passed(r) }, 1);
    let n = unsafe { sl_report_len(r) };
    assert!(n > 0);
    let mut names = Vec::new();
    for i in 0..n {
        let (mut name, mut passed) = (ptr::null_mut(), 0);
        assert_eq!(unsafe { sl_report_check(r, i, &mut name, &mut passed) }, SlStatus::Ok);
        assert_eq!(passed, 1);
        names.push(take_string(name));
    }
    assert!(names.iter().any(|n| n == "STRONGLY_LOOP_FREE"));
    let (mut name, mut passed) = (ptr::null_mut(), 7);
    assert_eq!(unsafe { sl_report_check(r, n, &mut name, &mut passed) }, SlStatus::InvalidArgument);
    assert!(name.is_null());
    unsafe {
        sl_report_free(r);
        sl_complex_free(c);
    }
}

#[test]
fn join_of_points_is_interval_and_ops_compose() {
    let u = shape(SlShape::Unit, 0);
    let mut i = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_binary(SlBinaryOp::Join, u, u, &mut i) }, SlStatus::Ok);
    assert_eq!((count(i, 0), count(i, 1)), (2, 1));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_unary(SlUnaryOp::Suspension, i, &mut s) }, SlStatus::Ok);
    assert_eq!((count(s, 0), count(s, 1), count(s, 2)), (2, 2, 1));

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_binary(SlBinaryOp::Tensor, i, i, &mut t) }, SlStatus::Ok);
    assert_eq!((count(t, 0), count(t, 1), count(t, 2)), (4, 4, 1));

    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_unary(SlUnaryOp::Coop, t, &mut d) }, SlStatus::Ok);
    assert_eq!(count(d, 2), 1);
    unsafe {
        for c in [u, i, s, t, d] {
            sl_complex_free(c);
        }
    }
}

#[test]
fn json_round_trip() {
    let c = shape(SlShape::Oriental, 3);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_emit_json(c, &mut json) }, SlStatus::Ok);
    let text = take_string(json);
    let ctext = CString::new(text.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_parse_json(ctext.as_ptr(), &mut back) }, SlStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_emit_json(back, &mut again) }, SlStatus::Ok);
    assert_eq!(take_string(again), text);
    unsafe {
        sl_complex_free(c);
        sl_complex_free(back);
    }
}

#[test]
fn parse_errors_carry_codes_and_messages() {
    let bad = CString::new("{ not json").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_parse_json(bad.as_ptr(), &mut c) }, SlStatus::ParseError);
    assert!(c.is_null());
    assert!(last_error().starts_with("PARSE_ERROR"));

    let doc = steinerlab::io::emit_complex(&steinerlab::fixtures::d_squared_fixture());
    let doc = CString::new(doc).unwrap();
    assert_eq!(unsafe { sl_complex_parse_json(doc.as_ptr(), &mut c) }, SlStatus::ValidationError);
    assert!(last_error().contains("D2_ZERO"));

    let invalid_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { sl_complex_parse_json(invalid_utf8.as_ptr().cast(), &mut c) }, SlStatus::InvalidUtf8);
}

#[test]
fn null_pointers_are_rejected() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_shape(SlShape::Cube, 2, ptr::null_mut()) }, SlStatus::NullPointer);
    assert_eq!(unsafe { sl_complex_parse_json(ptr::null(), &mut c) }, SlStatus::NullPointer);
    assert_eq!(unsafe { sl_complex_binary(SlBinaryOp::Join, ptr::null(), ptr::null(), &mut c) }, SlStatus::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { sl_complex_count(ptr::null(), 0, &mut n) }, SlStatus::NullPointer);
    assert_eq!(unsafe { sl_report_passed(ptr::null()) }, 0);
    unsafe {
        sl_complex_free(ptr::null_mut());
        sl_map_free(ptr::null_mut());
        sl_report_free(ptr::null_mut());
        sl_string_free(ptr::null_mut());
    }
}

#[test]
fn retraction_pairs_compose_to_identity() {
    for (which, n, m) in [
        (SlRetraction::Xi, 3, 0),
        (SlRetraction::QCube, 3, 0),
        (SlRetraction::Ell, 3, 0),
        (SlRetraction::Zeta, 2, 1),
    ] {
        let mut r = ptr::null_mut();
        assert_eq!(unsafe { sl_retraction_verify(which, n, m, &mut r) }, SlStatus::Ok);
        assert_eq!(unsafe { sl_report_passed(r) }, 1, "{which:?}");
        unsafe { sl_report_free(r) };

        let (mut e, mut q) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(unsafe { sl_retraction(which, n, m, &mut e, &mut q) }, SlStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(unsafe { sl_map_compose(e, q, &mut id) }, SlStatus::Ok);
        let (mut src, mut tgt) = (ptr::null_mut(), ptr::null_mut());
        unsafe {
            assert_eq!(sl_map_source(id, &mut src), SlStatus::Ok);
            assert_eq!(sl_map_target(id, &mut tgt), SlStatus::Ok);
        }
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        unsafe {
            sl_complex_emit_json(src, &mut a);
            sl_complex_emit_json(tgt, &mut b);
        }
        assert_eq!(take_string(a), take_string(b));

        let mut v = ptr::null_mut();
        assert_eq!(unsafe { sl_map_validate(id, &mut v) }, SlStatus::Ok);
        assert_eq!(unsafe { sl_report_passed(v) }, 1);

        let mut json = ptr::null_mut();
        assert_eq!(unsafe { sl_map_emit_json(q, &mut json) }, SlStatus::Ok);
        let text = CString::new(take_string(json)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(unsafe { sl_map_parse_json(text.as_ptr(), &mut back) }, SlStatus::Ok);

        let mut wrong = ptr::null_mut();
        assert_eq!(unsafe { sl_map_compose(q, q, &mut wrong) }, SlStatus::SourceTargetMismatch);
        unsafe {
            sl_report_free(v);
            sl_complex_free(src);
            sl_complex_free(tgt);
            for f in [e, q, id, back] {
                sl_map_free(f);
            }
        }
    }
}

#[test]
fn library_errors_map_to_codes() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sl_complex_shape(SlShape::Oriental, 40, &mut c) }, SlStatus::TooLarge);
    assert!(c.is_null());
    assert!(last_error().starts_with("TOO_LARGE"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/steinerlab.h");
    for f in [
        "sl_last_error", "sl_string_free", "sl_complex_shape", "sl_complex_binary", "sl_complex_unary",
        "sl_complex_parse_json", "sl_complex_emit_json", "sl_complex_count", "sl_complex_top_degree",
        "sl_complex_validate", "sl_complex_is_steiner", "sl_complex_free", "sl_retraction", "sl_retraction_verify",
        "sl_map_compose", "sl_map_source", "sl_map_target", "sl_map_validate", "sl_map_parse_json",
        "sl_map_emit_json", "sl_map_free", "sl_report_passed", "sl_report_len", "sl_report_check",
        "sl_report_text", "sl_report_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct SlComplex SlComplex;"));
}
