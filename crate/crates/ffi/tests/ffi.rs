use std::ffi::{CStr, CString};
use std::ptr;

use schouten_ffi::*;

fn last_error() -> String {
    let p = schouten_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(text: &str, n: u64) -> *mut SchoutenChain {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schouten_chain_parse(text.as_ptr(), n, &mut out) }, SchoutenStatus::Ok);
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { schouten_string_free(p) };
    s
}

#[test]
fn dims_betti_and_euler() {
    let mut d = 0u64;
    assert_eq!(unsafe { schouten_chain_dim(2, 2, 0, 0, &mut d) }, SchoutenStatus::Ok);
    assert_eq!(d, 18);

    let mut r = SchoutenBettiReport::default();
    assert_eq!(unsafe { schouten_betti(2, 2, 1, 1, &mut r) }, SchoutenStatus::Ok);
    assert_eq!((r.n, r.m, r.w, r.h, r.betti), (2, 2, 1, 1, 0));
    assert_eq!(r.dim, r.rank_out + r.rank_in);

    let mut chi = 7i64;
    assert_eq!(unsafe { schouten_euler(2, 0, 0, &mut chi) }, SchoutenStatus::Ok);
    assert_eq!(chi, 0);
}

#[test]
fn invalid_arguments_are_reported() {
    let mut d = 0u64;
    assert_eq!(unsafe { schouten_chain_dim(0, 2, 0, 0, &mut d) }, SchoutenStatus::InvalidArgument);
    assert!(last_error().contains("n must be"));
    assert_eq!(unsafe { schouten_chain_dim(2, 2, 0, 0, ptr::null_mut()) }, SchoutenStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schouten_chain_parse(ptr::null(), 2, &mut out) }, SchoutenStatus::NullPointer);
    let junk = CString::new("not a chain").unwrap();
    assert_eq!(unsafe { schouten_chain_parse(junk.as_ptr(), 2, &mut out) }, SchoutenStatus::Parse);
    assert!(out.is_null());
    assert_eq!(unsafe { schouten_certify(ptr::null(), &mut ptr::null_mut()) }, SchoutenStatus::NullPointer);
}

#[test]
fn chain_handles() {
    let c = parse("1 | x[0,0] d[1] ; x[1,0] d[1] ; x[1,1] d[2]", 2);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { schouten_chain_boundary(c, &mut d) }, SchoutenStatus::Ok);
    let mut dd = ptr::null_mut();
    assert_eq!(unsafe { schouten_chain_boundary(d, &mut dd) }, SchoutenStatus::Ok);
    let (mut zero_d, mut zero_dd) = (true, false);
    unsafe {
        assert_eq!(schouten_chain_is_zero(d, &mut zero_d), SchoutenStatus::Ok);
        assert_eq!(schouten_chain_is_zero(dd, &mut zero_dd), SchoutenStatus::Ok);
    }
    assert!(!zero_d);
    assert!(zero_dd);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { schouten_chain_to_string(c, &mut text) }, SchoutenStatus::Ok);
    let text = take_string(text);
    assert!(text.contains("x[1,1] d[2]"));
    unsafe {
        schouten_chain_free(c);
        schouten_chain_free(d);
        schouten_chain_free(dd);
        schouten_chain_free(ptr::null_mut());
    }
}

#[test]
fn certificates_round_trip_and_detect_non_cycles() {
    let pi = parse("1 | x[1,1] d[1,2] ; x[1,1] d[1,2]", 2);
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { schouten_certify(pi, &mut cert) }, SchoutenStatus::Ok);
    assert_eq!(unsafe { schouten_certificate_check(cert) }, SchoutenStatus::Ok);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { schouten_certificate_to_json(cert, &mut json) }, SchoutenStatus::Ok);
    let json = take_string(json);
    assert!(json.contains("-120/1"));
    let cjson = CString::new(json.clone()).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { schouten_certificate_from_json(cjson.as_ptr(), &mut again) }, SchoutenStatus::Ok);
    assert_eq!(unsafe { schouten_certificate_check(again) }, SchoutenStatus::Ok);

    let bad = CString::new(with_unit_polynomial(&json)).unwrap();
    let mut tampered = ptr::null_mut();
    assert_eq!(unsafe { schouten_certificate_from_json(bad.as_ptr(), &mut tampered) }, SchoutenStatus::Ok);
    assert_eq!(unsafe { schouten_certificate_check(tampered) }, SchoutenStatus::VerificationFailed);

    let u = parse("1 | x[0,0] d[1] ; x[2,0] d[2]", 2);
    let mut none = ptr::null_mut();
    assert_eq!(unsafe { schouten_certify(u, &mut none) }, SchoutenStatus::NotACycle);
    assert!(none.is_null());
    unsafe {
        schouten_certificate_free(cert);
        schouten_certificate_free(again);
        schouten_certificate_free(tampered);
        schouten_chain_free(pi);
        schouten_chain_free(u);
    }
}

/// Replaces the `p` list of a certificate with `["1/1"]`.
fn with_unit_polynomial(json: &str) -> String {
    let key = json.find("\"p\"").expect("p field");
    let open = key + json[key..].find('[').unwrap();
    let close = open + json[open..].find(']').unwrap();
    format!("{}[\"1/1\"]{}", &json[..open], &json[close + 1..])
}

#[test]
fn poisson_predicate() {
    let mut yes = false;
    let pi = CString::new("1 * x[1,1] d[1,2]").unwrap();
    assert_eq!(unsafe { schouten_is_poisson(pi.as_ptr(), &mut yes) }, SchoutenStatus::Ok);
    assert!(yes);
    let bad = CString::new("1 * x[1,0,0] d[1,2] + 1 * x[0,1,0] d[2,3]").unwrap();
    assert_eq!(unsafe { schouten_is_poisson(bad.as_ptr(), &mut yes) }, SchoutenStatus::Ok);
    assert!(!yes);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/schouten.h")).unwrap();
    for name in [
        "SCHOUTEN_H",
        "SchoutenStatus_Ok",
        "SchoutenStatus_NotACycle",
        "typedef struct SchoutenChain SchoutenChain",
        "typedef struct SchoutenCertificate SchoutenCertificate",
        "SchoutenBettiReport",
        "schouten_last_error_message",
        "schouten_string_free",
        "schouten_chain_dim",
        "schouten_betti",
        "schouten_euler",
        "schouten_chain_parse",
        "schouten_chain_boundary",
        "schouten_chain_is_zero",
        "schouten_chain_to_string",
        "schouten_chain_free",
        "schouten_certify",
        "schouten_certificate_check",
        "schouten_certificate_to_json",
        "schouten_certificate_from_json",
        "schouten_certificate_free",
        "schouten_is_poisson",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
