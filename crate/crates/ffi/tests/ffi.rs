use std::ffi::{CStr, CString};
use std::ptr;

use bhlogic_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = bh_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn formula_round_trip() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(bh_formula_parse(c("@i<B>(j,k)").as_ptr(), &mut f), BhStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(bh_formula_to_string(f, &mut s), BhStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "@i <B>(j, k)");
        bh_string_free(s);
        let mut pure = false;
        assert_eq!(bh_formula_is_pure(f, &mut pure), BhStatus::Ok);
        assert!(pure);
        bh_formula_free(f);
    }
}

#[test]
fn parse_errors_carry_a_message() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(bh_formula_parse(c("<B>(p").as_ptr(), &mut f), BhStatus::ParseError);
        assert!(f.is_null());
        assert!(last_error().contains("offset 5"));
        assert_eq!(bh_formula_parse(ptr::null(), &mut f), BhStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(bh_formula_parse(bad.as_ptr().cast(), &mut f), BhStatus::InvalidUtf8);
    }
}

#[test]
fn frames_and_validity() {
    unsafe {
        let mut fr = ptr::null_mut();
        assert_eq!(bh_frame_new(4, &mut fr), BhStatus::Ok);
        for (x, y, z) in [(0, 1, 2), (1, 2, 3), (0, 1, 3)] {
            assert_eq!(bh_frame_insert(fr, x, y, z), BhStatus::Ok);
        }
        assert_eq!(bh_frame_insert(fr, 0, 1, 9), BhStatus::InvalidArgument);
        let mut n = 0;
        assert_eq!(bh_frame_worlds(fr, &mut n), BhStatus::Ok);
        assert_eq!(n, 4);
        let mut holds = false;
        assert_eq!(bh_frame_check_axiom(fr, c("B4").as_ptr(), &mut holds), BhStatus::Ok);
        assert!(holds);
        assert_eq!(bh_frame_check_axiom(fr, c("B4p").as_ptr(), &mut holds), BhStatus::Ok);
        assert!(!holds);
        assert_eq!(
            bh_frame_check_axiom(fr, c("B99").as_ptr(), &mut holds),
            BhStatus::InvalidArgument
        );
        let mut phi = ptr::null_mut();
        assert_eq!(bh_formula_parse(c("HB4").as_ptr(), &mut phi), BhStatus::Ok);
        holds = true;
        assert_eq!(bh_frame_valid(fr, phi, 0, &mut holds), BhStatus::Ok);
        assert!(!holds);
        assert_eq!(bh_frame_valid(fr, phi, 3, &mut holds), BhStatus::LimitExceeded);
        bh_formula_free(phi);
        bh_frame_free(fr);

        let mut parsed = ptr::null_mut();
        assert_eq!(
            bh_frame_parse(c("worlds 2\nB 0 1\n").as_ptr(), &mut parsed),
            BhStatus::ParseError
        );
        assert!(last_error().contains("line 2"));
    }
}

#[test]
fn dense_models() {
    unsafe {
        let mut m = ptr::null_mut();
        let text = c("carrier Q\nV p: (-inf, sqrt 2)\nV q: (sqrt 2, inf)\n");
        assert_eq!(bh_dense_model_parse(text.as_ptr(), &mut m), BhStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(bh_formula_parse(c("D").as_ptr(), &mut d), BhStatus::Ok);
        let mut holds = true;
        assert_eq!(bh_dense_holds(m, d, &mut holds), BhStatus::Ok);
        assert!(!holds);
        let mut conv = ptr::null_mut();
        assert_eq!(bh_formula_parse(c("C p").as_ptr(), &mut conv), BhStatus::Ok);
        assert_eq!(bh_dense_model_assign(m, c("p={0} {1}").as_ptr()), BhStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(bh_dense_extension(m, conv, &mut s), BhStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "(0,1)");
        bh_string_free(s);
        assert_eq!(
            bh_dense_model_assign(m, c("i=sqrt 2").as_ptr()),
            BhStatus::InvalidArgument
        );
        bh_formula_free(conv);
        bh_formula_free(d);
        bh_dense_model_free(m);
    }
}

#[test]
fn derivations() {
    let bridge = include_str!("../../core/corpus/proofs/bridge.bh");
    let name = include_str!("../../core/corpus/proofs/name_violation.bh");
    unsafe {
        let mut valid = false;
        assert_eq!(bh_derivation_check(c(bridge).as_ptr(), &mut valid), BhStatus::Ok);
        assert!(valid);
        assert_eq!(bh_derivation_check(c(name).as_ptr(), &mut valid), BhStatus::Ok);
        assert!(!valid);
        assert!(last_error().contains("nominal j occurs in the conclusion"));
        assert_eq!(
            bh_derivation_check(c("1. p ; frobnicate").as_ptr(), &mut valid),
            BhStatus::ParseError
        );
    }
}
