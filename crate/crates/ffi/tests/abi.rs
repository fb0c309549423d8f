use std::ffi::{c_char, CStr, CString};
use std::ptr;

use moore_learn_ffi::*;

fn owned(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ml_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ml_last_error()) }.to_str().unwrap().to_string()
}

fn parse(text: &str) -> Result<*mut MlTraceSet, MlStatus> {
    let c = CString::new(text).unwrap();
    let mut ts = ptr::null_mut();
    match unsafe { ml_traceset_parse(c.as_ptr(), &mut ts) } {
        MlStatus::Ok => Ok(ts),
        s => Err(s),
    }
}

const M1_SAMPLE: &str = "x1 | y1 y1\nx2 x1 | y1 y2 y1\nx2 x2 | y1 y2 y2\n";

#[test]
fn learn_and_run_m1() {
    let ts = parse(M1_SAMPLE).unwrap();
    let mut len = 0;
    assert_eq!(unsafe { ml_traceset_len(ts, &mut len) }, MlStatus::Ok);
    assert_eq!(len, 3);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ml_learn(ts, MlAlgorithm::MooreMi, 0.0, &mut m) }, MlStatus::Ok);
    let mut n = 0;
    assert_eq!(unsafe { ml_machine_num_states(m, &mut n) }, MlStatus::Ok);
    assert_eq!(n, 2);
    let input = CString::new("x2 x2 x1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ml_machine_run(m, input.as_ptr(), &mut out) }, MlStatus::Ok);
    assert_eq!(owned(out), "y1 y2 y2 y1");
    let mut acc = 0.0;
    assert_eq!(unsafe { ml_accuracy(m, ts, MlPolicy::Strong, &mut acc) }, MlStatus::Ok);
    assert_eq!(acc, 1.0);
    unsafe {
        ml_machine_free(m);
        ml_traceset_free(ts);
    }
}

#[test]
fn errors_are_reported() {
    assert_eq!(parse("a | 0\n").unwrap_err(), MlStatus::Parse);
    assert!(last_error().contains("line 1"), "{}", last_error());
    assert_eq!(
        parse("a | 0 1\na | 0 2\n").map(|ts| unsafe { ml_traceset_free(ts) }),
        Ok(())
    );
    let ts = parse("a | 0 1\na a | 0 2 1\n").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ml_learn(ts, MlAlgorithm::Ptap, 0.0, &mut m) },
        MlStatus::Inconsistent
    );
    assert!(m.is_null());
    assert_eq!(
        unsafe { ml_learn(ptr::null(), MlAlgorithm::Ptap, 0.0, &mut m) },
        MlStatus::NullPointer
    );
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ml_generate(1, 2, 2, 3, &mut g) }, MlStatus::InvalidArgument);
    unsafe { ml_traceset_free(ts) };
}

#[test]
fn generate_sample_learn_round_trip() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ml_generate(5, 8, 3, 3, &mut g) }, MlStatus::Ok);
    let mut sample = ptr::null_mut();
    assert_eq!(unsafe { ml_characteristic_sample(g, &mut sample) }, MlStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ml_traceset_to_text(sample, &mut text) }, MlStatus::Ok);
    let reparsed = parse(&owned(text)).unwrap();
    let mut learned = ptr::null_mut();
    assert_eq!(
        unsafe { ml_learn(reparsed, MlAlgorithm::MooreMi, 10.0, &mut learned) },
        MlStatus::Ok
    );
    let mut eq = false;
    assert_eq!(unsafe { ml_machine_equivalent(g, learned, &mut eq) }, MlStatus::Ok);
    assert!(eq);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ml_machine_to_json(learned, &mut json) }, MlStatus::Ok);
    let json = CString::new(owned(json)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { ml_machine_from_json(json.as_ptr(), &mut back) }, MlStatus::Ok);
    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { ml_machine_to_dot(back, &mut dot) }, MlStatus::Ok);
    assert!(owned(dot).starts_with("digraph"));
    unsafe {
        for m in [g, learned, back] {
            ml_machine_free(m);
        }
        ml_traceset_free(sample);
        ml_traceset_free(reparsed);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/moore_learn.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct MlMachine MlMachine;"));
}
