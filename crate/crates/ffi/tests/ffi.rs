use std::ffi::CString;
use std::ptr;

use stochtop_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let n = unsafe { stochtop_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn parse_betti_and_free() {
    let text = CString::new("n=3\n0 1\n0 2\n1 2\n").unwrap();
    let mut x = ptr::null_mut();
    unsafe {
        assert_eq!(stochtop_complex_parse(text.as_ptr(), &mut x), StochtopStatus::Ok);
        assert_eq!(stochtop_complex_n(x), 3);
        assert_eq!(stochtop_complex_f(x, 1), 3);
        assert_eq!(stochtop_complex_f(x, -1), 1);
        let mut b = 0usize;
        assert_eq!(stochtop_betti(x, 1, &mut b), StochtopStatus::Ok);
        assert_eq!(b, 1);
        assert_eq!(stochtop_betti(x, 0, &mut b), StochtopStatus::Ok);
        assert_eq!(b, 0);
        let mut z = 0usize;
        assert_eq!(stochtop_cocycle_dim(x, 1, &mut z), StochtopStatus::Ok);
        assert_eq!(z, 3);
        let mut needed = 0usize;
        assert_eq!(stochtop_complex_emit(x, ptr::null_mut(), 0, &mut needed), StochtopStatus::Ok);
        let mut buf = vec![0 as std::ffi::c_char; needed + 1];
        assert_eq!(stochtop_complex_emit(x, buf.as_mut_ptr(), buf.len(), &mut needed), StochtopStatus::Ok);
        let s = std::ffi::CStr::from_ptr(buf.as_ptr()).to_str().unwrap().to_string();
        assert!(s.starts_with("n=3"));
        let mut y = ptr::null_mut();
        let again = CString::new(s).unwrap();
        assert_eq!(stochtop_complex_parse(again.as_ptr(), &mut y), StochtopStatus::Ok);
        assert_eq!(stochtop_complex_f(y, 1), 3);
        stochtop_complex_free(y);
        stochtop_complex_free(x);
        stochtop_complex_free(ptr::null_mut());
    }
}

#[test]
fn sampling_and_spectrum() {
    let mut x = ptr::null_mut();
    unsafe {
        assert_eq!(stochtop_lm_sample(12, 2, 0.2, 7, &mut x), StochtopStatus::Ok);
        assert_eq!(stochtop_complex_f(x, 1), 66);
        let mut mu = ptr::null_mut();
        assert_eq!(stochtop_esd(x, 1, &mut mu), StochtopStatus::Ok);
        let len = stochtop_measure_len(mu);
        let (mut v, mut m) = (vec![0.0; len], vec![0.0; len]);
        assert_eq!(stochtop_measure_atoms(mu, v.as_mut_ptr(), m.as_mut_ptr(), len), len);
        assert!((m.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        let mut z = 0usize;
        assert_eq!(stochtop_cocycle_dim(x, 1, &mut z), StochtopStatus::Ok);
        let zero: f64 = v.iter().zip(&m).filter(|(v, _)| **v == 0.0).map(|(_, m)| m).sum();
        assert_eq!(zero, z as f64 / 66.0);
        stochtop_measure_free(mu);
        stochtop_complex_free(x);

        let mut y = ptr::null_mut();
        assert_eq!(stochtop_clique_sample(20, 1, 0.5, 2, 3, &mut y), StochtopStatus::Ok);
        assert_eq!(stochtop_complex_f(y, 0), 20);
        stochtop_complex_free(y);
    }
}

#[test]
fn errors_and_constants() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(stochtop_lm_sample(10, 2, 1.5, 0, &mut x), StochtopStatus::InvalidArgument);
        assert!(x.is_null());
        assert!(last_error().contains("probability"));
        assert_eq!(stochtop_lm_sample(10, 2, 0.5, 0, ptr::null_mut()), StochtopStatus::NullPointer);
        let bad = CString::new("n=2\n0 5\n").unwrap();
        assert_ne!(stochtop_complex_parse(bad.as_ptr(), &mut x), StochtopStatus::Ok);
        let garbage = CString::new("hello").unwrap();
        assert_eq!(stochtop_complex_parse(garbage.as_ptr(), &mut x), StochtopStatus::Parse);
        let mut b = 0usize;
        assert_eq!(stochtop_betti(ptr::null(), 0, &mut b), StochtopStatus::NullPointer);
        let mut cd = 0.0;
        assert_eq!(stochtop_c_threshold(2, &mut cd), StochtopStatus::Ok);
        assert!((cd - stochtop::constants::c_threshold(2).unwrap()).abs() == 0.0);
    }
    assert_eq!(stochtop_h(0, 0.5), stochtop::constants::h(0, 0.5));
    assert!(stochtop_h(1, -1.0).is_nan());
    assert!(stochtop_g(0, 1.0).is_nan());
    assert_eq!(stochtop_g(1, 3.0), stochtop::constants::g(1, 3.0));
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/stochtop.h")).unwrap();
    for sym in [
        "stochtop_last_error",
        "stochtop_lm_sample",
        "stochtop_clique_sample",
        "stochtop_complex_parse",
        "stochtop_complex_emit",
        "stochtop_complex_free",
        "stochtop_complex_n",
        "stochtop_complex_f",
        "stochtop_betti",
        "stochtop_cocycle_dim",
        "stochtop_esd",
        "stochtop_measure_len",
        "stochtop_measure_atoms",
        "stochtop_measure_free",
        "stochtop_h",
        "stochtop_g",
        "stochtop_c_threshold",
        "typedef struct StochtopComplex StochtopComplex",
        "STOCHTOP_STATUS_OK = 0",
    ] {
        assert!(header.contains(sym), "{sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/stochtop.h");
    match std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header]).status() {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler; skipped"),
    }
}
