use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use steane_ft_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe { steane_ft_last_error(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn build(block: SteaneFtBlock, flags: bool) -> *mut SteaneFtCircuit {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { steane_ft_circuit_build(block as u32, flags, &mut c) }, SteaneFtStatus::Ok);
    assert!(!c.is_null());
    c
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(steane_ft_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn circuit_counts_and_depth() {
    let c = build(SteaneFtBlock::Data, true);
    let mut n = 0usize;
    assert_eq!(unsafe { steane_ft_circuit_cnot_count(c, &mut n) }, SteaneFtStatus::Ok);
    assert_eq!(n, 52);
    assert_eq!(unsafe { steane_ft_circuit_num_qubits(c, &mut n) }, SteaneFtStatus::Ok);
    assert_eq!(n, 47);
    let mut d = SteaneFtDepth { r: [0; 7], gamma: 0 };
    assert_eq!(unsafe { steane_ft_circuit_block_depth(c, 4, &mut d) }, SteaneFtStatus::Ok);
    assert_eq!(d.r, [7, 13, 13, 15, 14, 10, 10]);
    let mut ok = false;
    assert_eq!(unsafe { steane_ft_circuit_flags_passed(c, &mut ok) }, SteaneFtStatus::Ok);
    assert!(ok);
    unsafe { steane_ft_circuit_free(c) };
}

#[test]
fn engine_residual_and_buffer_sizing() {
    let c = build(SteaneFtBlock::Data, false);
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { steane_ft_engine_new(c, &mut e) }, SteaneFtStatus::Ok);
    let loc = CString::new("X25C").unwrap();
    let mut needed = 0usize;
    let mut tiny = [0 as c_char; 2];
    let s = unsafe { steane_ft_engine_residual(e, loc.as_ptr(), tiny.as_mut_ptr(), tiny.len(), &mut needed) };
    assert_eq!(s, SteaneFtStatus::BufferTooSmall);
    assert_eq!(needed, 3);
    let mut buf = vec![0 as c_char; needed];
    let s = unsafe { steane_ft_engine_residual(e, loc.as_ptr(), buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(s, SteaneFtStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "X7");

    let bad = CString::new("Q9").unwrap();
    let s = unsafe { steane_ft_engine_residual(e, bad.as_ptr(), buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(s, SteaneFtStatus::Parse);
    assert!(last_error().contains("Q9"));
    unsafe {
        steane_ft_engine_free(e);
        steane_ft_circuit_free(c);
    }
}

#[test]
fn threshold_and_counts() {
    let d = SteaneFtDepth { r: [7, 13, 13, 15, 14, 10, 10], gamma: 4 };
    let mut t = SteaneFtThreshold { k: 0, x_star: 0, c: 0.0, p_th: 0.0 };
    let s = unsafe { steane_ft_optimize_x(&d, 1, f64::INFINITY, SteaneFtGateClass::Transversal as u32, 200, &mut t) };
    assert_eq!(s, SteaneFtStatus::Ok);
    assert_eq!((t.k, t.x_star, t.c), (1, 3, 11786.0));
    let mut n = 0u64;
    assert_eq!(unsafe { steane_ft_cnot_count(SteaneFtLogicalGate::Toffoli as u32, 1, &mut n) }, SteaneFtStatus::Ok);
    assert_eq!(n, 436);
}

#[test]
fn errors_are_reported() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { steane_ft_circuit_build(9, true, &mut c) }, SteaneFtStatus::InvalidArgument);
    assert!(last_error().contains("unknown block"));
    assert_eq!(unsafe { steane_ft_circuit_build(0, true, ptr::null_mut()) }, SteaneFtStatus::NullPointer);
    let text = CString::new("QUBITS 2\nC1 CNOT 1 1\n").unwrap();
    let s = unsafe { steane_ft_circuit_parse(text.as_ptr(), &mut c) };
    assert_ne!(s, SteaneFtStatus::Ok);
    assert!(c.is_null());
    let mut n = 0u64;
    assert_eq!(unsafe { steane_ft_cnot_count(0, 0, &mut n) }, SteaneFtStatus::InvalidArgument);
    let mut t = SteaneFtThreshold { k: 0, x_star: 0, c: 0.0, p_th: 0.0 };
    assert_eq!(unsafe { steane_ft_optimize_x(ptr::null(), 1, 1.0, 0, 1, &mut t) }, SteaneFtStatus::NullPointer);
    let needed = unsafe { steane_ft_last_error(ptr::null_mut(), 0) };
    assert!(needed > 1);
}

#[test]
fn parsed_circuit_round_trips() {
    let text = CString::new("QUBITS 2\nH1 H 1\nC1 CNOT 1 2\n").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { steane_ft_circuit_parse(text.as_ptr(), &mut c) }, SteaneFtStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { steane_ft_circuit_num_qubits(c, &mut n) }, SteaneFtStatus::Ok);
    assert_eq!(n, 2);
    unsafe { steane_ft_circuit_free(c) };
}

#[test]
fn header_declares_every_export_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/steane_ft.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for f in [
        "steane_ft_version",
        "steane_ft_last_error",
        "steane_ft_circuit_build",
        "steane_ft_circuit_parse",
        "steane_ft_circuit_free",
        "steane_ft_circuit_num_qubits",
        "steane_ft_circuit_cnot_count",
        "steane_ft_circuit_block_depth",
        "steane_ft_circuit_flags_passed",
        "steane_ft_engine_new",
        "steane_ft_engine_free",
        "steane_ft_engine_residual",
        "steane_ft_optimize_x",
        "steane_ft_cnot_count",
    ] {
        assert!(text.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(text.contains("typedef struct SteaneFtCircuit SteaneFtCircuit;"));
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-std=c99", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
