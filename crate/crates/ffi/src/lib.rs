//! C interface to `steane_ft`.
//!
//! Every call returns a [`SteaneFtStatus`]; on failure the message is kept per
//! thread and read back with [`steane_ft_last_error`]. Handles are opaque and
//! must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use steane_ft::circuit::{build_full_ec_circuit, Circuit, EcOptions};
use steane_ft::depth::{depth_profile, derive_ledgers, effective_r, BlockDepth};
use steane_ft::faults::{check_flag_conditions, FaultEngine, FaultLocation};
use steane_ft::resources::{cnot_count, LogicalGate};
use steane_ft::threshold::{optimize_x, GateClass};
use steane_ft::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteaneFtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidCircuit = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Values accepted by `block` parameters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteaneFtBlock {
    Data = 0,
    Auxiliary = 1,
}

/// Values accepted by `gate_class` parameters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteaneFtGateClass {
    Transversal = 0,
    T = 1,
    Toffoli1 = 2,
    Toffoli2 = 3,
    Toffoli3 = 4,
}

/// Values accepted by `gate` parameters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteaneFtLogicalGate {
    Transversal = 0,
    T = 1,
    Toffoli = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteaneFtDepth {
    pub r: [u32; 7],
    pub gamma: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteaneFtThreshold {
    pub k: u32,
    pub x_star: u32,
    pub c: f64,
    pub p_th: f64,
}

/// Opaque circuit handle.
pub struct SteaneFtCircuit(Circuit);

/// Opaque single-fault propagator bound to one circuit.
pub struct SteaneFtEngine(FaultEngine);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: SteaneFtStatus, msg: impl Into<String>) -> SteaneFtStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> SteaneFtStatus {
    let status = match e {
        Error::Parse { .. } | Error::DuplicateLabel(_) => SteaneFtStatus::Parse,
        Error::InvalidCircuit(_) | Error::UnknownLabel(_) | Error::NonClifford(_) => SteaneFtStatus::InvalidCircuit,
        _ => SteaneFtStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> SteaneFtStatus) -> SteaneFtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SteaneFtStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, SteaneFtStatus> {
    if p.is_null() {
        return Err(fail(SteaneFtStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SteaneFtStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn block_options(block: u32, flags: bool) -> Option<EcOptions> {
    match block {
        0 => Some(EcOptions::data(flags)),
        1 => Some(EcOptions::auxiliary(flags)),
        _ => None,
    }
}

fn gate_class_of(v: u32) -> Option<GateClass> {
    GateClass::ALL.get(v as usize).copied()
}

fn logical_gate(v: u32) -> Option<LogicalGate> {
    LogicalGate::ALL.get(v as usize).copied()
}

/// Writes `s` plus a NUL into `buf`; `needed` receives the full size.
unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> SteaneFtStatus {
    if !needed.is_null() {
        *needed = s.len() + 1;
    }
    if buf.is_null() || len < s.len() + 1 {
        return fail(SteaneFtStatus::BufferTooSmall, format!("need {} bytes", s.len() + 1));
    }
    ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, s.len());
    *buf.add(s.len()) = 0;
    SteaneFtStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn steane_ft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the calling thread's last error message into `buf`.
///
/// Returns the size the message needs including the NUL; the copy is
/// truncated when `len` is smaller.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = e.len().min(len - 1);
            ptr::copy_nonoverlapping(e.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        e.len() + 1
    })
}

/// Builds one error-correction period for `block` (see [`SteaneFtBlock`]).
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_build(block: u32, flags: bool, out: *mut *mut SteaneFtCircuit) -> SteaneFtStatus {
    guard(|| {
        if out.is_null() {
            return fail(SteaneFtStatus::NullPointer, "out is null");
        }
        let Some(opts) = block_options(block, flags) else {
            return fail(SteaneFtStatus::InvalidArgument, format!("unknown block {block}"));
        };
        *out = Box::into_raw(Box::new(SteaneFtCircuit(build_full_ec_circuit(opts))));
        SteaneFtStatus::Ok
    })
}

/// Parses a circuit from the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_parse(text: *const c_char, out: *mut *mut SteaneFtCircuit) -> SteaneFtStatus {
    guard(|| {
        if out.is_null() {
            return fail(SteaneFtStatus::NullPointer, "out is null");
        }
        let text = match str_arg(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Circuit::parse(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(SteaneFtCircuit(c)));
                SteaneFtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `circuit` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_free(circuit: *mut SteaneFtCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

unsafe fn circuit_ref<'a>(c: *const SteaneFtCircuit) -> Result<&'a Circuit, SteaneFtStatus> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| fail(SteaneFtStatus::NullPointer, "circuit is null"))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_num_qubits(circuit: *const SteaneFtCircuit, out: *mut usize) -> SteaneFtStatus {
    guard(|| match (circuit_ref(circuit), out.is_null()) {
        (Err(s), _) => s,
        (_, true) => fail(SteaneFtStatus::NullPointer, "out is null"),
        (Ok(c), false) => {
            *out = c.num_qubits;
            SteaneFtStatus::Ok
        }
    })
}

/// CNOTs of the period, resource-state preparation and repeated rounds excluded.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_cnot_count(circuit: *const SteaneFtCircuit, out: *mut usize) -> SteaneFtStatus {
    guard(|| match (circuit_ref(circuit), out.is_null()) {
        (Err(s), _) => s,
        (_, true) => fail(SteaneFtStatus::NullPointer, "out is null"),
        (Ok(c), false) => {
            *out = c.primary_cnot_count();
            SteaneFtStatus::Ok
        }
    })
}

/// Derives the ledgers and per-qubit R coefficients of a period.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_block_depth(circuit: *const SteaneFtCircuit, gamma: u32, out: *mut SteaneFtDepth) -> SteaneFtStatus {
    guard(|| {
        let c = match circuit_ref(circuit) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(SteaneFtStatus::NullPointer, "out is null");
        }
        let d = derive_ledgers(c).and_then(|l| depth_profile(c, &l)).map(|p| effective_r(&p, gamma));
        match d {
            Ok(d) => {
                *out = SteaneFtDepth { r: d.r, gamma: d.gamma };
                SteaneFtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Sets `out` when every flag gadget meets all three placement conditions.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_circuit_flags_passed(circuit: *const SteaneFtCircuit, out: *mut bool) -> SteaneFtStatus {
    guard(|| {
        let c = match circuit_ref(circuit) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(SteaneFtStatus::NullPointer, "out is null");
        }
        match check_flag_conditions(c) {
            Ok(r) => {
                *out = r.all_passed();
                SteaneFtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `circuit` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_engine_new(circuit: *const SteaneFtCircuit, out: *mut *mut SteaneFtEngine) -> SteaneFtStatus {
    guard(|| {
        let c = match circuit_ref(circuit) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(SteaneFtStatus::NullPointer, "out is null");
        }
        match FaultEngine::new(c) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(SteaneFtEngine(e)));
                SteaneFtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `engine` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_engine_free(engine: *mut SteaneFtEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Decoded data residual of one named fault such as `"X25C"`, written as `"X7"`.
///
/// `needed` (optional) receives the buffer size the answer requires.
///
/// # Safety
/// `engine` and `location` must be valid; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_engine_residual(
    engine: *const SteaneFtEngine,
    location: *const c_char,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SteaneFtStatus {
    guard(|| {
        let Some(e) = engine.as_ref() else {
            return fail(SteaneFtStatus::NullPointer, "engine is null");
        };
        let loc = match str_arg(location, "location") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let loc: FaultLocation = match loc.parse() {
            Ok(l) => l,
            Err(err) => return fail(SteaneFtStatus::Parse, err),
        };
        match e.0.analyse(&loc) {
            Ok(r) => write_str(&r.residual.to_sparse(), buf, len, needed),
            Err(err) => from_error(err),
        }
    })
}

/// Best period depth for level `k`; a non-finite `r` means unboundedly many periods.
///
/// # Safety
/// `depth` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_optimize_x(
    depth: *const SteaneFtDepth,
    k: u32,
    r: f64,
    gate_class: u32,
    x_max: u32,
    out: *mut SteaneFtThreshold,
) -> SteaneFtStatus {
    guard(|| {
        let (Some(d), false) = (depth.as_ref(), out.is_null()) else {
            return fail(SteaneFtStatus::NullPointer, "depth or out is null");
        };
        let Some(class) = gate_class_of(gate_class) else {
            return fail(SteaneFtStatus::InvalidArgument, format!("unknown gate class {gate_class}"));
        };
        let r = if r.is_finite() { Some(r) } else { None };
        match optimize_x(k, r, class, &BlockDepth { r: d.r, gamma: d.gamma }, x_max) {
            Ok(t) => {
                *out = SteaneFtThreshold { k: t.k, x_star: t.x_star, c: t.c_at_x_star, p_th: t.max_p_th };
                SteaneFtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// CNOTs in one period of `gate` (see [`SteaneFtLogicalGate`]) at level `k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn steane_ft_cnot_count(gate: u32, k: u32, out: *mut u64) -> SteaneFtStatus {
    guard(|| {
        if out.is_null() {
            return fail(SteaneFtStatus::NullPointer, "out is null");
        }
        let Some(g) = logical_gate(gate) else {
            return fail(SteaneFtStatus::InvalidArgument, format!("unknown gate {gate}"));
        };
        match cnot_count(g, k) {
            Ok(n) => {
                *out = n;
                SteaneFtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
