//! C ABI over `moore_learn`.
//!
//! Objects are opaque handles created by `ml_*` constructors and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`MlStatus`]; on failure [`ml_last_error`] describes the error. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with [`ml_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use moore_learn::automata::MooreMachine;
use moore_learn::charsample::{characteristic_sample, random_minimal_moore};
use moore_learn::eval::{accuracy, AccuracyPolicy};
use moore_learn::formats::{machine_from_json, machine_to_json, moore_to_dot, read_traces, write_traces};
use moore_learn::learners::{learn_within, Algorithm};
use moore_learn::traces::TraceSet;
use moore_learn::{Deadline, Error};

/// Opaque learned or generated machine.
pub struct MlMachine(MooreMachine);

/// Opaque set of input-output traces.
pub struct MlTraceSet(TraceSet);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    Inconsistent = 5,
    Incomplete = 6,
    AlphabetMismatch = 7,
    GenerationFailure = 8,
    EmptyTestSet = 9,
    Timeout = 10,
    Other = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlAlgorithm {
    Ptap = 0,
    Prpni = 1,
    MooreMi = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlPolicy {
    Strong = 0,
    Medium = 1,
    Weak = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MlStatus {
    match e {
        Error::Parse { .. }
        | Error::Structured(_)
        | Error::UnknownSymbol(_)
        | Error::DuplicateSymbol(_)
        | Error::EmptyAlphabet
        | Error::TraceLength { .. } => MlStatus::Parse,
        Error::InconsistentTraces { .. } | Error::MarkConflict { .. } => MlStatus::Inconsistent,
        Error::Incomplete | Error::UndefinedTransition { .. } => MlStatus::Incomplete,
        Error::AlphabetMismatch => MlStatus::AlphabetMismatch,
        Error::GenerationFailure { .. } => MlStatus::GenerationFailure,
        Error::EmptyTestSet => MlStatus::EmptyTestSet,
        Error::Timeout => MlStatus::Timeout,
        Error::InvalidArgument(_) => MlStatus::InvalidArgument,
        _ => MlStatus::Other,
    }
}

struct Fail(MlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MlStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MlStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(MlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(MlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(MlStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(MlStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(MlStatus::Other, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(MlStatus::NullPointer, "output pointer is null".into()));
    }
    *out = value;
    Ok(())
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next `ml_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ml_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses traces in the line format or JSON.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_traceset_parse(source: *const c_char, out: *mut *mut MlTraceSet) -> MlStatus {
    guard(|| {
        let ts = read_traces(text(source, "source")?)?;
        put(out, MlTraceSet(ts))
    })
}

/// # Safety
/// `ts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_traceset_len(ts: *const MlTraceSet, out: *mut usize) -> MlStatus {
    guard(|| put_value(out, borrow(ts, "traceset")?.0.len()))
}

/// Writes the traces in the line format.
///
/// # Safety
/// `ts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_traceset_to_text(ts: *const MlTraceSet, out: *mut *mut c_char) -> MlStatus {
    guard(|| put_string(out, write_traces(&borrow(ts, "traceset")?.0)))
}

/// # Safety
/// `ts` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ml_traceset_free(ts: *mut MlTraceSet) {
    if !ts.is_null() {
        drop(Box::from_raw(ts));
    }
}

/// Learns a machine. `timeout_s <= 0` means no time limit.
///
/// # Safety
/// `ts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_learn(
    ts: *const MlTraceSet,
    algorithm: MlAlgorithm,
    timeout_s: f64,
    out: *mut *mut MlMachine,
) -> MlStatus {
    guard(|| {
        let ts = &borrow(ts, "traceset")?.0;
        let algorithm = match algorithm {
            MlAlgorithm::Ptap => Algorithm::Ptap,
            MlAlgorithm::Prpni => Algorithm::Prpni,
            MlAlgorithm::MooreMi => Algorithm::MooreMi,
        };
        let deadline = if timeout_s > 0.0 && timeout_s.is_finite() {
            Deadline::after(Duration::from_secs_f64(timeout_s))
        } else {
            Deadline::none()
        };
        let learned = learn_within(ts, algorithm, deadline)?;
        put(out, MlMachine(learned.machine))
    })
}

/// Random minimal complete machine, deterministic in `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_generate(
    seed: u64,
    states: usize,
    inputs: usize,
    outputs: usize,
    out: *mut *mut MlMachine,
) -> MlStatus {
    guard(|| put(out, MlMachine(random_minimal_moore(seed, states, inputs, outputs)?)))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_characteristic_sample(m: *const MlMachine, out: *mut *mut MlTraceSet) -> MlStatus {
    guard(|| {
        let report = characteristic_sample(&borrow(m, "machine")?.0)?;
        put(out, MlTraceSet(report.sample))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_from_json(json: *const c_char, out: *mut *mut MlMachine) -> MlStatus {
    guard(|| put(out, MlMachine(machine_from_json(text(json, "json")?)?)))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_to_json(m: *const MlMachine, out: *mut *mut c_char) -> MlStatus {
    guard(|| put_string(out, machine_to_json(&borrow(m, "machine")?.0)))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_to_dot(m: *const MlMachine, out: *mut *mut c_char) -> MlStatus {
    guard(|| put_string(out, moore_to_dot(&borrow(m, "machine")?.0)))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_num_states(m: *const MlMachine, out: *mut usize) -> MlStatus {
    guard(|| put_value(out, borrow(m, "machine")?.0.num_states()))
}

/// Runs the machine on space-separated input symbols and returns the
/// space-separated output symbols, initial output first.
///
/// # Safety
/// `m` must be a live handle, `input` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_run(m: *const MlMachine, input: *const c_char, out: *mut *mut c_char) -> MlStatus {
    guard(|| {
        let m = &borrow(m, "machine")?.0;
        let word = m.inputs().parse_word(text(input, "input")?)?;
        let outputs = m.run(&word)?;
        put_string(out, m.outputs().join(&outputs))
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_equivalent(a: *const MlMachine, b: *const MlMachine, out: *mut bool) -> MlStatus {
    guard(|| {
        let eq = borrow(a, "machine")?.0.equivalent(&borrow(b, "machine")?.0)?;
        put_value(out, eq)
    })
}

/// Mean score of `m` over `test`, in `[0, 1]`.
///
/// # Safety
/// `m` and `test` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ml_accuracy(
    m: *const MlMachine,
    test: *const MlTraceSet,
    policy: MlPolicy,
    out: *mut f64,
) -> MlStatus {
    guard(|| {
        let policy = match policy {
            MlPolicy::Strong => AccuracyPolicy::Strong,
            MlPolicy::Medium => AccuracyPolicy::Medium,
            MlPolicy::Weak => AccuracyPolicy::Weak,
        };
        let v = accuracy(policy, &borrow(test, "traceset")?.0, &borrow(m, "machine")?.0)?;
        put_value(out, v)
    })
}

/// # Safety
/// `m` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ml_machine_free(m: *mut MlMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}
