//! C interface to `regflow`.
//!
//! Handles are opaque pointers created by `regflow_*_new`/`regflow_solve`
//! and released with the matching `_free` function. Every fallible call
//! returns a [`RegflowStatus`]; on failure a message is available from
//! [`regflow_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with [`regflow_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use regflow::io::{load_instance, parse_dimacs_digraph, parse_instance, serialize_trace};
use regflow::linalg::format_rational;
use regflow::solver::{
    lp_reference_solve, max_flow, FlowNetwork, Instance, MaxFlowOutcome, OracleKind,
    ReferenceOptimum,
};
use regflow::{Error, SpaceMode};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegflowStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    OracleMismatch = 5,
    Invariant = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegflowMode {
    Kernel = 0,
    Rowspace = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegflowOracle {
    Generic = 0,
    Graphic = 1,
    Cographic = 2,
}

/// A parsed instance, optionally with its digraph.
pub struct RegflowInstance {
    instance: Instance,
    network: Option<Arc<FlowNetwork>>,
}

/// The outcome of a solve.
pub struct RegflowSolution {
    outcome: MaxFlowOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(RegflowStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => RegflowStatus::Parse,
            Error::OracleMismatch(_) => RegflowStatus::OracleMismatch,
            Error::IndexOutOfRange { .. } => RegflowStatus::IndexOutOfRange,
            e if e.is_invariant_violation() => RegflowStatus::Invariant,
            _ => RegflowStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RegflowStatus::NullArgument, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RegflowStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RegflowStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            RegflowStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            RegflowStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn mode_of(mode: RegflowMode) -> SpaceMode {
    match mode {
        RegflowMode::Kernel => SpaceMode::Kernel,
        RegflowMode::Rowspace => SpaceMode::Rowspace,
    }
}

unsafe fn store_instance(
    out: *mut *mut RegflowInstance,
    instance: RegflowInstance,
) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(instance));
    Ok(())
}

/// Parses an instance in the line-oriented instance format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_instance_parse(
    text: *const c_char,
    out: *mut *mut RegflowInstance,
) -> RegflowStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let instance = parse_instance(text)?;
        store_instance(
            out,
            RegflowInstance {
                instance,
                network: None,
            },
        )
    })
}

/// Parses a DIMACS max-flow digraph and builds its flow or coflow space.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_instance_parse_dimacs(
    text: *const c_char,
    mode: RegflowMode,
    out: *mut *mut RegflowInstance,
) -> RegflowStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let (instance, network) = parse_dimacs_digraph(text, mode_of(mode))?;
        store_instance(
            out,
            RegflowInstance {
                instance,
                network: Some(Arc::new(network)),
            },
        )
    })
}

/// Parses either format, detected from the first meaningful line. `mode`
/// applies to DIMACS input only.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_instance_load(
    text: *const c_char,
    mode: RegflowMode,
    out: *mut *mut RegflowInstance,
) -> RegflowStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let loaded = load_instance(text, Some(mode_of(mode)))?;
        store_instance(
            out,
            RegflowInstance {
                instance: loaded.instance,
                network: loaded.network.map(Arc::new),
            },
        )
    })
}

/// # Safety
/// `instance` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn regflow_instance_free(instance: *mut RegflowInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Size of the ground set, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn regflow_instance_ground_size(instance: *const RegflowInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.instance.ground_size())
}

/// 1-based index of the return element, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn regflow_instance_return_element(
    instance: *const RegflowInstance,
) -> usize {
    instance.as_ref().map_or(0, |i| i.instance.r() + 1)
}

/// Runs the shortest augmenting path solver.
///
/// # Safety
/// `instance` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_solve(
    instance: *const RegflowInstance,
    oracle: RegflowOracle,
    out: *mut *mut RegflowSolution,
) -> RegflowStatus {
    guard(|| {
        let instance = borrow(instance, "instance")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let oracle = match oracle {
            RegflowOracle::Generic => OracleKind::Generic,
            graph => {
                let net = instance.network.clone().ok_or_else(|| {
                    Failure(
                        RegflowStatus::OracleMismatch,
                        "graph oracles need an instance parsed from DIMACS".into(),
                    )
                })?;
                if graph == RegflowOracle::Graphic {
                    OracleKind::Graphic(net)
                } else {
                    OracleKind::Cographic(net)
                }
            }
        };
        let outcome = max_flow(&instance.instance, &oracle)?;
        *out = Box::into_raw(Box::new(RegflowSolution { outcome }));
        Ok(())
    })
}

/// Optimum from the exact LP reference solver, as a decimal rational
/// string or `"unbounded"`.
///
/// # Safety
/// `instance` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_reference_objective(
    instance: *const RegflowInstance,
    out: *mut *mut c_char,
) -> RegflowStatus {
    guard(|| {
        let instance = borrow(instance, "instance")?;
        let text = match lp_reference_solve(&instance.instance) {
            ReferenceOptimum::Bounded(v) => format_rational(&v),
            ReferenceOptimum::Unbounded => "unbounded".into(),
        };
        write_string(out, text)
    })
}

/// # Safety
/// `solution` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn regflow_solution_free(solution: *mut RegflowSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// True when the objective is unbounded.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn regflow_solution_is_unbounded(solution: *const RegflowSolution) -> bool {
    solution
        .as_ref()
        .is_some_and(|s| matches!(s.outcome, MaxFlowOutcome::Unbounded { .. }))
}

/// Number of augmentations performed.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn regflow_solution_augmentations(solution: *const RegflowSolution) -> usize {
    solution
        .as_ref()
        .map_or(0, |s| s.outcome.trace().steps.len())
}

/// The objective as `"p/q"`, an integer, or `"unbounded"`.
///
/// # Safety
/// `solution` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_solution_objective(
    solution: *const RegflowSolution,
    out: *mut *mut c_char,
) -> RegflowStatus {
    guard(|| {
        let solution = borrow(solution, "solution")?;
        let text = solution
            .outcome
            .objective()
            .map_or_else(|| "unbounded".into(), format_rational);
        write_string(out, text)
    })
}

/// Flow value on the 1-based ground element `index`. For unbounded
/// outcomes this is the last flow before the unbounded path was found.
///
/// # Safety
/// `solution` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_solution_flow_value(
    solution: *const RegflowSolution,
    index: usize,
    out: *mut *mut c_char,
) -> RegflowStatus {
    guard(|| {
        let solution = borrow(solution, "solution")?;
        let values = &solution.outcome.flow().values;
        let value = index
            .checked_sub(1)
            .and_then(|j| values.get(j))
            .ok_or(Error::IndexOutOfRange {
                index,
                size: values.len(),
            })?;
        write_string(out, format_rational(value))
    })
}

/// The augmentation trace in the text trace format.
///
/// # Safety
/// `solution` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn regflow_solution_trace(
    solution: *const RegflowSolution,
    out: *mut *mut c_char,
) -> RegflowStatus {
    guard(|| {
        let solution = borrow(solution, "solution")?;
        write_string(out, serialize_trace(solution.outcome.trace()))
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn regflow_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn regflow_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
