//! C ABI over the allagmatic engine.
//!
//! Models are exposed as opaque handles created by `*_new` and released by
//! `*_free`. Every fallible call returns an [`AllagStatus`]; on failure a
//! message is available from [`allag_last_error_message`]. State strings are
//! NUL-terminated `'0'`/`'1'` text with entity 0 first.
//!
//! The header `include/allagmatic.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use allagmatic::ann::{build_ann, LayeredTopology, LearningParams, Network};
use allagmatic::ca::{build_ca, parse_state_string, rule_from_number, CaConfig, CaSystem};
use allagmatic::experiments::rng::stream_rng;
use allagmatic::experiments::{
    ann_search, ca_rule_search, centered_seed, match_fraction, rule_census, AnnSearch, CaSearch,
    MatchCriterion, SearchReport,
};
use allagmatic::{Bit, EntityTuple, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AllagStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    OutOfRange = 4,
    InvalidState = 5,
    BufferTooSmall = 6,
    /// The search ran out of budget; the result struct is still filled.
    BudgetExhausted = 7,
    Panic = 99,
}

/// Cellular automaton handle.
pub struct AllagCa {
    inner: CaSystem,
}

/// Layered network handle.
pub struct AllagAnn {
    inner: Network,
}

/// Summary of a search. `rule` and `network_iteration` describe the
/// accepted candidate, or the last one tried when the budget ran out; each
/// is -1 when it does not apply. `matches` is 0 when no iteration ran.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct AllagSearchResult {
    pub iterations: u64,
    pub terminated: bool,
    pub rule: i32,
    pub network_iteration: i64,
    pub matches: u32,
    pub width: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(AllagStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::LengthMismatch { .. } => AllagStatus::LengthMismatch,
            Error::OutOfRange { .. } | Error::IndexOutOfRange { .. } => AllagStatus::OutOfRange,
            Error::InvalidCharacter { .. } | Error::Empty | Error::NonBinaryState { .. } => {
                AllagStatus::InvalidState
            }
            _ => AllagStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: AllagStatus, msg: &str) -> Failure {
    Failure(status, msg.to_owned())
}

fn guard(f: impl FnOnce() -> Result<AllagStatus, Failure>) -> AllagStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside allagmatic");
            AllagStatus::Panic
        }
    }
}

unsafe fn state_arg(s: *const c_char) -> Result<EntityTuple<Bit>, Failure> {
    if s.is_null() {
        return Err(fail(AllagStatus::NullPointer, "state string is null"));
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(AllagStatus::InvalidState, "state string is not UTF-8"))?;
    Ok(parse_state_string(text)?)
}

/// Null selects `fallback`.
unsafe fn state_or(s: *const c_char, fallback: impl FnOnce() -> EntityTuple<Bit>) -> Result<EntityTuple<Bit>, Failure> {
    if s.is_null() {
        Ok(fallback())
    } else {
        state_arg(s)
    }
}

unsafe fn write_state(state: &EntityTuple<Bit>, buf: *mut c_char, len: usize) -> Result<AllagStatus, Failure> {
    if buf.is_null() {
        return Err(fail(AllagStatus::NullPointer, "output buffer is null"));
    }
    let text = state.to_string();
    if len < text.len() + 1 {
        return Err(fail(
            AllagStatus::BufferTooSmall,
            &format!("need {} bytes, got {len}", text.len() + 1),
        ));
    }
    ptr::copy_nonoverlapping(text.as_ptr() as *const c_char, buf, text.len());
    *buf.add(text.len()) = 0;
    Ok(AllagStatus::Ok)
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, Failure> {
    h.as_ref()
        .ok_or_else(|| fail(AllagStatus::NullPointer, "handle is null"))
}

unsafe fn handle_mut<'a, T>(h: *mut T) -> Result<&'a mut T, Failure> {
    h.as_mut()
        .ok_or_else(|| fail(AllagStatus::NullPointer, "handle is null"))
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(AllagStatus::NullPointer, "output pointer is null"))
}

fn search_result(report: &SearchReport) -> (AllagStatus, AllagSearchResult) {
    let network_iteration = match &report.discovered {
        Some(allagmatic::experiments::Discovery::Network { iteration, .. }) => *iteration as i64,
        _ => -1,
    };
    let result = AllagSearchResult {
        iterations: report.iterations,
        terminated: report.terminated,
        rule: report.rule().map_or(-1, i32::from),
        network_iteration,
        matches: report.matches.unwrap_or(0) as u32,
        width: report.width as u32,
    };
    let status = if report.terminated {
        AllagStatus::Ok
    } else {
        AllagStatus::BudgetExhausted
    };
    (status, result)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn allag_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the calling thread's last error message into `buf` (truncated
/// and NUL-terminated). Returns the full message length plus one, or 0 if
/// there is no message.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn allag_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Creates a periodic CA of `width` cells running Wolfram rule `rule`.
/// A null `initial` places one live cell at `width / 2`.
///
/// # Safety
/// `initial` must be null or a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn allag_ca_new(
    width: usize,
    rule: u32,
    initial: *const c_char,
    out: *mut *mut AllagCa,
) -> AllagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let cfg = CaConfig::new(width)?;
        let table = rule_from_number(rule as i64)?;
        let init = state_or(initial, || centered_seed(width))?;
        let inner = build_ca(cfg, table, init)?;
        *out = Box::into_raw(Box::new(AllagCa { inner }));
        Ok(AllagStatus::Ok)
    })
}

/// # Safety
/// `ca` must be null or a handle from [`allag_ca_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn allag_ca_free(ca: *mut AllagCa) {
    if !ca.is_null() {
        drop(Box::from_raw(ca));
    }
}

/// Advances the automaton by `steps` synchronous updates.
///
/// # Safety
/// `ca` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn allag_ca_step(ca: *mut AllagCa, steps: u64) -> AllagStatus {
    guard(|| {
        let ca = handle_mut(ca)?;
        ca.inner.advance(steps as usize);
        Ok(AllagStatus::Ok)
    })
}

/// # Safety
/// `ca` must be a live handle and `out_time` valid.
#[no_mangle]
pub unsafe extern "C" fn allag_ca_time(ca: *const AllagCa, out_time: *mut u64) -> AllagStatus {
    guard(|| {
        *out_ptr(out_time)? = handle(ca)?.inner.time();
        Ok(AllagStatus::Ok)
    })
}

/// Writes the current cells as a state string; `len` must be at least
/// width + 1.
///
/// # Safety
/// `ca` must be a live handle and `buf` point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn allag_ca_state(ca: *const AllagCa, buf: *mut c_char, len: usize) -> AllagStatus {
    guard(|| write_state(handle(ca)?.inner.entities(), buf, len))
}

/// Scores all 256 rules: `out_matches[r]` receives the number of positions
/// where rule `r`, run `steps` times from `initial`, agrees with `target`.
///
/// # Safety
/// `initial` and `target` must be NUL-terminated strings; `out_matches`
/// must hold `len >= 256` values.
#[no_mangle]
pub unsafe extern "C" fn allag_rule_census(
    initial: *const c_char,
    target: *const c_char,
    steps: u64,
    out_matches: *mut u32,
    len: usize,
) -> AllagStatus {
    guard(|| {
        if out_matches.is_null() {
            return Err(fail(AllagStatus::NullPointer, "output array is null"));
        }
        if len < 256 {
            return Err(fail(AllagStatus::BufferTooSmall, "census needs 256 entries"));
        }
        let census = rule_census(&state_arg(initial)?, &state_arg(target)?, steps as usize)?;
        for e in census.entries() {
            *out_matches.add(e.rule as usize) = e.matches as u32;
        }
        Ok(AllagStatus::Ok)
    })
}

/// Fraction of positions at which two equal-length state strings agree.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn allag_match_fraction(a: *const c_char, b: *const c_char, out: *mut f64) -> AllagStatus {
    guard(|| {
        *out_ptr(out)? = match_fraction(&state_arg(a)?, &state_arg(b)?)?;
        Ok(AllagStatus::Ok)
    })
}

/// Random rule search. Null `initial`/`target` select the single-cell start
/// and the rule-110 configuration after `steps` steps.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn allag_ca_rule_search(
    initial: *const c_char,
    target: *const c_char,
    threshold: f64,
    steps: u64,
    budget: u64,
    seed: u64,
    workers: u32,
    out: *mut AllagSearchResult,
) -> AllagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let initial = state_or(initial, allagmatic::experiments::standard_initial)?;
        let width = initial.len();
        let target = state_or(target, || rule_110_after(&initial, steps as usize))?;
        let search = CaSearch {
            criterion: MatchCriterion::new(threshold, width)?,
            initial,
            target,
            steps: steps as usize,
            budget,
            seed,
        };
        let report = ca_rule_search(&search, workers.max(1) as usize)?;
        let (status, result) = search_result(&report);
        *out = result;
        if status == AllagStatus::BudgetExhausted {
            set_last_error("search budget exhausted");
        }
        Ok(status)
    })
}

fn rule_110_after(initial: &EntityTuple<Bit>, steps: usize) -> EntityTuple<Bit> {
    match CaConfig::new(initial.len()).and_then(|cfg| build_ca(cfg, rule_from_number(110)?, initial.clone())) {
        Ok(mut ca) => {
            ca.advance(steps);
            ca.entities().clone()
        }
        // width errors resurface when the search validates its input
        Err(_) => initial.clone(),
    }
}

/// Creates a network with `layers` computed layers of `width` neurons and
/// weights drawn from stream 0 of `seed`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_new(width: usize, layers: usize, seed: u64, out: *mut *mut AllagAnn) -> AllagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let topology = LayeredTopology::new(width, layers)?;
        let inner = build_ann(topology, &mut stream_rng(seed, 0));
        *out = Box::into_raw(Box::new(AllagAnn { inner }));
        Ok(AllagStatus::Ok)
    })
}

/// # Safety
/// `ann` must be null or a handle from [`allag_ann_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_free(ann: *mut AllagAnn) {
    if !ann.is_null() {
        drop(Box::from_raw(ann));
    }
}

/// Runs a forward pass and writes the output layer as a state string.
///
/// # Safety
/// `ann` must be a live handle, `input` NUL-terminated, `buf` `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_forward(
    ann: *mut AllagAnn,
    input: *const c_char,
    buf: *mut c_char,
    len: usize,
) -> AllagStatus {
    guard(|| {
        let ann = handle_mut(ann)?;
        let output = ann.inner.forward(&state_arg(input)?)?;
        write_state(&output, buf, len)
    })
}

/// Perceptron training of the output-layer weights.
///
/// # Safety
/// `ann` must be a live handle; `input` and `target` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_train(
    ann: *mut AllagAnn,
    input: *const c_char,
    target: *const c_char,
    rate: f64,
    epochs: u32,
) -> AllagStatus {
    guard(|| {
        let ann = handle_mut(ann)?;
        let lp = LearningParams::new(rate, epochs)?;
        ann.inner.train(&state_arg(input)?, &state_arg(target)?, lp)?;
        Ok(AllagStatus::Ok)
    })
}

/// # Safety
/// `ann` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_weight_count(ann: *const AllagAnn, out: *mut usize) -> AllagStatus {
    guard(|| {
        *out_ptr(out)? = handle(ann)?.inner.topology().weight_count();
        Ok(AllagStatus::Ok)
    })
}

/// Copies all weights in edge order (depth, column, ascending source
/// column) into `out`, which must hold `len >= weight count` values.
///
/// # Safety
/// `ann` must be a live handle and `out` point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_weights(ann: *const AllagAnn, out: *mut f64, len: usize) -> AllagStatus {
    guard(|| {
        let ann = handle(ann)?;
        if out.is_null() {
            return Err(fail(AllagStatus::NullPointer, "output array is null"));
        }
        let weights = ann.inner.weights();
        if len < weights.len() {
            return Err(fail(AllagStatus::BufferTooSmall, "weight buffer too small"));
        }
        ptr::copy_nonoverlapping(weights.as_slice().as_ptr(), out, weights.len());
        Ok(AllagStatus::Ok)
    })
}

/// Random-restart network search with perceptron training of each
/// candidate's output layer. Null strings select the standard start and
/// the rule-110 target.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn allag_ann_search(
    initial: *const c_char,
    target: *const c_char,
    threshold: f64,
    layers: u64,
    rate: f64,
    epochs: u32,
    budget: u64,
    seed: u64,
    workers: u32,
    out: *mut AllagSearchResult,
) -> AllagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let initial = state_or(initial, allagmatic::experiments::standard_initial)?;
        let width = initial.len();
        let target = state_or(target, || rule_110_after(&initial, layers as usize))?;
        let search = AnnSearch {
            criterion: MatchCriterion::new(threshold, width)?,
            initial,
            target,
            layers: layers as usize,
            learning: LearningParams::new(rate, epochs)?,
            budget,
            seed,
        };
        let report = ann_search(&search, workers.max(1) as usize)?;
        let (status, result) = search_result(&report);
        *out = result;
        if status == AllagStatus::BudgetExhausted {
            set_last_error("search budget exhausted");
        }
        Ok(status)
    })
}
