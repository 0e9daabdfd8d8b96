// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! C ABI for `kempe-minors`.
//!
//! Instances and solutions are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`KmStatus`]; on failure, [`km_last_error_message`] describes the error
//! for the calling thread. Strings returned through out-parameters are
//! released with [`km_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use kempe_minors::generators::{gen_circulant, k4_seed, CirculantSpec};
use kempe_minors::io::{emit_instance, emit_solution, parse_instance, parse_solution, verify_instance, IoError};
use kempe_minors::{solve, verify_solution, BagSystem, EdgeId, Instance, SolveError, Transversal};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KmStatus {
    Ok = 0,
    /// Input was well formed but rejected (failed verification, no solution).
    Rejected = 1,
    /// Input could not be parsed or referenced unknown items.
    InvalidInput = 2,
    /// The solver hit an internal consistency check.
    InternalAssertion = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A colored graph with an optional prescribed transversal.
pub struct KmInstance {
    inner: Instance,
}

/// A bag system together with the transversal it was built for.
pub struct KmSolution {
    bags: BagSystem,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

type Failure = (KmStatus, String);

fn guarded(f: impl FnOnce() -> Result<KmStatus, Failure> + UnwindSafe) -> KmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(f) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside kempe-minors");
            KmStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (KmStatus::NullPointer, format!("{what} is null"))
}

fn io_failure(e: IoError) -> Failure {
    let status = if matches!(e, IoError::Invalid(_)) { KmStatus::Rejected } else { KmStatus::InvalidInput };
    (status, e.to_string())
}

fn solve_failure(e: SolveError) -> Failure {
    let status = match e {
        SolveError::InvalidInput(_) => KmStatus::Rejected,
        SolveError::InternalAssertion { .. } => KmStatus::InternalAssertion,
    };
    (status, e.to_string())
}

/// # Safety
/// `s` must be null or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (KmStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn into_c_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text).map(CString::into_raw).map_err(|_| (KmStatus::InternalAssertion, "interior NUL".into()))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put_instance(out: *mut *mut KmInstance, inner: Instance) -> Result<KmStatus, Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(KmInstance { inner }));
    Ok(KmStatus::Ok)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn km_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a JSON instance document. With `verify`, the classes must form a
/// Kempe matching partition and a declared transversal must hit each class
/// once (`KM_STATUS_REJECTED` otherwise).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn km_instance_parse(json: *const c_char, verify: bool, out: *mut *mut KmInstance) -> KmStatus {
    guarded(|| {
        let text = read_str(json, "json")?;
        let inner = parse_instance(text, verify).map_err(io_failure)?;
        put_instance(out, inner)
    })
}

/// The `K_4` seed instance with its three perfect matchings.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn km_instance_k4(out: *mut *mut KmInstance) -> KmStatus {
    guarded(|| put_instance(out, k4_seed()))
}

/// Bipartite circulant instance on `Z_m × {0, 1}` with one class per shift.
///
/// # Safety
/// `shifts` must point to `len` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn km_instance_circulant(
    m: u64,
    shifts: *const u64,
    len: usize,
    out: *mut *mut KmInstance,
) -> KmStatus {
    guarded(|| {
        if shifts.is_null() && len > 0 {
            return Err(null("shifts"));
        }
        let shifts = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(shifts, len).to_vec() };
        let inner = gen_circulant(&CirculantSpec::new(m, shifts)).map_err(|e| (KmStatus::Rejected, e.to_string()))?;
        put_instance(out, inner)
    })
}

/// # Safety
/// `instance` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn km_instance_free(instance: *mut KmInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of color classes, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn km_instance_class_count(instance: *const KmInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.k())
}

/// Number of edges, or 0 for a null handle. Edges are indexed `0..count`
/// in declaration order.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn km_instance_edge_count(instance: *const KmInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.graph.edge_count())
}

/// Runs the matching-partition, Kempe and transversal checks.
///
/// # Safety
/// `instance` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn km_instance_verify(instance: *const KmInstance) -> KmStatus {
    guarded(|| {
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        let report = verify_instance(&inst.inner);
        if report.accepted() {
            Ok(KmStatus::Ok)
        } else {
            Err((KmStatus::Rejected, report.to_string()))
        }
    })
}

/// Serializes the instance as a JSON document.
///
/// # Safety
/// `instance` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn km_instance_to_json(instance: *const KmInstance, out: *mut *mut c_char) -> KmStatus {
    guarded(|| {
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(emit_instance(&inst.inner))?;
        Ok(KmStatus::Ok)
    })
}

fn run_solver(inst: &Instance, t: Transversal) -> Result<KmSolution, Failure> {
    let sol = solve(&inst.graph, &inst.partition, &t).map_err(solve_failure)?;
    let json = CString::new(emit_solution(inst, &sol.bags, &t, None))
        .map_err(|_| (KmStatus::InternalAssertion, "interior NUL".to_string()))?;
    Ok(KmSolution { bags: sol.bags, json })
}

/// Solves for the instance's declared transversal, or the least edge of
/// every class when none is declared.
///
/// # Safety
/// `instance` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn km_solve(instance: *const KmInstance, out: *mut *mut KmSolution) -> KmStatus {
    guarded(|| {
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(run_solver(&inst.inner, inst.inner.transversal_or_default())?));
        Ok(KmStatus::Ok)
    })
}

/// Solves for the transversal given as edge indices (see
/// [`km_instance_edge_count`]).
///
/// # Safety
/// `edges` must point to `len` readable values; `instance` must be a live
/// handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn km_solve_with(
    instance: *const KmInstance,
    edges: *const u32,
    len: usize,
    out: *mut *mut KmSolution,
) -> KmStatus {
    guarded(|| {
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if edges.is_null() && len > 0 {
            return Err(null("edges"));
        }
        let wanted: &[u32] = if len == 0 { &[] } else { std::slice::from_raw_parts(edges, len) };
        let ids: Vec<EdgeId> = inst.inner.graph.edge_ids().collect();
        let mut chosen = Vec::with_capacity(len);
        for &i in wanted {
            let e =
                ids.get(i as usize).ok_or_else(|| (KmStatus::InvalidInput, format!("edge index {i} out of range")))?;
            chosen.push(*e);
        }
        *out = Box::into_raw(Box::new(run_solver(&inst.inner, Transversal::new(chosen))?));
        Ok(KmStatus::Ok)
    })
}

/// # Safety
/// `solution` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn km_solution_free(solution: *mut KmSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Number of bags, or 0 for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn km_solution_bag_count(solution: *const KmSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.bags.len())
}

/// Copies the edge indices of bag `bag` into `buf` (up to `cap` entries) and
/// returns the bag size, or 0 if the handle is null or `bag` is out of range.
///
/// # Safety
/// `solution` must be null or a live handle; `buf` must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn km_solution_bag(solution: *const KmSolution, bag: usize, buf: *mut u32, cap: usize) -> usize {
    let Some(bag) = solution.as_ref().and_then(|s| s.bags.bags.get(bag)) else {
        return 0;
    };
    if !buf.is_null() {
        for (slot, e) in bag.iter().take(cap).enumerate() {
            *buf.add(slot) = e.0;
        }
    }
    bag.len()
}

/// The solution as a JSON document; valid until the handle is freed.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn km_solution_json(solution: *const KmSolution) -> *const c_char {
    solution.as_ref().map_or(ptr::null(), |s| s.json.as_ptr())
}

/// Checks a JSON solution document against the instance. Returns
/// `KM_STATUS_OK` if accepted and `KM_STATUS_REJECTED` otherwise.
///
/// # Safety
/// `instance` must be a live handle; `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn km_check(instance: *const KmInstance, json: *const c_char) -> KmStatus {
    guarded(|| {
        let inst = instance.as_ref().ok_or_else(|| null("instance"))?;
        let text = read_str(json, "json")?;
        let parsed = parse_solution(&inst.inner, text).map_err(io_failure)?;
        let t = parsed.transversal.unwrap_or_else(|| inst.inner.transversal_or_default());
        let verdict = verify_solution(&inst.inner.graph, &inst.inner.partition, &t, &parsed.bags);
        if verdict.accepted() {
            Ok(KmStatus::Ok)
        } else {
            Err((KmStatus::Rejected, verdict.to_string()))
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn km_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
