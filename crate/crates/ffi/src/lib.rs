//! C ABI over `clexp`: groups and class partitions behind opaque handles, status
//! codes on every fallible call and a per-thread message for the last error.
//!
//! Strings returned to the caller are owned by the caller and released with
//! [`clexp_string_free`]. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clexp::verify::{run_check, SuiteOptions};
use clexp::{ClassPartition, Error, Group, GroupSpec};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClexpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    CapExceeded = 4,
    UnknownClass = 5,
    InvalidArgument = 6,
    Overflow = 7,
    Internal = 8,
}

/// A permutation group.
pub struct ClexpGroup(Group);

/// The conjugacy classes of a group, with products computed on demand.
pub struct ClexpPartition(ClassPartition);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> ClexpStatus {
    match e {
        Error::Spec(_) | Error::UnknownGroup(_) | Error::OrderMismatch { .. } => ClexpStatus::InvalidSpec,
        Error::CapExceeded { .. } => ClexpStatus::CapExceeded,
        Error::UnknownClassName(_) | Error::InvalidClass(_) => ClexpStatus::UnknownClass,
        _ => ClexpStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), ClexpStatus>) -> ClexpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClexpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            ClexpStatus::Internal
        }
    }
}

fn fail(e: Error) -> ClexpStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ClexpStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(ClexpStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        ClexpStatus::InvalidUtf8
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), ClexpStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(ClexpStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, ClexpStatus> {
    h.as_ref().ok_or_else(|| {
        set_error("null handle");
        ClexpStatus::NullPointer
    })
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn clexp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn clexp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn clexp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a spec such as `psl2:7` or `wreath(sym:3,2)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_group_from_spec(spec: *const c_char, out: *mut *mut ClexpGroup) -> ClexpStatus {
    guard(|| {
        let spec = read_str(spec)?;
        let g = spec.parse::<GroupSpec>().and_then(|s| s.build()).map_err(|e| match fail(e) {
            ClexpStatus::CapExceeded => ClexpStatus::CapExceeded,
            _ => ClexpStatus::InvalidSpec,
        })?;
        write_out(out, Box::into_raw(Box::new(ClexpGroup(g))))
    })
}

/// # Safety
/// `g` must be NULL or a handle from [`clexp_group_from_spec`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn clexp_group_free(g: *mut ClexpGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_group_order(g: *const ClexpGroup, out: *mut u64) -> ClexpStatus {
    guard(|| {
        let order = handle(g)?.0.order();
        let order = u64::try_from(order).map_err(|_| {
            set_error(format!("order {order} does not fit in 64 bits"));
            ClexpStatus::Overflow
        })?;
        write_out(out, order)
    })
}

/// # Safety
/// `g` must be a live group handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_group_degree(g: *const ClexpGroup, out: *mut usize) -> ClexpStatus {
    guard(|| write_out(out, handle(g)?.0.degree()))
}

/// Whether the permutation written in cycle notation lies in the group.
///
/// # Safety
/// `g` must be a live group handle, `cycles` a NUL-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_group_contains(g: *const ClexpGroup, cycles: *const c_char, out: *mut bool) -> ClexpStatus {
    guard(|| {
        let g = &handle(g)?.0;
        let p = clexp::Permutation::parse(read_str(cycles)?, g.degree()).map_err(fail)?;
        write_out(out, g.is_member(&p).map_err(fail)?)
    })
}

/// Computes the conjugacy classes.
///
/// # Safety
/// `g` must be a live group handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_new(g: *const ClexpGroup, out: *mut *mut ClexpPartition) -> ClexpStatus {
    guard(|| {
        let p = ClassPartition::new(&handle(g)?.0).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(ClexpPartition(p))))
    })
}

/// # Safety
/// `p` must be NULL or a handle from [`clexp_partition_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_free(p: *mut ClexpPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live partition handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_num_classes(p: *const ClexpPartition, out: *mut usize) -> ClexpStatus {
    guard(|| write_out(out, handle(p)?.0.len()))
}

/// Name, size and element order of class `index`. The name is caller-owned.
///
/// # Safety
/// `p` must be a live partition handle; each output pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_class(
    p: *const ClexpPartition,
    index: usize,
    name: *mut *mut c_char,
    size: *mut u64,
    order: *mut u64,
) -> ClexpStatus {
    guard(|| {
        let c = handle(p)?.0.class(index).map_err(fail)?;
        if name.is_null() || size.is_null() || order.is_null() {
            set_error("null output pointer");
            return Err(ClexpStatus::NullPointer);
        }
        name.write(owned_string(c.name.clone()));
        size.write(c.size);
        order.write(c.order);
        Ok(())
    })
}

unsafe fn subset(p: &ClassPartition, classes: *const c_char) -> Result<clexp::NormalSubset, ClexpStatus> {
    let names: Vec<&str> = read_str(classes)?.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    p.subset(&names).map_err(fail)
}

/// `D_K` for the comma-separated classes `K`, as a caller-owned comma-separated list.
///
/// # Safety
/// `p` must be a live partition handle, `classes` a NUL-terminated string and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_dk(p: *const ClexpPartition, classes: *const c_char, out: *mut *mut c_char) -> ClexpStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let d = p.rational_closure(&subset(p, classes)?);
        write_out(out, owned_string(p.names(&d).join(",")))
    })
}

/// `K²` as a caller-owned comma-separated list, and whether `K² ⊆ D_K`.
///
/// # Safety
/// `p` must be a live partition handle, `classes` a NUL-terminated string and
/// both output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_square(
    p: *const ClexpPartition,
    classes: *const c_char,
    square: *mut *mut c_char,
    expansion_holds: *mut bool,
) -> ClexpStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let v = p.expansion_check(&subset(p, classes)?);
        if square.is_null() || expansion_holds.is_null() {
            set_error("null output pointer");
            return Err(ClexpStatus::NullPointer);
        }
        square.write(owned_string(p.names(&v.square).join(",")));
        expansion_holds.write(v.holds);
        Ok(())
    })
}

/// Whether the normal closure of the classes is soluble, and its order.
///
/// # Safety
/// `p` must be a live partition handle, `classes` a NUL-terminated string and
/// both output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn clexp_partition_span(
    p: *const ClexpPartition,
    classes: *const c_char,
    order: *mut u64,
    soluble: *mut bool,
) -> ClexpStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let span = p.span(&subset(p, classes)?);
        write_out(order, span.order() as u64)?;
        write_out(soluble, span.is_soluble())
    })
}

/// Runs one registered verification check and returns its result as a
/// caller-owned JSON object; `passed` is true only for a pass.
///
/// # Safety
/// `id` must be a NUL-terminated string; `json` and `passed` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn clexp_run_check(id: *const c_char, seed: u64, json: *mut *mut c_char, passed: *mut bool) -> ClexpStatus {
    guard(|| {
        let id = read_str(id)?;
        let options = SuiteOptions { seed, ..SuiteOptions::default() };
        let result = run_check(id, &options).map_err(fail)?;
        let text = serde_json::to_string(&result).map_err(|e| {
            set_error(e.to_string());
            ClexpStatus::Internal
        })?;
        write_out(passed, result.passed())?;
        write_out(json, owned_string(text))
    })
}
