//! C ABI over `coretower`.
//!
//! Every fallible function returns a [`CtStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`ct_last_error_message`] until the next call on the same thread.
//! Handles returned through out-pointers are owned by the caller and must be
//! released with the matching `*_free` function; strings with
//! [`ct_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coretower::genfun::{self, VerificationReport};
use coretower::{asymptotics, tower, IntSeries, Modulus, Partition};

/// Largest order accepted by the exhaustive series builders.
pub const CT_MAX_BRUTE_ORDER: usize = 40;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtFamily {
    /// Partitions weighted by the size of tower row j.
    RowSize = 0,
    /// Partitions weighted by the defect.
    Defect = 1,
    /// Generalized (j, t)-cores.
    GeneralizedCores = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtMode {
    Closed = 0,
    Brute = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtCheck {
    Congruence = 0,
    Recursion = 1,
    Monotone = 2,
}

/// Opaque partition handle.
pub struct CtPartition(Partition);

/// Opaque truncated integer power series handle.
pub struct CtSeries(IntSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CtStatus, String);

impl Failure {
    fn invalid(e: impl ToString) -> Self {
        Failure(CtStatus::InvalidArgument, e.to_string())
    }

    fn null(what: &str) -> Self {
        Failure(CtStatus::NullPointer, format!("{what} is null"))
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CtStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".into());
            set_error(msg);
            CtStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn modulus(t: usize) -> Result<Modulus, Failure> {
    Modulus::new(t).map_err(Failure::invalid)
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn boxed_partition(p: Partition) -> *mut CtPartition {
    Box::into_raw(Box::new(CtPartition(p)))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ct_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a partition from `len` parts in non-increasing order.
///
/// # Safety
/// `parts` must point to `len` readable values (or be null when `len` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_new(
    parts: *const usize,
    len: usize,
    out: *mut *mut CtPartition,
) -> CtStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else if parts.is_null() {
            return Err(Failure::null("parts"));
        } else {
            std::slice::from_raw_parts(parts, len)
        };
        let p = Partition::new(slice.to_vec()).map_err(Failure::invalid)?;
        write(out, boxed_partition(p))
    })
}

/// Parses a comma-separated partition such as `"5,4,2,2,1"`; `""` is empty.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_parse(
    text: *const c_char,
    out: *mut *mut CtPartition,
) -> CtStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure::null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(CtStatus::InvalidUtf8, e.to_string()))?;
        let p = Partition::parse(s).map_err(Failure::invalid)?;
        write(out, boxed_partition(p))
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_free(p: *mut CtPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Size of the partition; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_size(p: *const CtPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.size())
}

/// Number of parts; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_len(p: *const CtPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the parts into `buf`. Fails with `BufferTooSmall` if `cap` is less
/// than the number of parts.
///
/// # Safety
/// `p` must be a live handle; `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_parts(
    p: *const CtPartition,
    buf: *mut usize,
    cap: usize,
) -> CtStatus {
    guard(|| {
        let parts = borrow(p, "partition")?.0.parts();
        if parts.len() > cap {
            return Err(Failure(
                CtStatus::BufferTooSmall,
                format!("need {} slots, have {cap}", parts.len()),
            ));
        }
        if !parts.is_empty() {
            if buf.is_null() {
                return Err(Failure::null("buf"));
            }
            ptr::copy_nonoverlapping(parts.as_ptr(), buf, parts.len());
        }
        Ok(())
    })
}

/// Renders the partition as `(5,4,2,2,1)`, or `∅` when empty.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_partition_to_string(
    p: *const CtPartition,
    out: *mut *mut c_char,
) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        write(out, c_string(p.0.to_string()))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_t_core(
    p: *const CtPartition,
    t: usize,
    out: *mut *mut CtPartition,
) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        let core = tower::t_core(&p.0, modulus(t)?);
        write(out, boxed_partition(core))
    })
}

/// Writes the `t` quotient components into `out[0..t]`.
///
/// # Safety
/// `p` must be a live handle; `out` must hold `out_len` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn ct_t_quotient(
    p: *const CtPartition,
    t: usize,
    out: *mut *mut CtPartition,
    out_len: usize,
) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        let m = modulus(t)?;
        if out_len < t {
            return Err(Failure(
                CtStatus::BufferTooSmall,
                format!("need {t} slots, have {out_len}"),
            ));
        }
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        for (r, q) in tower::t_quotient(&p.0, m).into_iter().enumerate() {
            out.add(r).write(boxed_partition(q));
        }
        Ok(())
    })
}

/// Rebuilds a partition from its `t`-core and `t` quotient components.
///
/// # Safety
/// `core` must be a live handle; `quotient` must point to `len` live handles.
#[no_mangle]
pub unsafe extern "C" fn ct_reconstruct(
    core: *const CtPartition,
    quotient: *const *const CtPartition,
    len: usize,
    t: usize,
    out: *mut *mut CtPartition,
) -> CtStatus {
    guard(|| {
        let core = borrow(core, "core")?;
        let m = modulus(t)?;
        if quotient.is_null() && len > 0 {
            return Err(Failure::null("quotient"));
        }
        let mut parts = Vec::with_capacity(len);
        for i in 0..len {
            parts.push(borrow(*quotient.add(i), "quotient component")?.0.clone());
        }
        let lambda = tower::reconstruct(&core.0, &parts, m).map_err(Failure::invalid)?;
        write(out, boxed_partition(lambda))
    })
}

/// Total size of row `j` of the `t`-core tower.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_row_size(
    p: *const CtPartition,
    t: usize,
    j: usize,
    out: *mut usize,
) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        write(out, tower::row_size(&p.0, modulus(t)?, j))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_defect(p: *const CtPartition, t: usize, out: *mut usize) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        write(out, tower::defect(&p.0, modulus(t)?))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_is_generalized_core(
    p: *const CtPartition,
    j: usize,
    t: usize,
    out: *mut bool,
) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        write(out, tower::is_generalized_core(&p.0, j, modulus(t)?))
    })
}

/// The full `t`-core tower as a JSON object.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_tower_json(
    p: *const CtPartition,
    t: usize,
    out: *mut *mut c_char,
) -> CtStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        let tw = tower::core_tower(&p.0, modulus(t)?).map_err(Failure::invalid)?;
        let json = serde_json::to_string(&tw).map_err(Failure::invalid)?;
        write(out, c_string(json))
    })
}

/// Builds a generating function to the given truncation order. `j` is
/// ignored for `Defect`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_series_build(
    family: CtFamily,
    mode: CtMode,
    j: usize,
    t: usize,
    order: usize,
    out: *mut *mut CtSeries,
) -> CtStatus {
    guard(|| {
        let m = modulus(t)?;
        if mode == CtMode::Brute && order > CT_MAX_BRUTE_ORDER {
            return Err(Failure::invalid(format!(
                "order {order} exceeds the brute-force limit {CT_MAX_BRUTE_ORDER}"
            )));
        }
        let s = match (family, mode) {
            (CtFamily::RowSize, CtMode::Closed) => {
                genfun::t_closed(j, m, order).map_err(Failure::invalid)?
            }
            (CtFamily::RowSize, CtMode::Brute) => genfun::t_brute(j, m, order),
            (CtFamily::Defect, CtMode::Closed) => genfun::d_closed(m, order),
            (CtFamily::Defect, CtMode::Brute) => genfun::d_brute(m, order),
            (CtFamily::GeneralizedCores, CtMode::Closed) => {
                genfun::gen_core_closed(j, m, order).map_err(Failure::invalid)?
            }
            (CtFamily::GeneralizedCores, CtMode::Brute) => genfun::gen_core_brute(j, m, order),
        };
        write(out, Box::into_raw(Box::new(CtSeries(s))))
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ct_series_free(s: *mut CtSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation order; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ct_series_order(s: *const CtSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient of `q^n` as a decimal string.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_series_coeff(
    s: *const CtSeries,
    n: usize,
    out: *mut *mut c_char,
) -> CtStatus {
    guard(|| {
        let s = borrow(s, "series")?;
        let c = s
            .0
            .coeff(n)
            .ok_or_else(|| Failure::invalid(format!("index {n} beyond order {}", s.0.order())))?;
        write(out, c_string(c.to_string()))
    })
}

/// `{"truncation_order": N, "coeffs": ["...", ...]}`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_series_to_json(s: *const CtSeries, out: *mut *mut c_char) -> CtStatus {
    guard(|| {
        let s = borrow(s, "series")?;
        let json = serde_json::to_string(&s.0).map_err(Failure::invalid)?;
        write(out, c_string(json))
    })
}

/// Runs an exact coefficient check. `passed` receives the verdict and, when
/// `report_json` is non-null, the full report is written there.
///
/// # Safety
/// `passed` must be writable; `report_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ct_verify(
    check: CtCheck,
    t: usize,
    order: usize,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> CtStatus {
    guard(|| {
        let m = modulus(t)?;
        let report: VerificationReport = match check {
            CtCheck::Congruence => genfun::check_congruence(m, order),
            CtCheck::Recursion => genfun::check_recursion(m, order),
            CtCheck::Monotone => genfun::monotonicity_check(m, order),
        };
        write(passed, report.passed())?;
        if !report_json.is_null() {
            let json = serde_json::to_string(&report).map_err(Failure::invalid)?;
            report_json.write(c_string(json));
        }
        Ok(())
    })
}

fn positive(x: f64, what: &str) -> Result<f64, Failure> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Failure::invalid(format!(
            "{what} must be positive and finite"
        )))
    }
}

/// Relative residual of the small-`eps` expansion of the divisor-sum series
/// at `q = exp(-m * eps)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_transform_residual(
    m: u64,
    eps: f64,
    digits: usize,
    out: *mut f64,
) -> CtStatus {
    guard(|| {
        let eps = positive(eps, "eps")?;
        if m == 0 || digits == 0 {
            return Err(Failure::invalid("m and digits must be positive"));
        }
        write(out, asymptotics::g2_transform_check(m, eps, digits))
    })
}

/// Ratio of the exact eta quotient to its leading asymptotic at `q = exp(-eps)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_eta_ratio(eps: f64, digits: usize, out: *mut f64) -> CtStatus {
    guard(|| {
        let eps = positive(eps, "eps")?;
        if digits == 0 {
            return Err(Failure::invalid("digits must be positive"));
        }
        write(out, asymptotics::eta_asymptotic_check(eps, digits))
    })
}

/// Exact `(t-1) d_t(n) / (n p(n))` for the defect generating function.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ct_defect_ratio(
    t: usize,
    n: usize,
    digits: usize,
    out: *mut f64,
) -> CtStatus {
    guard(|| {
        let m = modulus(t)?;
        if n == 0 || digits == 0 {
            return Err(Failure::invalid("n and digits must be positive"));
        }
        let sample = asymptotics::defect_samples(m, &[n], digits)
            .pop()
            .ok_or_else(|| Failure::invalid("no sample"))?;
        write(out, sample.ratio)
    })
}
