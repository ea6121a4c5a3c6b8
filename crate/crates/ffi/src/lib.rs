//! C interface to `steinitz-core`.
//!
//! Objects are opaque handles created by `*_parse` / `*_generate` and
//! released with the matching `*_free`. Every fallible call returns a
//! [`StzStatus`]; on failure the message is available from
//! [`stz_last_error`]. Strings handed out by the library are owned by the
//! caller and must be released with [`stz_string_free`].
//!
//! Handles are not synchronized: one handle must not be used from two
//! threads at once, but distinct handles may be used concurrently.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use steinitz_core::blockip::{solve_four_block, xi_for, FourBlockInstance};
use steinitz_core::colorful::{colorful_affine, colorful_rearrange, ColorfulCertificate, ColoredFamily};
use steinitz_core::exact::{fmt_rat, parse_rat, NormSpec};
use steinitz_core::harness::format::FourBlockFile;
use steinitz_core::harness::{self, report};
use steinitz_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StzStatus {
    Ok = 0,
    /// A checked invariant failed.
    Property = 1,
    /// Malformed input, bad arguments or a null pointer.
    Usage = 2,
    /// A search exceeded its budget.
    Budget = 3,
    /// The instance has no feasible point.
    Infeasible = 4,
    /// An internal panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StzNorm {
    L1 = 0,
    Linf = 1,
}

/// Colored family of rational vectors.
pub struct StzFamily(ColoredFamily);

/// Result of a colorful rearrangement.
pub struct StzColorfulCert(ColorfulCertificate);

/// Block-structured integer program.
pub struct StzFourBlock(FourBlockInstance);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> StzStatus {
    match e {
        Error::Property { .. } => StzStatus::Property,
        Error::Budget(_) => StzStatus::Budget,
        Error::Infeasible(_) => StzStatus::Infeasible,
        _ => StzStatus::Usage,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> StzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StzStatus::Ok,
        Ok(Err(e)) => {
            let s = status_of(&e);
            set_error(e.to_string());
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {}", msg));
            StzStatus::Internal
        }
    }
}

fn null(what: &str) -> Error {
    Error::InvalidInput(format!("{} is null", what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::InvalidInput(format!("{} is not UTF-8", what)))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Error> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    let c = CString::new(s).map_err(|_| Error::InvalidInput("string contains NUL".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread, or null. The caller
/// owns the result.
#[no_mangle]
pub extern "C" fn stz_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(m) => CString::new(m.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn stz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a family file (`colorful d n m norm` format).
///
/// # Safety
/// `src` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_family_parse(src: *const c_char, out: *mut *mut StzFamily) -> StzStatus {
    guard(|| {
        let fam = harness::read_family(text(src, "src")?)?;
        put(out, boxed(StzFamily(fam)))
    })
}

/// Seeded zero-sum family with `n` colors of `m` vectors in dimension `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stz_family_generate(
    d: usize,
    n: usize,
    m: usize,
    norm: StzNorm,
    seed: u64,
    out: *mut *mut StzFamily,
) -> StzStatus {
    guard(|| {
        let nm = match norm {
            StzNorm::L1 => NormSpec::L1,
            StzNorm::Linf => NormSpec::Linf,
        };
        let fam = harness::gen_zero_sum_family(d, n, m, nm, seed, 12)?;
        put(out, boxed(StzFamily(fam)))
    })
}

/// # Safety
/// `fam` must be writable pointers or null.
#[no_mangle]
pub unsafe extern "C" fn stz_family_shape(fam: *const StzFamily, d: *mut usize, n: *mut usize, m: *mut usize) -> StzStatus {
    guard(|| {
        let f = &handle(fam, "family")?.0;
        put(d, f.d)?;
        put(n, f.vectors.len())?;
        put(m, f.vectors.first().map_or(0, Vec::len))
    })
}

/// Family in file format.
///
/// # Safety
/// `fam` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_family_to_string(fam: *const StzFamily, out: *mut *mut c_char) -> StzStatus {
    guard(|| put_string(out, harness::write_family(&handle(fam, "family")?.0)))
}

/// # Safety
/// `fam` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn stz_family_free(fam: *mut StzFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Reorders every color; with `affine` nonzero the family need not sum
/// to zero and prefixes are measured against the average drift.
///
/// # Safety
/// `fam` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_colorful_rearrange(fam: *const StzFamily, affine: bool, out: *mut *mut StzColorfulCert) -> StzStatus {
    guard(|| {
        let f = &handle(fam, "family")?.0;
        let cert = if affine { colorful_affine(f)? } else { colorful_rearrange(f)? };
        put(out, boxed(StzColorfulCert(cert)))
    })
}

/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn stz_cert_colors(cert: *const StzColorfulCert) -> usize {
    cert.as_ref().map_or(0, |c| c.0.permutations.len())
}

/// Copies the 0-based permutation of `color` into `buf`, which must hold
/// `len` entries; `len` must equal the color length.
///
/// # Safety
/// `cert` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn stz_cert_permutation(cert: *const StzColorfulCert, color: usize, buf: *mut usize, len: usize) -> StzStatus {
    guard(|| {
        let c = &handle(cert, "certificate")?.0;
        let p = c
            .permutations
            .get(color)
            .ok_or_else(|| Error::InvalidInput(format!("color {} out of range", color)))?;
        if p.len() != len {
            return Err(Error::Dimension(format!("color has {} entries, buffer {}", p.len(), len)));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(p.as_ptr(), buf, len);
        Ok(())
    })
}

/// Largest prefix norm of the returned order, as an exact rational string.
///
/// # Safety
/// `cert` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_cert_achieved_max(cert: *const StzColorfulCert, out: *mut *mut c_char) -> StzStatus {
    guard(|| put_string(out, fmt_rat(&handle(cert, "certificate")?.0.achieved_max)))
}

/// Guaranteed bound for the family, as an exact rational string.
///
/// # Safety
/// `cert` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_cert_certified_bound(cert: *const StzColorfulCert, out: *mut *mut c_char) -> StzStatus {
    guard(|| put_string(out, fmt_rat(&handle(cert, "certificate")?.0.certified_bound)))
}

/// # Safety
/// `cert` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn stz_cert_free(cert: *mut StzColorfulCert) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Parses a block program file (`fourblock s0 s t0 t n delta` format).
///
/// # Safety
/// `src` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_fourblock_parse(src: *const c_char, out: *mut *mut StzFourBlock) -> StzStatus {
    guard(|| {
        let file = harness::read_four_block(text(src, "src")?)?;
        put(out, boxed(StzFourBlock(file.instance)))
    })
}

/// Seeded random block program with entries bounded by `delta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stz_fourblock_generate(
    s0: usize,
    s: usize,
    t0: usize,
    t: usize,
    n: usize,
    delta: i64,
    seed: u64,
    out: *mut *mut StzFourBlock,
) -> StzStatus {
    guard(|| {
        let shape = harness::FourBlockShape { s0, s, t0, t, n, delta };
        let (inst, _) = harness::gen_four_block(shape, seed)?;
        put(out, boxed(StzFourBlock(inst)))
    })
}

/// # Safety
/// `inst` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_fourblock_to_string(inst: *const StzFourBlock, out: *mut *mut c_char) -> StzStatus {
    guard(|| {
        let file = FourBlockFile { instance: handle(inst, "instance")?.0.clone(), kernel: None };
        put_string(out, harness::write_four_block(&file)?)
    })
}

/// Proximity threshold of the instance, as an exact integer string.
///
/// # Safety
/// `inst` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_fourblock_xi(inst: *const StzFourBlock, out: *mut *mut c_char) -> StzStatus {
    guard(|| put_string(out, fmt_rat(&xi_for(&handle(inst, "instance")?.0)?)))
}

/// Solves the program within `radius` of its LP optimum (null radius: the
/// proximity threshold). On success `out` receives a `key: value` report
/// whose `status` line is `optimal`, `infeasible`, `lp-unbounded` or
/// `no-integer-in-radius`.
///
/// # Safety
/// `inst` must be a live handle, `radius` null or a NUL-terminated
/// string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stz_fourblock_solve(
    inst: *const StzFourBlock,
    radius: *const c_char,
    budget: u64,
    out: *mut *mut c_char,
) -> StzStatus {
    guard(|| {
        let h = &handle(inst, "instance")?.0;
        let r = if radius.is_null() {
            xi_for(h)?
        } else {
            let s = text(radius, "radius")?;
            parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("radius `{}` is not rational", s)))?
        };
        let res = solve_four_block(h, &r, budget)?;
        put_string(out, report::solve(&res, &r).to_text())
    })
}

/// # Safety
/// `inst` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn stz_fourblock_free(inst: *mut StzFourBlock) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}
