//! C ABI over `schouten-core`.
//!
//! Every function returns a [`SchoutenStatus`]; results come back through
//! out-pointers. Objects are opaque handles released with their `_free`
//! function, and strings returned to the caller are released with
//! [`schouten_string_free`]. After a failure, [`schouten_last_error_message`]
//! describes it until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schouten_core::homotopy::{certify_exact, check_certificate, ExactnessCertificate};
use schouten_core::{betti, boundary, euler_characteristic, is_poisson, Chain, Error, MultiVector};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchoutenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotACycle = 4,
    VerificationFailed = 5,
    TheoremViolation = 6,
    Panic = 7,
}

/// Opaque chain handle.
pub struct SchoutenChain(Chain);

/// Opaque exactness certificate handle.
pub struct SchoutenCertificate(ExactnessCertificate);

/// Homology of one block, as returned by [`schouten_betti`].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SchoutenBettiReport {
    pub n: u64,
    pub m: u64,
    pub w: i64,
    pub h: i64,
    pub dim: u64,
    pub rank_out: u64,
    pub rank_in: u64,
    pub betti: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> SchoutenStatus {
    match e {
        Error::Parse(_) => SchoutenStatus::Parse,
        Error::NotACycle => SchoutenStatus::NotACycle,
        Error::VerificationFailed(_) => SchoutenStatus::VerificationFailed,
        Error::TheoremViolation(_) | Error::DescentDidNotTerminate(_) => SchoutenStatus::TheoremViolation,
        _ => SchoutenStatus::InvalidArgument,
    }
}

struct Failure(SchoutenStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SchoutenStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SchoutenStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SchoutenStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SchoutenStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(SchoutenStatus::Parse, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn dim_arg(n: u64) -> Result<usize, Failure> {
    if n == 0 {
        return Err(Failure(SchoutenStatus::InvalidArgument, "n must be at least 1".into()));
    }
    usize::try_from(n).map_err(|_| Failure(SchoutenStatus::InvalidArgument, "n out of range".into()))
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn schouten_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schouten_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `dim C_m^(w,h)` on n-space.
///
/// # Safety
/// `out_dim` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_chain_dim(n: u64, m: u64, w: i64, h: i64, out_dim: *mut u64) -> SchoutenStatus {
    guard(|| {
        let n = dim_arg(n)?;
        let d = schouten_core::basis::chain_dim(n, m as usize, w, h);
        write_out(out_dim, u64::try_from(d).unwrap_or(u64::MAX), "out_dim")
    })
}

/// Betti number of `C_m^(w,h)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_betti(n: u64, m: u64, w: i64, h: i64, out: *mut SchoutenBettiReport) -> SchoutenStatus {
    guard(|| {
        let r = betti(dim_arg(n)?, m as usize, w, h)?;
        let report = SchoutenBettiReport {
            n: r.n as u64,
            m: r.m as u64,
            w: r.w,
            h: r.h,
            dim: r.dim as u64,
            rank_out: r.rank_out as u64,
            rank_in: r.rank_in as u64,
            betti: r.betti as u64,
        };
        write_out(out, report, "out")
    })
}

/// Euler characteristic of the `(w,h)` block, scalars included.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_euler(n: u64, w: i64, h: i64, out: *mut i64) -> SchoutenStatus {
    guard(|| write_out(out, euler_characteristic(dim_arg(n)?, w, h)?, "out"))
}

/// Parses a chain in text (`coeff | factor ; factor` lines) or JSON form.
/// `n = 0` means the text must state its own dimension.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_chain_parse(text: *const c_char, n: u64, out: *mut *mut SchoutenChain) -> SchoutenStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let default_n = if n == 0 { None } else { Some(dim_arg(n)?) };
        let chain = Chain::parse_any(text, default_n)?;
        write_out(out, Box::into_raw(Box::new(SchoutenChain(chain))), "out")
    })
}

/// Boundary of a chain, as a new handle.
///
/// # Safety
/// `chain` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_chain_boundary(chain: *const SchoutenChain, out: *mut *mut SchoutenChain) -> SchoutenStatus {
    guard(|| {
        let c = chain.as_ref().ok_or_else(|| null("chain"))?;
        write_out(out, Box::into_raw(Box::new(SchoutenChain(boundary(&c.0)))), "out")
    })
}

/// # Safety
/// `chain` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_chain_is_zero(chain: *const SchoutenChain, out: *mut bool) -> SchoutenStatus {
    guard(|| {
        let c = chain.as_ref().ok_or_else(|| null("chain"))?;
        write_out(out, c.0.is_zero(), "out")
    })
}

/// Text form of a chain; free the result with [`schouten_string_free`].
///
/// # Safety
/// `chain` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_chain_to_string(chain: *const SchoutenChain, out: *mut *mut c_char) -> SchoutenStatus {
    guard(|| {
        let c = chain.as_ref().ok_or_else(|| null("chain"))?;
        write_out(out, to_c_string(c.0.to_text()), "out")
    })
}

/// # Safety
/// `chain` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn schouten_chain_free(chain: *mut SchoutenChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Certifies that a 2-cycle of weight `(w,w)` is a boundary.
///
/// # Safety
/// `chain` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_certify(chain: *const SchoutenChain, out: *mut *mut SchoutenCertificate) -> SchoutenStatus {
    guard(|| {
        let c = chain.as_ref().ok_or_else(|| null("chain"))?;
        let cert = certify_exact(&c.0)?;
        write_out(out, Box::into_raw(Box::new(SchoutenCertificate(cert))), "out")
    })
}

/// Re-verifies a certificate; `Ok` when valid.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn schouten_certificate_check(cert: *const SchoutenCertificate) -> SchoutenStatus {
    guard(|| {
        let c = cert.as_ref().ok_or_else(|| null("cert"))?;
        Ok(check_certificate(&c.0)?)
    })
}

/// JSON form of a certificate; free the result with [`schouten_string_free`].
///
/// # Safety
/// `cert` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_certificate_to_json(cert: *const SchoutenCertificate, out: *mut *mut c_char) -> SchoutenStatus {
    guard(|| {
        let c = cert.as_ref().ok_or_else(|| null("cert"))?;
        write_out(out, to_c_string(c.0.to_json()), "out")
    })
}

/// Parses a certificate without verifying it.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_certificate_from_json(json: *const c_char, out: *mut *mut SchoutenCertificate) -> SchoutenStatus {
    guard(|| {
        let cert = ExactnessCertificate::from_json(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(SchoutenCertificate(cert))), "out")
    })
}

/// # Safety
/// `cert` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn schouten_certificate_free(cert: *mut SchoutenCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Whether a bivector given as text (`c * x[..] d[..] + ...`) is Poisson.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn schouten_is_poisson(text: *const c_char, out: *mut bool) -> SchoutenStatus {
    guard(|| {
        let pi: MultiVector = read_str(text, "text")?.parse()?;
        write_out(out, is_poisson(&pi)?, "out")
    })
}
