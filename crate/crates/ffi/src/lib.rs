//! C ABI over `stochtop`.
//!
//! Every fallible call returns a [`StochtopStatus`] and writes results through
//! out-pointers. Objects are opaque handles released with their `_free`
//! function. The message of the last failure on the calling thread is
//! available from [`stochtop_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stochtop::betti::{betti_number, cocycle_dim};
use stochtop::codec::{emit_complex, parse_complex};
use stochtop::constants;
use stochtop::sampler::{clique_sample, lm_sample, stream_rng};
use stochtop::spectra::{esd, SpectralMeasure};
use stochtop::{Error, SimplicialComplex};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StochtopStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Numeric = 4,
    CapExceeded = 5,
    Io = 6,
    Panic = 7,
}

/// Opaque simplicial complex.
pub struct StochtopComplex(SimplicialComplex);

/// Opaque spectral measure.
pub struct StochtopMeasure(SpectralMeasure);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> StochtopStatus {
    match e {
        Error::Parse { .. } => StochtopStatus::Parse,
        Error::RankMismatch { .. } | Error::Numeric(_) => StochtopStatus::Numeric,
        Error::CapExceeded { .. } => StochtopStatus::CapExceeded,
        Error::Io(_) => StochtopStatus::Io,
        _ => StochtopStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), StochtopStatus>) -> StochtopStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StochtopStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside stochtop".into());
            StochtopStatus::Panic
        }
    }
}

fn lib<T>(r: stochtop::Result<T>) -> Result<T, StochtopStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn nonnull<T>(p: *const T, what: &str) -> Result<(), StochtopStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(StochtopStatus::NullPointer);
    }
    Ok(())
}

fn put_complex(out: *mut *mut StochtopComplex, x: SimplicialComplex) {
    // SAFETY: callers checked `out` for null.
    unsafe { *out = Box::into_raw(Box::new(StochtopComplex(x))) };
}

/// Copies the last error message into `buf` (NUL-terminated, truncated to
/// `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Samples a `d`-Linial–Meshulam complex on `n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_lm_sample(
    n: usize,
    d: usize,
    p: f64,
    seed: u64,
    out: *mut *mut StochtopComplex,
) -> StochtopStatus {
    guard(|| {
        nonnull(out, "out")?;
        let x = lib(lm_sample(n, d, p, &mut stream_rng(seed, 0)))?;
        put_complex(out, x);
        Ok(())
    })
}

/// Samples a random `d`-clique complex truncated at `dim_cap`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_clique_sample(
    n: usize,
    d: usize,
    p: f64,
    dim_cap: usize,
    seed: u64,
    out: *mut *mut StochtopComplex,
) -> StochtopStatus {
    guard(|| {
        nonnull(out, "out")?;
        let x = lib(clique_sample(n, d, p, dim_cap, &mut stream_rng(seed, 0)))?;
        put_complex(out, x);
        Ok(())
    })
}

/// Parses the text complex format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_complex_parse(text: *const c_char, out: *mut *mut StochtopComplex) -> StochtopStatus {
    guard(|| {
        nonnull(text, "text")?;
        nonnull(out, "out")?;
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            set_error("text is not UTF-8".into());
            StochtopStatus::Parse
        })?;
        let x = lib(parse_complex(s))?;
        put_complex(out, x);
        Ok(())
    })
}

/// Serializes to the text format. Writes at most `len` bytes including the
/// terminating NUL into `buf` and the full length (without NUL) into
/// `needed`.
///
/// # Safety
/// `x` must be a live handle; `buf` null or valid for `len` bytes; `needed`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_complex_emit(
    x: *const StochtopComplex,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> StochtopStatus {
    guard(|| {
        nonnull(x, "complex")?;
        nonnull(needed, "needed")?;
        let s = emit_complex(&(*x).0);
        *needed = s.len();
        if !buf.is_null() && len > 0 {
            let n = s.len().min(len - 1);
            std::ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        Ok(())
    })
}

/// Releases a complex. Null is ignored.
///
/// # Safety
/// `x` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stochtop_complex_free(x: *mut StochtopComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Vertex count of the ambient simplex.
///
/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn stochtop_complex_n(x: *const StochtopComplex) -> usize {
    if x.is_null() {
        return 0;
    }
    (*x).0.n()
}

/// `f_k`, the number of `k`-simplices; `f_{-1} = 1` for a non-empty complex.
///
/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn stochtop_complex_f(x: *const StochtopComplex, k: i64) -> usize {
    if x.is_null() {
        return 0;
    }
    (*x).0.f(k as isize)
}

/// Reduced Betti number `β_k` over a prime field.
///
/// # Safety
/// `x` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_betti(x: *const StochtopComplex, k: usize, out: *mut usize) -> StochtopStatus {
    guard(|| {
        nonnull(x, "complex")?;
        nonnull(out, "out")?;
        *out = lib(betti_number(&(*x).0, k))?;
        Ok(())
    })
}

/// `dim Z^k`.
///
/// # Safety
/// `x` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_cocycle_dim(x: *const StochtopComplex, k: usize, out: *mut usize) -> StochtopStatus {
    guard(|| {
        nonnull(x, "complex")?;
        nonnull(out, "out")?;
        *out = lib(cocycle_dim(&(*x).0, k))?;
        Ok(())
    })
}

/// Empirical spectral distribution of the up-Laplacian in degree `k`.
///
/// # Safety
/// `x` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_esd(x: *const StochtopComplex, k: usize, out: *mut *mut StochtopMeasure) -> StochtopStatus {
    guard(|| {
        nonnull(x, "complex")?;
        nonnull(out, "out")?;
        let mu = lib(esd(&(*x).0, k))?;
        *out = Box::into_raw(Box::new(StochtopMeasure(mu)));
        Ok(())
    })
}

/// Number of atoms.
///
/// # Safety
/// `mu` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn stochtop_measure_len(mu: *const StochtopMeasure) -> usize {
    if mu.is_null() {
        return 0;
    }
    (*mu).0.atoms().len()
}

/// Copies up to `len` atoms, sorted by value, into `values` and `masses`.
/// Returns the number copied.
///
/// # Safety
/// `mu` must be a live handle; `values` and `masses` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_measure_atoms(
    mu: *const StochtopMeasure,
    values: *mut f64,
    masses: *mut f64,
    len: usize,
) -> usize {
    if mu.is_null() || values.is_null() || masses.is_null() {
        return 0;
    }
    let atoms = (*mu).0.atoms();
    let n = atoms.len().min(len);
    for (i, &(v, m)) in atoms[..n].iter().enumerate() {
        *values.add(i) = v;
        *masses.add(i) = m;
    }
    n
}

/// Releases a measure. Null is ignored.
///
/// # Safety
/// `mu` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stochtop_measure_free(mu: *mut StochtopMeasure) {
    if !mu.is_null() {
        drop(Box::from_raw(mu));
    }
}

/// `h_k(c)`; NaN for negative or non-finite `c`.
#[no_mangle]
pub extern "C" fn stochtop_h(k: u32, c: f64) -> f64 {
    if !(c >= 0.0) || !c.is_finite() {
        return f64::NAN;
    }
    constants::h(k, c)
}

/// `g_k(c)`; NaN unless `k >= 1` and `c > 0`.
#[no_mangle]
pub extern "C" fn stochtop_g(k: u32, c: f64) -> f64 {
    if k == 0 || !(c > 0.0) || !c.is_finite() {
        return f64::NAN;
    }
    constants::g(k, c)
}

/// The threshold `c_d`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn stochtop_c_threshold(d: u32, out: *mut f64) -> StochtopStatus {
    guard(|| {
        nonnull(out, "out")?;
        *out = lib(constants::c_threshold(d))?;
        Ok(())
    })
}
