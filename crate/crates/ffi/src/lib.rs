//! C interface to `puncstego`.
//!
//! Schemes are opaque handles created by one of the `psg_scheme_new_*`
//! functions and released with [`psg_scheme_free`]. Bit vectors cross the
//! boundary unpacked, one byte per bit holding 0 or 1. Every fallible call
//! returns a [`PsgStatus`].

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use puncstego::codes::{hamming_code, syndrome_table_size_mb};
use puncstego::puncturing::{find_puncture_set, PunctureOptions};
use puncstego::stego::entropy_bound;
use puncstego::{BchCode, BitVector, Error, Limits, PuncturedDecoder, StegoScheme};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    ResourceLimit = 4,
    /// The decoder could not reach the message coset; the output is untouched.
    EmbedFailure = 5,
    Internal = 6,
}

impl From<&Error> for PsgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::LengthMismatch { .. } => PsgStatus::LengthMismatch,
            Error::Resource { .. } => PsgStatus::ResourceLimit,
            Error::Inconsistent(_) | Error::Io(_) => PsgStatus::Internal,
            _ => PsgStatus::InvalidArgument,
        }
    }
}

/// Opaque stegoscheme handle.
pub struct PsgScheme {
    inner: StegoScheme,
}

/// Scheme parameters. Unavailable values are `-1` (integers) or NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsgParams {
    pub n: u32,
    pub r: u32,
    /// Worst-case changes.
    pub t_max: i32,
    /// Average changes over all cosets.
    pub t_avg: f64,
    pub a: f64,
    pub e: f64,
    pub e_avg: f64,
    pub p_s: f64,
    pub e_rel: f64,
    pub e_avg_rel: f64,
}

fn guard(f: impl FnOnce() -> PsgStatus) -> PsgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PsgStatus::Internal)
}

unsafe fn store(out: *mut *mut PsgScheme, made: Result<StegoScheme, Error>) -> PsgStatus {
    if out.is_null() {
        return PsgStatus::NullPointer;
    }
    match made {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(PsgScheme { inner }));
            PsgStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            PsgStatus::from(&e)
        }
    }
}

/// Punctured `BCH_m(t)` scheme: the code is punctured by the greedy search
/// until its covering radius is `t`, so embedding never fails.
///
/// # Safety
/// `out` must be null or valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_new_punctured_bch(m: u32, t: u32, out: *mut *mut PsgScheme) -> PsgStatus {
    guard(|| {
        let made = (|| {
            let bch = Arc::new(BchCode::with_default_field(m, t as usize)?);
            let res = find_puncture_set(bch.code(), t as usize, &PunctureOptions::default())?;
            let complete = res.achieved_rho <= t as usize;
            Ok(StegoScheme::punctured(PuncturedDecoder::new(bch, &res.punctured)?, complete))
        })();
        store(out, made)
    })
}

/// `BCH_m(t)` with the bounded Berlekamp–Massey decoder; embedding can fail.
///
/// # Safety
/// `out` must be null or valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_new_bch(m: u32, t: u32, out: *mut *mut PsgScheme) -> PsgStatus {
    guard(|| {
        let made = BchCode::with_default_field(m, t as usize).map(|b| StegoScheme::bounded(Arc::new(b)));
        store(out, made)
    })
}

/// Hamming code with `m` parity bits and coset-leader embedding.
///
/// # Safety
/// `out` must be null or valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_new_hamming(m: u32, out: *mut *mut PsgScheme) -> PsgStatus {
    guard(|| {
        let made = hamming_code(m as usize).and_then(|c| StegoScheme::coset_table(c, &Limits::default()));
        store(out, made)
    })
}

/// # Safety
/// `scheme` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_free(scheme: *mut PsgScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Cover length, or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_n(scheme: *const PsgScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.inner.n())
}

/// Message length, or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_r(scheme: *const PsgScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.inner.r())
}

unsafe fn bits_in(p: *const u8, len: usize) -> Option<BitVector> {
    let bytes = std::slice::from_raw_parts(p, len);
    if bytes.iter().any(|&b| b > 1) {
        return None;
    }
    Some(BitVector::from_bytes01(bytes))
}

unsafe fn bits_out(v: &BitVector, p: *mut u8) {
    let out = std::slice::from_raw_parts_mut(p, v.len());
    out.copy_from_slice(&v.to_bytes01());
}

/// Embeds `msg` (`r` bits) in `cover` (`n` bits), writing `n` bits to `stego`.
///
/// # Safety
/// Pointers must be valid for the given lengths; `stego` for `stego_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_embed(
    scheme: *const PsgScheme,
    cover: *const u8,
    cover_len: usize,
    msg: *const u8,
    msg_len: usize,
    stego: *mut u8,
    stego_len: usize,
) -> PsgStatus {
    guard(|| {
        let Some(s) = scheme.as_ref() else { return PsgStatus::NullPointer };
        if cover.is_null() || msg.is_null() || stego.is_null() {
            return PsgStatus::NullPointer;
        }
        if cover_len != s.inner.n() || msg_len != s.inner.r() || stego_len != s.inner.n() {
            return PsgStatus::LengthMismatch;
        }
        let (Some(x), Some(m)) = (bits_in(cover, cover_len), bits_in(msg, msg_len)) else {
            return PsgStatus::InvalidArgument;
        };
        match s.inner.embed(&x, &m) {
            Ok(outcome) => match outcome.stego() {
                Some(v) => {
                    bits_out(&v, stego);
                    PsgStatus::Ok
                }
                None => PsgStatus::EmbedFailure,
            },
            Err(e) => PsgStatus::from(&e),
        }
    })
}

/// Writes the `r`-bit message carried by `stego` (`n` bits) to `msg`.
///
/// # Safety
/// Pointers must be valid for the given lengths.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_extract(
    scheme: *const PsgScheme,
    stego: *const u8,
    stego_len: usize,
    msg: *mut u8,
    msg_len: usize,
) -> PsgStatus {
    guard(|| {
        let Some(s) = scheme.as_ref() else { return PsgStatus::NullPointer };
        if stego.is_null() || msg.is_null() {
            return PsgStatus::NullPointer;
        }
        if stego_len != s.inner.n() || msg_len != s.inner.r() {
            return PsgStatus::LengthMismatch;
        }
        let Some(v) = bits_in(stego, stego_len) else { return PsgStatus::InvalidArgument };
        match s.inner.extract(&v) {
            Ok(m) => {
                bits_out(&m, msg);
                PsgStatus::Ok
            }
            Err(e) => PsgStatus::from(&e),
        }
    })
}

/// Fills `out` with the scheme's parameters.
///
/// # Safety
/// `scheme` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn psg_scheme_params(scheme: *const PsgScheme, out: *mut PsgParams) -> PsgStatus {
    guard(|| {
        let Some(s) = scheme.as_ref() else { return PsgStatus::NullPointer };
        if out.is_null() {
            return PsgStatus::NullPointer;
        }
        let rec = s.inner.params(&Limits::default()).record();
        let nan = |x: Option<f64>| x.unwrap_or(f64::NAN);
        *out = PsgParams {
            n: rec.n as u32,
            r: rec.r as u32,
            t_max: rec.t_max.map_or(-1, |t| t as i32),
            t_avg: nan(rec.t_avg),
            a: rec.a,
            e: nan(rec.e),
            e_avg: nan(rec.e_avg),
            p_s: nan(rec.p_s),
            e_rel: nan(rec.e_rel),
            e_avg_rel: nan(rec.e_avg_rel),
        };
        PsgStatus::Ok
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn psg_status_str(status: PsgStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        PsgStatus::Ok => b"ok\0",
        PsgStatus::NullPointer => b"null pointer\0",
        PsgStatus::InvalidArgument => b"invalid argument\0",
        PsgStatus::LengthMismatch => b"length mismatch\0",
        PsgStatus::ResourceLimit => b"resource limit exceeded\0",
        PsgStatus::EmbedFailure => b"embedding failed\0",
        PsgStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Megabits of a syndrome-leader table with `2^r` entries of `n + r` bits.
#[no_mangle]
pub extern "C" fn psg_table_size_mb(n: u64, r: u32) -> f64 {
    if r > 100 {
        return f64::INFINITY;
    }
    syndrome_table_size_mb(n, r)
}

/// `a / H_q^{-1}(a)`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn psg_entropy_bound(q: u32, a: f64, out: *mut f64) -> PsgStatus {
    if out.is_null() {
        return PsgStatus::NullPointer;
    }
    match entropy_bound(q, a) {
        Ok(b) => {
            *out = b;
            PsgStatus::Ok
        }
        Err(e) => PsgStatus::from(&e),
    }
}
