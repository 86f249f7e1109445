//! C ABI over `sternfs`.
//!
//! Keys and signatures are opaque heap handles released with the matching
//! `*_free` function. Every entry point returns an [`SternfsStatus`] and
//! never unwinds across the boundary. Signing and verification use the hash
//! commitment.
//!
//! Byte-export functions follow the usual two-call pattern: pass `out = NULL`
//! (or a short buffer) to learn the length through `*out_len`.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sternfs::cli::{params_for_lambda, seed_from_bytes};
use sternfs::commit::CommitmentScheme;
use sternfs::fiatshamir::{
    decode_public_key, decode_secret_key, encode_public_key, encode_secret_key, sign,
    verify_signature, ParamsBlock, Signature,
};
use sternfs::stern::{keygen, validate_keypair, SternParams, SternPublicKey, SternSecretKey};
use sternfs::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SternfsStatus {
    Ok = 0,
    /// The signature did not verify.
    Invalid = 1,
    NullPointer = 2,
    InvalidParameter = 3,
    Malformed = 4,
    BufferTooSmall = 5,
    KeyMismatch = 6,
    Internal = 7,
}

/// Scheme parameters. `commit_len` is in bytes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SternfsParams {
    pub n: u32,
    pub k: u32,
    pub w: u32,
    pub r: u32,
    pub commit_len: u32,
}

pub struct SternfsPublicKey {
    params: ParamsBlock,
    key: SternPublicKey,
}

pub struct SternfsSecretKey {
    params: ParamsBlock,
    key: SternSecretKey,
}

pub struct SternfsSignature {
    sig: Signature,
}

impl From<ParamsBlock> for SternfsParams {
    fn from(p: ParamsBlock) -> Self {
        Self {
            n: p.stern.n as u32,
            k: p.stern.k as u32,
            w: p.stern.w as u32,
            r: u32::from(p.repetitions),
            commit_len: u32::from(p.commit_len),
        }
    }
}

impl TryFrom<SternfsParams> for ParamsBlock {
    type Error = Error;

    fn try_from(p: SternfsParams) -> Result<Self, Error> {
        let stern = SternParams::new(p.n as usize, p.k as usize, p.w as usize)?;
        ParamsBlock::new(stern, p.r as usize, p.commit_len as usize)
    }
}

fn status_of(e: &Error) -> SternfsStatus {
    match e {
        Error::Malformed(_) | Error::Truncated | Error::Length { .. } => SternfsStatus::Malformed,
        _ => SternfsStatus::InvalidParameter,
    }
}

fn guard(f: impl FnOnce() -> SternfsStatus) -> SternfsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SternfsStatus::Internal)
}

unsafe fn bytes<'a>(p: *const u8, len: usize) -> Option<&'a [u8]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(p, len))
    }
}

unsafe fn rng_from(seed: *const u8, seed_len: usize) -> Result<ChaCha20Rng, SternfsStatus> {
    if seed.is_null() {
        if seed_len != 0 {
            return Err(SternfsStatus::NullPointer);
        }
        return Ok(ChaCha20Rng::from_entropy());
    }
    let s = slice::from_raw_parts(seed, seed_len);
    seed_from_bytes(s)
        .map(ChaCha20Rng::from_seed)
        .map_err(|_| SternfsStatus::InvalidParameter)
}

fn hash_commitment(p: &ParamsBlock) -> CommitmentScheme {
    CommitmentScheme::hash(p.stern.slot_width(), usize::from(p.commit_len))
}

unsafe fn export(data: &[u8], out: *mut u8, out_len: *mut usize) -> SternfsStatus {
    if out_len.is_null() {
        return SternfsStatus::NullPointer;
    }
    let cap = *out_len;
    *out_len = data.len();
    if out.is_null() || cap < data.len() {
        return SternfsStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(data.as_ptr(), out, data.len());
    SternfsStatus::Ok
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sternfs_status_message(status: SternfsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SternfsStatus::Ok => c"ok",
        SternfsStatus::Invalid => c"signature invalid",
        SternfsStatus::NullPointer => c"null pointer argument",
        SternfsStatus::InvalidParameter => c"invalid parameter",
        SternfsStatus::Malformed => c"malformed encoding",
        SternfsStatus::BufferTooSmall => c"output buffer too small",
        SternfsStatus::KeyMismatch => c"keys or parameters do not match",
        SternfsStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Library version, NUL-terminated.
#[no_mangle]
pub extern "C" fn sternfs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parameters for a security level in bits.
#[no_mangle]
pub unsafe extern "C" fn sternfs_params_for_lambda(
    lambda: u32,
    out: *mut SternfsParams,
) -> SternfsStatus {
    guard(|| {
        if out.is_null() {
            return SternfsStatus::NullPointer;
        }
        match params_for_lambda(lambda) {
            Ok(p) => {
                *out = p.into();
                SternfsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Generates a key pair. `seed` may be NULL (with `seed_len = 0`) for OS
/// entropy; otherwise it must hold at least 16 bytes.
#[no_mangle]
pub unsafe extern "C" fn sternfs_keygen(
    params: *const SternfsParams,
    seed: *const u8,
    seed_len: usize,
    pk_out: *mut *mut SternfsPublicKey,
    sk_out: *mut *mut SternfsSecretKey,
) -> SternfsStatus {
    guard(|| {
        if params.is_null() || pk_out.is_null() || sk_out.is_null() {
            return SternfsStatus::NullPointer;
        }
        let p = match ParamsBlock::try_from(*params) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        let mut rng = match rng_from(seed, seed_len) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match keygen(&p.stern, &mut rng) {
            Ok((pk, sk)) => {
                *pk_out = boxed(SternfsPublicKey { params: p, key: pk });
                *sk_out = boxed(SternfsSecretKey { params: p, key: sk });
                SternfsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Signs `msg`. `seed` follows the rules of `sternfs_keygen`.
#[no_mangle]
pub unsafe extern "C" fn sternfs_sign(
    pk: *const SternfsPublicKey,
    sk: *const SternfsSecretKey,
    msg: *const u8,
    msg_len: usize,
    seed: *const u8,
    seed_len: usize,
    sig_out: *mut *mut SternfsSignature,
) -> SternfsStatus {
    guard(|| {
        if pk.is_null() || sk.is_null() || sig_out.is_null() {
            return SternfsStatus::NullPointer;
        }
        let (pk, sk) = (&*pk, &*sk);
        let Some(m) = bytes(msg, msg_len) else {
            return SternfsStatus::NullPointer;
        };
        if pk.params != sk.params || !validate_keypair(&pk.params.stern, &pk.key, &sk.key) {
            return SternfsStatus::KeyMismatch;
        }
        let mut rng = match rng_from(seed, seed_len) {
            Ok(r) => r,
            Err(s) => return s,
        };
        let g = hash_commitment(&pk.params);
        match sign(&pk.params, &pk.key, &sk.key, m, &mut rng, &g) {
            Ok(sig) => {
                *sig_out = boxed(SternfsSignature { sig });
                SternfsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// `STERNFS_STATUS_OK` when valid, `STERNFS_STATUS_INVALID` otherwise.
#[no_mangle]
pub unsafe extern "C" fn sternfs_verify(
    pk: *const SternfsPublicKey,
    msg: *const u8,
    msg_len: usize,
    sig: *const SternfsSignature,
) -> SternfsStatus {
    guard(|| {
        if pk.is_null() || sig.is_null() {
            return SternfsStatus::NullPointer;
        }
        let (pk, sig) = (&*pk, &*sig);
        let Some(m) = bytes(msg, msg_len) else {
            return SternfsStatus::NullPointer;
        };
        if verify_signature(
            &pk.params,
            &pk.key,
            m,
            &sig.sig,
            &hash_commitment(&pk.params),
        ) {
            SternfsStatus::Ok
        } else {
            SternfsStatus::Invalid
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_public_key_params(
    pk: *const SternfsPublicKey,
    out: *mut SternfsParams,
) -> SternfsStatus {
    guard(|| {
        if pk.is_null() || out.is_null() {
            return SternfsStatus::NullPointer;
        }
        *out = (*pk).params.into();
        SternfsStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_public_key_to_bytes(
    pk: *const SternfsPublicKey,
    out: *mut u8,
    out_len: *mut usize,
) -> SternfsStatus {
    guard(|| {
        if pk.is_null() {
            return SternfsStatus::NullPointer;
        }
        export(&encode_public_key(&(*pk).params, &(*pk).key), out, out_len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_secret_key_to_bytes(
    sk: *const SternfsSecretKey,
    out: *mut u8,
    out_len: *mut usize,
) -> SternfsStatus {
    guard(|| {
        if sk.is_null() {
            return SternfsStatus::NullPointer;
        }
        export(&encode_secret_key(&(*sk).params, &(*sk).key), out, out_len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_signature_to_bytes(
    sig: *const SternfsSignature,
    out: *mut u8,
    out_len: *mut usize,
) -> SternfsStatus {
    guard(|| {
        if sig.is_null() {
            return SternfsStatus::NullPointer;
        }
        export(&(*sig).sig.to_bytes(), out, out_len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_public_key_from_bytes(
    data: *const u8,
    len: usize,
    out: *mut *mut SternfsPublicKey,
) -> SternfsStatus {
    guard(|| {
        let (Some(b), false) = (bytes(data, len), out.is_null()) else {
            return SternfsStatus::NullPointer;
        };
        match decode_public_key(b) {
            Ok((params, key)) => {
                *out = boxed(SternfsPublicKey { params, key });
                SternfsStatus::Ok
            }
            Err(_) => SternfsStatus::Malformed,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_secret_key_from_bytes(
    data: *const u8,
    len: usize,
    out: *mut *mut SternfsSecretKey,
) -> SternfsStatus {
    guard(|| {
        let (Some(b), false) = (bytes(data, len), out.is_null()) else {
            return SternfsStatus::NullPointer;
        };
        match decode_secret_key(b) {
            Ok((params, key)) => {
                *out = boxed(SternfsSecretKey { params, key });
                SternfsStatus::Ok
            }
            Err(_) => SternfsStatus::Malformed,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn sternfs_signature_from_bytes(
    data: *const u8,
    len: usize,
    out: *mut *mut SternfsSignature,
) -> SternfsStatus {
    guard(|| {
        let (Some(b), false) = (bytes(data, len), out.is_null()) else {
            return SternfsStatus::NullPointer;
        };
        match Signature::from_bytes(b) {
            Ok(sig) => {
                *out = boxed(SternfsSignature { sig });
                SternfsStatus::Ok
            }
            Err(_) => SternfsStatus::Malformed,
        }
    })
}

/// Accepts NULL.
#[no_mangle]
pub unsafe extern "C" fn sternfs_public_key_free(pk: *mut SternfsPublicKey) {
    if !pk.is_null() {
        drop(Box::from_raw(pk));
    }
}

/// Accepts NULL.
#[no_mangle]
pub unsafe extern "C" fn sternfs_secret_key_free(sk: *mut SternfsSecretKey) {
    if !sk.is_null() {
        drop(Box::from_raw(sk));
    }
}

/// Accepts NULL.
#[no_mangle]
pub unsafe extern "C" fn sternfs_signature_free(sig: *mut SternfsSignature) {
    if !sig.is_null() {
        drop(Box::from_raw(sig));
    }
}
