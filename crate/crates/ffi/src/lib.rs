//! C ABI for votelab.
//!
//! Objects cross the boundary as opaque handles created by `vl_*` functions
//! and released with the matching `*_free`. Every fallible call returns a
//! [`VlStatus`]; on failure [`vl_last_error`] describes the problem.
//! Strings returned by the library are NUL-terminated UTF-8 and must be
//! released with [`vl_string_free`]. No call panics across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use votelab::board::{verify_transcript_text, BoardError};
use votelab::elgamal::{self, Ciphertext, ElGamalError, KeyPair, PublicKey};
use votelab::group::{gen_params, SecurityLevel};
use votelab::rng::Seed;
use votelab::sigma::FsMode;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// Decryption failed or a value is outside the message space.
    Crypto = 4,
    /// A transcript was parsed and audited, and the audit failed.
    Rejected = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VlLevel {
    Toy = 0,
    Test = 1,
    Production = 2,
}

impl From<VlLevel> for SecurityLevel {
    fn from(l: VlLevel) -> Self {
        match l {
            VlLevel::Toy => SecurityLevel::Toy,
            VlLevel::Test => SecurityLevel::Test,
            VlLevel::Production => SecurityLevel::Production,
        }
    }
}

/// Verification mode for [`vl_transcript_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VlMode {
    /// Whatever the transcript header records.
    Recorded = 0,
    Weak = 1,
    Strong = 2,
}

pub struct VlKeyPair(KeyPair);
pub struct VlPublicKey(PublicKey);
pub struct VlCiphertext(Ciphertext);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Fail(VlStatus, String);

impl From<ElGamalError> for Fail {
    fn from(e: ElGamalError) -> Self {
        Fail(VlStatus::Crypto, e.to_string())
    }
}

impl From<BoardError> for Fail {
    fn from(e: BoardError) -> Self {
        let status = if e.is_parse() { VlStatus::Parse } else { VlStatus::InvalidArgument };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(VlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VlStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            VlStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Fail(VlStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(VlStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn seed_arg(seed: *const u8, len: usize) -> Result<Seed, Fail> {
    if seed.is_null() {
        return Ok(Seed::from_entropy());
    }
    if len == 0 || len > 32 {
        return Err(Fail(VlStatus::InvalidArgument, "seed must be 1 to 32 bytes".into()));
    }
    let mut s = [0u8; 32];
    s[32 - len..].copy_from_slice(std::slice::from_raw_parts(seed, len));
    Ok(Seed(s))
}

/// The message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn vl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generates a key pair. `seed` may be NULL for fresh entropy; otherwise
/// its `seed_len` (1..=32) bytes make the result reproducible.
///
/// # Safety
/// `seed` must point to `seed_len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_keypair_generate(
    level: VlLevel,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut VlKeyPair,
) -> VlStatus {
    guard(|| {
        let seed = seed_arg(seed, seed_len)?;
        let kp = elgamal::keygen(&gen_params(level.into()), &mut seed.rng());
        put(out, VlKeyPair(kp))
    })
}

/// A key pair with a given secret exponent.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_keypair_from_secret(level: VlLevel, secret: u64, out: *mut *mut VlKeyPair) -> VlStatus {
    guard(|| {
        let params = gen_params(level.into());
        let sk = params.scalar_u64(secret);
        if sk.is_zero() {
            return Err(Fail(VlStatus::InvalidArgument, "secret must be nonzero mod q".into()));
        }
        put(out, VlKeyPair(KeyPair::from_secret(&params, sk)))
    })
}

/// # Safety
/// `kp` must be a live key pair handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_keypair_public(kp: *const VlKeyPair, out: *mut *mut VlPublicKey) -> VlStatus {
    guard(|| put(out, VlPublicKey(deref(kp, "kp")?.0.pk.clone())))
}

/// # Safety
/// `kp` must be NULL or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_keypair_free(kp: *mut VlKeyPair) {
    if !kp.is_null() {
        drop(Box::from_raw(kp));
    }
}

/// The public key as JSON `{params, y}`.
///
/// # Safety
/// `pk` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_public_key_to_json(pk: *const VlPublicKey, out: *mut *mut c_char) -> VlStatus {
    guard(|| {
        let json = serde_json::to_string(&deref(pk, "pk")?.0).expect("serializable");
        put_string(out, json)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_public_key_from_json(json: *const c_char, out: *mut *mut VlPublicKey) -> VlStatus {
    guard(|| {
        let pk: PublicKey = serde_json::from_str(str_arg(json, "json")?)
            .map_err(|e| Fail(VlStatus::Parse, e.to_string()))?;
        put(out, VlPublicKey(pk))
    })
}

/// # Safety
/// `pk` must be NULL or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_public_key_free(pk: *mut VlPublicKey) {
    if !pk.is_null() {
        drop(Box::from_raw(pk));
    }
}

/// Encrypts g^m with randomness drawn from `seed` (NULL for entropy).
///
/// # Safety
/// As for [`vl_keypair_generate`]; `pk` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vl_encrypt(
    pk: *const VlPublicKey,
    m: u64,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut VlCiphertext,
) -> VlStatus {
    guard(|| {
        let pk = &deref(pk, "pk")?.0;
        let seed = seed_arg(seed, seed_len)?;
        let r = pk.params().random_scalar(&mut seed.rng());
        put(out, VlCiphertext(elgamal::encrypt_exp(pk, m, &r)))
    })
}

/// Encrypts g^m with explicit randomness `r` (reduced mod q).
///
/// # Safety
/// `pk` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_encrypt_with_randomness(
    pk: *const VlPublicKey,
    m: u64,
    r: u64,
    out: *mut *mut VlCiphertext,
) -> VlStatus {
    guard(|| {
        let pk = &deref(pk, "pk")?.0;
        let r = pk.params().scalar_u64(r);
        put(out, VlCiphertext(elgamal::encrypt_exp(pk, m, &r)))
    })
}

/// Decrypts to m in 0..=bound.
///
/// # Safety
/// Handles must be live; `m` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_decrypt(
    kp: *const VlKeyPair,
    ct: *const VlCiphertext,
    bound: u64,
    m: *mut u64,
) -> VlStatus {
    guard(|| {
        let kp = &deref(kp, "kp")?.0;
        let ct = &deref(ct, "ct")?.0;
        if m.is_null() {
            return Err(null("m"));
        }
        if !ct.is_well_formed(kp.params()) {
            return Err(ElGamalError::InvalidCiphertext.into());
        }
        *m = elgamal::decrypt_exp(kp, ct, bound)?;
        Ok(())
    })
}

/// Homomorphic combination: the result decrypts to the sum.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_ciphertext_combine(
    pk: *const VlPublicKey,
    a: *const VlCiphertext,
    b: *const VlCiphertext,
    out: *mut *mut VlCiphertext,
) -> VlStatus {
    guard(|| {
        let params = deref(pk, "pk")?.0.params();
        let ct = elgamal::hom_combine(params, &deref(a, "a")?.0, &deref(b, "b")?.0);
        put(out, VlCiphertext(ct))
    })
}

/// The ciphertext as JSON `{c1, c2}` with hex components.
///
/// # Safety
/// `ct` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_ciphertext_to_json(ct: *const VlCiphertext, out: *mut *mut c_char) -> VlStatus {
    guard(|| {
        let json = serde_json::to_string(&deref(ct, "ct")?.0).expect("serializable");
        put_string(out, json)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_ciphertext_from_json(json: *const c_char, out: *mut *mut VlCiphertext) -> VlStatus {
    guard(|| {
        let ct: Ciphertext = serde_json::from_str(str_arg(json, "json")?)
            .map_err(|e| Fail(VlStatus::Parse, e.to_string()))?;
        put(out, VlCiphertext(ct))
    })
}

/// # Safety
/// `ct` must be NULL or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_ciphertext_free(ct: *mut VlCiphertext) {
    if !ct.is_null() {
        drop(Box::from_raw(ct));
    }
}

/// Audits an election transcript given as JSON text. Returns `Ok` if every
/// check passes and `Rejected` if one fails; either way `report` (if not
/// NULL) receives the audit as JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `report` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn vl_transcript_verify(
    json: *const c_char,
    mode: VlMode,
    report: *mut *mut c_char,
) -> VlStatus {
    let mut accepted = false;
    let status = guard(|| {
        let mode = match mode {
            VlMode::Recorded => None,
            VlMode::Weak => Some(FsMode::Weak),
            VlMode::Strong => Some(FsMode::Strong),
        };
        let r = verify_transcript_text(str_arg(json, "json")?, mode)?;
        accepted = r.accepted();
        if !accepted {
            let failed = r.report.first_failure().map(|c| c.name.clone()).unwrap_or_default();
            set_error(format!("check failed: {failed}"));
        }
        if !report.is_null() {
            put_string(report, serde_json::to_string(&r).expect("serializable"))?;
        }
        Ok(())
    });
    match status {
        VlStatus::Ok if !accepted => VlStatus::Rejected,
        s => s,
    }
}
