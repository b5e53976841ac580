//! Multiplicative groups modulo a prime.
//!
//! Three parameter sets are built in: the textbook group mod 23 (full group,
//! composite order 22), a 512-bit safe-prime group used by the test suites,
//! and the 2048-bit MODP group from RFC 3526 for anything resembling real use.
//! For the safe-prime sets all elements live in the order-q subgroup of
//! quadratic residues and every exponent is reduced modulo the prime q.
//!
//! Nothing here is constant time.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gmp;
use crate::mont::{Modulus, MontRows};

const TEST_P: &str = "aa83d8b14a06c9a5ef3ffda771f48b79aa765a1facdf04df9d9cd6b90d7b080d7e0937f78ff0dc0183ce058770a481f4cdd0b1b66dc8a4c096b7d221c4f34e97";

// RFC 3526, 2048-bit MODP group (id 14).
const PRODUCTION_P: &str = "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f14374fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7edee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf0598da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3be39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf6955817183995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";

/// Largest bound served by the per-group cached discrete-log table.
pub const DLOG_CACHE_BOUND: u64 = 1 << 16;
const DLOG_TABLE_MAX: u64 = 1 << 20;
const DLOG_LINEAR_MAX: u64 = 64;

const G_WINDOW: usize = 10;
const BASE_WINDOW: usize = 6;
/// Exponentiations with a [`CachedBase`] before its table is built.
const BASE_TABLE_THRESHOLD: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("value is not an element of the group")]
    NotInGroup,
    #[error("invalid hex integer: {0:?}")]
    InvalidHex(String),
    #[error("scalar is not invertible modulo the group order")]
    NotInvertible,
    #[error("parameter generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("invalid group parameters: {0}")]
    InvalidParams(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecurityLevel {
    Toy,
    Test,
    Production,
}

impl SecurityLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SecurityLevel::Toy => "toy",
            SecurityLevel::Test => "test",
            SecurityLevel::Production => "production",
        }
    }
}

impl fmt::Display for SecurityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SecurityLevel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "toy" => Ok(SecurityLevel::Toy),
            "test" => Ok(SecurityLevel::Test),
            "production" => Ok(SecurityLevel::Production),
            other => Err(format!("unknown security level {other:?}")),
        }
    }
}

/// An exponent, always reduced modulo the group order q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigUint);

impl Scalar {
    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Wraps an integer without reducing it. Callers must guarantee the
    /// value is already below q; used by decoders that validate separately.
    pub fn from_raw(v: BigUint) -> Self {
        Scalar(v)
    }
}

/// A group element. Membership is checked by [`GroupParams::element`] and by
/// every verifier, not by the type itself, so deserialized values are inert
/// until validated against a parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(BigUint);

impl GroupElement {
    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn from_raw(v: BigUint) -> Self {
        GroupElement(v)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        magnitude_bytes(&self.0)
    }
}

/// Big-endian magnitude with no leading zero bytes; zero is the empty string.
pub fn magnitude_bytes(v: &BigUint) -> Vec<u8> {
    if v.is_zero() {
        Vec::new()
    } else {
        v.to_bytes_be()
    }
}

pub fn to_hex(v: &BigUint) -> String {
    v.to_str_radix(16)
}

pub fn from_hex(s: &str) -> Result<BigUint, GroupError> {
    let ok = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
        && (s == "0" || !s.starts_with('0'));
    if !ok {
        return Err(GroupError::InvalidHex(s.to_owned()));
    }
    BigUint::parse_bytes(s.as_bytes(), 16).ok_or_else(|| GroupError::InvalidHex(s.to_owned()))
}

macro_rules! hex_serde {
    ($t:ident) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&to_hex(&self.0))
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                from_hex(&s).map($t).map_err(serde::de::Error::custom)
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&to_hex(&self.0))
            }
        }
    };
}

hex_serde!(Scalar);
hex_serde!(GroupElement);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Structure {
    /// p = 2q + 1 with q prime; the working group is the quadratic residues.
    SafePrime,
    /// q = p − 1: the full multiplicative group (toy parameters only).
    Full,
    /// Any other prime-order subgroup.
    Subgroup,
}

struct Inner {
    p: BigUint,
    q: BigUint,
    g: GroupElement,
    level: SecurityLevel,
    structure: Structure,
    g_inv: GroupElement,
    mont: Option<Modulus>,
    g_base: OnceLock<FixedBaseTable>,
    dlog: OnceLock<DlogTable>,
}

/// Public parameters of a group: modulus p, order q of the working subgroup,
/// and a generator g of that subgroup.
#[derive(Clone)]
pub struct GroupParams(Arc<Inner>);

impl fmt::Debug for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupParams")
            .field("level", &self.0.level)
            .field("p_bits", &self.0.p.bits())
            .field("g", &self.0.g)
            .finish()
    }
}

impl PartialEq for GroupParams {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.q == other.0.q && self.0.g == other.0.g)
    }
}

impl Eq for GroupParams {}

/// Serialized form of [`GroupParams`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub level: SecurityLevel,
    pub p: String,
    pub q: String,
    pub g: String,
}

static TOY: OnceLock<GroupParams> = OnceLock::new();
static TEST: OnceLock<GroupParams> = OnceLock::new();
static PRODUCTION: OnceLock<GroupParams> = OnceLock::new();

/// Returns the parameter set for a security level.
///
/// Toy is the Z*_23 group with generator 5. Test and production are fixed
/// safe-prime groups (512 and 2048 bits) with generator 4, loaded once per
/// process so their precomputed tables are shared.
pub fn gen_params(level: SecurityLevel) -> GroupParams {
    match level {
        SecurityLevel::Toy => TOY
            .get_or_init(|| {
                GroupParams::from_parts(
                    BigUint::from(23u32),
                    BigUint::from(22u32),
                    BigUint::from(5u32),
                    SecurityLevel::Toy,
                )
                .expect("toy parameters are valid")
            })
            .clone(),
        SecurityLevel::Test => TEST.get_or_init(|| safe_prime_params(TEST_P, level)).clone(),
        SecurityLevel::Production => PRODUCTION
            .get_or_init(|| safe_prime_params(PRODUCTION_P, level))
            .clone(),
    }
}

fn safe_prime_params(p_hex: &str, level: SecurityLevel) -> GroupParams {
    let p = from_hex(p_hex).expect("built-in modulus");
    let q = (&p - 1u32) >> 1;
    GroupParams::from_parts(p, q, BigUint::from(4u32), level).expect("built-in parameters are valid")
}

impl GroupParams {
    /// Builds parameters after checking the structural invariants
    /// (q | p − 1, g ≠ 1, g^q = 1). Primality is not re-tested here.
    pub fn from_parts(
        p: BigUint,
        q: BigUint,
        g: BigUint,
        level: SecurityLevel,
    ) -> Result<Self, GroupError> {
        if p < BigUint::from(5u32) || p.is_even() {
            return Err(GroupError::InvalidParams("modulus must be an odd prime"));
        }
        let pm1 = &p - 1u32;
        if q.is_zero() || !(&pm1 % &q).is_zero() {
            return Err(GroupError::InvalidParams("q must divide p - 1"));
        }
        if g.is_one() || g.is_zero() || g >= p {
            return Err(GroupError::InvalidParams("generator out of range"));
        }
        if !g.modpow(&q, &p).is_one() {
            return Err(GroupError::InvalidParams("generator order does not divide q"));
        }
        let structure = if q == pm1 {
            Structure::Full
        } else if &q * 2u32 == pm1 {
            Structure::SafePrime
        } else {
            Structure::Subgroup
        };
        let g_inv = GroupElement(g.modinv(&p).expect("p is prime"));
        let mont = Modulus::new(&p);
        Ok(GroupParams(Arc::new(Inner {
            p,
            q,
            g: GroupElement(g),
            level,
            structure,
            g_inv,
            mont,
            g_base: OnceLock::new(),
            dlog: OnceLock::new(),
        })))
    }

    /// Generates a fresh safe-prime group of the given size.
    pub fn generate(
        bits: u64,
        level: SecurityLevel,
        rng: &mut dyn RngCore,
        max_attempts: usize,
    ) -> Result<Self, GroupError> {
        let (p, q) = gen_safe_prime(bits, rng, max_attempts)?;
        GroupParams::from_parts(p, q, BigUint::from(4u32), level)
    }

    pub fn from_record(rec: &ParamsRecord) -> Result<Self, GroupError> {
        let p = from_hex(&rec.p)?;
        let q = from_hex(&rec.q)?;
        let g = from_hex(&rec.g)?;
        let builtin = gen_params(rec.level);
        if builtin.p() == &p && builtin.q() == &q && builtin.g().as_biguint() == &g {
            return Ok(builtin);
        }
        GroupParams::from_parts(p, q, g, rec.level)
    }

    pub fn to_record(&self) -> ParamsRecord {
        ParamsRecord {
            level: self.0.level,
            p: to_hex(&self.0.p),
            q: to_hex(&self.0.q),
            g: to_hex(self.0.g.as_biguint()),
        }
    }

    pub fn p(&self) -> &BigUint {
        &self.0.p
    }

    pub fn q(&self) -> &BigUint {
        &self.0.q
    }

    pub fn g(&self) -> &GroupElement {
        &self.0.g
    }

    pub fn level(&self) -> SecurityLevel {
        self.0.level
    }

    /// True when every non-zero scalar is invertible.
    pub fn has_prime_order(&self) -> bool {
        self.0.structure != Structure::Full
    }

    // ---- scalars ----

    pub fn scalar(&self, v: impl Into<BigUint>) -> Scalar {
        Scalar(v.into() % &self.0.q)
    }

    pub fn scalar_u64(&self, v: u64) -> Scalar {
        self.scalar(BigUint::from(v))
    }

    /// Accepts an integer only if it is already reduced.
    pub fn checked_scalar(&self, v: &BigUint) -> Option<Scalar> {
        (v < &self.0.q).then(|| Scalar(v.clone()))
    }

    pub fn zero(&self) -> Scalar {
        Scalar(BigUint::zero())
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &b.0) % &self.0.q)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &self.0.q - &b.0) % &self.0.q)
    }

    pub fn mul_scalars(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 * &b.0) % &self.0.q)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn inv_scalar(&self, a: &Scalar) -> Result<Scalar, GroupError> {
        gmp::inverse(&a.0, &self.0.q).map(Scalar).ok_or(GroupError::NotInvertible)
    }

    /// Uniform in [0, q).
    pub fn random_scalar(&self, rng: &mut dyn RngCore) -> Scalar {
        Scalar(rng.gen_biguint_below(&self.0.q))
    }

    /// Uniform in [1, q).
    pub fn random_nonzero_scalar(&self, rng: &mut dyn RngCore) -> Scalar {
        let bound = &self.0.q - 1u32;
        Scalar(rng.gen_biguint_below(&bound) + 1u32)
    }

    /// SHA-256 over `tag ‖ (len_be32 ‖ bytes)*`, reduced modulo q.
    pub fn hash_to_scalar(&self, tag: u8, fields: &[&[u8]]) -> Scalar {
        let mut h = Sha256::new();
        h.update([tag]);
        for f in fields {
            h.update((f.len() as u32).to_be_bytes());
            h.update(f);
        }
        self.scalar(BigUint::from_bytes_be(&h.finalize()))
    }

    // ---- elements ----

    pub fn identity(&self) -> GroupElement {
        GroupElement(BigUint::one())
    }

    pub fn element(&self, v: BigUint) -> Result<GroupElement, GroupError> {
        let e = GroupElement(v);
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(GroupError::NotInGroup)
        }
    }

    pub fn element_u64(&self, v: u64) -> Result<GroupElement, GroupError> {
        self.element(BigUint::from(v))
    }

    /// Membership in the working group.
    pub fn contains(&self, x: &GroupElement) -> bool {
        let v = &x.0;
        if v.is_zero() || v >= &self.0.p {
            return false;
        }
        match self.0.structure {
            Structure::Full => true,
            Structure::SafePrime => jacobi(v, &self.0.p) == 1,
            Structure::Subgroup => self.modpow(v, &self.0.q).is_one(),
        }
    }

    /// 0 < x < p. Proof commitments only need this much: the verification
    /// equations force them into the group once the bases are members.
    pub fn in_range(&self, x: &GroupElement) -> bool {
        !x.0.is_zero() && x.0 < self.0.p
    }

    /// g^-1.
    pub fn g_inv(&self) -> &GroupElement {
        &self.0.g_inv
    }

    fn modpow(&self, base: &BigUint, e: &BigUint) -> BigUint {
        gmp::pow_mod(base, e, &self.0.p)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement((&a.0 * &b.0) % &self.0.p)
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement(gmp::inverse(&a.0, &self.0.p).expect("group elements are invertible"))
    }

    pub fn div(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, base: &GroupElement, e: &Scalar) -> GroupElement {
        GroupElement(self.modpow(&base.0, &e.0))
    }

    pub fn pow_u64(&self, base: &GroupElement, e: u64) -> GroupElement {
        GroupElement(self.modpow(&base.0, &BigUint::from(e)))
    }

    /// g^e, using a precomputed fixed-base table.
    pub fn pow_g(&self, e: &Scalar) -> GroupElement {
        self.0
            .g_base
            .get_or_init(|| FixedBaseTable::new(self, &self.0.g, G_WINDOW))
            .pow(self, e)
    }

    /// g^m for a small non-negative integer message.
    pub fn encode_exponent(&self, m: u64) -> GroupElement {
        self.pow_g(&self.scalar_u64(m))
    }

    /// Product of all elements; the identity for an empty iterator.
    pub fn product<'a>(&self, it: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        it.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    // ---- discrete logarithms ----

    /// Smallest t in [0, bound] with g^t = x, if any.
    pub fn dlog_small(&self, x: &GroupElement, bound: u64) -> Option<u64> {
        // Exponents are only meaningful below q.
        let bound = match self.0.q.to_u64() {
            Some(q) => bound.min(q - 1),
            None => bound,
        };
        if bound < DLOG_LINEAR_MAX {
            let mut acc = self.identity();
            for t in 0..=bound {
                if acc == *x {
                    return Some(t);
                }
                acc = self.mul(&acc, &self.0.g);
            }
            return None;
        }
        if bound <= DLOG_CACHE_BOUND {
            let table = self
                .0
                .dlog
                .get_or_init(|| DlogTable::new(self, DLOG_CACHE_BOUND));
            return table.lookup(x).filter(|t| *t <= bound);
        }
        if bound <= DLOG_TABLE_MAX {
            return DlogTable::new(self, bound).lookup(x);
        }
        baby_step_giant_step(self, x, bound)
    }
}

/// Precomputed powers g^0..g^bound for repeated small discrete logs.
pub struct DlogTable {
    map: HashMap<BigUint, u64>,
}

impl DlogTable {
    pub fn new(params: &GroupParams, bound: u64) -> Self {
        let bound = match params.q().to_u64() {
            Some(q) => bound.min(q - 1),
            None => bound,
        };
        let mut map = HashMap::with_capacity(bound as usize + 1);
        let mut acc = params.identity();
        for t in 0..=bound {
            map.entry(acc.0.clone()).or_insert(t);
            acc = params.mul(&acc, params.g());
        }
        DlogTable { map }
    }

    pub fn lookup(&self, x: &GroupElement) -> Option<u64> {
        self.map.get(&x.0).copied()
    }
}

fn baby_step_giant_step(params: &GroupParams, x: &GroupElement, bound: u64) -> Option<u64> {
    let m = (bound as f64 + 1.0).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut acc = params.identity();
    for j in 0..m {
        baby.entry(acc.0.clone()).or_insert(j);
        acc = params.mul(&acc, params.g());
    }
    // factor = g^{-m}
    let factor = params.inv(&params.pow_u64(params.g(), m));
    let mut gamma = x.clone();
    for i in 0..=m {
        if let Some(j) = baby.get(&gamma.0) {
            let t = i * m + j;
            return (t <= bound).then_some(t);
        }
        gamma = params.mul(&gamma, &factor);
    }
    None
}

/// Windowed fixed-base exponentiation table: entry (i, d) holds
/// base^(d · 2^(w·i)).
pub struct FixedBaseTable {
    window: usize,
    rows: Rows,
}

enum Rows {
    Mont(MontRows),
    Plain(Vec<Vec<BigUint>>),
}

impl FixedBaseTable {
    pub fn new(params: &GroupParams, base: &GroupElement, window: usize) -> Self {
        let p = params.p();
        let nrows = (params.q().bits() as usize).div_ceil(window);
        let base = &base.0 % p;
        if let Some(m) = &params.0.mont {
            return FixedBaseTable { window, rows: Rows::Mont(m.table(&base, nrows, window)) };
        }
        let mut rows = Vec::with_capacity(nrows);
        let mut row_base = base;
        for _ in 0..nrows {
            let mut row = Vec::with_capacity((1 << window) - 1);
            let mut acc = row_base.clone();
            for _ in 1..(1usize << window) {
                row.push(acc.clone());
                acc = (&acc * &row_base) % p;
            }
            // acc is now row_base^(2^w)
            row_base = acc;
            rows.push(row);
        }
        FixedBaseTable { window, rows: Rows::Plain(rows) }
    }

    pub fn pow(&self, params: &GroupParams, e: &Scalar) -> GroupElement {
        let digits = e.0.to_u64_digits();
        let w = self.window;
        match &self.rows {
            Rows::Mont(m) => {
                let picks = (0..m.len())
                    .map(|i| (i, window_digit(&digits, i * w, w)))
                    .filter(|&(_, d)| d != 0);
                GroupElement(m.product(picks))
            }
            Rows::Plain(rows) => {
                let mut acc = BigUint::one();
                for (i, row) in rows.iter().enumerate() {
                    let d = window_digit(&digits, i * w, w);
                    if d != 0 {
                        acc = (&acc * &row[d - 1]) % params.p();
                    }
                }
                GroupElement(acc)
            }
        }
    }
}

fn window_digit(limbs: &[u64], start: usize, width: usize) -> usize {
    let (li, off) = (start / 64, start % 64);
    let lo = limbs.get(li).copied().unwrap_or(0) >> off;
    let hi = if off + width > 64 && off != 0 {
        limbs.get(li + 1).copied().unwrap_or(0) << (64 - off)
    } else {
        0
    };
    ((lo | hi) & ((1u64 << width) - 1)) as usize
}

/// A group element that is raised to many exponents (public keys). The
/// fixed-base table is built lazily once the element has seen enough use.
pub struct CachedBase {
    elem: GroupElement,
    uses: AtomicU32,
    table: OnceLock<FixedBaseTable>,
}

impl CachedBase {
    pub fn new(elem: GroupElement) -> Self {
        CachedBase {
            elem,
            uses: AtomicU32::new(0),
            table: OnceLock::new(),
        }
    }

    pub fn element(&self) -> &GroupElement {
        &self.elem
    }

    pub fn pow(&self, params: &GroupParams, e: &Scalar) -> GroupElement {
        if let Some(t) = self.table.get() {
            return t.pow(params, e);
        }
        if self.uses.fetch_add(1, Ordering::Relaxed) < BASE_TABLE_THRESHOLD {
            return params.pow(&self.elem, e);
        }
        self.table
            .get_or_init(|| FixedBaseTable::new(params, &self.elem, BASE_WINDOW))
            .pow(params, e)
    }
}

impl Clone for CachedBase {
    fn clone(&self) -> Self {
        CachedBase::new(self.elem.clone())
    }
}

impl fmt::Debug for CachedBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elem.fmt(f)
    }
}

/// Jacobi symbol (a/n) for odd n.
pub fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    gmp::jacobi(a, n)
}

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Miller–Rabin with `rounds` random bases.
pub fn is_probable_prime(n: &BigUint, rounds: usize, rng: &mut dyn RngCore) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for sp in SMALL_PRIMES {
        let sp = BigUint::from(sp);
        if n == &sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &nm1);
        let mut x = gmp::pow_mod(&a, &d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Searches for a safe prime p = 2q + 1 of exactly `bits` bits.
pub fn gen_safe_prime(
    bits: u64,
    rng: &mut dyn RngCore,
    max_attempts: usize,
) -> Result<(BigUint, BigUint), GroupError> {
    if bits < 6 {
        return Err(GroupError::InvalidParams("safe primes need at least 6 bits"));
    }
    for _ in 0..max_attempts {
        let mut q = rng.gen_biguint(bits - 1);
        q.set_bit(bits - 2, true);
        q.set_bit(0, true);
        // q ≡ 2 (mod 3) keeps p = 2q + 1 off multiples of 3
        if (&q % 3u32) != BigUint::from(2u32) {
            continue;
        }
        if !is_probable_prime(&q, 2, rng) {
            continue;
        }
        let p = &q * 2u32 + 1u32;
        if is_probable_prime(&p, 32, rng) && is_probable_prime(&q, 32, rng) {
            return Ok((p, q));
        }
    }
    Err(GroupError::GenerationFailed(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn toy() -> GroupParams {
        gen_params(SecurityLevel::Toy)
    }

    #[test]
    fn toy_constants() {
        let gp = toy();
        assert_eq!(gp.p(), &BigUint::from(23u32));
        assert_eq!(gp.q(), &BigUint::from(22u32));
        assert_eq!(gp.g().as_biguint(), &BigUint::from(5u32));
        assert!(gp.pow_u64(gp.g(), 22).as_biguint().is_one());
    }

    #[test]
    fn textbook_powers() {
        let gp = toy();
        let e6 = gp.scalar_u64(6);
        assert_eq!(gp.pow(gp.g(), &e6).as_biguint(), &BigUint::from(8u32));
        assert_eq!(gp.pow_g(&e6).as_biguint(), &BigUint::from(8u32));
        let ten = gp.element_u64(10).unwrap();
        assert_eq!(gp.pow(&ten, &e6).as_biguint(), &BigUint::from(6u32));
        assert!(gp.pow(gp.g(), &gp.zero()).as_biguint().is_one());
        let six = gp.element_u64(6).unwrap();
        assert_eq!(gp.inv(&six).as_biguint(), &BigUint::from(4u32));
    }

    #[test]
    fn dlog_small_examples() {
        let gp = toy();
        assert_eq!(gp.dlog_small(&gp.element_u64(2).unwrap(), 10), Some(2));
        assert_eq!(gp.dlog_small(&gp.element_u64(10).unwrap(), 10), Some(3));
        assert_eq!(gp.dlog_small(&gp.element_u64(7).unwrap(), 3), None);
    }

    #[test]
    fn dlog_exhaustive_toy() {
        let gp = toy();
        for bound in 0..22u64 {
            for t in 0..=bound {
                let x = gp.pow_u64(gp.g(), t);
                assert_eq!(gp.dlog_small(&x, bound), Some(t));
            }
        }
    }

    #[test]
    fn dlog_all_strategies_agree() {
        let gp = gen_params(SecurityLevel::Test);
        for t in [0u64, 1, 63, 64, 1000, 65_536] {
            let x = gp.pow_u64(gp.g(), t);
            assert_eq!(gp.dlog_small(&x, 65_536), Some(t));
        }
        let x = gp.pow_u64(gp.g(), 300_000);
        assert_eq!(gp.dlog_small(&x, 300_000), Some(300_000));
        assert_eq!(gp.dlog_small(&x, 299_999), None);
        let x = gp.pow_u64(gp.g(), 3_000_001);
        assert_eq!(baby_step_giant_step(&gp, &x, 4_000_000), Some(3_000_001));
        assert_eq!(gp.dlog_small(&x, 4_000_000), Some(3_000_001));
        assert_eq!(gp.dlog_small(&x, 2_000_000), None);
    }

    #[test]
    fn fixed_base_matches_modpow() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for level in [SecurityLevel::Toy, SecurityLevel::Test] {
            let gp = gen_params(level);
            let base = gp.pow_g(&gp.random_nonzero_scalar(&mut rng));
            let cached = CachedBase::new(base.clone());
            for _ in 0..40 {
                let e = gp.random_scalar(&mut rng);
                let want = gp.pow(&base, &e);
                assert_eq!(cached.pow(&gp, &e), want);
                assert_eq!(gp.pow_g(&e), gp.pow(gp.g(), &e));
            }
        }
    }

    #[test]
    fn window_digit_straddles_limbs() {
        let limbs = [0xF000_0000_0000_0000u64, 0x3];
        assert_eq!(window_digit(&limbs, 60, 6), 0b111111);
        assert_eq!(window_digit(&limbs, 0, 6), 0);
        assert_eq!(window_digit(&limbs, 64, 6), 3);
        assert_eq!(window_digit(&limbs, 128, 6), 0);
    }

    #[test]
    fn membership() {
        let gp = gen_params(SecurityLevel::Test);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = gp.pow_g(&gp.random_scalar(&mut rng));
            assert!(gp.contains(&x));
            assert!(gp.pow(&x, &Scalar(gp.q().clone())).as_biguint().is_one());
        }
        // p - 1 = -1 is a non-residue for p ≡ 3 (mod 4)
        assert!(!gp.contains(&GroupElement(gp.p() - 1u32)));
        assert!(!gp.contains(&GroupElement(BigUint::zero())));
        assert!(!gp.contains(&GroupElement(gp.p().clone())));
        let t = toy();
        assert!(t.contains(&GroupElement(BigUint::from(22u32))));
        assert!(!t.contains(&GroupElement(BigUint::from(23u32))));
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        let p = BigUint::from(1_000_003u32);
        let e = (&p - 1u32) >> 1;
        for a in 1u32..400 {
            let a = BigUint::from(a);
            let euler = a.modpow(&e, &p);
            let want = if euler.is_one() { 1 } else { -1 };
            assert_eq!(jacobi(&a, &p), want);
        }
    }

    #[test]
    fn hash_to_scalar_layout() {
        let gp = gen_params(SecurityLevel::Test);
        let a = gp.hash_to_scalar(7, &[b"ab", b""]);
        let b = gp.hash_to_scalar(7, &[b"ab", b""]);
        assert_eq!(a, b);
        assert_ne!(a, gp.hash_to_scalar(7, &[b"a", b"b"]));
        assert_ne!(a, gp.hash_to_scalar(8, &[b"ab", b""]));
        let mut h = Sha256::new();
        h.update([7u8, 0, 0, 0, 2, b'a', b'b', 0, 0, 0, 0]);
        let want = BigUint::from_bytes_be(&h.finalize()) % gp.q();
        assert_eq!(a.as_biguint(), &want);
    }

    #[test]
    fn hex_rules() {
        assert_eq!(to_hex(&BigUint::zero()), "0");
        assert_eq!(to_hex(&BigUint::from(255u32)), "ff");
        assert!(from_hex("00ff").is_err());
        assert!(from_hex("FF").is_err());
        assert!(from_hex("").is_err());
        assert_eq!(from_hex("0").unwrap(), BigUint::zero());
        let s = serde_json::to_string(&GroupElement(BigUint::from(4096u32))).unwrap();
        assert_eq!(s, "\"1000\"");
    }

    #[test]
    fn safe_prime_generation_small() {
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        let (p, q) = gen_safe_prime(64, &mut rng, 100_000).unwrap();
        assert_eq!(p.bits(), 64);
        assert_eq!(p, &q * 2u32 + 1u32);
        let gp = GroupParams::generate(48, SecurityLevel::Test, &mut rng, 100_000).unwrap();
        assert!(gp.has_prime_order());
        assert!(gp.pow(gp.g(), &Scalar(gp.q().clone())).as_biguint().is_one());
    }

    #[test]
    fn rejects_bad_params() {
        let r = GroupParams::from_parts(23u32.into(), 7u32.into(), 5u32.into(), SecurityLevel::Toy);
        assert!(r.is_err());
        let r = GroupParams::from_parts(23u32.into(), 11u32.into(), 5u32.into(), SecurityLevel::Toy);
        assert!(r.is_err(), "5 has order 22, not 11");
        let r = GroupParams::from_parts(23u32.into(), 11u32.into(), 4u32.into(), SecurityLevel::Toy);
        assert!(r.is_ok());
    }
}

