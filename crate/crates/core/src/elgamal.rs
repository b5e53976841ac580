//! Exponential ElGamal: messages are small integers m encrypted as g^m, so
//! multiplying ciphertexts adds plaintexts and decryption ends in a small
//! discrete log.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rand::RngCore;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::codec::{CanonicalBytes, Encoder};
use crate::group::{
    gen_params, CachedBase, GroupElement, GroupError, GroupParams, ParamsRecord, Scalar,
    SecurityLevel, DLOG_CACHE_BOUND,
};
use crate::rng::Coins;
use crate::sigma::{self, FsMode, Transcript};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElGamalError {
    #[error("plaintext is outside the decryption bound")]
    OutOfRange,
    #[error("ciphertext is not well formed")]
    InvalidCiphertext,
    #[error("message {0} is outside the message space")]
    MessageOutOfSpace(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An ElGamal public key y = g^x together with its group.
#[derive(Clone)]
pub struct PublicKey {
    params: GroupParams,
    y: Arc<CachedBase>,
}

impl PublicKey {
    pub fn new(params: GroupParams, y: GroupElement) -> Result<Self, GroupError> {
        if !params.contains(&y) {
            return Err(GroupError::NotInGroup);
        }
        Ok(PublicKey {
            params,
            y: Arc::new(CachedBase::new(y)),
        })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn element(&self) -> &GroupElement {
        self.y.element()
    }

    /// y^e.
    pub fn pow(&self, e: &Scalar) -> GroupElement {
        self.y.pow(&self.params, e)
    }
}

impl PartialEq for PublicKey {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.element() == other.element()
    }
}

impl Eq for PublicKey {}

impl Debug for PublicKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PublicKey({})", self.element())
    }
}

#[derive(Serialize, Deserialize)]
struct PublicKeyRecord {
    params: ParamsRecord,
    y: GroupElement,
}

impl Serialize for PublicKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PublicKeyRecord {
            params: self.params.to_record(),
            y: self.element().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PublicKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = PublicKeyRecord::deserialize(d)?;
        let params = GroupParams::from_record(&rec.params).map_err(serde::de::Error::custom)?;
        PublicKey::new(params, rec.y).map_err(serde::de::Error::custom)
    }
}

impl CanonicalBytes for PublicKey {
    fn encode(&self, enc: &mut Encoder) {
        enc.big(self.params.p())
            .big(self.params.q())
            .element(self.params.g())
            .element(self.element());
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyPair {
    pub pk: PublicKey,
    pub sk: Scalar,
}

#[derive(Serialize, Deserialize)]
struct KeyPairRecord {
    params: ParamsRecord,
    y: GroupElement,
    sk: Scalar,
}

impl Serialize for KeyPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        KeyPairRecord {
            params: self.pk.params.to_record(),
            y: self.pk.element().clone(),
            sk: self.sk.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KeyPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = KeyPairRecord::deserialize(d)?;
        let params = GroupParams::from_record(&rec.params).map_err(serde::de::Error::custom)?;
        let kp = KeyPair::from_secret(&params, rec.sk);
        if kp.pk.element() != &rec.y {
            return Err(serde::de::Error::custom("public key does not match secret key"));
        }
        Ok(kp)
    }
}

impl KeyPair {
    pub fn from_secret(params: &GroupParams, sk: Scalar) -> Self {
        let sk = params.scalar(sk.as_biguint().clone());
        let y = params.pow_g(&sk);
        KeyPair {
            pk: PublicKey {
                params: params.clone(),
                y: Arc::new(CachedBase::new(y)),
            },
            sk,
        }
    }

    pub fn params(&self) -> &GroupParams {
        &self.pk.params
    }
}

/// Secret key uniform in [1, q).
pub fn keygen(params: &GroupParams, rng: &mut dyn RngCore) -> KeyPair {
    KeyPair::from_secret(params, params.random_nonzero_scalar(rng))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ciphertext {
    pub c1: GroupElement,
    pub c2: GroupElement,
}

impl Ciphertext {
    /// (1, 1): encrypts 0 with zero randomness.
    pub fn identity(params: &GroupParams) -> Self {
        Ciphertext {
            c1: params.identity(),
            c2: params.identity(),
        }
    }

    pub fn is_well_formed(&self, params: &GroupParams) -> bool {
        params.contains(&self.c1) && params.contains(&self.c2)
    }
}

impl CanonicalBytes for Ciphertext {
    fn encode(&self, enc: &mut Encoder) {
        enc.element(&self.c1).element(&self.c2);
    }
}

/// (g^r, g^m · y^r).
pub fn encrypt_exp(pk: &PublicKey, m: u64, r: &Scalar) -> Ciphertext {
    let gp = pk.params();
    Ciphertext {
        c1: gp.pow_g(r),
        c2: gp.mul(&gp.encode_exponent(m), &pk.pow(r)),
    }
}

/// g^m = c2 · (c1^x)^{-1}.
pub fn decrypt_element(kp: &KeyPair, ct: &Ciphertext) -> GroupElement {
    let gp = kp.params();
    gp.div(&ct.c2, &gp.pow(&ct.c1, &kp.sk))
}

pub fn decrypt_exp(kp: &KeyPair, ct: &Ciphertext, bound: u64) -> Result<u64, ElGamalError> {
    kp.params()
        .dlog_small(&decrypt_element(kp, ct), bound)
        .ok_or(ElGamalError::OutOfRange)
}

pub fn hom_combine(params: &GroupParams, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
    Ciphertext {
        c1: params.mul(&a.c1, &b.c1),
        c2: params.mul(&a.c2, &b.c2),
    }
}

/// Component-wise product of all ciphertexts; the identity ciphertext for an
/// empty list.
pub fn hom_combine_all<'a>(
    params: &GroupParams,
    cts: impl IntoIterator<Item = &'a Ciphertext>,
) -> Ciphertext {
    cts.into_iter()
        .fold(Ciphertext::identity(params), |acc, c| hom_combine(params, &acc, c))
}

pub fn reencrypt(pk: &PublicKey, ct: &Ciphertext, r: &Scalar) -> Ciphertext {
    hom_combine(pk.params(), ct, &encrypt_exp(pk, 0, r))
}

/// Messages {0, …, max}. For exponent messages this is capped at 2^16 so
/// decryption stays a table lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageSpace {
    pub max: u64,
}

impl MessageSpace {
    pub fn for_params(params: &GroupParams) -> Self {
        let q_minus_1 = params.q() - 1u32;
        let cap = num_bigint::BigUint::from(DLOG_CACHE_BOUND);
        let max = if q_minus_1 < cap {
            num_traits::ToPrimitive::to_u64(&q_minus_1).unwrap_or(0)
        } else {
            DLOG_CACHE_BOUND
        };
        MessageSpace { max }
    }

    pub fn contains(&self, m: u64) -> bool {
        m <= self.max
    }
}

/// The (Gen, Enc, Dec) interface of an asymmetric encryption scheme over
/// exponent messages.
pub trait AsymmetricScheme: Send + Sync {
    type Ciphertext: Clone
        + Eq
        + Hash
        + Debug
        + CanonicalBytes
        + Serialize
        + DeserializeOwned
        + Send
        + Sync;

    fn id(&self) -> &'static str;

    fn generate(&self, level: SecurityLevel, rng: &mut dyn RngCore) -> (KeyPair, MessageSpace) {
        let params = gen_params(level);
        let kp = keygen(&params, rng);
        (kp, MessageSpace::for_params(&params))
    }

    fn encrypt_with_coins(
        &self,
        pk: &PublicKey,
        m: u64,
        coins: &Coins,
    ) -> Result<Self::Ciphertext, ElGamalError>;

    fn encrypt(
        &self,
        pk: &PublicKey,
        m: u64,
        rng: &mut dyn RngCore,
    ) -> Result<Self::Ciphertext, ElGamalError> {
        self.encrypt_with_coins(pk, m, &Coins::draw(rng))
    }

    fn decrypt(&self, kp: &KeyPair, ct: &Self::Ciphertext) -> Result<u64, ElGamalError>;

    /// The ElGamal pair inside a ciphertext.
    fn inner<'a>(&self, ct: &'a Self::Ciphertext) -> &'a Ciphertext;

    /// Swaps the ElGamal pair while keeping any attached data. Exists so
    /// attack code can maul ciphertexts of either scheme uniformly.
    fn with_inner(&self, ct: &Self::Ciphertext, inner: Ciphertext) -> Self::Ciphertext;
}

fn enc_randomness(pk: &PublicKey, coins: &Coins) -> Scalar {
    pk.params().random_scalar(&mut coins.enc_rng())
}

fn check_message(pk: &PublicKey, m: u64) -> Result<(), ElGamalError> {
    if MessageSpace::for_params(pk.params()).contains(m) {
        Ok(())
    } else {
        Err(ElGamalError::MessageOutOfSpace(m))
    }
}

/// Bare exponential ElGamal. Malleable.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlainElGamal;

impl AsymmetricScheme for PlainElGamal {
    type Ciphertext = Ciphertext;

    fn id(&self) -> &'static str {
        "plain-elgamal"
    }

    fn encrypt_with_coins(
        &self,
        pk: &PublicKey,
        m: u64,
        coins: &Coins,
    ) -> Result<Ciphertext, ElGamalError> {
        check_message(pk, m)?;
        Ok(encrypt_exp(pk, m, &enc_randomness(pk, coins)))
    }

    fn decrypt(&self, kp: &KeyPair, ct: &Ciphertext) -> Result<u64, ElGamalError> {
        if !ct.is_well_formed(kp.params()) {
            return Err(ElGamalError::InvalidCiphertext);
        }
        decrypt_exp(kp, ct, MessageSpace::for_params(kp.params()).max)
    }

    fn inner<'a>(&self, ct: &'a Ciphertext) -> &'a Ciphertext {
        ct
    }

    fn with_inner(&self, _ct: &Ciphertext, inner: Ciphertext) -> Ciphertext {
        inner
    }
}

/// ElGamal ciphertext plus a Schnorr proof of knowledge of the encryption
/// randomness. The proof's strong Fiat–Shamir hash covers (pk, c1, c2), so
/// any change to the pair invalidates it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NmCiphertext {
    pub ct: Ciphertext,
    pub pok: Transcript,
}

impl CanonicalBytes for NmCiphertext {
    fn encode(&self, enc: &mut Encoder) {
        enc.nested(&self.ct).nested(&self.pok);
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NmElGamal;

impl NmElGamal {
    fn context(pk: &PublicKey, ct: &Ciphertext) -> Vec<u8> {
        let mut e = Encoder::new();
        e.bytes(b"votelab/nm-elgamal")
            .nested(pk)
            .element(&ct.c2);
        e.finish()
    }

    pub fn check_proof(pk: &PublicKey, ct: &NmCiphertext) -> bool {
        ct.ct.is_well_formed(pk.params())
            && sigma::verify_dlog(
                pk.params(),
                &ct.ct.c1,
                &ct.pok,
                FsMode::Strong,
                &Self::context(pk, &ct.ct),
            )
    }
}

impl AsymmetricScheme for NmElGamal {
    type Ciphertext = NmCiphertext;

    fn id(&self) -> &'static str {
        "nm-elgamal"
    }

    fn encrypt_with_coins(
        &self,
        pk: &PublicKey,
        m: u64,
        coins: &Coins,
    ) -> Result<NmCiphertext, ElGamalError> {
        check_message(pk, m)?;
        let r = enc_randomness(pk, coins);
        let ct = encrypt_exp(pk, m, &r);
        let pok = sigma::prove_dlog(
            pk.params(),
            &r,
            &ct.c1,
            FsMode::Strong,
            &Self::context(pk, &ct),
            &mut coins.proof_rng(),
        );
        Ok(NmCiphertext { ct, pok })
    }

    fn decrypt(&self, kp: &KeyPair, ct: &NmCiphertext) -> Result<u64, ElGamalError> {
        if !Self::check_proof(&kp.pk, ct) {
            return Err(ElGamalError::InvalidCiphertext);
        }
        decrypt_exp(kp, &ct.ct, MessageSpace::for_params(kp.params()).max)
    }

    fn inner<'a>(&self, ct: &'a NmCiphertext) -> &'a Ciphertext {
        &ct.ct
    }

    fn with_inner(&self, ct: &NmCiphertext, inner: Ciphertext) -> NmCiphertext {
        NmCiphertext {
            ct: inner,
            pok: ct.pok.clone(),
        }
    }
}

pub fn make_plain_elgamal() -> PlainElGamal {
    PlainElGamal
}

pub fn make_nm_elgamal() -> NmElGamal {
    NmElGamal
}
