//! Seedable, splittable randomness. Every probabilistic operation in the
//! crate takes its randomness source explicitly.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

pub type VoteRng = ChaCha20Rng;

pub fn seeded(seed: u64) -> VoteRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Derives an independent child generator.
pub fn split(rng: &mut dyn RngCore) -> VoteRng {
    let mut s = [0u8; 32];
    rng.fill_bytes(&mut s);
    ChaCha20Rng::from_seed(s)
}

/// Stream `index` of the generator keyed by `seed`; distinct indices give
/// independent streams.
pub fn stream(seed: &Seed, index: u64) -> VoteRng {
    let mut r = ChaCha20Rng::from_seed(seed.0);
    r.set_stream(index);
    r
}

/// A 32-byte seed, written as up to 64 hex digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub [u8; 32]);

impl Seed {
    pub fn from_u64(v: u64) -> Self {
        let mut s = [0u8; 32];
        s[24..].copy_from_slice(&v.to_be_bytes());
        Seed(s)
    }

    pub fn random(rng: &mut dyn RngCore) -> Self {
        let mut s = [0u8; 32];
        rng.fill_bytes(&mut s);
        Seed(s)
    }

    pub fn from_entropy() -> Self {
        let mut s = [0u8; 32];
        rand::rngs::OsRng.fill_bytes(&mut s);
        Seed(s)
    }

    /// Parses 1..=64 hex digits, left-padding with zeros.
    pub fn parse_hex(s: &str) -> Result<Self, String> {
        let s = s.strip_prefix("0x").unwrap_or(s);
        if s.is_empty() || s.len() > 64 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(format!("seed must be 1 to 64 hex digits, got {s:?}"));
        }
        let padded = format!("{s:0>64}");
        let bytes = hex::decode(padded).map_err(|e| e.to_string())?;
        let mut out = [0u8; 32];
        out.copy_from_slice(&bytes);
        Ok(Seed(out))
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn rng(&self) -> VoteRng {
        ChaCha20Rng::from_seed(self.0)
    }

    /// SHA-256 commitment published in place of an unrecorded seed.
    pub fn commitment(&self) -> String {
        hex::encode(Sha256::digest(self.0))
    }
}

impl Serialize for Seed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Seed::parse_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// The coins of one `Vote` call. Encryption randomness and proof randomness
/// come from separate streams, so ballots sharing ciphertexts but carrying
/// different proofs are both honest outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coins {
    pub enc: Seed,
    pub proof: Seed,
}

impl Coins {
    pub fn draw(rng: &mut dyn RngCore) -> Self {
        Coins {
            enc: Seed::random(rng),
            proof: Seed::random(rng),
        }
    }

    pub fn enc_rng(&self) -> VoteRng {
        self.enc.rng()
    }

    pub fn proof_rng(&self) -> VoteRng {
        self.proof.rng()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn seed_hex_padding() {
        let s = Seed::parse_hex("ff").unwrap();
        assert_eq!(s.0[31], 0xff);
        assert_eq!(s.0[..31], [0u8; 31]);
        assert_eq!(Seed::parse_hex("0xff").unwrap(), s);
        assert!(Seed::parse_hex("").is_err());
        assert!(Seed::parse_hex("zz").is_err());
        assert!(Seed::parse_hex(&"1".repeat(65)).is_err());
        assert_eq!(Seed::from_u64(255), s);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let seed = Seed::from_u64(5);
        let a: u64 = stream(&seed, 0).gen();
        let b: u64 = stream(&seed, 0).gen();
        let c: u64 = stream(&seed, 1).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
