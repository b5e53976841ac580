//! Canonical byte encodings. Ballot identity (board deduplication, weeding)
//! is byte equality of these encodings, and strong Fiat–Shamir hashes
//! statements through them.

use num_bigint::BigUint;

use crate::group::{magnitude_bytes, GroupElement, Scalar};

#[derive(Default)]
pub struct Encoder {
    buf: Vec<u8>,
}

impl Encoder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tag(&mut self, t: u8) -> &mut Self {
        self.buf.push(t);
        self
    }

    pub fn u32(&mut self, v: u32) -> &mut Self {
        self.buf.extend_from_slice(&v.to_be_bytes());
        self
    }

    /// 4-byte big-endian length, then the bytes.
    pub fn bytes(&mut self, b: &[u8]) -> &mut Self {
        self.u32(b.len() as u32);
        self.buf.extend_from_slice(b);
        self
    }

    pub fn big(&mut self, v: &BigUint) -> &mut Self {
        self.bytes(&magnitude_bytes(v))
    }

    pub fn element(&mut self, e: &GroupElement) -> &mut Self {
        self.big(e.as_biguint())
    }

    pub fn scalar(&mut self, s: &Scalar) -> &mut Self {
        self.big(s.as_biguint())
    }

    pub fn nested(&mut self, v: &impl CanonicalBytes) -> &mut Self {
        v.encode(self);
        self
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

pub trait CanonicalBytes {
    fn encode(&self, enc: &mut Encoder);

    fn canonical_bytes(&self) -> Vec<u8> {
        let mut e = Encoder::new();
        self.encode(&mut e);
        e.finish()
    }
}
