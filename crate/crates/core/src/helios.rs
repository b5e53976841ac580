//! Helios with homomorphic tallying.
//!
//! A vote v for one of nc candidates is encoded as nc − 1 bits (bit v is set
//! when v < nc; all bits are clear for v = nc), each bit is encrypted, and
//! every ciphertext plus the product of all of them carries a proof that it
//! encrypts 0 or 1. Tallying multiplies each column, decrypts the column
//! sums with proofs of correct decryption, and derives the last candidate's
//! count by subtraction.
//!
//! Two variants are provided. `WEAK` hashes no statements into its proofs
//! and does not weed related ballots, which leaves it open to ballot
//! permutation and to forged proofs. `STRONG` binds the whole ballot into
//! every proof and weeds ballots that share ciphertexts.

use std::collections::HashSet;
use std::fmt;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::codec::{CanonicalBytes, Encoder};
use crate::elgamal::{
    decrypt_exp, encrypt_exp, hom_combine_all, keygen, Ciphertext, KeyPair, MessageSpace,
    PublicKey,
};
use crate::group::{gen_params, GroupParams, Scalar, SecurityLevel};
use crate::rng::Coins;
use crate::scheme::{
    check_range, AuditReport, BulletinBoard, ElectionScheme, Outcome, SchemeError, Setup,
    MAX_BALLOTS,
};
use crate::sigma::{self, FsMode, Statement, Transcript};

const KEY_CONTEXT: &[u8] = b"votelab/key";
/// Domain tag of ballot proofs; on its own, the whole weak-mode context.
pub const BALLOT_CONTEXT: &[u8] = b"votelab/helios/ballot";
const DECRYPT_CONTEXT: &[u8] = b"votelab/helios/decrypt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeliosVariant {
    pub fs: FsMode,
    pub weeding: bool,
}

impl HeliosVariant {
    /// Weak Fiat–Shamir, no weeding.
    pub const WEAK: HeliosVariant = HeliosVariant {
        fs: FsMode::Weak,
        weeding: false,
    };
    /// Strong Fiat–Shamir with whole-ballot binding, weeding on.
    pub const STRONG: HeliosVariant = HeliosVariant {
        fs: FsMode::Strong,
        weeding: true,
    };

    pub fn preset(fs: FsMode) -> Self {
        match fs {
            FsMode::Weak => Self::WEAK,
            FsMode::Strong => Self::STRONG,
        }
    }
}

impl fmt::Display for HeliosVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weeding {
            write!(f, "{}+weeding", self.fs)
        } else {
            write!(f, "{}", self.fs)
        }
    }
}

/// A public key published with a proof of knowledge of its secret.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenKey {
    pub key: PublicKey,
    pub pok: Transcript,
}

impl ProvenKey {
    pub fn prove(kp: &KeyPair, fs: FsMode, rng: &mut dyn RngCore) -> Self {
        let pok = sigma::prove_dlog(kp.params(), &kp.sk, kp.pk.element(), fs, KEY_CONTEXT, rng);
        ProvenKey {
            key: kp.pk.clone(),
            pok,
        }
    }

    pub fn verify(&self, fs: FsMode) -> bool {
        sigma::verify_dlog(self.key.params(), self.key.element(), &self.pok, fs, KEY_CONTEXT)
    }

    pub fn params(&self) -> &GroupParams {
        self.key.params()
    }
}

/// Bits of the vote encoding: position v is 1 for v < nc, all zero for v = nc.
pub fn encode_vote(v: u64, nc: u64) -> Result<Vec<u64>, SchemeError> {
    if v == 0 || v > nc {
        return Err(SchemeError::InvalidVote { v, nc });
    }
    Ok((1..nc).map(|i| u64::from(i == v)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeliosBallot {
    pub nc: u64,
    /// One ciphertext per candidate except the last.
    pub cts: Vec<Ciphertext>,
    /// One disjunctive proof per ciphertext, then one for their product.
    pub proofs: Vec<Transcript>,
}

impl CanonicalBytes for HeliosBallot {
    fn encode(&self, enc: &mut Encoder) {
        enc.bytes(&self.nc.to_be_bytes());
        enc.u32(self.cts.len() as u32);
        for c in &self.cts {
            enc.nested(c);
        }
        enc.u32(self.proofs.len() as u32);
        for p in &self.proofs {
            enc.nested(p);
        }
    }
}

impl HeliosBallot {
    pub fn combined(&self, params: &GroupParams) -> Ciphertext {
        hom_combine_all(params, &self.cts)
    }
}

/// Fiat–Shamir context of proof `index` of a ballot. Under strong
/// Fiat–Shamir it binds the key, the candidate count, the position and every
/// ciphertext of the ballot, so proofs cannot be moved between positions or
/// ballots. Under weak Fiat–Shamir it is a constant.
pub fn ballot_context(fs: FsMode, pk: &PublicKey, nc: u64, index: usize, cts: &[Ciphertext]) -> Vec<u8> {
    match fs {
        FsMode::Weak => BALLOT_CONTEXT.to_vec(),
        FsMode::Strong => {
            let mut e = Encoder::new();
            e.bytes(BALLOT_CONTEXT)
                .nested(pk)
                .bytes(&nc.to_be_bytes())
                .u32(index as u32)
                .u32(cts.len() as u32);
            for c in cts {
                e.nested(c);
            }
            e.finish()
        }
    }
}

/// Context of the decryption proof for column `index`.
pub fn decrypt_context(fs: FsMode, index: usize) -> Vec<u8> {
    match fs {
        FsMode::Weak => DECRYPT_CONTEXT.to_vec(),
        FsMode::Strong => {
            let mut e = Encoder::new();
            e.bytes(DECRYPT_CONTEXT).u32(index as u32);
            e.finish()
        }
    }
}

pub fn helios_vote(
    pk: &PublicKey,
    v: u64,
    nc: u64,
    variant: HeliosVariant,
    coins: &Coins,
) -> Result<HeliosBallot, SchemeError> {
    check_range(v, nc, MessageSpace::for_params(pk.params()).max)?;
    let params = pk.params();
    let bits = encode_vote(v, nc)?;
    let mut enc_rng = coins.enc_rng();
    let rs: Vec<Scalar> = bits.iter().map(|_| params.random_scalar(&mut enc_rng)).collect();
    let cts: Vec<Ciphertext> = bits
        .iter()
        .zip(&rs)
        .map(|(b, r)| encrypt_exp(pk, *b, r))
        .collect();

    let mut proof_rng = coins.proof_rng();
    let mut proofs = Vec::with_capacity(nc as usize);
    for (j, (ct, (b, r))) in cts.iter().zip(bits.iter().zip(&rs)).enumerate() {
        let ctx = ballot_context(variant.fs, pk, nc, j, &cts);
        proofs.push(sigma::prove_or(pk, ct, *b, r, variant.fs, &ctx, &mut proof_rng));
    }
    let sum_bit: u64 = bits.iter().sum();
    let sum_r = rs.iter().fold(params.zero(), |acc, r| params.add(&acc, r));
    let combined = hom_combine_all(params, &cts);
    let ctx = ballot_context(variant.fs, pk, nc, cts.len(), &cts);
    proofs.push(sigma::prove_or(
        pk,
        &combined,
        sum_bit,
        &sum_r,
        variant.fs,
        &ctx,
        &mut proof_rng,
    ));
    Ok(HeliosBallot { nc, cts, proofs })
}

/// Arity and every disjunctive proof.
pub fn ballot_is_valid(pk: &PublicKey, b: &HeliosBallot, nc: u64, fs: FsMode) -> bool {
    if b.nc != nc || nc == 0 || b.cts.len() as u64 != nc - 1 || b.proofs.len() as u64 != nc {
        return false;
    }
    // verify_or checks each ciphertext's membership.
    let combined = b.combined(pk.params());
    b.cts
        .iter()
        .chain(std::iter::once(&combined))
        .zip(&b.proofs)
        .enumerate()
        .all(|(j, (ct, pf))| {
            let ctx = ballot_context(fs, pk, nc, j, &b.cts);
            sigma::verify_or(pk, ct, pf, fs, &ctx)
        })
}

/// Keeps the first of any group of related ballots: a later ballot is
/// dropped if it equals, or shares a ciphertext with, a ballot already kept.
/// Returns the kept positions.
pub fn weed_indices<'a>(ballots: impl IntoIterator<Item = (usize, &'a HeliosBallot)>) -> Vec<usize> {
    let mut seen_ballots = HashSet::new();
    let mut seen_cts: HashSet<&Ciphertext> = HashSet::new();
    let mut kept = Vec::new();
    for (i, b) in ballots {
        if !seen_ballots.insert(b.canonical_bytes()) || b.cts.iter().any(|c| seen_cts.contains(c)) {
            continue;
        }
        seen_cts.extend(b.cts.iter());
        kept.push(i);
    }
    kept
}

pub fn weed(bb: &BulletinBoard<HeliosBallot>) -> BulletinBoard<HeliosBallot> {
    let kept = weed_indices(bb.iter().enumerate());
    BulletinBoard::from_ballots(kept.into_iter().map(|i| bb.ballots()[i].clone()))
}

/// Positions of the board ballots that Tally counts: valid proofs, then
/// weeding if enabled.
pub fn accepted_indices(
    pk: &PublicKey,
    bb: &BulletinBoard<HeliosBallot>,
    nc: u64,
    variant: HeliosVariant,
) -> Vec<usize> {
    let valid = bb
        .iter()
        .enumerate()
        .filter(|(_, b)| ballot_is_valid(pk, b, nc, variant.fs));
    if variant.weeding {
        weed_indices(valid)
    } else {
        valid.map(|(i, _)| i).collect()
    }
}

/// Column-wise products of the accepted ballots.
pub fn column_sums(
    params: &GroupParams,
    bb: &BulletinBoard<HeliosBallot>,
    accepted: &[usize],
    nc: u64,
) -> Vec<Ciphertext> {
    (0..nc.saturating_sub(1) as usize)
        .map(|j| hom_combine_all(params, accepted.iter().map(|&i| &bb.ballots()[i].cts[j])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeliosTallyProof {
    /// Board positions of the counted ballots.
    pub accepted: Vec<usize>,
    /// Decryption proof for each of the nc − 1 column sums.
    pub decryptions: Vec<Transcript>,
}

#[derive(Debug, Clone, Copy)]
pub struct Helios {
    pub variant: HeliosVariant,
}

pub fn make_helios(variant: HeliosVariant) -> Helios {
    Helios { variant }
}

impl ElectionScheme for Helios {
    type PublicKey = ProvenKey;
    type SecretKey = KeyPair;
    type Ballot = HeliosBallot;
    type TallyProof = HeliosTallyProof;

    fn id(&self) -> String {
        format!("helios/{}", self.variant)
    }

    fn setup(&self, level: SecurityLevel, rng: &mut dyn RngCore) -> Setup<Self> {
        let params = gen_params(level);
        let kp = keygen(&params, rng);
        let pk = ProvenKey::prove(&kp, self.variant.fs, rng);
        Setup {
            pk,
            sk: kp,
            mb: MAX_BALLOTS,
            mc: MessageSpace::for_params(&params).max,
        }
    }

    fn max_candidates(&self, pk: &ProvenKey) -> u64 {
        MessageSpace::for_params(pk.params()).max
    }

    fn vote_with_coins(
        &self,
        pk: &ProvenKey,
        v: u64,
        nc: u64,
        coins: &Coins,
    ) -> Result<HeliosBallot, SchemeError> {
        helios_vote(&pk.key, v, nc, self.variant, coins)
    }

    fn tally(
        &self,
        sk: &KeyPair,
        bb: &BulletinBoard<HeliosBallot>,
        nc: u64,
        rng: &mut dyn RngCore,
    ) -> Result<(Outcome, HeliosTallyProof), SchemeError> {
        if nc == 0 {
            return Err(SchemeError::InvalidVote { v: 0, nc });
        }
        let params = sk.params();
        let accepted = accepted_indices(&sk.pk, bb, nc, self.variant);
        let k = accepted.len() as u64;
        let mut counts = Vec::with_capacity(nc as usize);
        let mut decryptions = Vec::new();
        for (j, sum) in column_sums(params, bb, &accepted, nc).iter().enumerate() {
            let m = decrypt_exp(sk, sum, k).map_err(|_| {
                SchemeError::IllFormedBoard(format!("column {} does not decrypt within 0..={k}", j + 1))
            })?;
            let stmt = Statement::decryption(sk.pk.element(), sum, &params.encode_exponent(m));
            let ctx = decrypt_context(self.variant.fs, j);
            decryptions.push(sigma::prove_eq(params, &sk.sk, &stmt, self.variant.fs, &ctx, rng));
            counts.push(m);
        }
        let partial: u64 = counts.iter().sum();
        let last = k
            .checked_sub(partial)
            .ok_or_else(|| SchemeError::IllFormedBoard("column sums exceed the ballot count".into()))?;
        counts.push(last);
        Ok((Outcome(counts), HeliosTallyProof { accepted, decryptions }))
    }

    fn audit(
        &self,
        pk: &ProvenKey,
        bb: &BulletinBoard<HeliosBallot>,
        nc: u64,
        outcome: &Outcome,
        proof: &HeliosTallyProof,
    ) -> AuditReport {
        let fs = self.variant.fs;
        let mut r = AuditReport::default();
        r.push("key-proof", pk.verify(fs), None);
        let shape_ok = nc >= 1 && outcome.0.len() as u64 == nc;
        if !r.push(
            "outcome-shape",
            shape_ok,
            (!shape_ok).then(|| format!("expected {nc} counts, got {}", outcome.0.len())),
        ) {
            return r;
        }
        let accepted = accepted_indices(&pk.key, bb, nc, self.variant);
        let same = accepted == proof.accepted;
        r.push(
            "accepted-ballots",
            same,
            Some(format!("{} of {} ballots counted", accepted.len(), bb.len())),
        );
        let ncols = (nc - 1) as usize;
        if !r.push(
            "decryption-proof-count",
            proof.decryptions.len() == ncols,
            Some(format!("expected {ncols}, got {}", proof.decryptions.len())),
        ) {
            return r;
        }
        let params = pk.params();
        for (j, sum) in column_sums(params, bb, &accepted, nc).iter().enumerate() {
            let claimed = params.encode_exponent(outcome.0[j]);
            let stmt = Statement::decryption(pk.key.element(), sum, &claimed);
            let ok = sigma::verify_eq(params, &stmt, &proof.decryptions[j], fs, &decrypt_context(fs, j));
            r.push(format!("decryption-proof[{}]", j + 1), ok, None);
        }
        let k = accepted.len() as u64;
        let partial: Option<u64> = outcome.0[..ncols]
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x));
        let ok = partial.and_then(|s| k.checked_sub(s)) == Some(outcome.0[ncols]);
        r.push(
            "last-candidate-subtraction",
            ok,
            Some(format!("k = {k}, last = {}", outcome.0[ncols])),
        );
        r
    }
}
