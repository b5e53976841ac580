//! Re-encryption mixing with a cut-and-choose shuffle proof, and the Helios
//! Mixnet election scheme built on it.
//!
//! The shuffle proof runs k rounds. Each round publishes an independent
//! intermediate shuffle of the inputs; a Fiat–Shamir bit derived from the
//! inputs, outputs and all intermediates then opens either the
//! input→intermediate or the intermediate→output step. A mix that is not a
//! permutation plus re-encryption survives each round with probability at
//! most 1/2.

use rand::seq::SliceRandom;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::codec::{CanonicalBytes, Encoder};
use crate::elgamal::{
    encrypt_exp, keygen, reencrypt, Ciphertext, KeyPair, MessageSpace, PublicKey,
};
use crate::group::{gen_params, GroupElement, GroupParams, Scalar, SecurityLevel};
use crate::helios::ProvenKey;
use crate::rng::Coins;
use crate::scheme::{
    check_range, AuditReport, BulletinBoard, ElectionScheme, Outcome, SchemeError, Setup,
    MAX_BALLOTS,
};
use crate::sigma::{self, FsMode, Statement, Transcript};

/// Default number of cut-and-choose rounds (soundness error 2^-40).
pub const DEFAULT_ROUNDS: usize = 40;

const SHUFFLE_TAG: &[u8] = b"votelab/mixnet/shuffle";
const BALLOT_CONTEXT: &[u8] = b"votelab/mixnet/ballot";
const DECRYPT_CONTEXT: &[u8] = b"votelab/mixnet/decrypt";

/// One opened side of a round: `to[j] = reencrypt(from[permutation[j]], randomness[j])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixRound {
    pub intermediate: Vec<Ciphertext>,
    /// 0 opens inputs → intermediate, 1 opens intermediate → outputs.
    pub bit: u8,
    pub permutation: Vec<usize>,
    pub randomness: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixProof {
    pub rounds: Vec<MixRound>,
}

impl CanonicalBytes for MixProof {
    fn encode(&self, enc: &mut Encoder) {
        enc.u32(self.rounds.len() as u32);
        for r in &self.rounds {
            enc.u32(r.intermediate.len() as u32);
            for c in &r.intermediate {
                enc.nested(c);
            }
            enc.tag(r.bit);
            for &p in &r.permutation {
                enc.u32(p as u32);
            }
            for s in &r.randomness {
                enc.scalar(s);
            }
        }
    }
}

fn challenge_bits(
    pk: &PublicKey,
    inputs: &[Ciphertext],
    outputs: &[Ciphertext],
    intermediates: &[&[Ciphertext]],
) -> Vec<u8> {
    let mut e = Encoder::new();
    e.bytes(SHUFFLE_TAG).nested(pk);
    for list in [inputs, outputs].into_iter().chain(intermediates.iter().copied()) {
        e.u32(list.len() as u32);
        for c in list {
            e.nested(c);
        }
    }
    let seed = Sha256::digest(e.finish());
    let k = intermediates.len();
    let mut bits = Vec::with_capacity(k);
    let mut block = 0u32;
    while bits.len() < k {
        let mut h = Sha256::new();
        h.update(seed);
        h.update(block.to_be_bytes());
        for byte in h.finalize() {
            for i in 0..8 {
                bits.push((byte >> i) & 1);
            }
        }
        block += 1;
    }
    bits.truncate(k);
    bits
}

/// Applies `to[j] = reencrypt(from[perm[j]], rs[j])`.
fn apply(pk: &PublicKey, from: &[Ciphertext], perm: &[usize], rs: &[Scalar]) -> Vec<Ciphertext> {
    perm.iter()
        .zip(rs)
        .map(|(&i, r)| reencrypt(pk, &from[i], r))
        .collect()
}

fn random_permutation(n: usize, rng: &mut dyn RngCore) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Shuffles and re-encrypts with fresh randomness, proving it in `k` rounds.
pub fn mix_and_prove(
    pk: &PublicKey,
    inputs: &[Ciphertext],
    k: usize,
    rng: &mut dyn RngCore,
) -> (Vec<Ciphertext>, MixProof) {
    let perm = random_permutation(inputs.len(), rng);
    let rs: Vec<Scalar> = (0..inputs.len()).map(|_| pk.params().random_scalar(rng)).collect();
    mix_and_prove_with(pk, inputs, &perm, &rs, k, rng)
}

/// As [`mix_and_prove`] with a caller-chosen permutation and randomness:
/// `outputs[j] = reencrypt(inputs[perm[j]], rs[j])`.
pub fn mix_and_prove_with(
    pk: &PublicKey,
    inputs: &[Ciphertext],
    perm: &[usize],
    rs: &[Scalar],
    k: usize,
    rng: &mut dyn RngCore,
) -> (Vec<Ciphertext>, MixProof) {
    assert_eq!(perm.len(), inputs.len(), "permutation length");
    assert_eq!(rs.len(), inputs.len(), "randomness length");
    let params = pk.params();
    let n = inputs.len();
    let outputs = apply(pk, inputs, perm, rs);

    struct Side {
        sigma: Vec<usize>,
        s: Vec<Scalar>,
        intermediate: Vec<Ciphertext>,
    }
    let sides: Vec<Side> = (0..k)
        .map(|_| {
            let sigma = random_permutation(n, rng);
            let s: Vec<Scalar> = (0..n).map(|_| params.random_scalar(rng)).collect();
            let intermediate = apply(pk, inputs, &sigma, &s);
            Side { sigma, s, intermediate }
        })
        .collect();
    let inter_refs: Vec<&[Ciphertext]> = sides.iter().map(|s| s.intermediate.as_slice()).collect();
    let bits = challenge_bits(pk, inputs, &outputs, &inter_refs);

    let rounds = sides
        .into_iter()
        .zip(bits)
        .map(|(side, bit)| {
            let (permutation, randomness) = if bit == 0 {
                (side.sigma, side.s)
            } else {
                // outputs[j] = reenc(I[tau[j]], t[j]) with tau = sigma^-1 ∘ perm.
                let mut inv = vec![0usize; n];
                for (j, &i) in side.sigma.iter().enumerate() {
                    inv[i] = j;
                }
                let tau: Vec<usize> = perm.iter().map(|&i| inv[i]).collect();
                let t: Vec<Scalar> = tau
                    .iter()
                    .zip(rs)
                    .map(|(&m, r)| params.sub(r, &side.s[m]))
                    .collect();
                (tau, t)
            };
            MixRound {
                intermediate: side.intermediate,
                bit,
                permutation,
                randomness,
            }
        })
        .collect();
    (outputs, MixProof { rounds })
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in p {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    true
}

/// Recomputes the challenge bits and replays every opened side.
pub fn verify_mix(
    pk: &PublicKey,
    inputs: &[Ciphertext],
    outputs: &[Ciphertext],
    proof: &MixProof,
) -> bool {
    let params = pk.params();
    let n = inputs.len();
    if proof.rounds.is_empty()
        || outputs.len() != n
        || !inputs.iter().chain(outputs).all(|c| c.is_well_formed(params))
    {
        return false;
    }
    let inter_refs: Vec<&[Ciphertext]> = proof.rounds.iter().map(|r| r.intermediate.as_slice()).collect();
    let bits = challenge_bits(pk, inputs, outputs, &inter_refs);
    proof.rounds.iter().zip(bits).all(|(round, bit)| {
        if round.bit != bit
            || round.intermediate.len() != n
            || !is_permutation(&round.permutation, n)
            || round.randomness.len() != n
            || !round.randomness.iter().all(|s| s.as_biguint() < params.q())
            // Membership of the intermediates follows from the replayed
            // re-encryptions, which tie them to checked inputs or outputs.
            || !round.intermediate.iter().all(|c| params.in_range(&c.c1) && params.in_range(&c.c2))
        {
            return false;
        }
        let (from, to) = if bit == 0 {
            (inputs, round.intermediate.as_slice())
        } else {
            (round.intermediate.as_slice(), outputs)
        };
        round
            .permutation
            .iter()
            .zip(&round.randomness)
            .zip(to)
            .all(|((&i, s), expected)| &reencrypt(pk, &from[i], s) == expected)
    })
}

/// A ciphertext of the vote plus a proof of knowledge of its randomness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixnetBallot {
    pub ct: Ciphertext,
    pub pok: Transcript,
}

impl CanonicalBytes for MixnetBallot {
    fn encode(&self, enc: &mut Encoder) {
        enc.nested(&self.ct).nested(&self.pok);
    }
}

/// Under strong Fiat–Shamir the ballot proof binds (pk, c2) through the
/// context and c1 through the statement.
pub fn ballot_context(fs: FsMode, pk: &PublicKey, ct: &Ciphertext) -> Vec<u8> {
    match fs {
        FsMode::Weak => BALLOT_CONTEXT.to_vec(),
        FsMode::Strong => {
            let mut e = Encoder::new();
            e.bytes(BALLOT_CONTEXT).nested(pk).element(&ct.c2);
            e.finish()
        }
    }
}

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

pub fn ballot_is_valid(pk: &PublicKey, b: &MixnetBallot, fs: FsMode) -> bool {
    b.ct.is_well_formed(pk.params())
        && sigma::verify_dlog(pk.params(), &b.ct.c1, &b.pok, fs, &ballot_context(fs, pk, &b.ct))
}

/// A mixed ciphertext's claimed plaintext element and its proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decryption {
    pub plaintext: GroupElement,
    pub proof: Transcript,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixnetTallyProof {
    pub accepted: Vec<usize>,
    pub mixed: Vec<Ciphertext>,
    pub shuffle: MixProof,
    pub decryptions: Vec<Decryption>,
    /// Positions in `mixed` whose plaintext is not a candidate. They are
    /// revealed here and left out of the outcome.
    pub ill_formed: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct HeliosMixnet {
    pub fs: FsMode,
    pub rounds: usize,
}

pub fn make_helios_mixnet(fs: FsMode, rounds: usize) -> HeliosMixnet {
    HeliosMixnet { fs, rounds }
}

impl HeliosMixnet {
    pub fn ballot_with_randomness(
        &self,
        pk: &PublicKey,
        m: u64,
        r: &Scalar,
        rng: &mut dyn RngCore,
    ) -> MixnetBallot {
        let ct = encrypt_exp(pk, m, r);
        let pok = sigma::prove_dlog(
            pk.params(),
            r,
            &ct.c1,
            self.fs,
            &ballot_context(self.fs, pk, &ct),
            rng,
        );
        MixnetBallot { ct, pok }
    }

    pub fn accepted_indices(&self, pk: &PublicKey, bb: &BulletinBoard<MixnetBallot>) -> Vec<usize> {
        bb.iter()
            .enumerate()
            .filter(|(_, b)| ballot_is_valid(pk, b, self.fs))
            .map(|(i, _)| i)
            .collect()
    }

    /// Decrypts the mixed list with proofs, returning the outcome and the
    /// ill-formed positions.
    pub fn decrypt_mixed(
        &self,
        sk: &KeyPair,
        mixed: &[Ciphertext],
        nc: u64,
        rng: &mut dyn RngCore,
    ) -> (Outcome, Vec<Decryption>, Vec<usize>) {
        let params = sk.params();
        let mut decryptions = Vec::with_capacity(mixed.len());
        for (j, ct) in mixed.iter().enumerate() {
            let m = crate::elgamal::decrypt_element(sk, ct);
            let stmt = Statement::decryption(sk.pk.element(), ct, &m);
            let proof = sigma::prove_eq(params, &sk.sk, &stmt, self.fs, &decrypt_context(self.fs, j), rng);
            decryptions.push(Decryption { plaintext: m, proof });
        }
        let (outcome, ill_formed) = count_plaintexts(params, &decryptions, nc);
        (outcome, decryptions, ill_formed)
    }
}

/// The encryption randomness Vote draws from `coins`.
pub fn ballot_randomness(params: &GroupParams, coins: &Coins) -> Scalar {
    params.random_scalar(&mut coins.enc_rng())
}

/// Counts plaintexts g^v with v in 1..=nc; everything else is ill-formed.
pub fn count_plaintexts(params: &GroupParams, decs: &[Decryption], nc: u64) -> (Outcome, Vec<usize>) {
    let mut out = Outcome::zeros(nc);
    let mut ill = Vec::new();
    for (j, d) in decs.iter().enumerate() {
        match params.dlog_small(&d.plaintext, nc) {
            Some(v) if v >= 1 => out.0[(v - 1) as usize] += 1,
            _ => ill.push(j),
        }
    }
    (out, ill)
}

impl ElectionScheme for HeliosMixnet {
    type PublicKey = ProvenKey;
    type SecretKey = KeyPair;
    type Ballot = MixnetBallot;
    type TallyProof = MixnetTallyProof;

    fn id(&self) -> String {
        format!("helios-mixnet/{}", self.fs)
    }

    fn setup(&self, level: SecurityLevel, rng: &mut dyn RngCore) -> Setup<Self> {
        let params = gen_params(level);
        let kp = keygen(&params, rng);
        let pk = ProvenKey::prove(&kp, self.fs, rng);
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
    ) -> Result<MixnetBallot, SchemeError> {
        check_range(v, nc, self.max_candidates(pk))?;
        let r = ballot_randomness(pk.params(), coins);
        Ok(self.ballot_with_randomness(&pk.key, v, &r, &mut coins.proof_rng()))
    }

    fn tally(
        &self,
        sk: &KeyPair,
        bb: &BulletinBoard<MixnetBallot>,
        nc: u64,
        rng: &mut dyn RngCore,
    ) -> Result<(Outcome, MixnetTallyProof), SchemeError> {
        if nc == 0 {
            return Err(SchemeError::InvalidVote { v: 0, nc });
        }
        let accepted = self.accepted_indices(&sk.pk, bb);
        let inputs: Vec<Ciphertext> = accepted.iter().map(|&i| bb.ballots()[i].ct.clone()).collect();
        let (mixed, shuffle) = mix_and_prove(&sk.pk, &inputs, self.rounds, rng);
        let (outcome, decryptions, ill_formed) = self.decrypt_mixed(sk, &mixed, nc, rng);
        Ok((
            outcome,
            MixnetTallyProof {
                accepted,
                mixed,
                shuffle,
                decryptions,
                ill_formed,
            },
        ))
    }

    fn audit(
        &self,
        pk: &ProvenKey,
        bb: &BulletinBoard<MixnetBallot>,
        nc: u64,
        outcome: &Outcome,
        proof: &MixnetTallyProof,
    ) -> AuditReport {
        let fs = self.fs;
        let params = pk.params();
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
        let accepted = self.accepted_indices(&pk.key, bb);
        r.push(
            "accepted-ballots",
            accepted == proof.accepted,
            Some(format!("{} of {} ballots have valid proofs", accepted.len(), bb.len())),
        );
        let inputs: Vec<Ciphertext> = accepted.iter().map(|&i| bb.ballots()[i].ct.clone()).collect();
        r.push(
            "shuffle-rounds",
            proof.shuffle.rounds.len() == self.rounds,
            Some(format!("expected {}, got {}", self.rounds, proof.shuffle.rounds.len())),
        );
        r.push("shuffle-proof", verify_mix(&pk.key, &inputs, &proof.mixed, &proof.shuffle), None);
        if !r.push(
            "decryption-count",
            proof.decryptions.len() == proof.mixed.len(),
            None,
        ) {
            return r;
        }
        for (j, (ct, d)) in proof.mixed.iter().zip(&proof.decryptions).enumerate() {
            let ok = params.contains(&d.plaintext) && {
                let stmt = Statement::decryption(pk.key.element(), ct, &d.plaintext);
                sigma::verify_eq(params, &stmt, &d.proof, fs, &decrypt_context(fs, j))
            };
            r.push(format!("decryption-proof[{j}]"), ok, None);
        }
        let (recount, ill) = count_plaintexts(params, &proof.decryptions, nc);
        r.push(
            "recount",
            &recount == outcome,
            (&recount != outcome).then(|| format!("plaintexts count to {:?}", recount.0)),
        );
        r.push("ill-formed-list", ill == proof.ill_formed, None);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elgamal::decrypt_exp;
    use crate::rng::seeded;
    use crate::scheme::run_election;

    fn key(seed: u64) -> KeyPair {
        keygen(&gen_params(SecurityLevel::Test), &mut seeded(seed))
    }

    fn encrypt_all(kp: &KeyPair, ms: &[u64], rng: &mut dyn RngCore) -> Vec<Ciphertext> {
        ms.iter()
            .map(|&m| encrypt_exp(&kp.pk, m, &kp.params().random_scalar(rng)))
            .collect()
    }

    #[test]
    fn mix_preserves_plaintexts() {
        let kp = key(1);
        let mut rng = seeded(1);
        let inputs = encrypt_all(&kp, &[1, 2], &mut rng);
        let (out, pf) = mix_and_prove(&kp.pk, &inputs, DEFAULT_ROUNDS, &mut rng);
        assert!(verify_mix(&kp.pk, &inputs, &out, &pf));
        let mut plain: Vec<u64> = out.iter().map(|c| decrypt_exp(&kp, c, 5).unwrap()).collect();
        plain.sort();
        assert_eq!(plain, vec![1, 2]);
        assert!(out.iter().all(|c| !inputs.contains(c)));
    }

    #[test]
    fn single_and_empty_lists() {
        let kp = key(2);
        let mut rng = seeded(2);
        let inputs = encrypt_all(&kp, &[3], &mut rng);
        let (out, pf) = mix_and_prove(&kp.pk, &inputs, 8, &mut rng);
        assert!(verify_mix(&kp.pk, &inputs, &out, &pf));
        assert_eq!(decrypt_exp(&kp, &out[0], 5), Ok(3));
        let (out, pf) = mix_and_prove(&kp.pk, &[], 8, &mut rng);
        assert!(out.is_empty());
        assert!(verify_mix(&kp.pk, &[], &out, &pf));
    }

    #[test]
    fn tampering_is_caught() {
        let kp = key(3);
        let mut rng = seeded(3);
        let inputs = encrypt_all(&kp, &[1, 2, 3], &mut rng);
        let (out, pf) = mix_and_prove(&kp.pk, &inputs, DEFAULT_ROUNDS, &mut rng);
        let mut forged = out.clone();
        forged[0] = encrypt_exp(&kp.pk, 3, &kp.params().random_scalar(&mut rng));
        assert!(!verify_mix(&kp.pk, &inputs, &forged, &pf));

        let mut bad = pf.clone();
        let s = &mut bad.rounds[0].randomness[0];
        *s = kp.params().add(s, &kp.params().scalar_u64(1));
        assert!(!verify_mix(&kp.pk, &inputs, &out, &bad));

        let mut flipped = pf.clone();
        flipped.rounds[1].bit ^= 1;
        assert!(!verify_mix(&kp.pk, &inputs, &out, &flipped));

        let mut not_perm = pf;
        not_perm.rounds[2].permutation = vec![0, 0, 1];
        assert!(!verify_mix(&kp.pk, &inputs, &out, &not_perm));
    }

    #[test]
    fn chosen_permutation_is_applied() {
        let kp = key(4);
        let mut rng = seeded(4);
        let inputs = encrypt_all(&kp, &[1, 2, 3], &mut rng);
        let zero = kp.params().zero();
        let (out, pf) = mix_and_prove_with(&kp.pk, &inputs, &[2, 0, 1], &[zero.clone(), zero.clone(), zero], 4, &mut rng);
        assert_eq!(out, vec![inputs[2].clone(), inputs[0].clone(), inputs[1].clone()]);
        assert!(verify_mix(&kp.pk, &inputs, &out, &pf));
    }

    #[test]
    fn election_counts() {
        for fs in [FsMode::Weak, FsMode::Strong] {
            let scheme = make_helios_mixnet(fs, 10);
            let mut rng = seeded(5);
            let run = run_election(&scheme, &[3, 1, 3], 3, SecurityLevel::Test, &mut rng).unwrap();
            assert_eq!(run.outcome, Outcome(vec![1, 0, 2]));
            assert!(run.verified);
            let empty = run_election(&scheme, &[], 3, SecurityLevel::Test, &mut rng).unwrap();
            assert_eq!(empty.outcome, Outcome::zeros(3));
            assert!(empty.verified);
        }
    }

    #[test]
    fn out_of_range_vote_is_reported() {
        let scheme = make_helios_mixnet(FsMode::Strong, 10);
        let mut rng = seeded(6);
        let s = scheme.setup(SecurityLevel::Test, &mut rng);
        let mut bb = BulletinBoard::new();
        bb.insert(scheme.vote(&s.pk, 2, 3, &mut rng).unwrap());
        let r = s.pk.params().random_scalar(&mut rng);
        bb.insert(scheme.ballot_with_randomness(&s.pk.key, 5, &r, &mut rng));
        let (out, pf) = scheme.tally(&s.sk, &bb, 3, &mut rng).unwrap();
        assert_eq!(out, Outcome(vec![0, 1, 0]));
        assert_eq!(pf.ill_formed.len(), 1);
        assert_eq!(pf.accepted, vec![0, 1]);
        assert!(scheme.verify(&s.pk, &bb, 3, &out, &pf));
    }

    #[test]
    fn verify_rejects_wrong_outcome_and_short_proofs() {
        let scheme = make_helios_mixnet(FsMode::Strong, 10);
        let mut rng = seeded(7);
        let run = run_election(&scheme, &[1, 2, 2], 3, SecurityLevel::Test, &mut rng).unwrap();
        let rep = scheme.audit(&run.pk, &run.board, 3, &Outcome(vec![2, 1, 0]), &run.proof);
        assert_eq!(rep.first_failure().unwrap().name, "recount");
        let mut short = run.proof.clone();
        short.shuffle.rounds.truncate(1);
        assert!(!scheme.verify(&run.pk, &run.board, 3, &run.outcome, &short));
        let mut lie = run.proof.clone();
        lie.decryptions[0].plaintext = run.pk.params().encode_exponent(3);
        assert!(!scheme.verify(&run.pk, &run.board, 3, &run.outcome, &lie));
    }

    #[test]
    fn ballot_pok_binds_ciphertext_under_strong() {
        let strong = make_helios_mixnet(FsMode::Strong, 4);
        let weak = make_helios_mixnet(FsMode::Weak, 4);
        let mut rng = seeded(8);
        let s = strong.setup(SecurityLevel::Test, &mut rng);
        let params = s.pk.params().clone();
        for (scheme, expect) in [(strong, false), (weak, true)] {
            let b = scheme.vote(&s.pk, 1, 3, &mut rng).unwrap();
            assert!(ballot_is_valid(&s.pk.key, &b, scheme.fs));
            let mut mauled = b.clone();
            mauled.ct.c2 = params.mul(&mauled.ct.c2, params.g());
            assert_eq!(ballot_is_valid(&s.pk.key, &mauled, scheme.fs), expect);
        }
    }
}
