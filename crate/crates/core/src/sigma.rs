//! Sigma protocols made non-interactive with Fiat–Shamir.
//!
//! Three relations are covered: knowledge of a discrete log (Schnorr),
//! equality of two discrete logs (Chaum–Pedersen, used for decryption
//! proofs), and the disjunction "this ciphertext encrypts 0 or 1".
//!
//! Strong Fiat–Shamir hashes the context, the statement and the commitments;
//! weak Fiat–Shamir leaves the statement out. The weak form is kept on
//! purpose: it is what the forgeries in [`crate::adversaries`] exploit.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::codec::{CanonicalBytes, Encoder};
use crate::elgamal::{Ciphertext, PublicKey};
use crate::group::{GroupElement, GroupParams, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FsMode {
    Strong,
    Weak,
}

impl FsMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            FsMode::Strong => "strong",
            FsMode::Weak => "weak",
        }
    }
}

impl fmt::Display for FsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strong" => Ok(FsMode::Strong),
            "weak" => Ok(FsMode::Weak),
            _ => Err(format!("unknown Fiat-Shamir mode {s:?} (expected strong or weak)")),
        }
    }
}

const TAG_STRONG: u8 = 0x53;
const TAG_WEAK: u8 = 0x57;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofKind {
    Dlog,
    EqDlog,
    Or,
}

impl ProofKind {
    fn tag(self) -> u8 {
        match self {
            ProofKind::Dlog => 1,
            ProofKind::EqDlog => 2,
            ProofKind::Or => 3,
        }
    }

    /// (commitments, sub-challenges, responses)
    fn arity(self) -> (usize, usize, usize) {
        match self {
            ProofKind::Dlog => (1, 0, 1),
            ProofKind::EqDlog => (2, 0, 1),
            ProofKind::Or => (4, 2, 2),
        }
    }
}

/// What a proof claims.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Statement {
    /// Knowledge of x with y = g^x.
    Dlog { y: GroupElement },
    /// log_g(pk) = log_{c1}(c2 / m): (c1, c2) decrypts to the element m.
    EqDlog {
        pk: GroupElement,
        c1: GroupElement,
        m: GroupElement,
        c2: GroupElement,
    },
    /// (c1, c2) encrypts g^0 or g^1 under pk.
    OrEncryption {
        pk: GroupElement,
        c1: GroupElement,
        c2: GroupElement,
    },
}

impl Statement {
    pub fn decryption(pk: &GroupElement, ct: &Ciphertext, m: &GroupElement) -> Self {
        Statement::EqDlog {
            pk: pk.clone(),
            c1: ct.c1.clone(),
            m: m.clone(),
            c2: ct.c2.clone(),
        }
    }

    pub fn or_encryption(pk: &GroupElement, ct: &Ciphertext) -> Self {
        Statement::OrEncryption {
            pk: pk.clone(),
            c1: ct.c1.clone(),
            c2: ct.c2.clone(),
        }
    }

    fn elements(&self) -> Vec<&GroupElement> {
        match self {
            Statement::Dlog { y } => vec![y],
            Statement::EqDlog { pk, c1, m, c2 } => vec![pk, c1, m, c2],
            Statement::OrEncryption { pk, c1, c2 } => vec![pk, c1, c2],
        }
    }

    pub fn is_well_formed(&self, params: &GroupParams) -> bool {
        self.elements().into_iter().all(|e| params.contains(e))
    }
}

impl CanonicalBytes for Statement {
    fn encode(&self, enc: &mut Encoder) {
        let tag = match self {
            Statement::Dlog { .. } => 1,
            Statement::EqDlog { .. } => 2,
            Statement::OrEncryption { .. } => 3,
        };
        enc.tag(tag);
        for e in self.elements() {
            enc.element(e);
        }
    }
}

/// A non-interactive proof (commitments, challenge, responses). Disjunctive
/// proofs also carry their two branch challenges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transcript {
    pub kind: ProofKind,
    pub commitments: Vec<GroupElement>,
    pub challenge: Scalar,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_challenges: Vec<Scalar>,
    pub responses: Vec<Scalar>,
}

impl CanonicalBytes for Transcript {
    fn encode(&self, enc: &mut Encoder) {
        enc.tag(self.kind.tag());
        enc.u32(self.commitments.len() as u32);
        for c in &self.commitments {
            enc.element(c);
        }
        enc.scalar(&self.challenge);
        enc.u32(self.sub_challenges.len() as u32);
        for c in &self.sub_challenges {
            enc.scalar(c);
        }
        enc.u32(self.responses.len() as u32);
        for z in &self.responses {
            enc.scalar(z);
        }
    }
}

impl Transcript {
    /// Arity matches the kind, commitments are group members and all
    /// scalars are reduced.
    pub fn is_well_formed(&self, params: &GroupParams) -> bool {
        let (nc, ns, nr) = self.kind.arity();
        let reduced = |s: &Scalar| s.as_biguint() < params.q();
        self.commitments.len() == nc
            && self.sub_challenges.len() == ns
            && self.responses.len() == nr
            && self.commitments.iter().all(|c| params.in_range(c))
            && reduced(&self.challenge)
            && self.sub_challenges.iter().all(reduced)
            && self.responses.iter().all(reduced)
    }
}

pub fn fs_challenge(
    params: &GroupParams,
    mode: FsMode,
    statement: &Statement,
    commitments: &[GroupElement],
    context: &[u8],
) -> Scalar {
    let stmt = statement.canonical_bytes();
    let coms: Vec<Vec<u8>> = commitments.iter().map(|c| c.to_bytes()).collect();
    let mut fields: Vec<&[u8]> = Vec::with_capacity(coms.len() + 2);
    fields.push(context);
    let tag = match mode {
        FsMode::Strong => {
            fields.push(&stmt);
            TAG_STRONG
        }
        FsMode::Weak => TAG_WEAK,
    };
    fields.extend(coms.iter().map(|c| c.as_slice()));
    params.hash_to_scalar(tag, &fields)
}

// ---- Schnorr ----

/// Proves knowledge of x with y = g^x.
pub fn prove_dlog(
    params: &GroupParams,
    x: &Scalar,
    y: &GroupElement,
    mode: FsMode,
    context: &[u8],
    rng: &mut dyn RngCore,
) -> Transcript {
    let w = params.random_scalar(rng);
    let t = params.pow_g(&w);
    let stmt = Statement::Dlog { y: y.clone() };
    let c = fs_challenge(params, mode, &stmt, std::slice::from_ref(&t), context);
    let z = params.add(&w, &params.mul_scalars(&c, x));
    Transcript {
        kind: ProofKind::Dlog,
        commitments: vec![t],
        challenge: c,
        sub_challenges: vec![],
        responses: vec![z],
    }
}

/// Checks g^z = t · y^c and the recomputed challenge.
pub fn verify_dlog(
    params: &GroupParams,
    y: &GroupElement,
    proof: &Transcript,
    mode: FsMode,
    context: &[u8],
) -> bool {
    if proof.kind != ProofKind::Dlog || !proof.is_well_formed(params) || !params.contains(y) {
        return false;
    }
    let stmt = Statement::Dlog { y: y.clone() };
    if fs_challenge(params, mode, &stmt, &proof.commitments, context) != proof.challenge {
        return false;
    }
    let (t, c, z) = (&proof.commitments[0], &proof.challenge, &proof.responses[0]);
    params.pow_g(z) == params.mul(t, &params.pow(y, c))
}

/// Recovers x from two accepting Schnorr transcripts sharing a commitment
/// but with different challenges: x = (z − z') / (c − c').
pub fn extract_dlog_witness(params: &GroupParams, a: &Transcript, b: &Transcript) -> Option<Scalar> {
    if a.commitments != b.commitments || a.challenge == b.challenge {
        return None;
    }
    let dz = params.sub(a.responses.first()?, b.responses.first()?);
    let dc = params.sub(&a.challenge, &b.challenge);
    Some(params.mul_scalars(&dz, &params.inv_scalar(&dc).ok()?))
}

// ---- Chaum–Pedersen ----

/// log_g(h1) = log_{b2}(h2), the shape shared by decryption proofs and the
/// branches of disjunctive proofs.
struct Dleq<'a> {
    h1: &'a GroupElement,
    b2: &'a GroupElement,
    h2: GroupElement,
}

fn dleq_holds(
    params: &GroupParams,
    rel: &Dleq<'_>,
    t1: &GroupElement,
    t2: &GroupElement,
    c: &Scalar,
    z: &Scalar,
    pow_b2: impl Fn(&Scalar) -> GroupElement,
) -> bool {
    params.pow_g(z) == params.mul(t1, &params.pow(rel.h1, c))
        && pow_b2(z) == params.mul(t2, &params.pow(&rel.h2, c))
}

fn decryption_relation<'a>(params: &GroupParams, statement: &'a Statement) -> Option<Dleq<'a>> {
    match statement {
        Statement::EqDlog { pk, c1, m, c2 } => Some(Dleq {
            h1: pk,
            b2: c1,
            h2: params.div(c2, m),
        }),
        _ => None,
    }
}

/// Proves the statement pk = g^sk ∧ c2/m = c1^sk.
pub fn prove_eq(
    params: &GroupParams,
    sk: &Scalar,
    statement: &Statement,
    mode: FsMode,
    context: &[u8],
    rng: &mut dyn RngCore,
) -> Transcript {
    let Statement::EqDlog { c1, .. } = statement else {
        panic!("prove_eq needs an equality-of-logs statement");
    };
    let w = params.random_scalar(rng);
    let coms = vec![params.pow_g(&w), params.pow(c1, &w)];
    let c = fs_challenge(params, mode, statement, &coms, context);
    let z = params.add(&w, &params.mul_scalars(&c, sk));
    Transcript {
        kind: ProofKind::EqDlog,
        commitments: coms,
        challenge: c,
        sub_challenges: vec![],
        responses: vec![z],
    }
}

/// The two verification equations g^z = t1·pk^c and c1^z = t2·(c2/m)^c,
/// without the challenge recomputation.
pub fn check_eq_equations(params: &GroupParams, statement: &Statement, proof: &Transcript) -> bool {
    if proof.kind != ProofKind::EqDlog
        || !proof.is_well_formed(params)
        || !statement.is_well_formed(params)
    {
        return false;
    }
    let Some(rel) = decryption_relation(params, statement) else {
        return false;
    };
    dleq_holds(
        params,
        &rel,
        &proof.commitments[0],
        &proof.commitments[1],
        &proof.challenge,
        &proof.responses[0],
        |e| params.pow(rel.b2, e),
    )
}

pub fn verify_eq(
    params: &GroupParams,
    statement: &Statement,
    proof: &Transcript,
    mode: FsMode,
    context: &[u8],
) -> bool {
    check_eq_equations(params, statement, proof)
        && fs_challenge(params, mode, statement, &proof.commitments, context) == proof.challenge
}

/// Honest-verifier simulator: an accepting-looking transcript for any
/// challenge, true statement or not. The challenge is taken as given, so the
/// result passes [`check_eq_equations`] but generally not [`verify_eq`].
pub fn simulate_eq(
    params: &GroupParams,
    statement: &Statement,
    challenge: &Scalar,
    rng: &mut dyn RngCore,
) -> Transcript {
    let rel = decryption_relation(params, statement)
        .expect("simulate_eq needs an equality-of-logs statement");
    let z = params.random_scalar(rng);
    let neg_c = params.neg(challenge);
    let t1 = params.mul(&params.pow_g(&z), &params.pow(rel.h1, &neg_c));
    let t2 = params.mul(&params.pow(rel.b2, &z), &params.pow(&rel.h2, &neg_c));
    Transcript {
        kind: ProofKind::EqDlog,
        commitments: vec![t1, t2],
        challenge: challenge.clone(),
        sub_challenges: vec![],
        responses: vec![z],
    }
}

// ---- disjunctive 0/1 proofs ----

fn or_relation<'a>(pk: &'a PublicKey, ct: &'a Ciphertext, branch: u64) -> Dleq<'a> {
    let params = pk.params();
    let h2 = if branch == 0 {
        ct.c2.clone()
    } else {
        params.mul(&ct.c2, params.g_inv())
    };
    Dleq {
        h1: &ct.c1,
        b2: pk.element(),
        h2,
    }
}

/// Proves that `ct = E(bit; r)` with bit ∈ {0, 1}. Commitments are laid out
/// as [a0, b0, a1, b1]. Passing a bit the ciphertext does not encrypt yields
/// a proof that fails verification.
pub fn prove_or(
    pk: &PublicKey,
    ct: &Ciphertext,
    bit: u64,
    r: &Scalar,
    mode: FsMode,
    context: &[u8],
    rng: &mut dyn RngCore,
) -> Transcript {
    let params = pk.params();
    let real = (bit & 1) as usize;
    let sim = 1 - real;

    let sim_c = params.random_scalar(rng);
    let sim_z = params.random_scalar(rng);
    let rel = or_relation(pk, ct, sim as u64);
    let neg_c = params.neg(&sim_c);
    let sim_a = params.mul(&params.pow_g(&sim_z), &params.pow(rel.h1, &neg_c));
    let sim_b = params.mul(&pk.pow(&sim_z), &params.pow(&rel.h2, &neg_c));

    let w = params.random_scalar(rng);
    let real_a = params.pow_g(&w);
    let real_b = pk.pow(&w);

    let mut coms = vec![params.identity(); 4];
    coms[2 * real] = real_a;
    coms[2 * real + 1] = real_b;
    coms[2 * sim] = sim_a;
    coms[2 * sim + 1] = sim_b;

    let stmt = Statement::or_encryption(pk.element(), ct);
    let c = fs_challenge(params, mode, &stmt, &coms, context);
    let real_c = params.sub(&c, &sim_c);
    let real_z = params.add(&w, &params.mul_scalars(&real_c, r));

    let mut subs = vec![params.zero(); 2];
    let mut zs = vec![params.zero(); 2];
    subs[real] = real_c;
    subs[sim] = sim_c;
    zs[real] = real_z;
    zs[sim] = sim_z;
    Transcript {
        kind: ProofKind::Or,
        commitments: coms,
        challenge: c,
        sub_challenges: subs,
        responses: zs,
    }
}

/// Both branch equations, c0 + c1 = c, and the recomputed challenge.
pub fn verify_or(
    pk: &PublicKey,
    ct: &Ciphertext,
    proof: &Transcript,
    mode: FsMode,
    context: &[u8],
) -> bool {
    let params = pk.params();
    if proof.kind != ProofKind::Or
        || !proof.is_well_formed(params)
        || !ct.is_well_formed(params)
    {
        return false;
    }
    let subs = &proof.sub_challenges;
    if params.add(&subs[0], &subs[1]) != proof.challenge {
        return false;
    }
    let stmt = Statement::or_encryption(pk.element(), ct);
    if fs_challenge(params, mode, &stmt, &proof.commitments, context) != proof.challenge {
        return false;
    }
    (0..2).all(|i| {
        let rel = or_relation(pk, ct, i as u64);
        dleq_holds(
            params,
            &rel,
            &proof.commitments[2 * i],
            &proof.commitments[2 * i + 1],
            &subs[i],
            &proof.responses[i],
            |e| pk.pow(e),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elgamal::{encrypt_exp, keygen, KeyPair};
    use crate::group::{gen_params, SecurityLevel};
    use crate::rng::seeded;

    fn test_key(seed: u64) -> (GroupParams, KeyPair) {
        let gp = gen_params(SecurityLevel::Test);
        let kp = keygen(&gp, &mut seeded(seed));
        (gp, kp)
    }

    #[test]
    fn strong_and_weak_challenges() {
        let (gp, kp) = test_key(1);
        let stmt = Statement::Dlog { y: kp.pk.element().clone() };
        let other = Statement::Dlog { y: gp.g().clone() };
        let coms = [gp.pow_g(&gp.scalar_u64(77))];
        let strong = fs_challenge(&gp, FsMode::Strong, &stmt, &coms, b"ctx");
        let weak = fs_challenge(&gp, FsMode::Weak, &stmt, &coms, b"ctx");
        assert_ne!(strong, weak);
        assert_eq!(weak, fs_challenge(&gp, FsMode::Weak, &other, &coms, b"ctx"));
        assert_ne!(strong, fs_challenge(&gp, FsMode::Strong, &other, &coms, b"ctx"));
        assert_eq!(strong, fs_challenge(&gp, FsMode::Strong, &stmt, &coms, b"ctx"));
        assert_ne!(strong, fs_challenge(&gp, FsMode::Strong, &stmt, &coms, b"ctx2"));
    }

    #[test]
    fn schnorr_roundtrip_and_rejections() {
        let gp = gen_params(SecurityLevel::Test);
        let mut rng = seeded(2);
        for _ in 0..100 {
            let kp = keygen(&gp, &mut rng);
            let y = kp.pk.element();
            for mode in [FsMode::Strong, FsMode::Weak] {
                let pf = prove_dlog(&gp, &kp.sk, y, mode, b"k", &mut rng);
                assert!(verify_dlog(&gp, y, &pf, mode, b"k"));
            }
        }
        let kp = keygen(&gp, &mut rng);
        let other = keygen(&gp, &mut rng);
        let pf = prove_dlog(&gp, &kp.sk, kp.pk.element(), FsMode::Strong, b"k", &mut rng);
        let mut bad = pf.clone();
        bad.responses[0] = gp.add(&bad.responses[0], &gp.scalar_u64(1));
        assert!(!verify_dlog(&gp, kp.pk.element(), &bad, FsMode::Strong, b"k"));
        assert!(!verify_dlog(&gp, other.pk.element(), &pf, FsMode::Strong, b"k"));
        assert!(!verify_dlog(&gp, kp.pk.element(), &pf, FsMode::Strong, b"other"));
        let mut short = pf.clone();
        short.responses.clear();
        assert!(!verify_dlog(&gp, kp.pk.element(), &short, FsMode::Strong, b"k"));
        let mut unreduced = pf;
        unreduced.responses[0] = Scalar::from_raw(gp.q() + unreduced.responses[0].as_biguint());
        assert!(!verify_dlog(&gp, kp.pk.element(), &unreduced, FsMode::Strong, b"k"));
    }

    #[test]
    fn special_soundness_extracts_key() {
        // Toy group: only challenge differences coprime to 22 invert.
        let gp = gen_params(SecurityLevel::Toy);
        for sk in 1..22u64 {
            let x = gp.scalar_u64(sk);
            let y = gp.pow_g(&x);
            for w in [3u64, 10] {
                let wz = gp.scalar_u64(w);
                let t = gp.pow_g(&wz);
                let mk = |c: u64| {
                    let c = gp.scalar_u64(c);
                    Transcript {
                        kind: ProofKind::Dlog,
                        commitments: vec![t.clone()],
                        responses: vec![gp.add(&wz, &gp.mul_scalars(&c, &x))],
                        challenge: c,
                        sub_challenges: vec![],
                    }
                };
                let (a, b) = (mk(8), mk(5));
                for tr in [&a, &b] {
                    let (c, z) = (&tr.challenge, &tr.responses[0]);
                    assert_eq!(gp.pow_g(z), gp.mul(&t, &gp.pow(&y, c)));
                }
                let got = extract_dlog_witness(&gp, &a, &b).unwrap();
                assert_eq!(gp.pow_g(&got), y);
                assert_eq!(got, x);
            }
        }
        let (gp, kp) = test_key(3);
        let w = gp.scalar_u64(12345);
        let mk = |c: Scalar| Transcript {
            kind: ProofKind::Dlog,
            commitments: vec![gp.pow_g(&w)],
            responses: vec![gp.add(&w, &gp.mul_scalars(&c, &kp.sk))],
            challenge: c,
            sub_challenges: vec![],
        };
        let got = extract_dlog_witness(&gp, &mk(gp.scalar_u64(99)), &mk(gp.scalar_u64(4))).unwrap();
        assert_eq!(got, kp.sk);
    }

    #[test]
    fn decryption_proof_toy() {
        let gp = gen_params(SecurityLevel::Toy);
        let kp = KeyPair::from_secret(&gp, gp.scalar_u64(6));
        let ct = encrypt_exp(&kp.pk, 2, &gp.scalar_u64(3));
        let m = gp.encode_exponent(2);
        let stmt = Statement::decryption(kp.pk.element(), &ct, &m);
        let mut rng = seeded(4);
        for mode in [FsMode::Strong, FsMode::Weak] {
            let pf = prove_eq(&gp, &kp.sk, &stmt, mode, b"d", &mut rng);
            assert!(verify_eq(&gp, &stmt, &pf, mode, b"d"));
        }
        // Hand-checked instance with w = 4, c = 9: t1 = 5^4 = 4, t2 = 10^4 = 18,
        // z = 4 + 9·6 = 58 ≡ 14 (mod 22).
        let pf = Transcript {
            kind: ProofKind::EqDlog,
            commitments: vec![gp.element_u64(4).unwrap(), gp.element_u64(18).unwrap()],
            challenge: gp.scalar_u64(9),
            sub_challenges: vec![],
            responses: vec![gp.scalar_u64(14)],
        };
        assert!(check_eq_equations(&gp, &stmt, &pf));
        let wrong = Statement::decryption(kp.pk.element(), &ct, &gp.encode_exponent(1));
        assert!(!check_eq_equations(&gp, &wrong, &pf));
    }

    #[test]
    fn decryption_proof_rejections() {
        let (gp, kp) = test_key(5);
        let mut rng = seeded(5);
        let ct = encrypt_exp(&kp.pk, 2, &gp.random_scalar(&mut rng));
        let stmt = Statement::decryption(kp.pk.element(), &ct, &gp.encode_exponent(2));
        let pf = prove_eq(&gp, &kp.sk, &stmt, FsMode::Strong, b"d", &mut rng);
        let false_stmt = Statement::decryption(kp.pk.element(), &ct, &gp.encode_exponent(1));
        assert!(!verify_eq(&gp, &false_stmt, &pf, FsMode::Strong, b"d"));
        // An honest prover run on the false statement cannot convince either.
        let pf2 = prove_eq(&gp, &kp.sk, &false_stmt, FsMode::Strong, b"d", &mut rng);
        assert!(!verify_eq(&gp, &false_stmt, &pf2, FsMode::Strong, b"d"));
        let mut tampered = pf.clone();
        tampered.commitments[1] = gp.mul(&tampered.commitments[1], gp.g());
        assert!(!verify_eq(&gp, &stmt, &tampered, FsMode::Strong, b"d"));
        let mut outside = pf;
        outside.commitments[0] = GroupElement::from_raw(gp.p() - 1u32);
        assert!(!verify_eq(&gp, &stmt, &outside, FsMode::Strong, b"d"));
    }

    #[test]
    fn simulator_passes_equations_not_hash() {
        let (gp, kp) = test_key(6);
        let mut rng = seeded(6);
        let ct = encrypt_exp(&kp.pk, 3, &gp.random_scalar(&mut rng));
        let false_stmt = Statement::decryption(kp.pk.element(), &ct, &gp.encode_exponent(1));
        for _ in 0..50 {
            let c = gp.random_scalar(&mut rng);
            let sim = simulate_eq(&gp, &false_stmt, &c, &mut rng);
            assert!(check_eq_equations(&gp, &false_stmt, &sim));
            assert!(!verify_eq(&gp, &false_stmt, &sim, FsMode::Strong, b""));
            assert!(!verify_eq(&gp, &false_stmt, &sim, FsMode::Weak, b""));
        }
    }

    #[test]
    fn simulated_commitments_are_uniform_on_toy_group() {
        // Chi-square over the 22 residues for honest and simulated t1.
        let gp = gen_params(SecurityLevel::Toy);
        let kp = KeyPair::from_secret(&gp, gp.scalar_u64(6));
        let ct = encrypt_exp(&kp.pk, 2, &gp.scalar_u64(3));
        let stmt = Statement::decryption(kp.pk.element(), &ct, &gp.encode_exponent(2));
        let mut rng = seeded(7);
        let n = 2200usize;
        let mut honest = vec![0usize; 23];
        let mut sim = vec![0usize; 23];
        for _ in 0..n {
            let pf = prove_eq(&gp, &kp.sk, &stmt, FsMode::Strong, b"", &mut rng);
            honest[pf.commitments[0].to_bytes()[0] as usize] += 1;
            let c = gp.random_scalar(&mut rng);
            let s = simulate_eq(&gp, &stmt, &c, &mut rng);
            sim[s.commitments[0].to_bytes()[0] as usize] += 1;
        }
        let expected = n as f64 / 22.0;
        for counts in [&honest, &sim] {
            let chi: f64 = counts[1..]
                .iter()
                .map(|&o| (o as f64 - expected).powi(2) / expected)
                .sum();
            // 21 degrees of freedom; 99.9th percentile ≈ 46.8.
            assert!(chi < 46.8, "chi-square {chi}");
        }
    }

    #[test]
    fn weak_malleation_hook() {
        // A weak transcript keeps verifying after c2 is swapped exactly when
        // the second equation still holds for the new c2.
        let (gp, kp) = test_key(8);
        let mut rng = seeded(8);
        let ct = encrypt_exp(&kp.pk, 1, &gp.random_scalar(&mut rng));
        let m = gp.encode_exponent(1);
        let stmt = Statement::decryption(kp.pk.element(), &ct, &m);
        let pf = prove_eq(&gp, &kp.sk, &stmt, FsMode::Weak, b"", &mut rng);
        let shifted = |delta: u64| {
            let mut ct2 = ct.clone();
            ct2.c2 = gp.mul(&ct2.c2, &gp.encode_exponent(delta));
            ct2
        };
        // c2·g with claimed plaintext m·g re-satisfies the equation.
        let ok = Statement::decryption(kp.pk.element(), &shifted(1), &gp.mul(&m, gp.g()));
        assert!(verify_eq(&gp, &ok, &pf, FsMode::Weak, b""));
        assert!(!verify_eq(&gp, &ok, &pf, FsMode::Strong, b""));
        let bad = Statement::decryption(kp.pk.element(), &shifted(1), &m);
        assert!(!verify_eq(&gp, &bad, &pf, FsMode::Weak, b""));
    }

    #[test]
    fn or_proof_roundtrips() {
        let (gp, kp) = test_key(9);
        let mut rng = seeded(9);
        for i in 0..100u64 {
            let bit = i % 2;
            let r = gp.random_scalar(&mut rng);
            let ct = encrypt_exp(&kp.pk, bit, &r);
            let mode = if i % 4 < 2 { FsMode::Strong } else { FsMode::Weak };
            let pf = prove_or(&kp.pk, &ct, bit, &r, mode, b"o", &mut rng);
            assert!(verify_or(&kp.pk, &ct, &pf, mode, b"o"), "bit {bit} {mode}");
        }
    }

    #[test]
    fn or_proof_cannot_cover_two() {
        let (gp, kp) = test_key(10);
        let mut rng = seeded(10);
        for i in 0..100u64 {
            let r = gp.random_scalar(&mut rng);
            let ct = encrypt_exp(&kp.pk, 2, &r);
            let pf = prove_or(&kp.pk, &ct, i % 2, &r, FsMode::Strong, b"o", &mut rng);
            assert!(!verify_or(&kp.pk, &ct, &pf, FsMode::Strong, b"o"));
        }
    }

    #[test]
    fn or_proof_branch_swap_fails() {
        let (gp, kp) = test_key(11);
        let mut rng = seeded(11);
        let r = gp.random_scalar(&mut rng);
        let ct = encrypt_exp(&kp.pk, 1, &r);
        let pf = prove_or(&kp.pk, &ct, 1, &r, FsMode::Weak, b"o", &mut rng);
        let mut sw = pf.clone();
        sw.commitments.swap(0, 2);
        sw.commitments.swap(1, 3);
        sw.sub_challenges.swap(0, 1);
        sw.responses.swap(0, 1);
        assert!(!verify_or(&kp.pk, &ct, &sw, FsMode::Weak, b"o"));
        let mut other_ct = ct.clone();
        other_ct.c2 = gp.mul(&other_ct.c2, gp.g());
        assert!(!verify_or(&kp.pk, &other_ct, &pf, FsMode::Strong, b"o"));
    }

    #[test]
    fn transcript_json_roundtrip() {
        let (gp, kp) = test_key(12);
        let mut rng = seeded(12);
        let r = gp.random_scalar(&mut rng);
        let ct = encrypt_exp(&kp.pk, 0, &r);
        let pf = prove_or(&kp.pk, &ct, 0, &r, FsMode::Strong, b"", &mut rng);
        let s = serde_json::to_string(&pf).unwrap();
        assert!(s.starts_with("{\"kind\":\"or\""));
        let back: Transcript = serde_json::from_str(&s).unwrap();
        assert_eq!(back, pf);
        assert_eq!(back.canonical_bytes(), pf.canonical_bytes());
    }
}
