//! Concrete attacks, packaged as adversaries for [`crate::games`], and a
//! registry pairing each attack with the targets it should and should not
//! break.
//!
//! Every adversary is deterministic given the randomness it is handed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::elgamal::{
    decrypt_element, decrypt_exp, encrypt_exp, hom_combine, keygen, make_nm_elgamal,
    make_plain_elgamal, AsymmetricScheme, Ciphertext, KeyPair, MessageSpace, PublicKey,
};
use crate::games::{
    play_ballot_secrecy, play_completeness, play_ind_cva, play_ind_pa0, play_individual_verifiability,
    play_soundness, run_trials_with, AdvResult, CompletenessAdversary, CvaAdversary, GameResult, IvAdversary,
    Pa0Adversary, SecrecyAdversary, SecrecyMode, SoundnessAdversary, SoundnessClaim, TrialStats,
    VoteOracle,
};
use crate::group::{gen_params, GroupElement, GroupParams, Scalar, SecurityLevel};
use crate::helios::{
    self, column_sums, make_helios, Helios, HeliosBallot, HeliosTallyProof, HeliosVariant,
    ProvenKey,
};
use crate::kind::{SchemeKind, Target};
use crate::mixnet::{
    self, ballot_randomness, count_plaintexts, make_helios_mixnet, mix_and_prove_with, Decryption,
    HeliosMixnet, MixnetTallyProof, DEFAULT_ROUNDS,
};
use crate::rng::{Coins, Seed};
use crate::scheme::{make_enc2vote, BulletinBoard, ElectionScheme, Enc2Vote, Outcome, Witness};
use crate::sigma::{self, fs_challenge, FsMode, ProofKind, Statement, Transcript};

fn coin(rng: &mut dyn RngCore) -> u8 {
    u8::from(rng.gen::<bool>())
}

/// Weak Fiat–Shamir ignores the statement, so any placeholder will do.
fn weak_challenge(params: &GroupParams, coms: &[GroupElement], ctx: &[u8]) -> Scalar {
    let unused = Statement::Dlog { y: params.identity() };
    fs_challenge(params, FsMode::Weak, &unused, coms, ctx)
}

fn require_prime_order(params: &GroupParams) -> AdvResult<()> {
    if params.has_prime_order() {
        Ok(())
    } else {
        Err("attack needs a prime-order group (use the test or production level)".into())
    }
}

// ---- ballot mauling ----

/// Relabels the candidates of a Helios ballot: the (ciphertext, proof) pair
/// at position i moves to position χ(i), and the proof for the product is
/// kept, since the product does not depend on the order. A ballot for v
/// becomes a ballot for χ(v). `chi` lists χ(1), …, χ(nc − 1).
///
/// Under weak Fiat–Shamir every moved proof still verifies; under strong
/// Fiat–Shamir the proofs are bound to their positions and do not.
///
/// # Panics
/// If `chi` is not a permutation of 1..nc−1 or the ballot has fewer than
/// two ciphertexts.
pub fn maul_ballot(b: &HeliosBallot, chi: &[u64]) -> HeliosBallot {
    let n = b.cts.len();
    assert!(n >= 2, "need at least two ciphertexts");
    assert_eq!(chi.len(), n, "permutation length");
    let mut seen = vec![false; n];
    for &x in chi {
        assert!(x >= 1 && x as usize <= n && !seen[x as usize - 1], "not a permutation");
        seen[x as usize - 1] = true;
    }
    let mut cts = b.cts.clone();
    let mut proofs = b.proofs.clone();
    for (i, &x) in chi.iter().enumerate() {
        cts[x as usize - 1] = b.cts[i].clone();
        proofs[x as usize - 1] = b.proofs[i].clone();
    }
    HeliosBallot { nc: b.nc, cts, proofs }
}

/// Posts a relabelled copy of an oracle ballot and reads the relabelled
/// vote off the outcome.
#[derive(Debug, Clone)]
pub struct PermutationAdversary {
    nc: u64,
    stealth: bool,
    chi: Vec<u64>,
    v0: u64,
    v1: u64,
}

/// Non-stealth: one query (1, 2), board {maul(b)}. The oracle ballot itself
/// is not posted, so the board is trivially balanced. Stealth: queries
/// (1, 2) and (2, 1) and posts both next to the mauled ballot, so the
/// attacked voters still find their ballots on the board.
///
/// # Panics
/// If `nc < 3`.
pub fn make_secrecy_permutation_adversary(nc: u64, stealth: bool) -> PermutationAdversary {
    assert!(nc >= 3, "permutation attack needs nc ≥ 3");
    let mut chi: Vec<u64> = (1..nc).collect();
    chi.swap(0, 1);
    PermutationAdversary {
        nc,
        stealth,
        chi,
        v0: 1,
        v1: 2,
    }
}

impl PermutationAdversary {
    fn chi(&self, v: u64) -> u64 {
        if v < self.nc {
            self.chi[v as usize - 1]
        } else {
            v
        }
    }

    fn expected(&self, beta: u8) -> Outcome {
        let (vb, other) = if beta == 0 { (self.v0, self.v1) } else { (self.v1, self.v0) };
        let votes = if self.stealth {
            vec![vb, other, self.chi(vb)]
        } else {
            vec![self.chi(vb)]
        };
        Outcome::count(&votes, self.nc)
    }
}

impl SecrecyAdversary<Helios> for PermutationAdversary {
    fn choose_nc(&mut self, _pk: &ProvenKey, _rng: &mut dyn RngCore) -> u64 {
        self.nc
    }

    fn build_board(
        &mut self,
        oracle: &mut VoteOracle<'_, Helios>,
        _rng: &mut dyn RngCore,
    ) -> AdvResult<BulletinBoard<HeliosBallot>> {
        let b1 = oracle.query(self.v0, self.v1).map_err(|e| e.to_string())?;
        let mauled = maul_ballot(&b1, &self.chi);
        if !self.stealth {
            return Ok(BulletinBoard::from_ballots([mauled]));
        }
        let b2 = oracle.query(self.v1, self.v0).map_err(|e| e.to_string())?;
        Ok(BulletinBoard::from_ballots([mauled, b1, b2]))
    }

    fn guess(&mut self, outcome: &Outcome, _proof: Option<&HeliosTallyProof>, rng: &mut dyn RngCore) -> u8 {
        if *outcome == self.expected(0) {
            0
        } else if *outcome == self.expected(1) {
            1
        } else {
            coin(rng)
        }
    }
}

// ---- forged decryption proofs ----

/// A weak-mode proof that `ct'` decrypts to g^t, for any t. The forger knows
/// sk and the randomness r of c1 = g^r; it fixes the commitments, hashes
/// them, and only then chooses c2, which weak Fiat–Shamir never sees.
///
/// With w1, w2 random: t1 = g^w1, t2 = c1^w2, c = H(t1, t2), z = w1 + c·sk,
/// and c2 := g^(t + r(w1 − w2)/c) · pk^r. Returns the adjusted ciphertext
/// (c1, c2) and the proof.
pub fn forge_decryption_proof(
    kp: &KeyPair,
    r: &Scalar,
    ct: &Ciphertext,
    t: u64,
    context: &[u8],
    rng: &mut dyn RngCore,
) -> AdvResult<(Ciphertext, Transcript)> {
    let params = kp.params();
    require_prime_order(params)?;
    loop {
        let w1 = params.random_scalar(rng);
        let w2 = params.random_scalar(rng);
        if let Some(out) = forge_decryption_proof_with(kp, r, ct, t, &w1, &w2, context) {
            return Ok(out);
        }
    }
}

/// [`forge_decryption_proof`] with fixed nonces; `None` when the challenge
/// is zero.
pub fn forge_decryption_proof_with(
    kp: &KeyPair,
    r: &Scalar,
    ct: &Ciphertext,
    t: u64,
    w1: &Scalar,
    w2: &Scalar,
    context: &[u8],
) -> Option<(Ciphertext, Transcript)> {
    let params = kp.params();
    let coms = vec![params.pow_g(w1), params.pow(&ct.c1, w2)];
    let c = weak_challenge(params, &coms, context);
    let c_inv = params.inv_scalar(&c).ok()?;
    let shift = params.mul_scalars(&params.mul_scalars(r, &params.sub(w1, w2)), &c_inv);
    let exponent = params.add(&params.scalar_u64(t), &shift);
    let c2 = params.mul(&params.pow_g(&exponent), &kp.pk.pow(r));
    let z = params.add(w1, &params.mul_scalars(&c, &kp.sk));
    Some((
        Ciphertext { c1: ct.c1.clone(), c2 },
        Transcript {
            kind: ProofKind::EqDlog,
            commitments: coms,
            challenge: c,
            sub_challenges: vec![],
            responses: vec![z],
        },
    ))
}

// ---- soundness forgers ----

/// Weak-FS Helios forgery: a ballot encrypting 2 in a two-candidate
/// election whose disjunctive proofs verify.
///
/// All commitments are fixed first; the weak challenge c depends on nothing
/// else. Writing a_i = g^w_i, b_i = g^u_i and the ciphertext as E(m; r),
/// branch i verifies iff c_i = (x·w_i − u_i)/(m − i), where x is the secret
/// key. Summing, c0 + c1 = c is linear in x, so the forger solves for x and
/// only then publishes pk = g^x (with an honest proof of knowledge). The
/// same transcript serves for the product proof, since with one ciphertext
/// the product is that ciphertext and the weak context is constant.
///
/// The board is {forged, honest vote for candidate 2}; tallying it honestly
/// yields (2, 0) while the correct outcome is (0, 1).
#[derive(Debug, Clone, Copy, Default)]
pub struct HeliosForger;

const FORGED_PLAINTEXT: u64 = 2;

impl HeliosForger {
    fn forged_ballot(params: &GroupParams, rng: &mut dyn RngCore) -> Option<(KeyPair, HeliosBallot)> {
        let m = FORGED_PLAINTEXT;
        let inv_m = params.inv_scalar(&params.scalar_u64(m)).ok()?;
        let inv_m1 = params.inv_scalar(&params.scalar_u64(m - 1)).ok()?;
        let (w0, w1, u0, u1) = (
            params.random_scalar(rng),
            params.random_scalar(rng),
            params.random_scalar(rng),
            params.random_scalar(rng),
        );
        let coms = vec![params.pow_g(&w0), params.pow_g(&u0), params.pow_g(&w1), params.pow_g(&u1)];
        let c = weak_challenge(params, &coms, helios::BALLOT_CONTEXT);
        let coef = params.add(&params.mul_scalars(&w0, &inv_m), &params.mul_scalars(&w1, &inv_m1));
        let rhs = params.add(
            &c,
            &params.add(&params.mul_scalars(&u0, &inv_m), &params.mul_scalars(&u1, &inv_m1)),
        );
        let x = params.mul_scalars(&rhs, &params.inv_scalar(&coef).ok()?);
        if x.is_zero() {
            return None;
        }
        let kp = KeyPair::from_secret(params, x.clone());
        let r = params.random_scalar(rng);
        let ct = encrypt_exp(&kp.pk, m, &r);
        let c0 = params.mul_scalars(&params.sub(&params.mul_scalars(&x, &w0), &u0), &inv_m);
        let c1 = params.mul_scalars(&params.sub(&params.mul_scalars(&x, &w1), &u1), &inv_m1);
        debug_assert_eq!(params.add(&c0, &c1), c);
        let z0 = params.add(&w0, &params.mul_scalars(&c0, &r));
        let z1 = params.add(&w1, &params.mul_scalars(&c1, &r));
        let proof = Transcript {
            kind: ProofKind::Or,
            commitments: coms,
            challenge: c,
            sub_challenges: vec![c0, c1],
            responses: vec![z0, z1],
        };
        let ballot = HeliosBallot {
            nc: 2,
            cts: vec![ct],
            proofs: vec![proof.clone(), proof],
        };
        Some((kp, ballot))
    }
}

impl SoundnessAdversary<Helios> for HeliosForger {
    fn forge(&mut self, scheme: &Helios, level: SecurityLevel, rng: &mut dyn RngCore) -> AdvResult<SoundnessClaim<Helios>> {
        let params = gen_params(level);
        require_prime_order(&params)?;
        let nc = 2;
        let (kp, forged) = (0..32)
            .find_map(|_| Self::forged_ballot(&params, rng))
            .ok_or("no usable key after 32 attempts")?;
        let pk = ProvenKey::prove(&kp, FsMode::Weak, rng);
        let coins = Coins::draw(rng);
        let honest = scheme.vote_with_coins(&pk, nc, nc, &coins).map_err(|e| e.to_string())?;
        let bb = BulletinBoard::from_ballots([forged, honest.clone()]);

        // Tally as a weak-FS verifier would accept it: both ballots counted.
        let accepted: Vec<usize> = (0..bb.len()).collect();
        let k = accepted.len() as u64;
        let mut counts = Vec::new();
        let mut decryptions = Vec::new();
        for (j, sum) in column_sums(&params, &bb, &accepted, nc).iter().enumerate() {
            let m = decrypt_exp(&kp, sum, k).map_err(|e| e.to_string())?;
            let stmt = Statement::decryption(kp.pk.element(), sum, &params.encode_exponent(m));
            let ctx = helios::decrypt_context(FsMode::Weak, j);
            decryptions.push(sigma::prove_eq(&params, &kp.sk, &stmt, FsMode::Weak, &ctx, rng));
            counts.push(m);
        }
        let partial: u64 = counts.iter().sum();
        counts.push(k.checked_sub(partial).ok_or("column sums exceed ballot count")?);
        Ok(SoundnessClaim {
            pk,
            bb,
            nc,
            outcome: Outcome(counts),
            proof: HeliosTallyProof { accepted, decryptions },
            witnesses: vec![Witness {
                ballot: honest,
                vote: nc,
                coins,
            }],
        })
    }
}

/// Weak-FS mixnet forgery: an honest board whose tally claims one mixed
/// ballot decrypts to g^0, which is not a candidate, so the claimed outcome
/// drops a vote.
///
/// The decryption proof for the target position is fixed first
/// (t1 = g^w1, t2 = g^u, c = H(t1, t2)); it verifies for a mixed ciphertext
/// (g^R, g^m·pk^R) iff R = (u + c·m)/w1. The mixer picks its re-encryption
/// randomness so the target output has exactly that R; the shuffle proof is
/// then honest.
#[derive(Debug, Clone, Copy)]
pub struct MixnetForger {
    pub ballots: usize,
}

impl Default for MixnetForger {
    fn default() -> Self {
        MixnetForger { ballots: 3 }
    }
}

impl SoundnessAdversary<HeliosMixnet> for MixnetForger {
    fn forge(
        &mut self,
        scheme: &HeliosMixnet,
        level: SecurityLevel,
        rng: &mut dyn RngCore,
    ) -> AdvResult<SoundnessClaim<HeliosMixnet>> {
        let params = gen_params(level);
        require_prime_order(&params)?;
        if self.ballots == 0 {
            return Err("need at least one ballot".into());
        }
        let nc = 2;
        let kp = keygen(&params, rng);
        let pk = ProvenKey::prove(&kp, FsMode::Weak, rng);
        let mut witnesses = Vec::new();
        let mut rs_in = Vec::new();
        let mut bb = BulletinBoard::new();
        while bb.len() < self.ballots {
            let v = rng.gen_range(1..=nc);
            let coins = Coins::draw(rng);
            let b = scheme.vote_with_coins(&pk, v, nc, &coins).map_err(|e| e.to_string())?;
            if bb.insert(b.clone()).is_some() {
                rs_in.push(ballot_randomness(&params, &coins));
                witnesses.push(Witness { ballot: b, vote: v, coins });
            }
        }
        let n = bb.len();
        let accepted: Vec<usize> = (0..n).collect();
        let inputs: Vec<Ciphertext> = bb.iter().map(|b| b.ct.clone()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let target = rng.gen_range(0..n);

        let (w1, u) = (params.random_nonzero_scalar(rng), params.random_scalar(rng));
        let coms = vec![params.pow_g(&w1), params.pow_g(&u)];
        let c = weak_challenge(&params, &coms, &mixnet::decrypt_context(FsMode::Weak, target));
        let m = params.scalar_u64(witnesses[perm[target]].vote);
        let big_r = params.mul_scalars(
            &params.add(&u, &params.mul_scalars(&c, &m)),
            &params.inv_scalar(&w1).map_err(|e| e.to_string())?,
        );
        let mut rs: Vec<Scalar> = (0..n).map(|_| params.random_scalar(rng)).collect();
        rs[target] = params.sub(&big_r, &rs_in[perm[target]]);
        let (mixed, shuffle) = mix_and_prove_with(&pk.key, &inputs, &perm, &rs, scheme.rounds, rng);

        let mut decryptions = Vec::with_capacity(n);
        for (j, ct) in mixed.iter().enumerate() {
            if j == target {
                let z = params.add(&w1, &params.mul_scalars(&c, &kp.sk));
                decryptions.push(Decryption {
                    plaintext: params.identity(),
                    proof: Transcript {
                        kind: ProofKind::EqDlog,
                        commitments: coms.clone(),
                        challenge: c.clone(),
                        sub_challenges: vec![],
                        responses: vec![z],
                    },
                });
            } else {
                let pt = decrypt_element(&kp, ct);
                let stmt = Statement::decryption(kp.pk.element(), ct, &pt);
                let ctx = mixnet::decrypt_context(FsMode::Weak, j);
                let proof = sigma::prove_eq(&params, &kp.sk, &stmt, FsMode::Weak, &ctx, rng);
                decryptions.push(Decryption { plaintext: pt, proof });
            }
        }
        let (outcome, ill_formed) = count_plaintexts(&params, &decryptions, nc);
        Ok(SoundnessClaim {
            pk,
            bb,
            nc,
            outcome,
            proof: MixnetTallyProof {
                accepted,
                mixed,
                shuffle,
                decryptions,
                ill_formed,
            },
            witnesses,
        })
    }
}

/// Posts an honest ballot and a copy sharing its ciphertexts (same
/// encryption coins, fresh proof coins), witnesses both and claims the
/// honest tally. Weeding drops the copy, so the tally omits a vote that
/// the correct outcome counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct CopyAdversary;

impl SoundnessAdversary<Helios> for CopyAdversary {
    fn forge(&mut self, scheme: &Helios, level: SecurityLevel, rng: &mut dyn RngCore) -> AdvResult<SoundnessClaim<Helios>> {
        let setup = scheme.setup(level, rng);
        let nc = 2;
        let v = rng.gen_range(1..=nc);
        let coins = Coins::draw(rng);
        let copy_coins = Coins {
            enc: coins.enc,
            proof: Seed::random(rng),
        };
        let b = scheme.vote_with_coins(&setup.pk, v, nc, &coins).map_err(|e| e.to_string())?;
        let copy = scheme.vote_with_coins(&setup.pk, v, nc, &copy_coins).map_err(|e| e.to_string())?;
        let bb = BulletinBoard::from_ballots([b.clone(), copy.clone()]);
        let (outcome, proof) = scheme.tally(&setup.sk, &bb, nc, rng).map_err(|e| e.to_string())?;
        Ok(SoundnessClaim {
            pk: setup.pk,
            bb,
            nc,
            outcome,
            proof,
            witnesses: vec![
                Witness { ballot: b, vote: v, coins },
                Witness {
                    ballot: copy,
                    vote: v,
                    coins: copy_coins,
                },
            ],
        })
    }
}

// ---- malleation against Enc2Vote and the encryption ----

fn shift_by_one<E: AsymmetricScheme>(enc: &E, pk: &PublicKey, ct: &E::Ciphertext, rng: &mut dyn RngCore) -> E::Ciphertext {
    let params = pk.params();
    let one = encrypt_exp(pk, 1, &params.random_scalar(rng));
    enc.with_inner(ct, hom_combine(params, enc.inner(ct), &one))
}

/// IND-CVA: challenge is a vote for 1 or 2 out of 3; posts b ⊗ E(1), a vote
/// for 2 or 3, and reads it off the outcome.
#[derive(Debug, Clone, Copy)]
pub struct CvaMauler<E> {
    enc: E,
}

pub fn make_cva_mauler<E: AsymmetricScheme>(enc: E) -> CvaMauler<E> {
    CvaMauler { enc }
}

impl<E: AsymmetricScheme> CvaAdversary<Enc2Vote<E>> for CvaMauler<E> {
    fn choose(&mut self, _pk: &PublicKey, _rng: &mut dyn RngCore) -> (u64, u64, u64) {
        (1, 2, 3)
    }

    fn build_board(
        &mut self,
        pk: &PublicKey,
        challenge: &E::Ciphertext,
        rng: &mut dyn RngCore,
    ) -> AdvResult<BulletinBoard<E::Ciphertext>> {
        Ok(BulletinBoard::from_ballots([shift_by_one(&self.enc, pk, challenge, rng)]))
    }

    fn guess(&mut self, outcome: &Outcome, rng: &mut dyn RngCore) -> u8 {
        if *outcome == Outcome::count(&[2], 3) {
            0
        } else if *outcome == Outcome::count(&[3], 3) {
            1
        } else {
            coin(rng)
        }
    }
}

/// IND-PA0: messages 1 and 2; queries c ⊗ E(1) and reads m_β + 1.
#[derive(Debug, Clone, Copy)]
pub struct Pa0Mauler<E> {
    enc: E,
}

pub fn make_pa0_mauler<E: AsymmetricScheme>(enc: E) -> Pa0Mauler<E> {
    Pa0Mauler { enc }
}

impl<E: AsymmetricScheme> Pa0Adversary<E> for Pa0Mauler<E> {
    fn choose(&mut self, _pk: &PublicKey, _space: MessageSpace, _rng: &mut dyn RngCore) -> (u64, u64) {
        (1, 2)
    }

    fn parallel(
        &mut self,
        pk: &PublicKey,
        challenge: &E::Ciphertext,
        rng: &mut dyn RngCore,
    ) -> AdvResult<Vec<E::Ciphertext>> {
        Ok(vec![shift_by_one(&self.enc, pk, challenge, rng)])
    }

    fn guess(&mut self, plaintexts: &[Option<u64>], rng: &mut dyn RngCore) -> u8 {
        match plaintexts.first() {
            Some(Some(2)) => 0,
            Some(Some(3)) => 1,
            _ => coin(rng),
        }
    }
}

// ---- baselines ----

/// Ignores everything and flips a coin. In the secrecy game it posts a
/// balanced pair of oracle ballots.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoinFlipGuesser;

impl<S: ElectionScheme> SecrecyAdversary<S> for CoinFlipGuesser {
    fn choose_nc(&mut self, _pk: &S::PublicKey, _rng: &mut dyn RngCore) -> u64 {
        2
    }

    fn build_board(
        &mut self,
        oracle: &mut VoteOracle<'_, S>,
        _rng: &mut dyn RngCore,
    ) -> AdvResult<BulletinBoard<S::Ballot>> {
        let a = oracle.query(1, 2).map_err(|e| e.to_string())?;
        let b = oracle.query(2, 1).map_err(|e| e.to_string())?;
        Ok(BulletinBoard::from_ballots([a, b]))
    }

    fn guess(&mut self, _o: &Outcome, _p: Option<&S::TallyProof>, rng: &mut dyn RngCore) -> u8 {
        coin(rng)
    }
}

impl<S: ElectionScheme> CvaAdversary<S> for CoinFlipGuesser {
    fn choose(&mut self, _pk: &S::PublicKey, _rng: &mut dyn RngCore) -> (u64, u64, u64) {
        (1, 2, 2)
    }

    fn build_board(
        &mut self,
        _pk: &S::PublicKey,
        _challenge: &S::Ballot,
        _rng: &mut dyn RngCore,
    ) -> AdvResult<BulletinBoard<S::Ballot>> {
        Ok(BulletinBoard::new())
    }

    fn guess(&mut self, _o: &Outcome, rng: &mut dyn RngCore) -> u8 {
        coin(rng)
    }
}

impl<E: AsymmetricScheme> Pa0Adversary<E> for CoinFlipGuesser {
    fn choose(&mut self, _pk: &PublicKey, _space: MessageSpace, _rng: &mut dyn RngCore) -> (u64, u64) {
        (0, 1)
    }

    fn parallel(
        &mut self,
        _pk: &PublicKey,
        _challenge: &E::Ciphertext,
        _rng: &mut dyn RngCore,
    ) -> AdvResult<Vec<E::Ciphertext>> {
        Ok(vec![])
    }

    fn guess(&mut self, _m: &[Option<u64>], rng: &mut dyn RngCore) -> u8 {
        coin(rng)
    }
}

/// Honestly generated key, random nc and the same vote twice: the best an
/// adversary can do without controlling the game's coins.
#[derive(Debug, Clone, Copy, Default)]
pub struct HonestKeySampler;

impl<S: ElectionScheme> IvAdversary<S> for HonestKeySampler {
    fn choose(&mut self, scheme: &S, level: SecurityLevel, rng: &mut dyn RngCore) -> AdvResult<(S::PublicKey, u64, u64, u64)> {
        let setup = scheme.setup(level, rng);
        let nc = rng.gen_range(2..=5);
        let v = rng.gen_range(1..=nc);
        Ok((setup.pk, nc, v, v))
    }
}

/// Runs an honest election and claims its true outcome.
#[derive(Debug, Clone, Copy, Default)]
pub struct HonestTally;

impl<S: ElectionScheme> SoundnessAdversary<S> for HonestTally {
    fn forge(&mut self, scheme: &S, level: SecurityLevel, rng: &mut dyn RngCore) -> AdvResult<SoundnessClaim<S>> {
        let setup = scheme.setup(level, rng);
        let nc = rng.gen_range(2..=4);
        let mut bb = BulletinBoard::new();
        let mut witnesses = Vec::new();
        for _ in 0..rng.gen_range(0..=6) {
            let v = rng.gen_range(1..=nc);
            let coins = Coins::draw(rng);
            let b = scheme.vote_with_coins(&setup.pk, v, nc, &coins).map_err(|e| e.to_string())?;
            if bb.insert(b.clone()).is_some() {
                witnesses.push(Witness { ballot: b, vote: v, coins });
            }
        }
        let (outcome, proof) = scheme.tally(&setup.sk, &bb, nc, rng).map_err(|e| e.to_string())?;
        Ok(SoundnessClaim {
            pk: setup.pk,
            bb,
            nc,
            outcome,
            proof,
            witnesses,
        })
    }
}

/// An honest board of random size and candidate count.
#[derive(Debug, Clone, Copy, Default)]
pub struct HonestBoard;

impl<S: ElectionScheme> CompletenessAdversary<S> for HonestBoard {
    fn build(&mut self, scheme: &S, pk: &S::PublicKey, rng: &mut dyn RngCore) -> AdvResult<(BulletinBoard<S::Ballot>, u64)> {
        let nc = rng.gen_range(1..=4);
        let mut bb = BulletinBoard::new();
        for _ in 0..rng.gen_range(0..=6) {
            let v = rng.gen_range(1..=nc);
            bb.insert(scheme.vote(pk, v, nc, rng).map_err(|e| e.to_string())?);
        }
        Ok((bb, nc))
    }
}

// ---- registry ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameKind {
    BallotSecrecy,
    IndCva,
    IndPa0,
    Soundness,
    Completeness,
    IndividualVerifiability,
}

impl GameKind {
    pub const ALL: [GameKind; 6] = [
        GameKind::BallotSecrecy,
        GameKind::IndCva,
        GameKind::IndPa0,
        GameKind::Soundness,
        GameKind::Completeness,
        GameKind::IndividualVerifiability,
    ];

    /// Name of the registry entry that plays this game with no attack.
    pub fn baseline(&self) -> &'static str {
        match self {
            GameKind::BallotSecrecy => "guesser",
            GameKind::IndCva => "cva-guesser",
            GameKind::IndPa0 => "pa0-guesser",
            GameKind::Soundness => "honest-tally",
            GameKind::Completeness => "honest-board",
            GameKind::IndividualVerifiability => "honest-iv",
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GameKind::BallotSecrecy => "ballot-secrecy",
            GameKind::IndCva => "ind-cva",
            GameKind::IndPa0 => "ind-pa0",
            GameKind::Soundness => "soundness",
            GameKind::Completeness => "completeness",
            GameKind::IndividualVerifiability => "individual-verifiability",
        }
    }
}

impl FromStr for GameKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GameKind::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| format!("unknown game `{s}`"))
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Expected win-rate class of an attack against a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    /// The 95% interval contains 1/2.
    Chance,
    /// Rate at least 0.99.
    Overwhelming,
    Always,
    Never,
}

impl Expected {
    pub fn holds(&self, s: &TrialStats) -> bool {
        match self {
            Expected::Chance => s.consistent_with(0.5),
            Expected::Overwhelming => s.rate >= 0.99,
            Expected::Always => s.wins == s.trials,
            Expected::Never => s.wins == 0,
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Chance => "chance (CI ∋ 0.5)",
            Expected::Overwhelming => "rate ≥ 0.99",
            Expected::Always => "every trial",
            Expected::Never => "no trial",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AttackSpec {
    pub name: &'static str,
    pub target: Target,
    pub game: GameKind,
    pub expected: Expected,
}

const fn spec(name: &'static str, scheme: SchemeKind, fs: FsMode, game: GameKind, expected: Expected) -> AttackSpec {
    AttackSpec {
        name,
        target: Target::new(scheme, fs),
        game,
        expected,
    }
}

use FsMode::{Strong, Weak};
use SchemeKind::{Enc2vote, Helios as HeliosKind, HeliosMixnet as MixnetKind};

/// Which attacks break which targets. For Enc2Vote, weak means plain
/// ElGamal and strong the proof-carrying encryption.
pub const ATTACKS: &[AttackSpec] = &[
    spec("permutation", HeliosKind, Weak, GameKind::BallotSecrecy, Expected::Overwhelming),
    spec("permutation", HeliosKind, Strong, GameKind::BallotSecrecy, Expected::Chance),
    spec("permutation-stealth", HeliosKind, Weak, GameKind::BallotSecrecy, Expected::Overwhelming),
    spec("permutation-stealth", HeliosKind, Strong, GameKind::BallotSecrecy, Expected::Chance),
    spec("helios-forger", HeliosKind, Weak, GameKind::Soundness, Expected::Always),
    spec("helios-forger", HeliosKind, Strong, GameKind::Soundness, Expected::Never),
    spec("mixnet-forger", MixnetKind, Weak, GameKind::Soundness, Expected::Always),
    spec("mixnet-forger", MixnetKind, Strong, GameKind::Soundness, Expected::Never),
    spec("copy", HeliosKind, Strong, GameKind::Soundness, Expected::Always),
    spec("copy", HeliosKind, Weak, GameKind::Soundness, Expected::Never),
    spec("cva-maul", Enc2vote, Weak, GameKind::IndCva, Expected::Overwhelming),
    spec("cva-maul", Enc2vote, Strong, GameKind::IndCva, Expected::Chance),
    spec("pa0-maul", Enc2vote, Weak, GameKind::IndPa0, Expected::Overwhelming),
    spec("pa0-maul", Enc2vote, Strong, GameKind::IndPa0, Expected::Chance),
    spec("guesser", Enc2vote, Weak, GameKind::BallotSecrecy, Expected::Chance),
    spec("guesser", Enc2vote, Strong, GameKind::BallotSecrecy, Expected::Chance),
    spec("guesser", HeliosKind, Weak, GameKind::BallotSecrecy, Expected::Chance),
    spec("guesser", HeliosKind, Strong, GameKind::BallotSecrecy, Expected::Chance),
    spec("guesser", MixnetKind, Weak, GameKind::BallotSecrecy, Expected::Chance),
    spec("guesser", MixnetKind, Strong, GameKind::BallotSecrecy, Expected::Chance),
    spec("cva-guesser", Enc2vote, Weak, GameKind::IndCva, Expected::Chance),
    spec("cva-guesser", Enc2vote, Strong, GameKind::IndCva, Expected::Chance),
    spec("cva-guesser", HeliosKind, Weak, GameKind::IndCva, Expected::Chance),
    spec("cva-guesser", HeliosKind, Strong, GameKind::IndCva, Expected::Chance),
    spec("cva-guesser", MixnetKind, Weak, GameKind::IndCva, Expected::Chance),
    spec("cva-guesser", MixnetKind, Strong, GameKind::IndCva, Expected::Chance),
    spec("pa0-guesser", Enc2vote, Weak, GameKind::IndPa0, Expected::Chance),
    spec("pa0-guesser", Enc2vote, Strong, GameKind::IndPa0, Expected::Chance),
    spec("honest-tally", Enc2vote, Weak, GameKind::Soundness, Expected::Never),
    spec("honest-tally", Enc2vote, Strong, GameKind::Soundness, Expected::Never),
    spec("honest-tally", HeliosKind, Weak, GameKind::Soundness, Expected::Never),
    spec("honest-tally", HeliosKind, Strong, GameKind::Soundness, Expected::Never),
    spec("honest-tally", MixnetKind, Weak, GameKind::Soundness, Expected::Never),
    spec("honest-tally", MixnetKind, Strong, GameKind::Soundness, Expected::Never),
    spec("honest-board", Enc2vote, Weak, GameKind::Completeness, Expected::Never),
    spec("honest-board", Enc2vote, Strong, GameKind::Completeness, Expected::Never),
    spec("honest-board", HeliosKind, Weak, GameKind::Completeness, Expected::Never),
    spec("honest-board", HeliosKind, Strong, GameKind::Completeness, Expected::Never),
    spec("honest-board", MixnetKind, Weak, GameKind::Completeness, Expected::Never),
    spec("honest-board", MixnetKind, Strong, GameKind::Completeness, Expected::Never),
    spec("honest-iv", Enc2vote, Weak, GameKind::IndividualVerifiability, Expected::Never),
    spec("honest-iv", Enc2vote, Strong, GameKind::IndividualVerifiability, Expected::Never),
    spec("honest-iv", HeliosKind, Weak, GameKind::IndividualVerifiability, Expected::Never),
    spec("honest-iv", HeliosKind, Strong, GameKind::IndividualVerifiability, Expected::Never),
    spec("honest-iv", MixnetKind, Weak, GameKind::IndividualVerifiability, Expected::Never),
    spec("honest-iv", MixnetKind, Strong, GameKind::IndividualVerifiability, Expected::Never),
];

pub fn attack_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = ATTACKS.iter().map(|a| a.name).collect();
    names.dedup();
    names
}

pub fn find_attack(name: &str, target: Target) -> Option<&'static AttackSpec> {
    ATTACKS.iter().find(|a| a.name == name && a.target == target)
}

pub fn attacks_named(name: &str) -> Vec<&'static AttackSpec> {
    ATTACKS.iter().filter(|a| a.name == name).collect()
}

pub type Sink<'a> = &'a mut dyn FnMut(u64, &GameResult);

/// Mixnet used by the attack suite.
pub fn mixnet_for(fs: FsMode) -> HeliosMixnet {
    make_helios_mixnet(fs, DEFAULT_ROUNDS)
}

pub fn helios_for(fs: FsMode) -> Helios {
    make_helios(HeliosVariant::preset(fs))
}

/// Binds `$s` to the concrete scheme named by `$t` and evaluates `$body`
/// once per scheme type.
macro_rules! with_scheme {
    ($t:expr, $s:ident => $body:expr) => {
        match ($t.scheme, $t.variant) {
            (Enc2vote, Weak) => {
                let $s = &make_enc2vote(make_plain_elgamal());
                $body
            }
            (Enc2vote, Strong) => {
                let $s = &make_enc2vote(make_nm_elgamal());
                $body
            }
            (HeliosKind, fs) => {
                let $s = &helios_for(fs);
                $body
            }
            (MixnetKind, fs) => {
                let $s = &mixnet_for(fs);
                $body
            }
        }
    };
}

/// As [`with_scheme!`] for the encryption underlying an Enc2Vote target.
macro_rules! with_encryption {
    ($fs:expr, $e:ident => $body:expr) => {
        match $fs {
            Weak => {
                let $e = make_plain_elgamal();
                $body
            }
            Strong => {
                let $e = make_nm_elgamal();
                $body
            }
        }
    };
}

/// Runs `n` trials of an attack against its target, handing each result to
/// `sink`.
pub fn run_attack(spec: &AttackSpec, level: SecurityLevel, n: u64, seed: &Seed, sink: Sink<'_>) -> AdvResult<TrialStats> {
    let t = spec.target;
    let fs = t.variant;
    macro_rules! trials {
        ($play:expr) => {
            run_trials_with(n, seed, $play, sink)
        };
    }
    let secrecy = SecrecyMode::Literal;
    let stats = match (spec.name, t.scheme) {
        ("permutation", HeliosKind) => {
            let s = helios_for(fs);
            trials!(|rng| play_ballot_secrecy(&s, &mut make_secrecy_permutation_adversary(3, false), level, secrecy, rng))
        }
        ("permutation-stealth", HeliosKind) => {
            let s = helios_for(fs);
            trials!(|rng| play_ballot_secrecy(&s, &mut make_secrecy_permutation_adversary(3, true), level, secrecy, rng))
        }
        ("helios-forger", HeliosKind) => {
            let s = helios_for(fs);
            trials!(|rng| play_soundness(&s, &mut HeliosForger, level, rng))
        }
        ("mixnet-forger", MixnetKind) => {
            let s = mixnet_for(fs);
            trials!(|rng| play_soundness(&s, &mut MixnetForger::default(), level, rng))
        }
        ("copy", HeliosKind) => {
            let s = helios_for(fs);
            trials!(|rng| play_soundness(&s, &mut CopyAdversary, level, rng))
        }
        ("cva-maul", Enc2vote) => with_encryption!(fs, e => {
            let s = make_enc2vote(e);
            trials!(|rng| play_ind_cva(&s, &mut make_cva_mauler(e), level, rng))
        }),
        ("pa0-maul", Enc2vote) => with_encryption!(fs, e => {
            trials!(|rng| play_ind_pa0(&e, &mut make_pa0_mauler(e), level, rng))
        }),
        ("pa0-guesser", Enc2vote) => with_encryption!(fs, e => {
            trials!(|rng| play_ind_pa0(&e, &mut CoinFlipGuesser, level, rng))
        }),
        ("guesser", _) => with_scheme!(t, s => {
            trials!(|rng| play_ballot_secrecy(s, &mut CoinFlipGuesser, level, secrecy, rng))
        }),
        ("cva-guesser", _) => with_scheme!(t, s => trials!(|rng| play_ind_cva(s, &mut CoinFlipGuesser, level, rng))),
        ("honest-tally", _) => with_scheme!(t, s => trials!(|rng| play_soundness(s, &mut HonestTally, level, rng))),
        ("honest-board", _) => with_scheme!(t, s => trials!(|rng| play_completeness(s, &mut HonestBoard, level, rng))),
        ("honest-iv", _) => with_scheme!(t, s => {
            trials!(|rng| play_individual_verifiability(s, &mut HonestKeySampler, level, rng))
        }),
        (name, scheme) => return Err(format!("no attack `{name}` against {scheme}")),
    };
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::judge_soundness;
    use crate::rng::seeded;

    const L: SecurityLevel = SecurityLevel::Test;

    #[test]
    fn maul_relabels_and_identity_is_noop() {
        let scheme = helios_for(Weak);
        let mut rng = seeded(1);
        let s = scheme.setup(L, &mut rng);
        let b = scheme.vote(&s.pk, 1, 3, &mut rng).unwrap();
        assert_eq!(maul_ballot(&b, &[1, 2]), b);
        let m = maul_ballot(&b, &[2, 1]);
        assert!(helios::ballot_is_valid(&s.pk.key, &m, 3, Weak));
        let bb = BulletinBoard::from_ballots([m.clone()]);
        let (out, _) = scheme.tally(&s.sk, &bb, 3, &mut rng).unwrap();
        assert_eq!(out.0, vec![0, 1, 0]);
        assert_eq!(m.combined(s.pk.params()), b.combined(s.pk.params()));

        let strong = helios_for(Strong);
        let s = strong.setup(L, &mut rng);
        let b = strong.vote(&s.pk, 1, 3, &mut rng).unwrap();
        assert!(!helios::ballot_is_valid(&s.pk.key, &maul_ballot(&b, &[2, 1]), 3, Strong));
    }

    #[test]
    #[should_panic(expected = "not a permutation")]
    fn maul_rejects_non_permutation() {
        let scheme = helios_for(Weak);
        let mut rng = seeded(2);
        let s = scheme.setup(L, &mut rng);
        let b = scheme.vote(&s.pk, 1, 3, &mut rng).unwrap();
        maul_ballot(&b, &[1, 1]);
    }

    #[test]
    fn forged_decryption_verifies_only_weakly() {
        let params = gen_params(L);
        let mut rng = seeded(3);
        let ctx = b"ctx";
        for _ in 0..50 {
            let kp = keygen(&params, &mut rng);
            let r = params.random_scalar(&mut rng);
            let ct = encrypt_exp(&kp.pk, 1, &r);
            let t = rng.gen_range(2..1000);
            let (ct2, pf) = forge_decryption_proof(&kp, &r, &ct, t, ctx, &mut rng).unwrap();
            let stmt = Statement::decryption(kp.pk.element(), &ct2, &params.encode_exponent(t));
            assert!(sigma::check_eq_equations(&params, &stmt, &pf));
            assert!(sigma::verify_eq(&params, &stmt, &pf, Weak, ctx));
            assert!(!sigma::verify_eq(&params, &stmt, &pf, Strong, ctx));
        }
    }

    #[test]
    fn forged_decryption_with_equal_nonces_is_honest() {
        let params = gen_params(L);
        let mut rng = seeded(4);
        let kp = keygen(&params, &mut rng);
        let r = params.random_scalar(&mut rng);
        let ct = encrypt_exp(&kp.pk, 5, &r);
        let w = params.random_scalar(&mut rng);
        let (ct2, _) = forge_decryption_proof_with(&kp, &r, &ct, 5, &w, &w, b"").unwrap();
        assert_eq!(ct2, ct);
    }

    #[test]
    fn forgery_needs_prime_order() {
        let params = gen_params(SecurityLevel::Toy);
        let mut rng = seeded(5);
        let kp = keygen(&params, &mut rng);
        let r = params.scalar_u64(3);
        let ct = encrypt_exp(&kp.pk, 1, &r);
        assert!(forge_decryption_proof(&kp, &r, &ct, 2, b"", &mut rng).is_err());
        assert!(HeliosForger.forge(&helios_for(Weak), SecurityLevel::Toy, &mut rng).is_err());
    }

    #[test]
    fn helios_forger_claims_two_zero() {
        let mut rng = seeded(6);
        let weak = helios_for(Weak);
        let claim = HeliosForger.forge(&weak, L, &mut rng).unwrap();
        assert_eq!(claim.outcome.0, vec![2, 0]);
        let r = judge_soundness(&weak, &claim);
        assert!(r.won, "{r:?}");

        let strong = helios_for(Strong);
        let claim = HeliosForger.forge(&strong, L, &mut rng).unwrap();
        let r = judge_soundness(&strong, &claim);
        assert_eq!(r.failed(), Some("verify-accepts"));
        let report = strong.audit(&claim.pk, &claim.bb, claim.nc, &claim.outcome, &claim.proof);
        assert_eq!(report.first_failure().unwrap().name, "key-proof");
    }

    #[test]
    fn mixnet_forger_drops_a_vote() {
        let mut rng = seeded(7);
        let weak = make_helios_mixnet(Weak, 8);
        let claim = MixnetForger::default().forge(&weak, L, &mut rng).unwrap();
        assert_eq!(claim.outcome.total(), 2);
        assert_eq!(claim.proof.ill_formed.len(), 1);
        let r = judge_soundness(&weak, &claim);
        assert!(r.won, "{r:?}");
        let strong = make_helios_mixnet(Strong, 8);
        let claim = MixnetForger::default().forge(&strong, L, &mut rng).unwrap();
        assert!(!judge_soundness(&strong, &claim).won);
    }

    #[test]
    fn copy_breaks_weeding_only() {
        let mut rng = seeded(8);
        for _ in 0..5 {
            let strong = helios_for(Strong);
            let r = play_soundness(&strong, &mut CopyAdversary, L, &mut rng);
            assert!(r.won, "{r:?}");
            let weak = helios_for(Weak);
            let r = play_soundness(&weak, &mut CopyAdversary, L, &mut rng);
            assert_eq!(r.failed(), Some("outcome-incorrect"));
        }
    }

    #[test]
    fn copy_of_invalid_ballot_counts_nowhere() {
        let scheme = helios_for(Strong);
        let mut rng = seeded(9);
        let s = scheme.setup(L, &mut rng);
        let mut b = scheme.vote(&s.pk, 1, 2, &mut rng).unwrap();
        b.proofs[0].responses[0] = s.pk.params().add(&b.proofs[0].responses[0], &s.pk.params().scalar_u64(1));
        let mut copy = b.clone();
        copy.proofs[1] = b.proofs[0].clone();
        let bb = BulletinBoard::from_ballots([b, copy]);
        let (out, proof) = scheme.tally(&s.sk, &bb, 2, &mut rng).unwrap();
        assert_eq!(out.0, vec![0, 0]);
        assert!(proof.accepted.is_empty());
    }

    #[test]
    fn maulers_split_on_malleability() {
        let mut rng = seeded(10);
        for _ in 0..20 {
            let plain = make_enc2vote(make_plain_elgamal());
            assert!(play_ind_cva(&plain, &mut make_cva_mauler(make_plain_elgamal()), L, &mut rng).won);
            assert!(play_ind_pa0(&make_plain_elgamal(), &mut make_pa0_mauler(make_plain_elgamal()), L, &mut rng).won);
        }
        let nm = make_nm_elgamal();
        let r = play_ind_pa0(&nm, &mut make_pa0_mauler(nm), L, &mut rng);
        assert_eq!(r.holds("challenge-not-queried"), Some(true));
    }

    #[test]
    fn honest_iv_never_collides() {
        let mut rng = seeded(11);
        for _ in 0..50 {
            let r = play_individual_verifiability(&helios_for(Strong), &mut HonestKeySampler, L, &mut rng);
            assert!(!r.won);
            assert_eq!(r.holds("first-not-bottom"), Some(true));
        }
    }

    #[test]
    fn completeness_of_helios_with_garbage() {
        struct Garbage;
        impl crate::games::CompletenessAdversary<Helios> for Garbage {
            fn build(
                &mut self,
                scheme: &Helios,
                pk: &ProvenKey,
                rng: &mut dyn RngCore,
            ) -> AdvResult<(BulletinBoard<HeliosBallot>, u64)> {
                let good = scheme.vote(pk, 2, 3, rng).unwrap();
                let mut bad = good.clone();
                bad.cts.pop();
                let mut junk = good.clone();
                junk.cts[0].c1 = GroupElement::from_raw(0u32.into());
                Ok((BulletinBoard::from_ballots([good, bad, junk]), 3))
            }
        }
        let mut rng = seeded(12);
        for fs in [Weak, Strong] {
            let r = play_completeness(&helios_for(fs), &mut Garbage, L, &mut rng);
            assert!(!r.won, "{r:?}");
        }
    }

    #[test]
    fn registry_is_consistent() {
        for g in GameKind::ALL {
            assert_eq!(g.as_str().parse::<GameKind>().unwrap(), g);
            assert!(ATTACKS.iter().any(|a| a.name == g.baseline() && a.game == g));
        }
        for a in ATTACKS {
            assert_eq!(find_attack(a.name, a.target), Some(a));
        }
        assert!(attack_names().contains(&"copy"));
        let bogus = spec("copy", Enc2vote, Weak, GameKind::Soundness, Expected::Never);
        assert!(run_attack(&bogus, L, 1, &Seed::from_u64(0), &mut |_, _| {}).is_err());
    }

    #[test]
    fn small_registry_runs_match_expectations() {
        // Cheap entries only; the full matrix lives in the acceptance suite.
        for (name, n) in [
            ("helios-forger", 5),
            ("copy", 5),
            ("pa0-maul", 40),
            ("honest-tally", 3),
            ("honest-board", 3),
            ("honest-iv", 3),
        ] {
            for a in attacks_named(name) {
                let s = run_attack(a, L, n, &Seed::from_u64(42), &mut |_, r| assert!(r.is_consistent())).unwrap();
                if a.expected != Expected::Chance {
                    assert!(a.expected.holds(&s), "{} vs {}: {s}", a.name, a.target);
                }
            }
        }
    }
}
