//! The election-scheme interface (Setup, Vote, Tally, Verify), the bulletin
//! board, Enc2Vote, and the predicates the games evaluate: the correct
//! outcome of a board and whether a board is balanced.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::codec::CanonicalBytes;
use crate::elgamal::{AsymmetricScheme, ElGamalError, KeyPair, MessageSpace, PublicKey};
use crate::group::SecurityLevel;
use crate::rng::Coins;

/// Maximum board size accepted by every scheme.
pub const MAX_BALLOTS: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("vote {v} is not a candidate in 1..={nc}")]
    InvalidVote { v: u64, nc: u64 },
    #[error("{nc} candidates exceed the maximum of {mc}")]
    TooManyCandidates { nc: u64, mc: u64 },
    #[error("{nb} ballots exceed the maximum of {mb}")]
    TooManyBallots { nb: u64, mb: u64 },
    #[error("witness for board ballot {0} does not reproduce it")]
    WitnessMismatch(usize),
    #[error("ill-formed board: {0}")]
    IllFormedBoard(String),
    #[error(transparent)]
    Encryption(#[from] ElGamalError),
}

/// Per-candidate counts; index i holds candidate i + 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Outcome(pub Vec<u64>);

impl Outcome {
    pub fn zeros(nc: u64) -> Self {
        Outcome(vec![0; nc as usize])
    }

    /// Plaintext count of `votes` over candidates 1..=nc; other values are
    /// ignored.
    pub fn count(votes: &[u64], nc: u64) -> Self {
        let mut out = Outcome::zeros(nc);
        for &v in votes {
            if (1..=nc).contains(&v) {
                out.0[(v - 1) as usize] += 1;
            }
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn get(&self, candidate: u64) -> u64 {
        candidate
            .checked_sub(1)
            .and_then(|i| self.0.get(i as usize))
            .copied()
            .unwrap_or(0)
    }
}

/// An insertion-ordered set of ballots. Two ballots are the same when their
/// canonical encodings are byte-identical.
#[derive(Debug, Clone)]
pub struct BulletinBoard<B> {
    ballots: Vec<B>,
    seen: HashSet<Vec<u8>>,
}

impl<B> Default for BulletinBoard<B> {
    fn default() -> Self {
        BulletinBoard {
            ballots: Vec::new(),
            seen: HashSet::new(),
        }
    }
}

impl<B: CanonicalBytes> BulletinBoard<B> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends and returns the new index, or `None` for a duplicate.
    pub fn insert(&mut self, b: B) -> Option<usize> {
        if !self.seen.insert(b.canonical_bytes()) {
            return None;
        }
        self.ballots.push(b);
        Some(self.ballots.len() - 1)
    }

    pub fn contains(&self, b: &B) -> bool {
        self.seen.contains(&b.canonical_bytes())
    }

    /// Builds a board, silently dropping duplicates.
    pub fn from_ballots(it: impl IntoIterator<Item = B>) -> Self {
        let mut bb = Self::new();
        for b in it {
            bb.insert(b);
        }
        bb
    }

    pub fn len(&self) -> usize {
        self.ballots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ballots.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, B> {
        self.ballots.iter()
    }

    pub fn ballots(&self) -> &[B] {
        &self.ballots
    }
}

impl<B: PartialEq> PartialEq for BulletinBoard<B> {
    fn eq(&self, other: &Self) -> bool {
        self.ballots == other.ballots
    }
}

impl<B: Serialize> Serialize for BulletinBoard<B> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.ballots.serialize(s)
    }
}

impl<'de, B: Deserialize<'de> + CanonicalBytes> Deserialize<'de> for BulletinBoard<B> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let list = Vec::<B>::deserialize(d)?;
        let n = list.len();
        let bb = BulletinBoard::from_ballots(list);
        if bb.len() != n {
            return Err(serde::de::Error::custom("board contains duplicate ballots"));
        }
        Ok(bb)
    }
}

/// One named check performed by Verify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Every check Verify ran, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
        passed
    }

    pub fn accepted(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub struct Setup<S: ElectionScheme + ?Sized> {
    pub pk: S::PublicKey,
    pub sk: S::SecretKey,
    pub mb: u64,
    pub mc: u64,
}

/// An election scheme: Setup, Vote, Tally and a deterministic Verify.
pub trait ElectionScheme: Send + Sync {
    type PublicKey: Clone + Debug + Serialize + DeserializeOwned + Send + Sync;
    type SecretKey: Clone + Debug + Serialize + DeserializeOwned + Send + Sync;
    type Ballot: Clone
        + Eq
        + Hash
        + Debug
        + CanonicalBytes
        + Serialize
        + DeserializeOwned
        + Send
        + Sync;
    type TallyProof: Clone + Debug + Serialize + DeserializeOwned + Send + Sync;

    /// Stable name including the variant, e.g. `helios/weak`.
    fn id(&self) -> String;

    fn setup(&self, level: SecurityLevel, rng: &mut dyn RngCore) -> Setup<Self>;

    /// The maximum number of candidates supported under `pk`.
    fn max_candidates(&self, pk: &Self::PublicKey) -> u64;

    /// Vote with explicit coins; deterministic.
    fn vote_with_coins(
        &self,
        pk: &Self::PublicKey,
        v: u64,
        nc: u64,
        coins: &Coins,
    ) -> Result<Self::Ballot, SchemeError>;

    fn vote(
        &self,
        pk: &Self::PublicKey,
        v: u64,
        nc: u64,
        rng: &mut dyn RngCore,
    ) -> Result<Self::Ballot, SchemeError> {
        self.vote_with_coins(pk, v, nc, &Coins::draw(rng))
    }

    fn tally(
        &self,
        sk: &Self::SecretKey,
        bb: &BulletinBoard<Self::Ballot>,
        nc: u64,
        rng: &mut dyn RngCore,
    ) -> Result<(Outcome, Self::TallyProof), SchemeError>;

    /// Runs every check Verify performs and reports each one.
    fn audit(
        &self,
        pk: &Self::PublicKey,
        bb: &BulletinBoard<Self::Ballot>,
        nc: u64,
        outcome: &Outcome,
        proof: &Self::TallyProof,
    ) -> AuditReport;

    fn verify(
        &self,
        pk: &Self::PublicKey,
        bb: &BulletinBoard<Self::Ballot>,
        nc: u64,
        outcome: &Outcome,
        proof: &Self::TallyProof,
    ) -> bool {
        self.audit(pk, bb, nc, outcome, proof).accepted()
    }
}

pub(crate) fn check_range(v: u64, nc: u64, mc: u64) -> Result<(), SchemeError> {
    if nc > mc {
        return Err(SchemeError::TooManyCandidates { nc, mc });
    }
    if v == 0 || v > nc {
        return Err(SchemeError::InvalidVote { v, nc });
    }
    Ok(())
}

/// Append-only record of oracle queries: the ballot handed out together with
/// its left and right votes.
#[derive(Debug, Clone)]
pub struct VoteLedger<B> {
    entries: Vec<(B, u64, u64)>,
}

impl<B> Default for VoteLedger<B> {
    fn default() -> Self {
        VoteLedger { entries: Vec::new() }
    }
}

impl<B: CanonicalBytes> VoteLedger<B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, b: B, v0: u64, v1: u64) {
        self.entries.push((b, v0, v1));
    }

    pub fn entries(&self) -> &[(B, u64, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The ledger with left and right votes exchanged.
    pub fn swapped(&self) -> Self
    where
        B: Clone,
    {
        VoteLedger {
            entries: self.entries.iter().map(|(b, l, r)| (b.clone(), *r, *l)).collect(),
        }
    }
}

/// For every candidate v, the board holds as many oracle ballots whose left
/// vote is v as oracle ballots whose right vote is v.
pub fn balanced<B: CanonicalBytes>(bb: &BulletinBoard<B>, nc: u64, ledger: &VoteLedger<B>) -> bool {
    let on_board: Vec<(Vec<u8>, u64, u64)> = ledger
        .entries
        .iter()
        .filter(|(b, _, _)| bb.contains(b))
        .map(|(b, l, r)| (b.canonical_bytes(), *l, *r))
        .collect();
    (1..=nc).all(|v| {
        let left: HashSet<&[u8]> = on_board
            .iter()
            .filter(|e| e.1 == v)
            .map(|e| e.0.as_slice())
            .collect();
        let right: HashSet<&[u8]> = on_board
            .iter()
            .filter(|e| e.2 == v)
            .map(|e| e.0.as_slice())
            .collect();
        left.len() == right.len()
    })
}

/// A claim that `ballot` is the output of Vote(pk, vote, nc; coins).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness<B> {
    pub ballot: B,
    pub vote: u64,
    pub coins: Coins,
}

/// The correct outcome of a board: per candidate, the number of board
/// ballots shown to be honest votes for that candidate. Deciding this
/// directly would require inverting Vote; instead every witness is replayed
/// and must reproduce its ballot byte for byte. Board ballots without a
/// witness count for nobody.
pub fn correct_outcome<S: ElectionScheme + ?Sized>(
    scheme: &S,
    pk: &S::PublicKey,
    nc: u64,
    bb: &BulletinBoard<S::Ballot>,
    witnesses: &[Witness<S::Ballot>],
) -> Result<Outcome, SchemeError> {
    let mut out = Outcome::zeros(nc);
    for (i, b) in bb.iter().enumerate() {
        let bytes = b.canonical_bytes();
        let Some(w) = witnesses.iter().find(|w| w.ballot.canonical_bytes() == bytes) else {
            continue;
        };
        match scheme.vote_with_coins(pk, w.vote, nc, &w.coins) {
            Ok(replayed) if replayed.canonical_bytes() == bytes => {
                out.0[(w.vote - 1) as usize] += 1;
            }
            _ => return Err(SchemeError::WitnessMismatch(i)),
        }
    }
    Ok(out)
}

/// Public record of an honest election run.
#[derive(Debug, Clone)]
pub struct ElectionRun<S: ElectionScheme + ?Sized> {
    pub pk: S::PublicKey,
    pub sk: S::SecretKey,
    pub nc: u64,
    pub board: BulletinBoard<S::Ballot>,
    pub outcome: Outcome,
    pub proof: S::TallyProof,
    pub verified: bool,
}

/// Setup, one ballot per vote, tally, verify.
pub fn run_election<S: ElectionScheme + ?Sized>(
    scheme: &S,
    votes: &[u64],
    nc: u64,
    level: SecurityLevel,
    rng: &mut dyn RngCore,
) -> Result<ElectionRun<S>, SchemeError> {
    let setup = scheme.setup(level, rng);
    if nc > setup.mc {
        return Err(SchemeError::TooManyCandidates { nc, mc: setup.mc });
    }
    if votes.len() as u64 > setup.mb {
        return Err(SchemeError::TooManyBallots {
            nb: votes.len() as u64,
            mb: setup.mb,
        });
    }
    let mut board = BulletinBoard::new();
    for &v in votes {
        board.insert(scheme.vote(&setup.pk, v, nc, rng)?);
    }
    let (outcome, proof) = scheme.tally(&setup.sk, &board, nc, rng)?;
    let verified = scheme.verify(&setup.pk, &board, nc, &outcome, &proof);
    Ok(ElectionRun {
        pk: setup.pk,
        sk: setup.sk,
        nc,
        board,
        outcome,
        proof,
        verified,
    })
}

/// Enc2Vote: a ballot is an encryption of the vote, Tally decrypts every
/// ballot and counts, the tally proof is empty and Verify always accepts.
#[derive(Debug, Clone, Copy, Default)]
pub struct Enc2Vote<E> {
    pub enc: E,
}

pub fn make_enc2vote<E: AsymmetricScheme>(enc: E) -> Enc2Vote<E> {
    Enc2Vote { enc }
}

impl<E: AsymmetricScheme> ElectionScheme for Enc2Vote<E> {
    type PublicKey = PublicKey;
    type SecretKey = KeyPair;
    type Ballot = E::Ciphertext;
    type TallyProof = ();

    fn id(&self) -> String {
        format!("enc2vote/{}", self.enc.id())
    }

    fn setup(&self, level: SecurityLevel, rng: &mut dyn RngCore) -> Setup<Self> {
        let (kp, space) = self.enc.generate(level, rng);
        Setup {
            pk: kp.pk.clone(),
            sk: kp,
            mb: MAX_BALLOTS,
            mc: space.max,
        }
    }

    fn max_candidates(&self, pk: &PublicKey) -> u64 {
        MessageSpace::for_params(pk.params()).max
    }

    fn vote_with_coins(
        &self,
        pk: &PublicKey,
        v: u64,
        nc: u64,
        coins: &Coins,
    ) -> Result<E::Ciphertext, SchemeError> {
        check_range(v, nc, self.max_candidates(pk))?;
        Ok(self.enc.encrypt_with_coins(pk, v, coins)?)
    }

    fn tally(
        &self,
        sk: &KeyPair,
        bb: &BulletinBoard<E::Ciphertext>,
        nc: u64,
        _rng: &mut dyn RngCore,
    ) -> Result<(Outcome, ()), SchemeError> {
        let votes: Vec<u64> = bb.iter().filter_map(|b| self.enc.decrypt(sk, b).ok()).collect();
        Ok((Outcome::count(&votes, nc), ()))
    }

    fn audit(
        &self,
        _pk: &PublicKey,
        _bb: &BulletinBoard<E::Ciphertext>,
        _nc: u64,
        _outcome: &Outcome,
        _proof: &(),
    ) -> AuditReport {
        let mut r = AuditReport::default();
        r.push("constant-proof", true, None);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elgamal::{make_nm_elgamal, make_plain_elgamal, Ciphertext};
    use crate::group::{gen_params, GroupElement};
    use crate::rng::seeded;
    use num_bigint::BigUint;

    fn ct(a: u32) -> Ciphertext {
        let e = GroupElement::from_raw(BigUint::from(a));
        Ciphertext { c1: e.clone(), c2: e }
    }

    #[test]
    fn board_dedups_and_keeps_order() {
        let mut bb = BulletinBoard::new();
        assert_eq!(bb.insert(ct(3)), Some(0));
        assert_eq!(bb.insert(ct(2)), Some(1));
        assert_eq!(bb.insert(ct(3)), None);
        assert_eq!(bb.ballots(), &[ct(3), ct(2)]);
        let s = serde_json::to_string(&bb).unwrap();
        let back: BulletinBoard<Ciphertext> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, bb);
        let dup = format!("[{},{}]", serde_json::to_string(&ct(1)).unwrap(), serde_json::to_string(&ct(1)).unwrap());
        assert!(serde_json::from_str::<BulletinBoard<Ciphertext>>(&dup).is_err());
    }

    #[test]
    fn balanced_examples() {
        let mut ledger = VoteLedger::new();
        ledger.record(ct(1), 1, 2);
        ledger.record(ct(2), 2, 1);
        ledger.record(ct(3), 3, 3);
        let all = BulletinBoard::from_ballots([ct(1), ct(2), ct(3)]);
        assert!(balanced(&all, 3, &ledger));
        let one = BulletinBoard::from_ballots([ct(1)]);
        assert!(!balanced(&one, 3, &ledger));
        let none = BulletinBoard::from_ballots([ct(9)]);
        assert!(balanced(&none, 3, &ledger));
        for bb in [&all, &one, &none] {
            assert_eq!(balanced(bb, 3, &ledger), balanced(bb, 3, &ledger.swapped()));
        }
    }

    #[test]
    fn enc2vote_counts() {
        let scheme = make_enc2vote(make_nm_elgamal());
        let mut rng = seeded(1);
        let run = run_election(&scheme, &[1, 1, 2], 3, SecurityLevel::Test, &mut rng).unwrap();
        assert_eq!(run.outcome, Outcome(vec![2, 1, 0]));
        assert!(run.verified);
        assert_eq!(
            scheme.vote(&run.pk, 4, 3, &mut rng),
            Err(SchemeError::InvalidVote { v: 4, nc: 3 })
        );
        assert_eq!(
            scheme.vote(&run.pk, 0, 3, &mut rng),
            Err(SchemeError::InvalidVote { v: 0, nc: 3 })
        );
        // Verify accepts anything.
        assert!(scheme.verify(&run.pk, &run.board, 3, &Outcome(vec![9, 9, 9]), &()));
        let empty = run_election(&scheme, &[], 3, SecurityLevel::Test, &mut rng).unwrap();
        assert_eq!(empty.outcome, Outcome::zeros(3));
    }

    #[test]
    fn enc2vote_mc_derivation() {
        let mut rng = seeded(2);
        let toy = make_enc2vote(make_plain_elgamal()).setup(SecurityLevel::Toy, &mut rng);
        assert_eq!(toy.mc, 21);
        assert_eq!(toy.mb, MAX_BALLOTS);
        let test = make_enc2vote(make_plain_elgamal()).setup(SecurityLevel::Test, &mut rng);
        assert_eq!(test.mc, 1 << 16);
        assert_eq!(gen_params(SecurityLevel::Test).level(), SecurityLevel::Test);
    }

    #[test]
    fn correct_outcome_replays_witnesses() {
        let scheme = make_enc2vote(make_plain_elgamal());
        let mut rng = seeded(3);
        let s = scheme.setup(SecurityLevel::Test, &mut rng);
        let mut bb = BulletinBoard::new();
        let mut ws = Vec::new();
        for v in [2u64, 1, 1] {
            let coins = Coins::draw(&mut rng);
            let b = scheme.vote_with_coins(&s.pk, v, 3, &coins).unwrap();
            bb.insert(b.clone());
            ws.push(Witness { ballot: b, vote: v, coins });
        }
        assert_eq!(correct_outcome(&scheme, &s.pk, 3, &bb, &ws), Ok(Outcome(vec![2, 1, 0])));
        assert_eq!(correct_outcome(&scheme, &s.pk, 3, &bb, &ws[..1]), Ok(Outcome(vec![0, 1, 0])));
        assert_eq!(
            correct_outcome(&scheme, &s.pk, 3, &BulletinBoard::new(), &ws),
            Ok(Outcome::zeros(3))
        );
        let mut bad = ws.clone();
        bad[1].coins = Coins::draw(&mut rng);
        assert_eq!(correct_outcome(&scheme, &s.pk, 3, &bb, &bad), Err(SchemeError::WitnessMismatch(1)));
        let mut lie = ws;
        lie[0].vote = 3;
        assert_eq!(correct_outcome(&scheme, &s.pk, 3, &bb, &lie), Err(SchemeError::WitnessMismatch(0)));
    }

    #[test]
    fn outcome_helpers() {
        let o = Outcome::count(&[1, 3, 3, 7, 0], 3);
        assert_eq!(o, Outcome(vec![1, 0, 2]));
        assert_eq!(o.total(), 3);
        assert_eq!(o.get(3), 2);
        assert_eq!(o.get(0), 0);
        assert_eq!(o.get(4), 0);
    }
}
