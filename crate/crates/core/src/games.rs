//! Executable security games.
//!
//! Each game runs the challenger's steps literally against a stateful
//! adversary and reports every conjunct of its return line, so a win or
//! loss can be audited after the fact. Adversaries are trait objects with
//! one callback per adversary step; they receive their own randomness
//! stream, separate from the challenger's.
//!
//! Games fail closed: an adversary that errors or outputs something
//! malformed loses the run.

use std::fmt;
use std::io::Write;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::elgamal::{AsymmetricScheme, MessageSpace, PublicKey};
use crate::group::SecurityLevel;
use crate::rng::{split, stream, Coins, Seed, VoteRng};
use crate::scheme::{
    balanced, correct_outcome, BulletinBoard, ElectionScheme, Outcome, SchemeError, VoteLedger,
    Witness,
};
use crate::codec::CanonicalBytes;

pub type AdvResult<T> = Result<T, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjunct {
    pub name: String,
    pub holds: bool,
}

/// Outcome of one game run: `won` is the conjunction of `conjuncts`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameResult {
    pub won: bool,
    pub conjuncts: Vec<Conjunct>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GameResult {
    pub fn from_conjuncts(list: &[(&str, bool)]) -> Self {
        let conjuncts: Vec<Conjunct> = list
            .iter()
            .map(|(n, h)| Conjunct {
                name: (*n).to_owned(),
                holds: *h,
            })
            .collect();
        GameResult {
            won: conjuncts.iter().all(|c| c.holds),
            conjuncts,
            note: None,
        }
    }

    /// The adversary failed to produce well-formed output.
    pub fn forfeit(reason: impl Into<String>) -> Self {
        let mut r = Self::from_conjuncts(&[("adversary-output", false)]);
        r.note = Some(reason.into());
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Name of the first conjunct that failed.
    pub fn failed(&self) -> Option<&str> {
        self.conjuncts.iter().find(|c| !c.holds).map(|c| c.name.as_str())
    }

    pub fn holds(&self, name: &str) -> Option<bool> {
        self.conjuncts.iter().find(|c| c.name == name).map(|c| c.holds)
    }

    /// Recomputes `won` from the conjunct record.
    pub fn is_consistent(&self) -> bool {
        self.won == self.conjuncts.iter().all(|c| c.holds)
    }
}

fn coin(rng: &mut dyn RngCore) -> u8 {
    u8::from(rng.gen::<bool>())
}

// ---- ballot secrecy ----

/// The left-or-right voting oracle. It votes for the hidden side and records
/// every query in the ledger, which the adversary cannot touch.
pub struct VoteOracle<'a, S: ElectionScheme> {
    scheme: &'a S,
    pk: &'a S::PublicKey,
    nc: u64,
    beta: u8,
    ledger: VoteLedger<S::Ballot>,
    rng: VoteRng,
}

impl<'a, S: ElectionScheme> VoteOracle<'a, S> {
    pub fn pk(&self) -> &S::PublicKey {
        self.pk
    }

    pub fn nc(&self) -> u64 {
        self.nc
    }

    pub fn scheme(&self) -> &S {
        self.scheme
    }

    pub fn query(&mut self, v0: u64, v1: u64) -> Result<S::Ballot, SchemeError> {
        for v in [v0, v1] {
            if v == 0 || v > self.nc {
                return Err(SchemeError::InvalidVote { v, nc: self.nc });
            }
        }
        let v = if self.beta == 0 { v0 } else { v1 };
        let b = self.scheme.vote(self.pk, v, self.nc, &mut self.rng)?;
        self.ledger.record(b.clone(), v0, v1);
        Ok(b)
    }
}

pub trait SecrecyAdversary<S: ElectionScheme> {
    fn choose_nc(&mut self, pk: &S::PublicKey, rng: &mut dyn RngCore) -> u64;

    fn build_board(
        &mut self,
        oracle: &mut VoteOracle<'_, S>,
        rng: &mut dyn RngCore,
    ) -> AdvResult<BulletinBoard<S::Ballot>>;

    /// The tally proof is withheld in the simplified game.
    fn guess(&mut self, outcome: &Outcome, proof: Option<&S::TallyProof>, rng: &mut dyn RngCore) -> u8;
}

/// Literal: tally the whole board, hand over the proof, require a balanced
/// board. Simplified: tally only the adversary's own ballots, withhold the
/// proof, and require that no oracle ballot is on the board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecrecyMode {
    Literal,
    Simplified,
}

pub fn play_ballot_secrecy<S: ElectionScheme>(
    scheme: &S,
    adv: &mut dyn SecrecyAdversary<S>,
    level: SecurityLevel,
    mode: SecrecyMode,
    rng: &mut dyn RngCore,
) -> GameResult {
    let mut adv_rng = split(rng);
    let setup = scheme.setup(level, rng);
    let nc = adv.choose_nc(&setup.pk, &mut adv_rng);
    let beta = coin(rng);
    if nc == 0 || nc > setup.mc {
        return GameResult::from_conjuncts(&[("candidate-range", false)]);
    }
    let mut oracle = VoteOracle {
        scheme,
        pk: &setup.pk,
        nc,
        beta,
        ledger: VoteLedger::new(),
        rng: split(rng),
    };
    let bb = match adv.build_board(&mut oracle, &mut adv_rng) {
        Ok(bb) => bb,
        Err(e) => return GameResult::forfeit(e),
    };
    let ledger = oracle.ledger;
    let (tallied, side_ok, side_name) = match mode {
        SecrecyMode::Literal => (bb.clone(), balanced(&bb, nc, &ledger), "balanced"),
        SecrecyMode::Simplified => {
            let own = BulletinBoard::from_ballots(
                bb.iter()
                    .filter(|b| !ledger.entries().iter().any(|(l, _, _)| l.canonical_bytes() == b.canonical_bytes()))
                    .cloned(),
            );
            let disjoint = own.len() == bb.len();
            (own, disjoint, "oracle-ballots-absent")
        }
    };
    let (outcome, proof) = match scheme.tally(&setup.sk, &tallied, nc, rng) {
        Ok(t) => t,
        Err(e) => return GameResult::forfeit(format!("tally failed: {e}")),
    };
    let g = match mode {
        SecrecyMode::Literal => adv.guess(&outcome, Some(&proof), &mut adv_rng),
        SecrecyMode::Simplified => adv.guess(&outcome, None, &mut adv_rng),
    };
    GameResult::from_conjuncts(&[
        ("guess", g == beta),
        (side_name, side_ok),
        ("candidate-range", true),
        ("board-size", bb.len() as u64 <= setup.mb),
    ])
}

// ---- IND-CVA ----

pub trait CvaAdversary<S: ElectionScheme> {
    /// (v0, v1, nc)
    fn choose(&mut self, pk: &S::PublicKey, rng: &mut dyn RngCore) -> (u64, u64, u64);

    fn build_board(
        &mut self,
        pk: &S::PublicKey,
        challenge: &S::Ballot,
        rng: &mut dyn RngCore,
    ) -> AdvResult<BulletinBoard<S::Ballot>>;

    fn guess(&mut self, outcome: &Outcome, rng: &mut dyn RngCore) -> u8;
}

pub fn play_ind_cva<S: ElectionScheme>(
    scheme: &S,
    adv: &mut dyn CvaAdversary<S>,
    level: SecurityLevel,
    rng: &mut dyn RngCore,
) -> GameResult {
    let mut adv_rng = split(rng);
    let setup = scheme.setup(level, rng);
    let (v0, v1, nc) = adv.choose(&setup.pk, &mut adv_rng);
    let in_range = [v0, v1].iter().all(|&v| v >= 1 && v <= nc) && nc <= setup.mc;
    if !in_range {
        return GameResult::from_conjuncts(&[("vote-range", false)]);
    }
    let beta = coin(rng);
    let b = match scheme.vote(&setup.pk, if beta == 0 { v0 } else { v1 }, nc, rng) {
        Ok(b) => b,
        Err(e) => return GameResult::forfeit(format!("challenge ballot: {e}")),
    };
    let bb = match adv.build_board(&setup.pk, &b, &mut adv_rng) {
        Ok(bb) => bb,
        Err(e) => return GameResult::forfeit(e),
    };
    let (outcome, _) = match scheme.tally(&setup.sk, &bb, nc, rng) {
        Ok(t) => t,
        Err(e) => return GameResult::forfeit(format!("tally failed: {e}")),
    };
    let g = adv.guess(&outcome, &mut adv_rng);
    GameResult::from_conjuncts(&[
        ("guess", g == beta),
        ("challenge-absent", !bb.contains(&b)),
        ("vote-range", true),
        ("board-size", bb.len() as u64 <= setup.mb),
    ])
}

// ---- IND-PA0 ----

pub trait Pa0Adversary<E: AsymmetricScheme> {
    fn choose(&mut self, pk: &PublicKey, space: MessageSpace, rng: &mut dyn RngCore) -> (u64, u64);

    /// One parallel decryption query.
    fn parallel(
        &mut self,
        pk: &PublicKey,
        challenge: &E::Ciphertext,
        rng: &mut dyn RngCore,
    ) -> AdvResult<Vec<E::Ciphertext>>;

    /// `None` marks a ciphertext that failed to decrypt.
    fn guess(&mut self, plaintexts: &[Option<u64>], rng: &mut dyn RngCore) -> u8;
}

pub fn play_ind_pa0<E: AsymmetricScheme>(
    enc: &E,
    adv: &mut dyn Pa0Adversary<E>,
    level: SecurityLevel,
    rng: &mut dyn RngCore,
) -> GameResult {
    let mut adv_rng = split(rng);
    let (kp, space) = enc.generate(level, rng);
    let (m0, m1) = adv.choose(&kp.pk, space, &mut adv_rng);
    if !space.contains(m0) || !space.contains(m1) {
        return GameResult::from_conjuncts(&[("message-space", false)]);
    }
    let beta = coin(rng);
    let c = match enc.encrypt(&kp.pk, if beta == 0 { m0 } else { m1 }, rng) {
        Ok(c) => c,
        Err(e) => return GameResult::forfeit(format!("challenge: {e}")),
    };
    let cs = match adv.parallel(&kp.pk, &c, &mut adv_rng) {
        Ok(cs) => cs,
        Err(e) => return GameResult::forfeit(e),
    };
    let ms: Vec<Option<u64>> = cs.iter().map(|x| enc.decrypt(&kp, x).ok()).collect();
    let g = adv.guess(&ms, &mut adv_rng);
    GameResult::from_conjuncts(&[
        ("guess", g == beta),
        ("challenge-not-queried", cs.iter().all(|x| x != &c)),
        ("message-space", true),
    ])
}

// ---- soundness ----

/// Everything a soundness adversary outputs, plus the witnesses the harness
/// uses to evaluate the correct outcome.
pub struct SoundnessClaim<S: ElectionScheme> {
    pub pk: S::PublicKey,
    pub bb: BulletinBoard<S::Ballot>,
    pub nc: u64,
    pub outcome: Outcome,
    pub proof: S::TallyProof,
    pub witnesses: Vec<Witness<S::Ballot>>,
}

pub trait SoundnessAdversary<S: ElectionScheme> {
    fn forge(&mut self, scheme: &S, level: SecurityLevel, rng: &mut dyn RngCore) -> AdvResult<SoundnessClaim<S>>;
}

/// Scores a soundness claim: the verifier accepts an outcome that differs
/// from the correct one. A lying witness forfeits.
pub fn judge_soundness<S: ElectionScheme>(scheme: &S, claim: &SoundnessClaim<S>) -> GameResult {
    let accepted = scheme.verify(&claim.pk, &claim.bb, claim.nc, &claim.outcome, &claim.proof);
    let correct = match correct_outcome(scheme, &claim.pk, claim.nc, &claim.bb, &claim.witnesses) {
        Ok(o) => o,
        Err(e) => return GameResult::forfeit(e.to_string()),
    };
    GameResult::from_conjuncts(&[
        ("verify-accepts", accepted),
        ("outcome-incorrect", claim.outcome != correct),
    ])
    .with_note(format!("claimed {:?}, correct {:?}", claim.outcome.0, correct.0))
}

pub fn play_soundness<S: ElectionScheme>(
    scheme: &S,
    adv: &mut dyn SoundnessAdversary<S>,
    level: SecurityLevel,
    rng: &mut dyn RngCore,
) -> GameResult {
    match adv.forge(scheme, level, rng) {
        Ok(claim) => judge_soundness(scheme, &claim),
        Err(e) => GameResult::forfeit(e),
    }
}

// ---- completeness ----

pub trait CompletenessAdversary<S: ElectionScheme> {
    fn build(
        &mut self,
        scheme: &S,
        pk: &S::PublicKey,
        rng: &mut dyn RngCore,
    ) -> AdvResult<(BulletinBoard<S::Ballot>, u64)>;
}

pub fn play_completeness<S: ElectionScheme>(
    scheme: &S,
    adv: &mut dyn CompletenessAdversary<S>,
    level: SecurityLevel,
    rng: &mut dyn RngCore,
) -> GameResult {
    let mut adv_rng = split(rng);
    let setup = scheme.setup(level, rng);
    let (bb, nc) = match adv.build(scheme, &setup.pk, &mut adv_rng) {
        Ok(x) => x,
        Err(e) => return GameResult::forfeit(e),
    };
    let size_ok = bb.len() as u64 <= setup.mb;
    // Elections with no candidates are outside every scheme's domain.
    let nc_ok = nc >= 1 && nc <= setup.mc;
    if !(size_ok && nc_ok) {
        return GameResult::from_conjuncts(&[("board-size", size_ok), ("candidate-range", nc_ok)]);
    }
    // A tally that cannot produce an outcome counts as a rejected one.
    let rejected = match scheme.tally(&setup.sk, &bb, nc, rng) {
        Ok((outcome, proof)) => !scheme.verify(&setup.pk, &bb, nc, &outcome, &proof),
        Err(_) => true,
    };
    GameResult::from_conjuncts(&[
        ("verify-rejects", rejected),
        ("board-size", true),
        ("candidate-range", true),
    ])
}

// ---- individual verifiability and injectivity ----

pub trait IvAdversary<S: ElectionScheme> {
    /// (pk, nc, v, v')
    fn choose(&mut self, scheme: &S, level: SecurityLevel, rng: &mut dyn RngCore) -> AdvResult<(S::PublicKey, u64, u64, u64)>;
}

pub fn play_individual_verifiability<S: ElectionScheme>(
    scheme: &S,
    adv: &mut dyn IvAdversary<S>,
    level: SecurityLevel,
    rng: &mut dyn RngCore,
) -> GameResult {
    let mut adv_rng = split(rng);
    let (pk, nc, v, v2) = match adv.choose(scheme, level, &mut adv_rng) {
        Ok(x) => x,
        Err(e) => return GameResult::forfeit(e),
    };
    let b = scheme.vote(&pk, v, nc, rng);
    let b2 = scheme.vote(&pk, v2, nc, rng);
    let (ok1, ok2) = (b.is_ok(), b2.is_ok());
    let equal = matches!((&b, &b2), (Ok(x), Ok(y)) if x.canonical_bytes() == y.canonical_bytes());
    GameResult::from_conjuncts(&[("collision", equal), ("first-not-bottom", ok1), ("second-not-bottom", ok2)])
}

/// Votes for distinct candidates never yield equal ballots. Every pair of
/// distinct candidates is tried with shared coins and with independent
/// coins, `trials` times.
pub fn check_injectivity<S: ElectionScheme>(
    scheme: &S,
    pk: &S::PublicKey,
    nc: u64,
    trials: usize,
    rng: &mut dyn RngCore,
) -> bool {
    for _ in 0..trials {
        let shared = Coins::draw(rng);
        let ballots: Vec<Option<Vec<u8>>> = (1..=nc)
            .map(|v| scheme.vote_with_coins(pk, v, nc, &shared).ok().map(|b| b.canonical_bytes()))
            .collect();
        for i in 0..ballots.len() {
            for j in i + 1..ballots.len() {
                if ballots[i].is_some() && ballots[i] == ballots[j] {
                    return false;
                }
            }
        }
        let v = rng.gen_range(1..=nc);
        let w = rng.gen_range(1..=nc);
        if v != w {
            let a = scheme.vote(pk, v, nc, rng);
            let b = scheme.vote(pk, w, nc, rng);
            if let (Ok(a), Ok(b)) = (a, b) {
                if a.canonical_bytes() == b.canonical_bytes() {
                    return false;
                }
            }
        }
    }
    true
}

// ---- trials ----

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: u64,
    pub wins: u64,
    pub rate: f64,
    pub ci95: (f64, f64),
}

impl TrialStats {
    pub fn new(trials: u64, wins: u64) -> Self {
        assert!(wins <= trials && trials > 0);
        TrialStats {
            trials,
            wins,
            rate: wins as f64 / trials as f64,
            ci95: wilson_interval(wins, trials, 1.96),
        }
    }

    /// The 95% interval contains `p`.
    pub fn consistent_with(&self, p: f64) -> bool {
        self.ci95.0 <= p && p <= self.ci95.1
    }
}

impl fmt::Display for TrialStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} wins, rate {:.4}, 95% CI [{:.4}, {:.4}]",
            self.wins, self.trials, self.rate, self.ci95.0, self.ci95.1
        )
    }
}

pub fn wilson_interval(wins: u64, n: u64, z: f64) -> (f64, f64) {
    let n = n as f64;
    let p = wins as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Runs `n` trials, trial i drawing from stream i of `seed`.
pub fn run_trials(n: u64, seed: &Seed, game: impl FnMut(&mut VoteRng) -> GameResult) -> TrialStats {
    run_trials_with(n, seed, game, |_, _| {})
}

/// As [`run_trials`], handing every result to `sink` as it completes.
pub fn run_trials_with(
    n: u64,
    seed: &Seed,
    mut game: impl FnMut(&mut VoteRng) -> GameResult,
    mut sink: impl FnMut(u64, &GameResult),
) -> TrialStats {
    let mut wins = 0;
    for i in 0..n {
        let mut rng = stream(seed, i);
        let r = game(&mut rng);
        wins += u64::from(r.won);
        sink(i, &r);
    }
    TrialStats::new(n, wins)
}

/// One line of a results file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub game: String,
    pub scheme: String,
    pub variant: String,
    pub seed: String,
    pub trial: u64,
    pub won: bool,
    pub detail: GameResult,
}

pub fn write_record(out: &mut dyn Write, rec: &TrialRecord) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, rec)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elgamal::{make_nm_elgamal, make_plain_elgamal};
    use crate::helios::{make_helios, HeliosVariant};
    use crate::scheme::make_enc2vote;

    #[test]
    fn wilson_bounds() {
        let s = TrialStats::new(100, 100);
        assert_eq!(s.rate, 1.0);
        assert!(s.ci95.0 > 0.96 && s.ci95.1 > 0.9999, "{s}");
        let s = TrialStats::new(2000, 1000);
        assert!(s.consistent_with(0.5));
        assert!((s.ci95.1 - s.ci95.0 - 0.0438).abs() < 0.001);
        let s = TrialStats::new(10, 0);
        assert_eq!(s.ci95.0, 0.0);
    }

    #[test]
    fn trial_runner() {
        let always = run_trials(100, &Seed::from_u64(1), |_| GameResult::from_conjuncts(&[("x", true)]));
        assert_eq!(always.rate, 1.0);
        let flip = |rng: &mut VoteRng| GameResult::from_conjuncts(&[("coin", rng.gen::<bool>())]);
        let a = run_trials(2000, &Seed::from_u64(2), flip);
        assert!(a.consistent_with(0.5), "{a}");
        let b = run_trials(2000, &Seed::from_u64(2), flip);
        assert_eq!(a, b);
    }

    /// Queries (1, 2) and posts the oracle ballot alone, then reads the
    /// outcome: always right, never balanced.
    struct Unbalanced;

    impl<S: ElectionScheme> SecrecyAdversary<S> for Unbalanced {
        fn choose_nc(&mut self, _pk: &S::PublicKey, _rng: &mut dyn RngCore) -> u64 {
            2
        }

        fn build_board(
            &mut self,
            oracle: &mut VoteOracle<'_, S>,
            _rng: &mut dyn RngCore,
        ) -> AdvResult<BulletinBoard<S::Ballot>> {
            let b = oracle.query(1, 2).map_err(|e| e.to_string())?;
            Ok(BulletinBoard::from_ballots([b]))
        }

        fn guess(&mut self, outcome: &Outcome, _p: Option<&S::TallyProof>, _rng: &mut dyn RngCore) -> u8 {
            u8::from(outcome.get(2) == 1)
        }
    }

    #[test]
    fn unbalanced_board_loses() {
        let scheme = make_helios(HeliosVariant::STRONG);
        let mut rng = crate::rng::seeded(3);
        for _ in 0..5 {
            let r = play_ballot_secrecy(&scheme, &mut Unbalanced, SecurityLevel::Test, SecrecyMode::Literal, &mut rng);
            assert!(!r.won);
            assert_eq!(r.holds("guess"), Some(true));
            assert_eq!(r.failed(), Some("balanced"));
            assert!(r.is_consistent());
            let r = play_ballot_secrecy(&scheme, &mut Unbalanced, SecurityLevel::Test, SecrecyMode::Simplified, &mut rng);
            assert_eq!(r.holds("oracle-ballots-absent"), Some(false));
            assert!(!r.won);
        }
    }

    #[test]
    fn oracle_rejects_out_of_range() {
        struct Bad;
        impl<S: ElectionScheme> SecrecyAdversary<S> for Bad {
            fn choose_nc(&mut self, _pk: &S::PublicKey, _rng: &mut dyn RngCore) -> u64 {
                2
            }
            fn build_board(
                &mut self,
                oracle: &mut VoteOracle<'_, S>,
                _rng: &mut dyn RngCore,
            ) -> AdvResult<BulletinBoard<S::Ballot>> {
                oracle.query(1, 3).map_err(|e| e.to_string())?;
                Ok(BulletinBoard::new())
            }
            fn guess(&mut self, _o: &Outcome, _p: Option<&S::TallyProof>, _rng: &mut dyn RngCore) -> u8 {
                0
            }
        }
        let scheme = make_enc2vote(make_plain_elgamal());
        let r = play_ballot_secrecy(&scheme, &mut Bad, SecurityLevel::Test, SecrecyMode::Literal, &mut crate::rng::seeded(4));
        assert_eq!(r.failed(), Some("adversary-output"));
    }

    struct HonestBoard;

    impl<S: ElectionScheme> CompletenessAdversary<S> for HonestBoard {
        fn build(&mut self, scheme: &S, pk: &S::PublicKey, rng: &mut dyn RngCore) -> AdvResult<(BulletinBoard<S::Ballot>, u64)> {
            let nc = 3;
            let bb = BulletinBoard::from_ballots(
                (0..4).map(|i| scheme.vote(pk, 1 + i % nc, nc, rng).unwrap()),
            );
            Ok((bb, nc))
        }
    }

    #[test]
    fn completeness_honest_and_oversized() {
        let scheme = make_enc2vote(make_nm_elgamal());
        let mut rng = crate::rng::seeded(5);
        let r = play_completeness(&scheme, &mut HonestBoard, SecurityLevel::Test, &mut rng);
        assert!(!r.won);
        assert_eq!(r.failed(), Some("verify-rejects"));

        struct TooMany;
        impl<S: ElectionScheme> CompletenessAdversary<S> for TooMany {
            fn build(&mut self, _s: &S, _pk: &S::PublicKey, _rng: &mut dyn RngCore) -> AdvResult<(BulletinBoard<S::Ballot>, u64)> {
                Ok((BulletinBoard::new(), u64::MAX))
            }
        }
        let r = play_completeness(&scheme, &mut TooMany, SecurityLevel::Test, &mut rng);
        assert_eq!(r.failed(), Some("candidate-range"));
    }

    #[test]
    fn injectivity_enc2vote() {
        let scheme = make_enc2vote(make_plain_elgamal());
        let mut rng = crate::rng::seeded(6);
        let s = scheme.setup(SecurityLevel::Test, &mut rng);
        assert!(check_injectivity(&scheme, &s.pk, 4, 50, &mut rng));
    }

    #[test]
    fn record_is_one_json_line() {
        let rec = TrialRecord {
            game: "ballot-secrecy".into(),
            scheme: "helios".into(),
            variant: "weak".into(),
            seed: "01".into(),
            trial: 0,
            won: true,
            detail: GameResult::from_conjuncts(&[("guess", true)]),
        };
        let mut buf = Vec::new();
        write_record(&mut buf, &rec).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.matches('\n').count(), 1);
        let back: TrialRecord = serde_json::from_str(s.trim()).unwrap();
        assert!(back.detail.is_consistent());
    }
}
