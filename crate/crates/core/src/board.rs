//! Bulletin-board persistence and election transcripts.
//!
//! A [`BoardStore`] is an append-only JSON-lines file, one ballot per line.
//! A transcript is a single JSON document:
//!
//! ```text
//! { "header": { "scheme", "variant", "level", "nc", "pk", "seed_commitment" },
//!   "board":  [ ballot, ... ],
//!   "result": { "outcome": [..], "proof": {..} } | null }
//! ```
//!
//! Field order is fixed by the struct definitions below. Everything in a
//! transcript is public, so it can be re-verified offline.

use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rand::RngCore;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adversaries::{helios_for, mixnet_for, HeliosForger, MixnetForger};
use crate::games::SoundnessAdversary;
use crate::helios::Helios;
use crate::mixnet::HeliosMixnet;
use crate::rng::Seed;
use crate::codec::CanonicalBytes;
use crate::elgamal::{make_nm_elgamal, make_plain_elgamal};
use crate::group::SecurityLevel;
use crate::kind::{SchemeKind, Target};
use crate::scheme::{make_enc2vote, AuditReport, BulletinBoard, ElectionScheme, Outcome, SchemeError};
use crate::sigma::FsMode;

#[derive(Debug, Error)]
pub enum BoardError {
    #[error("ballot already on the board at index {0}")]
    Duplicate(usize),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{what}: parse error at byte {offset} (line {line}, column {column}): {msg}")]
    Parse {
        what: String,
        offset: usize,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("{0}")]
    Invalid(String),
}

impl BoardError {
    pub fn is_parse(&self) -> bool {
        matches!(self, BoardError::Parse { .. })
    }
}

/// Byte offset of a 1-based (line, column) position in `text`.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn parse_json<T: DeserializeOwned>(what: &str, text: &str) -> Result<T, BoardError> {
    serde_json::from_str(text).map_err(|e| BoardError::Parse {
        what: what.to_owned(),
        offset: byte_offset(text, e.line(), e.column()),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

// ---- board store ----

/// Append-only ballot log backed by a JSON-lines file. Single writer.
#[derive(Debug)]
pub struct BoardStore<B> {
    path: PathBuf,
    board: BulletinBoard<B>,
}

impl<B: CanonicalBytes + Clone + Eq + Serialize + DeserializeOwned> BoardStore<B> {
    /// Opens the log, creating an empty one if needed.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, BoardError> {
        let path = path.as_ref().to_path_buf();
        let mut board = BulletinBoard::new();
        if path.exists() {
            let mut offset = 0;
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if !line.trim().is_empty() {
                    let b: B = serde_json::from_str(&line).map_err(|e| BoardError::Parse {
                        what: path.display().to_string(),
                        offset: offset + e.column().saturating_sub(1),
                        line: i + 1,
                        column: e.column(),
                        msg: e.to_string(),
                    })?;
                    if board.insert(b).is_none() {
                        return Err(BoardError::Invalid(format!("duplicate ballot on line {}", i + 1)));
                    }
                }
                offset += line.len() + 1;
            }
        } else {
            File::create(&path)?;
        }
        Ok(BoardStore { path, board })
    }

    /// Persists `b` at the next index; byte-identical ballots are refused.
    pub fn append(&mut self, b: B) -> Result<usize, BoardError> {
        let bytes = b.canonical_bytes();
        if let Some(i) = self.board.iter().position(|x| x.canonical_bytes() == bytes) {
            return Err(BoardError::Duplicate(i));
        }
        let mut line = serde_json::to_string(&b).map_err(|e| BoardError::Invalid(e.to_string()))?;
        line.push('\n');
        let mut f = OpenOptions::new().append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        f.sync_data()?;
        Ok(self.board.insert(b).expect("checked above"))
    }

    pub fn board(&self) -> &BulletinBoard<B> {
        &self.board
    }

    pub fn len(&self) -> usize {
        self.board.len()
    }

    pub fn is_empty(&self) -> bool {
        self.board.is_empty()
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

// ---- transcripts ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header<PK> {
    pub scheme: SchemeKind,
    pub variant: FsMode,
    pub level: SecurityLevel,
    pub nc: u64,
    pub pk: PK,
    /// SHA-256 of the seed the election was created from.
    pub seed_commitment: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TallyRecord<P> {
    pub outcome: Outcome,
    pub proof: P,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[serde(bound(
    serialize = "PK: Serialize, B: Serialize, P: Serialize",
    deserialize = "PK: DeserializeOwned, B: DeserializeOwned + CanonicalBytes, P: DeserializeOwned"
))]
pub struct TranscriptFile<PK, B, P> {
    pub header: Header<PK>,
    pub board: BulletinBoard<B>,
    pub result: Option<TallyRecord<P>>,
}

pub type SchemeTranscript<S> = TranscriptFile<
    <S as ElectionScheme>::PublicKey,
    <S as ElectionScheme>::Ballot,
    <S as ElectionScheme>::TallyProof,
>;

pub fn to_json<T: Serialize>(t: &T) -> String {
    serde_json::to_string_pretty(t).expect("serializable")
}

/// Just enough of a transcript to pick the scheme.
#[derive(Deserialize)]
struct Probe {
    header: ProbeHeader,
}

#[derive(Deserialize)]
struct ProbeHeader {
    scheme: SchemeKind,
    variant: FsMode,
}

/// Outcome of auditing a transcript.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub scheme: SchemeKind,
    /// Variant recorded in the header.
    pub recorded: FsMode,
    /// Variant the checks were run under.
    pub mode: FsMode,
    pub report: AuditReport,
}

impl VerifyReport {
    pub fn accepted(&self) -> bool {
        self.report.accepted()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "transcript {}/{} checked in {} mode", self.scheme, self.recorded, self.mode)?;
        for c in &self.report.checks {
            write!(f, "  [{}] {}", if c.passed { " ok " } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        write!(f, "result: {}", if self.accepted() { "ACCEPT" } else { "REJECT" })
    }
}

/// Audits transcript text. `mode` overrides the recorded variant.
pub fn verify_transcript_text(text: &str, mode: Option<FsMode>) -> Result<VerifyReport, BoardError> {
    let probe: Probe = parse_json("transcript", text)?;
    let recorded = probe.header.variant;
    let mode = mode.unwrap_or(recorded);
    let scheme = probe.header.scheme;
    if scheme == SchemeKind::Enc2vote && mode != recorded {
        return Err(BoardError::Invalid(
            "enc2vote variants use different ballot formats; the mode cannot be overridden".into(),
        ));
    }
    let report = election_for(Target::new(scheme, mode)).verify(text)?;
    Ok(VerifyReport {
        scheme,
        recorded,
        mode,
        report,
    })
}

pub fn transcript_verify(path: impl AsRef<Path>, mode: Option<FsMode>) -> Result<VerifyReport, BoardError> {
    verify_transcript_text(&fs::read_to_string(path)?, mode)
}

// ---- scheme-erased operations ----

/// Election operations over JSON text, for callers that pick the scheme at
/// run time.
pub trait DynElection {
    fn target(&self) -> Target;

    /// A new election (transcript with an empty board) and its secret key.
    fn keygen(
        &self,
        level: SecurityLevel,
        nc: u64,
        seed_commitment: String,
        rng: &mut dyn RngCore,
    ) -> Result<(String, String), BoardError>;

    /// A ballot for `v`, as one line of JSON.
    fn vote(&self, election: &str, v: u64, rng: &mut dyn RngCore) -> Result<String, BoardError>;

    fn append(&self, store: &Path, ballot: &str) -> Result<usize, BoardError>;

    /// The election transcript with the stored board and its tally.
    fn tally(&self, election: &str, secret: &str, store: &Path, rng: &mut dyn RngCore) -> Result<String, BoardError>;

    fn verify(&self, transcript: &str) -> Result<AuditReport, BoardError>;
}

struct Erased<S> {
    scheme: S,
    target: Target,
}

impl<S: ElectionScheme> Erased<S> {
    fn parse(&self, text: &str) -> Result<SchemeTranscript<S>, BoardError> {
        let t: SchemeTranscript<S> = parse_json("transcript", text)?;
        if t.header.scheme != self.target.scheme {
            return Err(BoardError::Invalid(format!(
                "transcript is for {}, not {}",
                t.header.scheme, self.target.scheme
            )));
        }
        Ok(t)
    }
}

impl<S: ElectionScheme> DynElection for Erased<S> {
    fn target(&self) -> Target {
        self.target
    }

    fn keygen(
        &self,
        level: SecurityLevel,
        nc: u64,
        seed_commitment: String,
        rng: &mut dyn RngCore,
    ) -> Result<(String, String), BoardError> {
        let setup = self.scheme.setup(level, rng);
        if nc == 0 || nc > setup.mc {
            return Err(SchemeError::TooManyCandidates { nc, mc: setup.mc }.into());
        }
        let t: SchemeTranscript<S> = TranscriptFile {
            header: Header {
                scheme: self.target.scheme,
                variant: self.target.variant,
                level,
                nc,
                pk: setup.pk,
                seed_commitment,
            },
            board: BulletinBoard::new(),
            result: None,
        };
        Ok((to_json(&t), to_json(&setup.sk)))
    }

    fn vote(&self, election: &str, v: u64, rng: &mut dyn RngCore) -> Result<String, BoardError> {
        let t = self.parse(election)?;
        let b = self.scheme.vote(&t.header.pk, v, t.header.nc, rng)?;
        Ok(serde_json::to_string(&b).expect("serializable"))
    }

    fn append(&self, store: &Path, ballot: &str) -> Result<usize, BoardError> {
        let b: S::Ballot = parse_json("ballot", ballot.trim())?;
        BoardStore::<S::Ballot>::open(store)?.append(b)
    }

    fn tally(&self, election: &str, secret: &str, store: &Path, rng: &mut dyn RngCore) -> Result<String, BoardError> {
        let mut t = self.parse(election)?;
        if t.result.is_some() {
            return Err(BoardError::Invalid("election is already tallied".into()));
        }
        let sk: S::SecretKey = parse_json("secret key", secret)?;
        let board = BoardStore::<S::Ballot>::open(store)?.board().clone();
        let (outcome, proof) = self.scheme.tally(&sk, &board, t.header.nc, rng)?;
        t.board = board;
        t.result = Some(TallyRecord { outcome, proof });
        Ok(to_json(&t))
    }

    fn verify(&self, transcript: &str) -> Result<AuditReport, BoardError> {
        let t = self.parse(transcript)?;
        Ok(match &t.result {
            Some(r) => self.scheme.audit(&t.header.pk, &t.board, t.header.nc, &r.outcome, &r.proof),
            None => {
                let mut rep = AuditReport::default();
                rep.push("tally-present", false, Some("transcript has no result section".into()));
                rep
            }
        })
    }
}

/// The scheme named by `target`. For Enc2Vote, weak is plain ElGamal and
/// strong the proof-carrying encryption.
pub fn election_for(target: Target) -> Box<dyn DynElection> {
    match (target.scheme, target.variant) {
        (SchemeKind::Enc2vote, FsMode::Weak) => Box::new(Erased {
            scheme: make_enc2vote(make_plain_elgamal()),
            target,
        }),
        (SchemeKind::Enc2vote, FsMode::Strong) => Box::new(Erased {
            scheme: make_enc2vote(make_nm_elgamal()),
            target,
        }),
        (SchemeKind::Helios, fs) => Box::new(Erased {
            scheme: helios_for(fs),
            target,
        }),
        (SchemeKind::HeliosMixnet, fs) => Box::new(Erased {
            scheme: mixnet_for(fs),
            target,
        }),
    }
}

/// Builds a transcript from parts, e.g. an adversary's claim.
pub fn transcript_for<S: ElectionScheme>(
    target: Target,
    level: SecurityLevel,
    seed_commitment: String,
    pk: S::PublicKey,
    nc: u64,
    board: BulletinBoard<S::Ballot>,
    result: Option<(Outcome, S::TallyProof)>,
) -> SchemeTranscript<S> {
    TranscriptFile {
        header: Header {
            scheme: target.scheme,
            variant: target.variant,
            level,
            nc,
            pk,
            seed_commitment,
        },
        board,
        result: result.map(|(outcome, proof)| TallyRecord { outcome, proof }),
    }
}

/// Runs one of the soundness forgers against `target` and returns its
/// claim as a transcript.
pub fn forged_transcript(
    name: &str,
    target: Target,
    level: SecurityLevel,
    seed: &Seed,
) -> Result<String, BoardError> {
    let mut rng = seed.rng();
    let commitment = seed.commitment();
    let invalid = |e: String| BoardError::Invalid(e);
    match (name, target.scheme) {
        ("helios-forger", SchemeKind::Helios) => {
            let scheme = helios_for(target.variant);
            let c = HeliosForger.forge(&scheme, level, &mut rng).map_err(invalid)?;
            let t = transcript_for::<Helios>(target, level, commitment, c.pk, c.nc, c.bb, Some((c.outcome, c.proof)));
            Ok(to_json(&t))
        }
        ("mixnet-forger", SchemeKind::HeliosMixnet) => {
            let scheme = mixnet_for(target.variant);
            let c = MixnetForger::default().forge(&scheme, level, &mut rng).map_err(invalid)?;
            let t = transcript_for::<HeliosMixnet>(target, level, commitment, c.pk, c.nc, c.bb, Some((c.outcome, c.proof)));
            Ok(to_json(&t))
        }
        _ => Err(BoardError::Invalid(format!("`{name}` against {target} does not produce a transcript"))),
    }
}
