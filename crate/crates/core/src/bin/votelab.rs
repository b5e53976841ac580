//! votelab: run elections, audit transcripts, play security games.
//!
//! Exit codes: 0 success or accept, 1 verification rejected or an attack
//! or game missed its expected rate, 2 usage, input or I/O error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use votelab::adversaries::{attacks_named, find_attack, run_attack, AttackSpec, GameKind, ATTACKS};
use votelab::board::{election_for, forged_transcript, transcript_verify, BoardError};
use votelab::games::{write_record, TrialRecord};
use votelab::group::SecurityLevel;
use votelab::kind::{SchemeKind, Target};
use votelab::rng::Seed;
use votelab::sigma::FsMode;

#[derive(Parser)]
#[command(name = "votelab", version, about = "Verifiable voting schemes and their security games")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// enc2vote, helios or helios-mixnet
    #[arg(long, global = true)]
    scheme: Option<SchemeKind>,
    /// weak or strong (for verify: the mode to check in)
    #[arg(long, global = true)]
    variant: Option<FsMode>,
    /// toy, test or production
    #[arg(long, global = true, default_value = "test")]
    level: SecurityLevel,
    /// Hex seed; omitted means fresh entropy
    #[arg(long, global = true, value_parser = Seed::parse_hex)]
    seed: Option<Seed>,
    #[arg(long, global = true)]
    trials: Option<u64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Create an election: public transcript to --out, secret key to --key
    Keygen {
        #[arg(long)]
        nc: u64,
        #[arg(long)]
        key: Option<PathBuf>,
    },
    /// Cast a ballot; printed, or written to --out
    Vote {
        #[arg(long)]
        election: PathBuf,
        #[arg(long)]
        vote: u64,
    },
    /// Append a ballot (file or `-` for stdin) to a board log
    Append {
        #[arg(long)]
        election: PathBuf,
        #[arg(long)]
        board: PathBuf,
        #[arg(long, default_value = "-")]
        ballot: String,
    },
    /// Tally a board; the full transcript goes to --out
    Tally {
        #[arg(long)]
        election: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        board: PathBuf,
    },
    /// Audit a transcript
    Verify { transcript: PathBuf },
    /// Play a game with its baseline adversary
    Game { game: GameKind },
    /// Run a named attack (all its targets unless --scheme/--variant narrow it)
    Attack {
        name: Option<String>,
        /// List the registry
        #[arg(long)]
        list: bool,
        /// For forgers: write one forged transcript here
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

enum Failure {
    Rejected(String),
    Usage(String),
}

impl From<BoardError> for Failure {
    fn from(e: BoardError) -> Self {
        match e {
            BoardError::Duplicate(_) => Failure::Rejected(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn header_target(text: &str) -> Result<(Target, u64), Failure> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("election: {e}")))?;
    let h = &v["header"];
    let scheme = h["scheme"].as_str().and_then(|s| s.parse().ok());
    let variant = h["variant"].as_str().and_then(|s| s.parse().ok());
    match (scheme, variant, h["nc"].as_u64()) {
        (Some(s), Some(fs), Some(nc)) => Ok((Target::new(s, fs), nc)),
        _ => Err(Failure::Usage("election file has no valid header".into())),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn seed_of(c: &Common) -> Seed {
    c.seed.unwrap_or_else(Seed::from_entropy)
}

fn keygen(c: &Common, nc: u64, key: Option<PathBuf>) -> CmdResult {
    let target = Target::new(c.scheme.unwrap_or(SchemeKind::Helios), c.variant.unwrap_or(FsMode::Strong));
    let seed = seed_of(c);
    let (election, secret) = election_for(target).keygen(c.level, nc, seed.commitment(), &mut seed.rng())?;
    let out = c.out.clone().unwrap_or_else(|| "election.json".into());
    let key = key.unwrap_or_else(|| out.with_extension("key.json"));
    fs::write(&out, election + "\n")?;
    fs::write(&key, secret + "\n")?;
    eprintln!("{target} election for {nc} candidates: {} (secret key: {})", out.display(), key.display());
    Ok(())
}

fn vote(c: &Common, election: &Path, v: u64) -> CmdResult {
    let text = read(election)?;
    let (target, _) = header_target(&text)?;
    let ballot = election_for(target).vote(&text, v, &mut seed_of(c).rng())?;
    emit(c.out.as_deref(), &ballot)
}

fn append(election: &Path, board: &Path, ballot: &str) -> CmdResult {
    let (target, _) = header_target(&read(election)?)?;
    let text = if ballot == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        read(Path::new(ballot))?
    };
    let i = election_for(target).append(board, &text)?;
    println!("{i}");
    Ok(())
}

fn tally(c: &Common, election: &Path, key: &Path, board: &Path) -> CmdResult {
    let text = read(election)?;
    let (target, _) = header_target(&text)?;
    let t = election_for(target).tally(&text, &read(key)?, board, &mut seed_of(c).rng())?;
    let out = c.out.clone().unwrap_or_else(|| "transcript.json".into());
    fs::write(&out, t + "\n")?;
    eprintln!("transcript written to {}", out.display());
    Ok(())
}

fn verify(c: &Common, path: &Path) -> CmdResult {
    let r = transcript_verify(path, c.variant)?;
    println!("{r}");
    if r.accepted() {
        Ok(())
    } else {
        Err(Failure::Rejected(format!(
            "failed check: {}",
            r.report.first_failure().map(|f| f.name.as_str()).unwrap_or("?")
        )))
    }
}

/// Runs each spec, printing one line per target; false if any missed its
/// expected rate.
fn run_specs(c: &Common, specs: &[&AttackSpec], default_trials: u64) -> Result<bool, Failure> {
    let seed = seed_of(c);
    let trials = c.trials.unwrap_or(default_trials).max(1);
    let mut out = match &c.out {
        Some(p) => Some(BufWriter::new(File::create(p)?)),
        None => None,
    };
    let mut all_ok = true;
    for spec in specs {
        let mut io_err = None;
        let mut sink = |i: u64, r: &votelab::games::GameResult| {
            if let Some(w) = out.as_mut() {
                let rec = TrialRecord {
                    game: spec.game.to_string(),
                    scheme: spec.target.scheme.to_string(),
                    variant: spec.target.variant.to_string(),
                    seed: seed.to_hex(),
                    trial: i,
                    won: r.won,
                    detail: r.clone(),
                };
                if let Err(e) = write_record(w, &rec) {
                    io_err.get_or_insert(e);
                }
            }
        };
        let stats = run_attack(spec, c.level, trials, &seed, &mut sink).map_err(Failure::Usage)?;
        if let Some(e) = io_err {
            return Err(e.into());
        }
        let ok = spec.expected.holds(&stats);
        all_ok &= ok;
        println!(
            "{} {} vs {} [{}]: {stats}; expected {} -> {}",
            if ok { "PASS" } else { "FAIL" },
            spec.name,
            spec.target,
            spec.game,
            spec.expected,
            if ok { "as expected" } else { "UNEXPECTED" }
        );
    }
    if let Some(w) = out.as_mut() {
        w.flush()?;
    }
    eprintln!("seed {}", seed.to_hex());
    Ok(all_ok)
}

fn select<'a>(c: &Common, specs: Vec<&'a AttackSpec>) -> Vec<&'a AttackSpec> {
    specs
        .into_iter()
        .filter(|a| c.scheme.map_or(true, |s| a.target.scheme == s))
        .filter(|a| c.variant.map_or(true, |v| a.target.variant == v))
        .collect()
}

fn outcome(ok: bool, what: &str) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Rejected(format!("{what} missed its expected rate")))
    }
}

fn game(c: &Common, g: GameKind) -> CmdResult {
    let specs = select(c, attacks_named(g.baseline()));
    if specs.is_empty() {
        return Err(Failure::Usage(format!("{g} is not defined for the selected scheme")));
    }
    let ok = run_specs(c, &specs, 200)?;
    outcome(ok, "baseline")
}

fn attack(c: &Common, name: Option<String>, list: bool, transcript: Option<PathBuf>) -> CmdResult {
    if list || name.is_none() {
        for a in ATTACKS {
            println!("{:<20} {:<22} {:<25} {}", a.name, a.target.to_string(), a.game.to_string(), a.expected);
        }
        return Ok(());
    }
    let name = name.unwrap_or_default();
    if let Some(path) = transcript {
        let scheme = c.scheme.unwrap_or(if name == "mixnet-forger" { SchemeKind::HeliosMixnet } else { SchemeKind::Helios });
        let target = Target::new(scheme, c.variant.unwrap_or(FsMode::Weak));
        let t = forged_transcript(&name, target, c.level, &seed_of(c))?;
        fs::write(&path, t + "\n")?;
        eprintln!("forged {target} transcript written to {}", path.display());
        return Ok(());
    }
    let specs = match (c.scheme, c.variant) {
        (Some(s), Some(v)) => find_attack(&name, Target::new(s, v)).into_iter().collect(),
        _ => select(c, attacks_named(&name)),
    };
    if specs.is_empty() {
        return Err(Failure::Usage(format!("no attack `{name}` for the selected target; try `votelab attack --list`")));
    }
    let ok = run_specs(c, &specs, 100)?;
    outcome(ok, &name)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let r = match cli.cmd {
        Cmd::Keygen { nc, key } => keygen(c, nc, key),
        Cmd::Vote { election, vote: v } => vote(c, &election, v),
        Cmd::Append { election, board, ballot } => append(&election, &board, &ballot),
        Cmd::Tally { election, key, board } => tally(c, &election, &key, &board),
        Cmd::Verify { transcript } => verify(c, &transcript),
        Cmd::Game { game: g } => game(c, g),
        Cmd::Attack { name, list, transcript } => attack(c, name, list, transcript),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(m)) => {
            eprintln!("rejected: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
