//! Command-line front end.
//!
//! Exit codes: 0 success or valid, 1 rejected signature or failed
//! experiment, 2 malformed or unreadable input, 3 usage error, 4 output
//! could not be written.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::commit::CommitmentScheme;
use crate::error::Error;
use crate::fiatshamir::{
    decode_public_key, decode_secret_key, encode_public_key, encode_secret_key, sign,
    verify_signature, CommitmentChoice, ParamsBlock, Signature,
};
use crate::harness::{self, SimulatorVariant, Summary};
use crate::params::{self, SecurityTarget};
use crate::primitives::{Shake256, Xof};
use crate::stern::{keygen, validate_keypair, Stern, SternParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_WRITE: i32 = 4;

/// Below this λ a warning banner is printed.
pub const TOY_LAMBDA: u32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "sternfs",
    version,
    about = "Stern/Fiat-Shamir code-based signatures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Sign a message file.
    Sign(SignArgs),
    /// Verify a signature; exits 0 iff valid.
    Verify(VerifyArgs),
    /// Repetition count and commitment size for a security level.
    Params(ParamsArgs),
    /// Run an experiment and print a key=value summary.
    Harness(HarnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommitmentKindArg {
    Hash,
    Feistel,
    Srf,
}

#[derive(Debug, Clone, Args)]
pub struct CommitmentArgs {
    /// Commitment function.
    #[arg(long, value_enum, default_value_t = CommitmentKindArg::Hash)]
    pub commitment: CommitmentKindArg,
    /// Public key of the Feistel or SRF commitment, hex.
    #[arg(long, value_name = "HEX", default_value = "")]
    pub commit_key: String,
    /// log2 of the SRF range.
    #[arg(long, default_value_t = 40)]
    pub srf_range_log2: u32,
}

impl CommitmentArgs {
    fn choice(&self) -> Result<CommitmentChoice, CliError> {
        let key = hex::decode(&self.commit_key)
            .map_err(|e| CliError::Usage(format!("--commit-key: {e}")))?;
        Ok(match self.commitment {
            CommitmentKindArg::Hash => CommitmentChoice::Hash,
            CommitmentKindArg::Feistel => CommitmentChoice::Feistel { key },
            CommitmentKindArg::Srf => CommitmentChoice::Srf {
                key,
                range_log2: self.srf_range_log2,
            },
        })
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct LevelArgs {
    /// Security level in bits; derives (n, k, w), r and the commitment size.
    #[arg(long)]
    pub lambda: Option<u32>,
    /// Explicit parameters `n,k,w,r`.
    #[arg(long, value_name = "n,k,w,r")]
    pub params: Option<String>,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub level: LevelArgs,
    /// Commitment length in bytes for explicit parameters.
    #[arg(long, default_value_t = 32)]
    pub commit_bytes: usize,
    #[command(flatten)]
    pub commitment: CommitmentArgs,
    #[arg(long, value_name = "PATH")]
    pub out_pk: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub out_sk: PathBuf,
    /// Deterministic seed, at least 16 bytes of hex.
    #[arg(long, value_name = "HEX")]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct SignArgs {
    #[arg(long, value_name = "PATH")]
    pub pk: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub sk: PathBuf,
    #[arg(long = "msg", value_name = "PATH")]
    pub message: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    #[command(flatten)]
    pub commitment: CommitmentArgs,
    #[arg(long, value_name = "HEX")]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "PATH")]
    pub pk: PathBuf,
    #[arg(long = "msg", value_name = "PATH")]
    pub message: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub sig: PathBuf,
    #[command(flatten)]
    pub commitment: CommitmentArgs,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub lambda: u32,
    /// Special-soundness arity.
    #[arg(long, default_value_t = 3)]
    pub gamma: u32,
    #[arg(long, default_value_t = 3)]
    pub challenge_size: u32,
    /// Defaults to lambda.
    #[arg(long)]
    pub log2_qh: Option<u32>,
    /// Defaults to lambda.
    #[arg(long)]
    pub log2_qg: Option<u32>,
    /// Evaluate the bound at this r instead of the recommended one.
    #[arg(long)]
    pub r: Option<u64>,
    /// Evaluate the bound at this commitment size instead of 3·lambda.
    #[arg(long)]
    pub commit_bits: Option<u64>,
    /// Print only the key=value block.
    #[arg(long)]
    pub kv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Completeness,
    Extract,
    Hvzk,
    SrfCollision,
    SubsetLemma,
    FeistelBijectivity,
    Forgery,
}

#[derive(Debug, Args)]
pub struct HarnessArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_name = "HEX")]
    pub seed: Option<String>,
    /// `n,k,w,r`; `r` may be omitted for hvzk.
    #[arg(long, value_name = "n,k,w,r")]
    pub params: Option<String>,
    #[command(flatten)]
    pub commitment: CommitmentArgs,
    /// Extractor arity.
    #[arg(long, default_value_t = 3)]
    pub gamma: usize,
    /// Hash-query budget per forgery run.
    #[arg(long, default_value_t = 1000)]
    pub queries: usize,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_MALFORMED,
            CliError::Write(_) => EXIT_WRITE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Write(m) => m,
        }
    }
}

fn input_err(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{}: {e}", path.display()))
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Output of one command: text for stdout and stderr plus an exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    let mut out = Outcome::default();
    let res = match &cli.command {
        Command::Keygen(a) => cmd_keygen(a, &mut out),
        Command::Sign(a) => cmd_sign(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
        Command::Params(a) => cmd_params(a, &mut out),
        Command::Harness(a) => cmd_harness(a, &mut out),
    };
    match res {
        Ok(code) => out.code = code,
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {}", e.message());
            out.code = e.exit_code();
        }
    }
    out
}

/// `(n, k, w)` for a security level: `n = 16λ`, `k = n/2`, `w = ⌈0.11·n⌉`.
pub fn code_params_for(lambda: u32) -> Result<SternParams, Error> {
    let n = 16 * lambda as usize;
    let w = (11 * n).div_ceil(100);
    SternParams::new(n, n / 2, w)
}

/// The full parameter block for a security level.
pub fn params_for_lambda(lambda: u32) -> Result<ParamsBlock, Error> {
    let stern = code_params_for(lambda)?;
    let r = params::repetitions_for(lambda, 3, 3)?;
    let r = usize::try_from(r).map_err(|_| Error::InvalidParameter("r too large".into()))?;
    ParamsBlock::new(stern, r, params::commit_bytes_for(lambda)?)
}

/// Parses `n,k,w,r`, or `n,k,w` when `r_optional`.
pub fn parse_params(s: &str, r_optional: bool) -> Result<(SternParams, Option<usize>), CliError> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--params {s:?}: {e}")))?;
    let (stern, r) = match parts.as_slice() {
        [n, k, w, r] => ((*n, *k, *w), Some(*r)),
        [n, k, w] if r_optional => ((*n, *k, *w), None),
        _ => return Err(CliError::Usage(format!("--params {s:?}: expected n,k,w,r"))),
    };
    let stern = SternParams::new(stern.0, stern.1, stern.2).map_err(usage)?;
    Ok((stern, r))
}

/// Minimum seed length in bytes.
pub const MIN_SEED_BYTES: usize = 16;

/// A ChaCha20 seed from at least [`MIN_SEED_BYTES`] bytes of caller seed.
pub fn seed_from_bytes(bytes: &[u8]) -> Result<[u8; 32], Error> {
    if bytes.len() < MIN_SEED_BYTES {
        return Err(Error::InvalidParameter(format!(
            "seed needs at least {MIN_SEED_BYTES} bytes, got {}",
            bytes.len()
        )));
    }
    Ok(Shake256
        .hash(&[b"sternfs/cli-seed", bytes], 32)
        .try_into()
        .expect("32 bytes"))
}

/// Hex seed of at least 16 bytes, hashed to a ChaCha20 seed.
pub fn parse_seed(hex_seed: &str) -> Result<[u8; 32], CliError> {
    let bytes = hex::decode(hex_seed).map_err(|e| CliError::Usage(format!("--seed: {e}")))?;
    seed_from_bytes(&bytes).map_err(|e| CliError::Usage(format!("--seed: {e}")))
}

fn rng_from(seed: Option<&str>) -> Result<ChaCha20Rng, CliError> {
    Ok(match seed {
        Some(s) => ChaCha20Rng::from_seed(parse_seed(s)?),
        None => ChaCha20Rng::from_entropy(),
    })
}

fn banner(out: &mut Outcome, lambda: Option<u32>) {
    let reason = match lambda {
        Some(l) if l < TOY_LAMBDA => format!("lambda = {l} is a toy security level"),
        Some(_) => return,
        None => "explicit parameters are not checked against any security level".to_string(),
    };
    let _ = writeln!(
        out.stderr,
        "**************************************************************"
    );
    let _ = writeln!(out.stderr, "WARNING: {reason}.");
    let _ = writeln!(
        out.stderr,
        "Keys and signatures made this way offer no real security."
    );
    let _ = writeln!(
        out.stderr,
        "**************************************************************"
    );
}

/// PK fingerprint: the first 16 bytes of SHAKE256 over the encoded key.
pub fn fingerprint(pk_bytes: &[u8]) -> String {
    hex::encode(Shake256.hash(&[b"sternfs/fingerprint", pk_bytes], 16))
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes every file to a temporary sibling first, then renames them into
/// place. A failure before the renames leaves no file behind. Files not
/// marked secret are made world-readable; secret ones stay owner-only.
pub fn write_atomically(files: &[(&Path, &[u8], bool)]) -> Result<(), CliError> {
    let werr = |p: &Path, e: std::io::Error| CliError::Write(format!("{}: {e}", p.display()));
    let mut staged = Vec::with_capacity(files.len());
    for &(path, bytes, secret) in files {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| werr(path, e))?;
        tmp.write_all(bytes).map_err(|e| werr(path, e))?;
        if !secret {
            make_public(tmp.as_file()).map_err(|e| werr(path, e))?;
        }
        tmp.as_file().sync_all().map_err(|e| werr(path, e))?;
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| werr(path, e.error))?;
    }
    Ok(())
}

#[cfg(unix)]
fn make_public(f: &std::fs::File) -> std::io::Result<()> {
    use std::os::unix::fs::PermissionsExt;
    f.set_permissions(std::fs::Permissions::from_mode(0o644))
}

#[cfg(not(unix))]
fn make_public(_: &std::fs::File) -> std::io::Result<()> {
    Ok(())
}

fn commitment_for(
    args: &CommitmentArgs,
    params: &ParamsBlock,
) -> Result<CommitmentScheme, CliError> {
    args.choice()?
        .build(&params.stern, usize::from(params.commit_len))
        .map_err(usage)
}

fn cmd_keygen(a: &KeygenArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let choice = a.commitment.choice()?;
    let mut params = match (&a.level.lambda, &a.level.params) {
        (Some(l), None) => params_for_lambda(*l).map_err(usage)?,
        (None, Some(p)) => {
            let (stern, r) = parse_params(p, false)?;
            ParamsBlock::new(stern, r.expect("r required"), a.commit_bytes).map_err(usage)?
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --lambda and --params".into(),
            ))
        }
    };
    if let Some(len) = choice.forced_commit_len(&params.stern) {
        params = ParamsBlock::new(params.stern, params.r(), len).map_err(usage)?;
    }
    choice
        .build(&params.stern, usize::from(params.commit_len))
        .map_err(usage)?;
    banner(out, a.level.lambda);
    let mut rng = rng_from(a.seed.as_deref())?;
    let (pk, sk) = keygen(&params.stern, &mut rng).map_err(usage)?;
    let pk_bytes = encode_public_key(&params, &pk);
    let sk_bytes = encode_secret_key(&params, &sk);
    write_atomically(&[(&a.out_pk, &pk_bytes, false), (&a.out_sk, &sk_bytes, true)])?;
    let p = params.stern;
    let _ = writeln!(out.stdout, "n={}", p.n);
    let _ = writeln!(out.stdout, "k={}", p.k);
    let _ = writeln!(out.stdout, "w={}", p.w);
    let _ = writeln!(out.stdout, "r={}", params.r());
    let _ = writeln!(out.stdout, "commit_bytes={}", params.commit_len);
    let _ = writeln!(out.stdout, "fingerprint={}", fingerprint(&pk_bytes));
    Ok(EXIT_OK)
}

fn cmd_sign(a: &SignArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let pk_bytes = read(&a.pk)?;
    let (params, pk) = decode_public_key(&pk_bytes).map_err(input_err(&a.pk))?;
    let (sk_params, sk) = decode_secret_key(&read(&a.sk)?).map_err(input_err(&a.sk))?;
    if sk_params != params || !validate_keypair(&params.stern, &pk, &sk) {
        return Err(CliError::Input("public and secret key do not match".into()));
    }
    let m = read(&a.message)?;
    let g = commitment_for(&a.commitment, &params)?;
    let mut rng = rng_from(a.seed.as_deref())?;
    let sig = sign(&params, &pk, &sk, &m, &mut rng, &g).map_err(usage)?;
    let bytes = sig.to_bytes();
    write_atomically(&[(&a.out, &bytes, false)])?;
    let _ = writeln!(out.stdout, "signature_bytes={}", bytes.len());
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let (params, pk) = decode_public_key(&read(&a.pk)?).map_err(input_err(&a.pk))?;
    let sig = Signature::from_bytes(&read(&a.sig)?).map_err(input_err(&a.sig))?;
    let m = read(&a.message)?;
    let g = commitment_for(&a.commitment, &params)?;
    if verify_signature(&params, &pk, &m, &sig, &g) {
        let _ = writeln!(out.stdout, "valid");
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out.stdout, "invalid");
        Ok(EXIT_REJECT)
    }
}

fn cmd_params(a: &ParamsArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let target = SecurityTarget {
        lambda: a.lambda,
        log2_qh: a.log2_qh.unwrap_or(a.lambda),
        log2_qg: a.log2_qg.unwrap_or(a.lambda),
        gamma: a.gamma,
        challenge_size: a.challenge_size,
    };
    let r = match a.r {
        Some(r) => r,
        None => params::repetitions_for_target(&target).map_err(usage)?,
    };
    let bits = match a.commit_bits {
        Some(b) => b,
        None => params::commit_bits_for(a.lambda).map_err(usage)?,
    };
    let report = params::bound_report(&target, r, bits).map_err(usage)?;
    if !a.kv {
        out.stdout.push_str(&report.render_table());
        if let Ok(code) = code_params_for(a.lambda) {
            let _ = writeln!(
                out.stdout,
                "  code parameters (heuristic) n={} k={} w={}",
                code.n, code.k, code.w
            );
        }
        out.stdout.push('\n');
    }
    out.stdout.push_str(&report.render_kv());
    if report.has_threshold_flag() {
        let _ = writeln!(out.stderr, "warning: a bound term equals 1 exactly");
    }
    Ok(EXIT_OK)
}

fn harness_seed(seed: Option<&str>) -> Result<u64, CliError> {
    Ok(match seed {
        Some(s) => {
            let b = parse_seed(s)?;
            u64::from_le_bytes(b[..8].try_into().expect("8 bytes"))
        }
        None => rand::random(),
    })
}

fn harness_params(
    a: &HarnessArgs,
    default: (usize, usize, usize, usize),
) -> Result<(SternParams, usize), CliError> {
    match &a.params {
        Some(p) => {
            let (stern, r) = parse_params(p, true)?;
            Ok((stern, r.unwrap_or(default.3)))
        }
        None => Ok((
            SternParams::new(default.0, default.1, default.2).map_err(usage)?,
            default.3,
        )),
    }
}

fn cmd_harness(a: &HarnessArgs, out: &mut Outcome) -> Result<i32, CliError> {
    let seed = harness_seed(a.seed.as_deref())?;
    let summary = match a.experiment {
        Experiment::Completeness => {
            let (stern, r) = harness_params(a, (32, 16, 4, 20))?;
            let trials = a.trials.unwrap_or(10_000);
            let choice = a.commitment.choice()?;
            let len = choice.forced_commit_len(&stern).unwrap_or(24);
            let params = ParamsBlock::new(stern, r, len).map_err(usage)?;
            let key_per_trial =
                !matches!(choice, CommitmentChoice::Hash) && a.commitment.commit_key.is_empty();
            let build = |rng: &mut ChaCha20Rng| match &choice {
                CommitmentChoice::Feistel { .. } if key_per_trial => {
                    harness::random_feistel_commitment(&params.stern, rng)
                }
                c => c.build(&params.stern, len),
            };
            let rep = harness::completeness_suite(&params, trials, &build, seed).map_err(usage)?;
            Summary::new("completeness", rep.passed())
                .field("n", stern.n)
                .field("k", stern.k)
                .field("w", stern.w)
                .field("r", r)
                .field(
                    "commitment",
                    format!("{:?}", a.commitment.commitment).to_lowercase(),
                )
                .field("trials", rep.trials)
                .field("failures", rep.failures)
        }
        Experiment::Extract => {
            let (stern, r) = harness_params(a, (32, 16, 4, 20))?;
            let trials = a.trials.unwrap_or(1000);
            let rep = harness::extraction_suite(&stern, r, a.gamma, trials, seed).map_err(usage)?;
            Summary::new("extract", rep.passed())
                .field("n", stern.n)
                .field("k", stern.k)
                .field("w", stern.w)
                .field("r", r)
                .field("gamma", a.gamma)
                .field("trials", rep.trials)
                .field("found", rep.found)
                .field("recovered", rep.recovered)
                .field("recommit_exact", rep.recommit_exact)
        }
        Experiment::Hvzk => {
            let (stern, _) = harness_params(a, (4, 2, 1, 1))?;
            let scheme = Stern::new(stern).map_err(usage)?;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let (pk, sk) = keygen(&stern, &mut rng).map_err(usage)?;
            let exact = harness::hvzk_exact_distance(&scheme, &pk, &sk, SimulatorVariant::Correct)
                .map_err(usage)?;
            let mut s = Summary::new("hvzk", false)
                .field("n", stern.n)
                .field("k", stern.k)
                .field("w", stern.w);
            let mut ok = exact.iter().all(|(_, d)| d.is_zero());
            for (c, d) in &exact {
                s = s.field(&format!("distance_c{c}"), d);
            }
            if stern.w < stern.n {
                let broken =
                    harness::hvzk_exact_distance(&scheme, &pk, &sk, SimulatorVariant::BrokenWeight)
                        .map_err(usage)?;
                ok &= !broken[0].1.is_zero();
                s = s.field("broken_distance_c1", &broken[0].1);
            }
            s.passed = ok;
            s
        }
        Experiment::SrfCollision => {
            let trials = a.trials.unwrap_or(500);
            let rep = harness::srf_suite(&[8, 10, 12], trials, seed).map_err(usage)?;
            let mut s = Summary::new("srf-collision", rep.passed()).field("trials", trials);
            for st in &rep.stats {
                let root = (st.range as f64).sqrt();
                s = s.field(&format!("median_r{}", st.range), st.median).field(
                    &format!("window_r{}", st.range),
                    format!("[{},{}]", 0.5 * root, 4.0 * root),
                );
            }
            s.field("control_trials", rep.control_trials)
                .field("control_collisions", rep.control_collisions)
        }
        Experiment::SubsetLemma => {
            let samples = a.trials.unwrap_or(100_000) as u64;
            let mut s = Summary::new("subset-lemma", true);
            let mut total = 0;
            for r in 1..=2 {
                for gamma in 2..=3 {
                    let rep = harness::subset_lemma_exhaustive(3, r, gamma).map_err(usage)?;
                    s = s.field(&format!("exhaustive_r{r}_g{gamma}_checked"), rep.checked);
                    total += rep.counterexamples;
                }
            }
            for gamma in 2..=3 {
                let rep = harness::subset_lemma_random(3, 3, gamma, samples, seed ^ gamma as u64)
                    .map_err(usage)?;
                s = s.field(&format!("random_r3_g{gamma}_checked"), rep.checked);
                total += rep.counterexamples;
            }
            s.passed = total == 0;
            s.field("counterexamples", total)
        }
        Experiment::FeistelBijectivity => {
            let round_trips = a.trials.unwrap_or(100_000);
            let rep = harness::feistel_checks(10, round_trips, seed).map_err(usage)?;
            Summary::new("feistel-bijectivity", rep.passed())
                .field("keys", rep.keys)
                .field("bijective_keys", rep.bijective_keys)
                .field("round_trips", rep.round_trips)
                .field("round_trip_failures", rep.round_trip_failures)
                .field("zero_round_identity", rep.zero_round_identity)
        }
        Experiment::Forgery => {
            let (stern, r) = harness_params(a, (32, 16, 4, 40))?;
            let runs = a.trials.unwrap_or(100);
            let params = ParamsBlock::new(stern, r, 24).map_err(usage)?;
            let rep = harness::forgery_smoke(&params, a.queries, runs, seed).map_err(usage)?;
            Summary::new("forgery", rep.passed())
                .field("r", r)
                .field("queries", rep.queries)
                .field("runs", rep.runs)
                .field("forgeries", rep.forgeries)
                .field("best_matched", rep.best_matched)
                .field("expected_per_run", format!("{:.3e}", rep.expected_per_run))
        }
    };
    let summary = summary.field("seed", format!("{seed:016x}"));
    let _ = write!(out.stdout, "{summary}");
    Ok(if summary.passed { EXIT_OK } else { EXIT_REJECT })
}
