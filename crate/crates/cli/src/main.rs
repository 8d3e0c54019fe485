//! `mst3` — key generation, encryption, and decryption over generalized
//! Suzuki 2-groups, plus toy-scale key-recovery attack demonstrations and a
//! self-check of the embedded reference vectors.
//!
//! Every randomized subcommand takes a mandatory `--seed` and expands it
//! through a fixed ChaCha12 stream, so runs are reproducible byte for byte.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use std::{fmt, fs};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use suzuki_mst3::field::FieldSpec;
use suzuki_mst3::group::GroupParams;
use suzuki_mst3::logsig::SignatureType;
use suzuki_mst3::{attack, keyfile, legacy, message, mst3, worked_example, Error};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FORMAT: u8 = 3;
const EXIT_INTEGRITY: u8 = 4;
const EXIT_GUARD: u8 = 5;

#[derive(Parser)]
#[command(
    name = "mst3",
    version,
    about = "MST3-style public-key encryption over generalized Suzuki 2-groups",
    after_help = "Exit codes: 0 success; 1 reference-check failure; 2 usage error; \
3 file/format error; 4 integrity failure; 5 guard refusal (attack space too large).\n\
All randomness expands from --seed through a fixed ChaCha12 stream, so equal seeds \
reproduce identical files."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair and write the public and private key files.
    Keygen(KeygenArgs),
    /// Encrypt one message block with a public key file.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file with both key files.
    Decrypt(DecryptArgs),
    /// Run a key-recovery attack against a freshly generated toy instance.
    Attack(AttackArgs),
    /// Verify the embedded reference vectors and print one line per check.
    PaperExample,
}

#[derive(Args)]
struct ParamArgs {
    /// Field degree n of GF(2^n).
    #[arg(long)]
    n: u32,

    /// Number of group coordinates l.
    #[arg(long)]
    l: u32,

    /// Signature types as semicolon-separated groups of comma-separated
    /// block sizes, e.g. "4,4,8;8,4,4;4,8,4;4,4,8". One group per
    /// coordinate (per stage for the legacy attack), or a single group
    /// applied to all. Default: 16-row blocks with a remainder block.
    #[arg(long, value_name = "r,r,...;...")]
    types: Option<String>,
}

#[derive(Args)]
struct KeygenArgs {
    #[command(flatten)]
    params: ParamArgs,

    /// RNG seed; equal seeds give byte-identical key files.
    #[arg(long)]
    seed: u64,

    /// Output path for the public key file.
    #[arg(long = "pub", value_name = "PATH")]
    public: PathBuf,

    /// Output path for the private key file.
    #[arg(long = "priv", value_name = "PATH")]
    private: PathBuf,
}

#[derive(Args)]
struct EncryptArgs {
    /// Public key file.
    #[arg(long = "pub", value_name = "PATH")]
    public: PathBuf,

    /// RNG seed for the encryption randomness.
    #[arg(long)]
    seed: u64,

    /// Input file holding the message as one hex block of exactly
    /// ceil(l*n/4) digits (pad bits zero).
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,

    /// Output path for the ciphertext file.
    #[arg(long = "out", value_name = "PATH")]
    output: PathBuf,
}

#[derive(Args)]
struct DecryptArgs {
    /// Public key file (the covers are needed to peel the ciphertext).
    #[arg(long = "pub", value_name = "PATH")]
    public: PathBuf,

    /// Private key file.
    #[arg(long = "priv", value_name = "PATH")]
    private: PathBuf,

    /// Ciphertext file.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,

    /// Where to write the recovered message hex; stdout when omitted.
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AttackMode {
    /// Per-coordinate peeling attack against the legacy (center-based)
    /// scheme; expected cost (l/2)·q/2 trials.
    SequentialLegacy,
    /// Full q^l candidate scan against the improved scheme.
    Exhaustive,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Component {
    /// Message-carrying component (requires the known plaintext; the demo
    /// instance knows it).
    Y1,
    /// Masked-cover component.
    Y2,
    /// Plain-cover component.
    Y3,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Y1 => "y1",
            Component::Y2 => "y2",
            Component::Y3 => "y3",
        })
    }
}

#[derive(Args)]
struct AttackArgs {
    #[command(flatten)]
    params: ParamArgs,

    /// RNG seed used to generate the attacked instance.
    #[arg(long)]
    seed: u64,

    /// Which attack to run.
    #[arg(long, value_enum)]
    mode: AttackMode,

    /// Ciphertext component targeted by the exhaustive scan (default y2).
    #[arg(long, value_enum)]
    component: Option<Component>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn classify(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => EXIT_FORMAT,
        Error::Integrity(_) => EXIT_INTEGRITY,
        Error::GuardExceeded(_) => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

fn lib(err: Error) -> Failure {
    fail(classify(&err), err.to_string())
}

fn lib_in(path: &Path, err: Error) -> Failure {
    fail(classify(&err), format!("{}: {err}", path.display()))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

/// Parses `--types`: one group per signature, or a single group replicated.
fn parse_types(
    arg: Option<&str>,
    degree: u32,
    count: usize,
) -> Result<Vec<SignatureType>, Failure> {
    let Some(text) = arg else {
        let ty = SignatureType::chunked(degree).map_err(lib)?;
        return Ok(vec![ty; count]);
    };
    let parse_group = |group: &str| -> Result<SignatureType, Failure> {
        let radices = group
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| fail(EXIT_USAGE, format!("bad block size {tok:?} in --types")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SignatureType::from_radices(&radices).map_err(lib)
    };
    let groups: Vec<&str> = text.split(';').collect();
    if groups.len() == 1 {
        Ok(vec![parse_group(groups[0])?; count])
    } else if groups.len() == count {
        groups.iter().map(|g| parse_group(g)).collect()
    } else {
        Err(fail(
            EXIT_USAGE,
            format!(
                "--types has {} group(s); expected 1 or {count}",
                groups.len()
            ),
        ))
    }
}

fn group_params(n: u32, l: u32) -> Result<GroupParams, Failure> {
    let spec = FieldSpec::with_default_modulus(n).map_err(lib)?;
    GroupParams::new(spec, l).map_err(lib)
}

fn scheme_params(args: &ParamArgs) -> Result<mst3::SchemeParams, Failure> {
    let group = group_params(args.n, args.l)?;
    let types = parse_types(args.types.as_deref(), args.n, args.l as usize)?;
    mst3::SchemeParams::new(group, types).map_err(lib)
}

fn legacy_params(args: &ParamArgs) -> Result<legacy::LegacyParams, Failure> {
    let group = group_params(args.n, args.l)?;
    let types = parse_types(args.types.as_deref(), args.n, (args.l / 2).max(1) as usize)?;
    legacy::LegacyParams::new(group, types).map_err(lib)
}

fn cmd_keygen(args: &KeygenArgs) -> Result<(), Failure> {
    let params = scheme_params(&args.params)?;
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let pair = mst3::keygen(&params, &mut rng).map_err(lib)?;
    write_file(&args.public, &keyfile::write_public_key(&pair.public))?;
    write_file(&args.private, &keyfile::write_private_key(&pair.private))?;
    println!("wrote public key to {}", args.public.display());
    println!("wrote private key to {}", args.private.display());
    Ok(())
}

fn cmd_encrypt(args: &EncryptArgs) -> Result<(), Failure> {
    let text = read_file(&args.public)?;
    let pk = keyfile::parse_public_key(&text).map_err(|e| lib_in(&args.public, e))?;
    let hex = read_file(&args.input)?;
    let x = message::encode(pk.params().group(), hex.trim_end())
        .map_err(|e| lib_in(&args.input, e))?;
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let ct = mst3::encrypt(&pk, &x, &mut rng).map_err(lib)?;
    write_file(&args.output, &keyfile::write_ciphertext(&ct))?;
    println!("wrote ciphertext to {}", args.output.display());
    Ok(())
}

fn cmd_decrypt(args: &DecryptArgs) -> Result<(), Failure> {
    let text = read_file(&args.public)?;
    let pk = keyfile::parse_public_key(&text).map_err(|e| lib_in(&args.public, e))?;
    let text = read_file(&args.private)?;
    let sk = keyfile::parse_private_key(&text).map_err(|e| lib_in(&args.private, e))?;
    let text = read_file(&args.input)?;
    let ct = keyfile::parse_ciphertext(pk.params().group(), &text)
        .map_err(|e| lib_in(&args.input, e))?;
    let x = mst3::decrypt(&pk, &sk, &ct).map_err(lib)?;
    let hex = message::decode(&x);
    match &args.output {
        Some(path) => {
            write_file(path, &format!("{hex}\n"))?;
            println!("wrote recovered message to {}", path.display());
        }
        None => println!("{hex}"),
    }
    Ok(())
}

fn cmd_attack(args: &AttackArgs) -> Result<(), Failure> {
    match args.mode {
        AttackMode::SequentialLegacy => {
            if args.component.is_some() {
                return Err(fail(
                    EXIT_USAGE,
                    "--component only applies to --mode exhaustive",
                ));
            }
            attack_sequential(args)
        }
        AttackMode::Exhaustive => attack_exhaustive(args),
    }
}

fn attack_sequential(args: &AttackArgs) -> Result<(), Failure> {
    let params = legacy_params(&args.params)?;
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let pair = legacy::keygen(&params, &mut rng).map_err(lib)?;
    let x = params.random_message(&mut rng);
    let ct = legacy::encrypt(&pair.public, &x, &mut rng).map_err(lib)?;

    let start = Instant::now();
    let report = attack::sequential_legacy(&pair.public, &ct).map_err(lib)?;
    let elapsed = start.elapsed();

    println!(
        "mode: sequential-legacy against a fresh instance at n={} l={}",
        args.params.n, args.params.l
    );
    println!("recovered index tuple: {:?}", report.recovered.as_deref().unwrap_or(&[]));
    println!("trials: {}", report.trials);
    println!("matches: {}", report.matches);
    println!(
        "recovered message equals plaintext: {}",
        if report.recovered_message.as_ref() == Some(&x) { "yes" } else { "NO" }
    );
    println!("elapsed: {elapsed:.2?}");
    Ok(())
}

fn attack_exhaustive(args: &AttackArgs) -> Result<(), Failure> {
    let params = scheme_params(&args.params)?;
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let pair = mst3::keygen(&params, &mut rng).map_err(lib)?;
    let x = params.group().random(&mut rng);
    // The index tuple the encryption will draw, read from a fork of the
    // stream (the draw order is a documented part of the encrypt contract).
    let q = params.q();
    let mut probe = rng.clone();
    let r: Vec<u64> = (0..params.l()).map(|_| probe.random_range(0..q)).collect();
    let ct = mst3::encrypt(&pair.public, &x, &mut rng).map_err(lib)?;

    let component = args.component.unwrap_or(Component::Y2);
    let (target, known) = match component {
        Component::Y1 => (attack::TargetComponent::Y1, Some(&x)),
        Component::Y2 => (attack::TargetComponent::Y2, None),
        Component::Y3 => (attack::TargetComponent::Y3, None),
    };

    let start = Instant::now();
    let report = attack::exhaustive(&pair.public, &ct, target, known).map_err(lib)?;
    let elapsed = start.elapsed();

    let space = (q as u128).pow(params.l());
    println!(
        "mode: exhaustive over {component} against a fresh instance at n={} l={} ({space} candidate tuples)",
        args.params.n, args.params.l
    );
    println!("true index tuple: {r:?}");
    println!("recovered index tuple: {:?}", report.recovered.as_deref().unwrap_or(&[]));
    println!("trials: {}", report.trials);
    println!("matches: {}", report.matches);
    println!(
        "true tuple among matches: {}",
        if report.matched.contains(&r) { "yes" } else { "NO" }
    );
    println!("elapsed: {elapsed:.2?}");
    Ok(())
}

fn cmd_paper_example() -> Result<(), Failure> {
    let outcomes = worked_example::run_checks();
    for o in &outcomes {
        if o.passed {
            println!("PASS {}", o.name);
        } else {
            println!("FAIL {} — {}", o.name, o.detail);
        }
    }

    // Show the full factorization traces behind the factorization checks.
    let spec = FieldSpec::with_default_modulus(worked_example::DEGREE)
        .map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?;
    let sigs = worked_example::signatures().map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?;
    for (i, sig) in sigs.iter().enumerate() {
        let text = worked_example::VALUES[i];
        let value =
            worked_example::parse_bits(spec, text).map_err(|e| fail(EXIT_CHECK_FAILED, e.to_string()))?;
        println!("factorization trace, signature {} at {text}:", i + 1);
        match worked_example::trace_lines(sig, value) {
            Ok(lines) => {
                for line in lines {
                    println!("  {line}");
                }
            }
            Err(e) => println!("  trace failed: {e}"),
        }
    }

    if let Some(bad) = outcomes.iter().find(|o| !o.passed) {
        return Err(fail(
            EXIT_CHECK_FAILED,
            format!("reference check failed: {}", bad.name),
        ));
    }
    println!("all {} reference checks passed", outcomes.len());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Keygen(args) => cmd_keygen(args),
        Command::Encrypt(args) => cmd_encrypt(args),
        Command::Decrypt(args) => cmd_decrypt(args),
        Command::Attack(args) => cmd_attack(args),
        Command::PaperExample => cmd_paper_example(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
