//! `uuv` command-line front end.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when decoding or
//! decryption fails. Every command echoes its parsed configuration to stderr;
//! randomized commands take `--seed` and are bit-reproducible.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    expectation_closed_form, expectation_monte_carlo, fer_csv_header, fer_csv_row, fer_experiment,
    format_g, linear_grid, threshold_csv, threshold_curve, ChannelLabel, FerConfig,
};
use crate::channel::{trial_rng, QscParams};
use crate::galois::{Elem, FieldContext};
use crate::mceliece::{
    decrypt, encrypt_with, keygen, load_public, load_secret, read_elements, save_public, save_secret,
    write_elements, RatePlan,
};
use crate::uuv::{CodeNode, DecoderConfig};

#[derive(Debug, Parser)]
#[command(name = "uuv", version, about = "Soft-decision decoding of (U|U+V) Reed-Solomon codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Threshold curves as CSV: p,gs,uv1,uv2_paper,uv2_derived.
    Sweep(SweepArgs),
    /// Frame-error rate of the soft decoder over q-SC_p.
    Simulate(SimulateArgs),
    /// Decode one received word given in hex.
    Decode(DecodeArgs),
    /// Closed-form and Monte-Carlo channel expectations per label.
    Expectations(ExpectationsArgs),
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a message file.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file.
    Decrypt(DecryptArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    #[arg(long, default_value_t = 0.95)]
    pub p_max: f64,
    #[arg(long, default_value_t = 96)]
    pub steps: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Field size.
    #[arg(long, default_value_t = 256)]
    pub q: u32,
    /// Leaf length.
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    /// Recursion depth; 0 is a single RS code.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Dimension of the U leaf (depth 0 and 1).
    #[arg(long)]
    pub ku: Option<usize>,
    /// Dimension of the V leaf (depth 1).
    #[arg(long)]
    pub kv: Option<usize>,
    /// Comma-separated leaf dimensions in message order, 2^depth of them.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct DecoderArgs {
    /// Fixed multiplicity budget per leaf; adaptive when absent.
    #[arg(long)]
    pub s: Option<usize>,
    /// Adaptive ceiling as a multiple of the leaf length.
    #[arg(long, default_value_t = 10)]
    pub s_max_factor: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Also write the CSV to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    /// Crossover probability used to build the reliability matrix.
    #[arg(long)]
    pub p: f64,
    /// Received word, fixed-width hex per symbol (width of q - 1).
    #[arg(long)]
    pub word: String,
}

#[derive(Debug, Args)]
pub struct ExpectationsArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 4096)]
    pub q: u32,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(long, default_value_t = 256)]
    pub q: u32,
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    #[arg(long)]
    pub ku: Option<usize>,
    #[arg(long)]
    pub kv: Option<usize>,
    /// Choose k_u, k_v as 0.8x the depth-1 expectations at this p.
    #[arg(long)]
    pub p_design: Option<f64>,
    /// Error weight; calibrated when absent.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long = "pub")]
    pub public: PathBuf,
    #[arg(long = "sec")]
    pub secret: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    /// Message file: u32 count, then u16 symbols; count a multiple of k.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[arg(long = "sec")]
    pub secret: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

/// Parses `argv` (program name first), runs the command and returns the exit status.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let _ = writeln!(err, "# {:?}", cli.command);
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(CliError::Failure(m)) => {
            let _ = writeln!(err, "failure: {m}");
            2
        }
    }
}

/// Runs a command and writes what it returns to `out`.
fn run(cmd: Command, out: &mut dyn Write) -> CliResult {
    let text = match cmd {
        Command::Sweep(a) => with_jobs(a.jobs, || sweep(&a))?,
        Command::Simulate(a) => with_jobs(a.jobs, || simulate(&a))?,
        Command::Decode(a) => decode(&a)?,
        Command::Expectations(a) => with_jobs(a.jobs, || expectations(&a))?,
        Command::Keygen(a) => with_jobs(a.jobs, || keygen_cmd(&a))?,
        Command::Encrypt(a) => encrypt_cmd(&a)?,
        Command::Decrypt(a) => with_jobs(a.jobs, || decrypt_cmd(&a))?,
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> Result<R, CliError> + Send) -> Result<R, CliError> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()?
        .install(f)
}

type Output = Result<String, CliError>;

/// Writes `text` to `path` and returns nothing for stdout, or returns it.
fn to_file_or_stdout(path: Option<&Path>, text: String) -> Output {
    match path {
        Some(p) => {
            fs::write(p, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn sweep(a: &SweepArgs) -> Output {
    if !(0.0..=0.95).contains(&a.p_min) || !(a.p_min..=0.95).contains(&a.p_max) {
        return Err(CliError::Usage("need 0 <= p-min <= p-max <= 0.95".into()));
    }
    let grid = linear_grid(a.p_min, a.p_max, a.steps);
    to_file_or_stdout(a.out.as_deref(), threshold_csv(&threshold_curve(&grid)))
}

fn build_node(c: &CodeArgs) -> Result<CodeNode, CliError> {
    let dims = match (&c.dims, c.depth) {
        (Some(d), _) => d.clone(),
        (None, 0) => vec![c.ku.ok_or("--ku is required")?],
        (None, 1) => vec![
            c.ku.ok_or("--ku is required")?,
            c.kv.ok_or("--kv is required")?,
        ],
        (None, _) => return Err(CliError::Usage("depth >= 2 needs --dims".into())),
    };
    if dims.len() != 1 << c.depth {
        return Err(CliError::Usage(format!(
            "depth {} needs {} dimensions, got {}",
            c.depth,
            1 << c.depth,
            dims.len()
        )));
    }
    let f = Arc::new(FieldContext::new(c.q)?);
    Ok(CodeNode::balanced(f, c.n, &dims)?)
}

fn decoder_config(d: &DecoderArgs) -> DecoderConfig {
    DecoderConfig {
        s: d.s,
        s_max_factor: d.s_max_factor,
    }
}

fn simulate(a: &SimulateArgs) -> Output {
    let cfg = FerConfig {
        node: build_node(&a.code)?,
        p: a.p,
        trials: a.trials,
        seed: a.seed,
        decoder: decoder_config(&a.decoder),
    };
    let rec = fer_experiment(&cfg)?;
    let text = format!("{}\n{}\n", fer_csv_header(), fer_csv_row(&cfg, &rec));
    if let Some(p) = &a.out {
        fs::write(p, &text)?;
    }
    Ok(text)
}

fn hex_width(q: u32) -> usize {
    format!("{:x}", q - 1).len()
}

pub fn parse_hex_word(s: &str, q: u32) -> Result<Vec<Elem>, String> {
    let digits: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let w = hex_width(q);
    if digits.len() % w != 0 {
        return Err(format!("hex word length {} is not a multiple of {w}", digits.len()));
    }
    (0..digits.len() / w)
        .map(|i| {
            let chunk = &digits[i * w..(i + 1) * w];
            let v = u32::from_str_radix(chunk, 16).map_err(|e| format!("{chunk:?}: {e}"))?;
            if v < q {
                Ok(Elem(v as u16))
            } else {
                Err(format!("symbol {v} outside GF({q})"))
            }
        })
        .collect()
}

pub fn format_hex_word(xs: &[Elem], q: u32) -> String {
    let w = hex_width(q);
    xs.iter().map(|x| format!("{:0w$x}", x.0)).collect()
}

fn decode(a: &DecodeArgs) -> Output {
    let node = build_node(&a.code)?;
    let q = node.field().q();
    let word = parse_hex_word(&a.word, q).map_err(CliError::Usage)?;
    if word.len() != node.length() {
        return Err(CliError::Usage(format!(
            "word has {} symbols, code length is {}",
            word.len(),
            node.length()
        )));
    }
    let ch = QscParams::new(a.p, q)?;
    let decoded = node
        .soft_decode(&ch.matrix(&word), &decoder_config(&a.decoder))
        .map_err(|e| CliError::Failure(e.to_string()))?;
    Ok(format!(
        "message {}\ncodeword {}\n",
        format_hex_word(&decoded.message, q),
        format_hex_word(&decoded.codeword, q)
    ))
}

fn expectations(a: &ExpectationsArgs) -> Output {
    let mut text = String::from("label,p,q,paper,derived,mc,stderr\n");
    for label in ChannelLabel::ALL {
        let cf = expectation_closed_form(label, &a.p);
        let mc = expectation_monte_carlo(label, a.p, a.q, a.samples, a.seed)?;
        text.push_str(&format!(
            "{label},{},{},{},{},{},{}\n",
            format_g(a.p, 12),
            a.q,
            format_g(cf.paper, 12),
            format_g(cf.derived, 12),
            format_g(mc.mean, 12),
            format_g(mc.stderr, 12)
        ));
    }
    Ok(text)
}

fn keygen_cmd(a: &KeygenArgs) -> Output {
    let plan = match (a.ku, a.kv, a.p_design) {
        (Some(k_u), Some(k_v), None) => RatePlan::Dimensions { k_u, k_v },
        (None, None, Some(p)) => RatePlan::Design { p },
        _ => return Err(CliError::Usage("give either --ku and --kv, or --p-design".into())),
    };
    let (pk, sk) = keygen(a.q, a.n, plan, a.t, a.seed)?;
    fs::write(&a.public, save_public(&pk))?;
    fs::write(&a.secret, save_secret(&sk))?;
    Ok(String::new())
}

fn encrypt_cmd(a: &EncryptArgs) -> Output {
    let pk = load_public(&fs::read(&a.public)?)?;
    let msg = read_elements(&fs::read(&a.input)?)?;
    let k = pk.k();
    if msg.len() % k != 0 {
        return Err(CliError::Usage(format!(
            "message has {} symbols, not a multiple of k = {k}",
            msg.len()
        )));
    }
    if let Some(x) = msg.iter().find(|x| x.0 as u32 >= pk.field.q()) {
        return Err(CliError::Usage(format!("symbol {} outside GF({})", x.0, pk.field.q())));
    }
    let mut ct = Vec::with_capacity(msg.len() / k * 2 * pk.n);
    for (b, block) in msg.chunks(k).enumerate() {
        ct.extend(encrypt_with(&pk, block, &mut trial_rng(a.seed, b as u64))?);
    }
    fs::write(&a.out, write_elements(&ct))?;
    Ok(String::new())
}

fn decrypt_cmd(a: &DecryptArgs) -> Output {
    use rayon::prelude::*;

    let sk = load_secret(&fs::read(&a.secret)?)?;
    let ct = read_elements(&fs::read(&a.input)?)?;
    let len = 2 * sk.n;
    if ct.len() % len != 0 {
        return Err(CliError::Usage(format!(
            "ciphertext has {} symbols, not a multiple of 2n = {len}",
            ct.len()
        )));
    }
    let blocks: Vec<Vec<Elem>> = ct
        .par_chunks(len)
        .enumerate()
        .map(|(b, block)| {
            decrypt(&sk, block).map_err(|e| CliError::Failure(format!("block {b}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    fs::write(&a.out, write_elements(&blocks.concat()))?;
    Ok(String::new())
}
