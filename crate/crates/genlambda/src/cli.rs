//! Command-line surface: argument parsing, dispatch, and the modular
//! equation cache. The binary in `src/main.rs` is a thin wrapper around
//! [`run`]; everything here delegates to the library modules.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::cmeval::{self, CmPoint};
use crate::cosets::build_transversal;
use crate::cyclotomic::CycloContext;
use crate::error::Error;
use crate::modpoly::{modular_equation, ModularEquationFile};
use crate::numeric::{to_decimal_string, NumCtx};
use crate::phiexp::{lambda_slash, phi_slash, w_slash, LambdaParams, UnimodularMatrix};
use crate::Result;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GENLAMBDA_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "genlambda",
    version,
    about = "q-expansions of generalized lambda modular functions, their modular equations over Z[j], and algebraic-integer certificates at CM points"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the q-expansion of Λ_{k,ℓ}∘A, φ_s[A]₂, or W_a∘A.
    Expand(ExpandArgs),
    /// Emit the coset transversal of SL₂(Z) mod Γ₁(N){±E₂} as JSON.
    Cosets(CosetsArgs),
    /// Compute the modular equation Φ(X,j) and write it as JSON.
    Modpoly(ModpolyArgs),
    /// Recompute a stored modular equation and compare byte-for-byte.
    Verify(VerifyArgs),
    /// Evaluate Λ_{k,ℓ} and j at an imaginary quadratic point; optionally
    /// certify the value as an algebraic integer.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Level N >= 7.
    #[arg(long)]
    pub level: u32,
    /// First λ parameter k (with --l).
    #[arg(long, conflicts_with_all = ["phi", "w"])]
    pub k: Option<i64>,
    /// Second λ parameter ℓ (with --k).
    #[arg(long, conflicts_with_all = ["phi", "w"])]
    pub l: Option<i64>,
    /// Expand a single φ_s[A]₂ instead of a quotient.
    #[arg(long)]
    pub phi: Option<i64>,
    /// Expand W_[a1,a2,a3]∘A; comma-separated triple.
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<i64>>,
    /// Matrix entries a,b,c,d of A in SL₂(Z); defaults to the identity.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub matrix: Option<Vec<i64>>,
    /// Number of q-coefficients to report (default 3N).
    #[arg(long)]
    pub prec: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct CosetsArgs {
    /// Level N >= 7.
    #[arg(long)]
    pub level: u32,
}

#[derive(Debug, Args)]
pub struct ModpolyArgs {
    #[arg(long)]
    pub level: u32,
    #[arg(long)]
    pub k: i64,
    #[arg(long)]
    pub l: i64,
    /// Output file for the equation JSON.
    #[arg(long)]
    pub out: PathBuf,
    /// Cache directory (default .genlambda-cache, or $GENLAMBDA_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Skip the cache entirely.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Previously written modular-equation JSON.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub level: u32,
    #[arg(long)]
    pub k: i64,
    #[arg(long)]
    pub l: i64,
    /// Negative discriminant D ≡ 0,1 mod 4; evaluates at α = (D+√D)/2.
    #[arg(long)]
    pub disc: i64,
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    pub bits: u32,
    /// Also certify the value as an algebraic integer (needs --modpoly).
    #[arg(long, requires = "modpoly")]
    pub certify: bool,
    /// Modular-equation JSON produced by the modpoly subcommand.
    #[arg(long)]
    pub modpoly: Option<PathBuf>,
}

/// Execute a parsed command line; returns the process exit code
/// (0 success, 2 validation error, 3 precision exhaustion, 1 otherwise).
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Expand(args) => cmd_expand(args),
        Command::Cosets(args) => cmd_cosets(args),
        Command::Modpoly(args) => cmd_modpoly(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Eval(args) => cmd_eval(args),
    }
}

fn parse_matrix(entries: &Option<Vec<i64>>) -> Result<UnimodularMatrix> {
    match entries {
        None => Ok(UnimodularMatrix::identity()),
        Some(v) if v.len() == 4 => UnimodularMatrix::new(v[0], v[1], v[2], v[3]),
        Some(v) => Err(Error::InvalidParameter(format!(
            "--matrix needs four comma-separated entries a,b,c,d, got {}",
            v.len()
        ))),
    }
}

fn cmd_expand(args: ExpandArgs) -> Result<()> {
    let ctx = CycloContext::new(args.level)?;
    let a = parse_matrix(&args.matrix)?;
    let prec = args.prec.unwrap_or(3 * args.level as i64);
    let series = if let Some(s) = args.phi {
        phi_slash(s, &a, prec, &ctx)?
    } else if let Some(w) = &args.w {
        if w.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "--w needs three comma-separated entries a1,a2,a3, got {}",
                w.len()
            )));
        }
        w_slash(w[0], w[1], w[2], &a, prec, &ctx)?
    } else {
        match (args.k, args.l) {
            (Some(k), Some(l)) => {
                let p = LambdaParams::new(args.level, k, l)?;
                lambda_slash(&p, &a, prec, &ctx)?
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "expand needs either --k and --l, or --phi, or --w".into(),
                ))
            }
        }
    };
    match args.format {
        OutputFormat::Text => println!("{series}"),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&series.to_json())?),
    }
    Ok(())
}

fn cmd_cosets(args: CosetsArgs) -> Result<()> {
    let tr = build_transversal(args.level)?;
    let doc = json!({
        "level": args.level,
        "count": tr.len(),
        "elements": tr.elements(),
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(())
}

fn cache_dir(flag: &Option<PathBuf>) -> PathBuf {
    if let Some(d) = flag {
        return d.clone();
    }
    if let Ok(d) = std::env::var(CACHE_DIR_ENV) {
        return PathBuf::from(d);
    }
    PathBuf::from(".genlambda-cache")
}

fn cache_key(level: u32, k: i64, l: i64) -> String {
    format!("modpoly-N{level}-k{k}-l{l}-v{}.json", env!("CARGO_PKG_VERSION"))
}

fn checksum(payload: &str) -> String {
    let mut h = Sha256::new();
    h.update(payload.as_bytes());
    h.finalize().iter().fold(String::new(), |mut s, b| {
        s.push_str(&format!("{b:02x}"));
        s
    })
}

fn cache_read(path: &Path) -> Result<Option<ModularEquationFile>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)?;
    let wrapper: serde_json::Value = serde_json::from_str(&text)?;
    let payload = wrapper
        .get("payload")
        .ok_or_else(|| Error::CacheCorrupt("missing payload".into()))?;
    let stored = wrapper
        .get("sha256")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::CacheCorrupt("missing checksum".into()))?;
    let canonical = serde_json::to_string(payload)?;
    if checksum(&canonical) != stored {
        return Err(Error::CacheCorrupt(format!("checksum mismatch in {}", path.display())));
    }
    Ok(Some(serde_json::from_value(payload.clone())?))
}

fn cache_write(path: &Path, file: &ModularEquationFile) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let payload = serde_json::to_value(file)?;
    let canonical = serde_json::to_string(&payload)?;
    let wrapper = json!({ "sha256": checksum(&canonical), "payload": payload });
    std::fs::write(path, serde_json::to_string_pretty(&wrapper)?)?;
    Ok(())
}

fn compute_modpoly_file(level: u32, k: i64, l: i64) -> Result<ModularEquationFile> {
    let ctx = CycloContext::new(level)?;
    let p = LambdaParams::new(level, k, l)?;
    let me = modular_equation(&p, &ctx)?;
    me.to_file()
}

fn cmd_modpoly(args: ModpolyArgs) -> Result<()> {
    let file = if args.no_cache {
        compute_modpoly_file(args.level, args.k, args.l)?
    } else {
        let key = cache_dir(&args.cache_dir).join(cache_key(args.level, args.k, args.l));
        match cache_read(&key) {
            Ok(Some(f)) => f,
            Ok(None) => {
                let f = compute_modpoly_file(args.level, args.k, args.l)?;
                cache_write(&key, &f)?;
                f
            }
            Err(e) => {
                eprintln!("warning: {e}; recomputing");
                let f = compute_modpoly_file(args.level, args.k, args.l)?;
                cache_write(&key, &f)?;
                f
            }
        }
    };
    std::fs::write(&args.out, serde_json::to_string_pretty(&file)?)?;
    println!(
        "wrote modular equation for (N,k,l)=({},{},{}): degree {}, verified_integer={}",
        file.level, file.k, file.l, file.degree, file.verified_integer
    );
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)?;
    let stored: ModularEquationFile = serde_json::from_str(&text)?;
    let recomputed = compute_modpoly_file(stored.level, stored.k, stored.l)?;
    let a = serde_json::to_string(&stored)?;
    let b = serde_json::to_string(&recomputed)?;
    if a == b {
        println!("OK");
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "stored equation in {} does not match a fresh computation",
            args.input.display()
        )))
    }
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let p = LambdaParams::new(args.level, args.k, args.l)?;
    let pt = CmPoint::from_discriminant(args.disc)?;
    let mut nc = NumCtx::new(args.bits);
    let tau = pt.embed(&mut nc);
    let lambda = cmeval::eval_lambda_at(&p, &tau, &mut nc)?;
    let jv = cmeval::eval_j(&tau, &mut nc)?;

    if args.certify {
        let path = args.modpoly.as_ref().expect("clap enforces --modpoly");
        let file: ModularEquationFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let cert = cmeval::certify_integral(&p, &pt, &file, args.bits)?;
        println!("{}", serde_json::to_string_pretty(&cert)?);
    } else {
        let doc = json!({
            "level": args.level,
            "k": args.k,
            "l": args.l,
            "discriminant": args.disc,
            "bits": args.bits,
            "lambda_re": to_decimal_string(&lambda.re, 50),
            "lambda_im": to_decimal_string(&lambda.im, 50),
            "j_re": to_decimal_string(&jv.re, 40),
            "j_im": to_decimal_string(&jv.im, 40),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    }
    Ok(())
}
