//! The `quartic-sos` command line.
//!
//! Exit codes: 0 verified or true, 1 verified false or refuted, 2 undecided, 3 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::biquadratic::{dim_hessian, dim_nary, dim_symmetric};
use crate::certificates::{verify_sos_certificate, PsdVerdict, SosCertificate, SosVerdict};
use crate::corpus::{self, CorpusObject};
use crate::dual::RefutationVerdict;
use crate::error::{Error, Result};
use crate::face::{alpha5_lower_bound, face_report, AlphaVector, FaceParams};
use crate::form::{parse_expression, x_names, xy_names, Form, Monomial};
use crate::rational::{parse_rational, Rational};
use crate::search::{
    check_sos_biquadratic, check_sos_convexity, check_sos_with_multiplier, search_sos,
    SearchConfig, SearchOutcome, SearchStatus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Verified = 0,
    False = 1,
    Unknown = 2,
    InputError = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(name = "quartic-sos", version, about = "Exact SOS and sos-convexity certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the dimensions of n-ary biquadratic forms, symmetric ones, and Hessian ones.
    Dims { n: usize },
    /// Check a certificate file against a target file.
    Verify { target: PathBuf, certificate: PathBuf },
    /// Search for a certificate and write it to disk.
    Check(CheckArgs),
    /// Report on a member of the face T_{a,b}.
    Face(FaceArgs),
    /// Write a reference object to a file.
    Builtin { name: String, out: PathBuf },
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").required(true))]
struct CheckArgs {
    /// A `.form` or `.biq` file.
    input: PathBuf,
    /// Is the target a sum of squares?
    #[arg(long, group = "mode")]
    sos: bool,
    /// Is the quartic form sos-convex?
    #[arg(long, group = "mode")]
    sos_convex: bool,
    /// Is M times the target a sum of squares? M is an expression such as "x1^2+x2^2".
    #[arg(long, value_name = "M", group = "mode", allow_hyphen_values = true)]
    nonneg_mult: Option<String>,
    /// Certificate output path; defaults to the input path with extension `cert` (or
    /// `dual` for refutations).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50_000)]
    max_iterations: usize,
    /// Convergence tolerance of the numeric search.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Initial denominator bound for rounding.
    #[arg(long, default_value_t = 1 << 16)]
    denominator_bound: u64,
    /// Random starts for the zero search.
    #[arg(long, default_value_t = 16)]
    restarts: usize,
}

#[derive(Args, Debug)]
struct FaceArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, num_args = 5, allow_hyphen_values = true, value_names = ["A1", "A2", "A3", "A4", "A5"])]
    alphas: Vec<String>,
    /// Also compute the additional zero (requires alpha_5 at the bound).
    #[arg(long)]
    zero: bool,
    /// Residual tolerance for --zero.
    #[arg(long, default_value_t = 1e-9)]
    zero_tol: f64,
    /// Replace alpha_5 by its lower bound before reporting.
    #[arg(long)]
    bound: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    ExitStatus::Verified
                }
                _ => ExitStatus::InputError,
            };
        }
    };
    let result = match cli.command {
        Command::Dims { n } => cmd_dims(n, out),
        Command::Verify { target, certificate } => cmd_verify(&target, &certificate, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Face(a) => cmd_face(&a, out),
        Command::Builtin { name, out: path } => cmd_builtin(&name, &path, out),
    };
    match result {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::InputError
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::parse(0, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<CorpusObject> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    CorpusObject::from_text(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn cmd_dims(n: usize, out: &mut dyn Write) -> Result<ExitStatus> {
    let (a, b, c) = (dim_nary(n)?, dim_symmetric(n)?, dim_hessian(n)?);
    let _ = writeln!(out, "{a} {b} {c}");
    Ok(ExitStatus::Verified)
}

/// The target as a form, and the x-block size when it is biquadratic.
fn target_form(obj: CorpusObject) -> Result<(Form, Option<usize>)> {
    match obj {
        CorpusObject::Biquadratic(b) => Ok((b.to_form(), Some(b.n()))),
        CorpusObject::Form(f) => Ok((f, None)),
        _ => Err(Error::parse(1, "target must be a `form` or `biq` file")),
    }
}

fn monomial_text(m: &Monomial, split: Option<usize>) -> String {
    match split {
        Some(k) if 2 * k == m.n_vars() => m.display_with(&xy_names(k)),
        _ => m.display_with(&x_names(m.n_vars())),
    }
}

fn cmd_verify(target: &Path, cert: &Path, out: &mut dyn Write) -> Result<ExitStatus> {
    let t = read(target)?;
    match read(cert)? {
        CorpusObject::SosCertificate(c) => {
            let (f, split) = target_form(t)?;
            report_sos_verdict(&verify_sos_certificate(&f, &c)?, &c, split, out)
        }
        CorpusObject::DualCertificate(d) => {
            let CorpusObject::Biquadratic(b) = t else {
                return Err(Error::parse(1, "a dual certificate needs a `biq` target"));
            };
            Ok(match d.verify_refutation(&b)? {
                RefutationVerdict::Accepted { pairing, .. } => {
                    let _ = writeln!(out, "not SOS, pairing = {pairing}");
                    ExitStatus::False
                }
                RefutationVerdict::MomentNotPsd { pairing, ldlt } => {
                    let at = ldlt.failure_index.map_or("-".to_string(), |i| i.to_string());
                    let _ = writeln!(
                        out,
                        "rejected: moment matrix is not PSD (pivot {at}), pairing = {pairing}"
                    );
                    ExitStatus::False
                }
                RefutationVerdict::PairingNonnegative { pairing, .. } => {
                    let _ = writeln!(out, "rejected: pairing = {pairing} is not negative");
                    ExitStatus::False
                }
            })
        }
        _ => Err(Error::parse(1, "certificate must be a `sos-cert` or `dual` file")),
    }
}

fn report_sos_verdict(
    v: &SosVerdict,
    c: &SosCertificate,
    split: Option<usize>,
    out: &mut dyn Write,
) -> Result<ExitStatus> {
    let split = c.split.or(split);
    Ok(match v {
        SosVerdict::Accepted { ldlt } => {
            let kind = match ldlt.verdict {
                PsdVerdict::PositiveDefinite => "positive definite",
                _ => "positive semidefinite",
            };
            let _ = writeln!(out, "verified: certificate accepted, Gram matrix {kind}");
            ExitStatus::Verified
        }
        SosVerdict::CoefficientMismatch {
            monomial,
            expected,
            found,
        } => {
            let _ = writeln!(
                out,
                "rejected: coefficient mismatch at {}: expected {expected}, found {found}",
                monomial_text(monomial, split)
            );
            ExitStatus::False
        }
        SosVerdict::NotPsd { ldlt } => {
            let at = ldlt.failure_index.map_or("-".to_string(), |i| i.to_string());
            let _ = writeln!(out, "rejected: Gram matrix is not PSD (pivot {at})");
            ExitStatus::False
        }
        SosVerdict::MultiplierNotSquares => {
            let _ = writeln!(out, "rejected: multiplier is not a sum of even monomials");
            ExitStatus::False
        }
    })
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<ExitStatus> {
    let cfg = SearchConfig {
        max_iterations: a.max_iterations,
        convergence_tol: a.tol,
        denominator_bound: a.denominator_bound,
        restarts: a.restarts,
        seed: a.seed,
    };
    cfg.validate()?;
    let obj = read(&a.input)?;
    let outcome = if a.sos_convex {
        let (f, _) = target_form(obj)?;
        check_sos_convexity(&f, &cfg)?
    } else if let Some(m) = &a.nonneg_mult {
        let (f, split) = target_form(obj)?;
        let names = x_names(split.unwrap_or(f.n_vars()));
        let mult = parse_expression(m, &names)?;
        check_sos_with_multiplier(&f, &mult, &cfg)?
    } else {
        match obj {
            CorpusObject::Biquadratic(b) => check_sos_biquadratic(&b, &cfg)?,
            other => {
                let (f, _) = target_form(other)?;
                if f.degree() % 2 == 1 {
                    return Err(Error::OddDegree(f.degree()));
                }
                let mut z = Monomial::all_of_degree(f.n_vars(), f.degree() / 2);
                z.reverse();
                search_sos(&f, &z, &cfg)?
            }
        }
    };
    let _ = writeln!(out, "{outcome}");
    write_outcome(&outcome, a, out)
}

fn write_outcome(o: &SearchOutcome, a: &CheckArgs, out: &mut dyn Write) -> Result<ExitStatus> {
    let path = |ext: &str| a.out.clone().unwrap_or_else(|| a.input.with_extension(ext));
    Ok(match &o.status {
        SearchStatus::ExactCertificate(c) => {
            let p = path("cert");
            write_file(&p, &c.to_text())?;
            let _ = writeln!(out, "certificate: {}", p.display());
            ExitStatus::Verified
        }
        SearchStatus::Refuted(c, _) => {
            let p = path("dual");
            write_file(&p, &c.to_text())?;
            let _ = writeln!(out, "certificate: {}", p.display());
            ExitStatus::False
        }
        SearchStatus::NumericFeasible { .. } | SearchStatus::Stalled(_) => ExitStatus::Unknown,
    })
}

fn cmd_face(a: &FaceArgs, out: &mut dyn Write) -> Result<ExitStatus> {
    let fp = FaceParams::new(parse_rational(&a.a)?, parse_rational(&a.b)?);
    let vals: Vec<Rational> = a.alphas.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    let mut alpha = AlphaVector::from_slice(&vals)?;
    if a.bound {
        alpha = alpha.with_alpha5(alpha5_lower_bound(&alpha, &fp)?);
    }
    let report = face_report(&alpha, &fp, a.zero.then_some(a.zero_tol))?;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Degenerate(format!("report serialization: {e}")))?;
    let _ = writeln!(out, "{json}");
    Ok(ExitStatus::Verified)
}

fn cmd_builtin(name: &str, path: &Path, out: &mut dyn Write) -> Result<ExitStatus> {
    let obj = corpus::builtin(name)?;
    write_file(path, &obj.to_text())?;
    let _ = writeln!(out, "wrote {name} to {}", path.display());
    Ok(ExitStatus::Verified)
}
