//! `mckay`: emit product tables, operators and Macdonald data, and run the
//! invariant suite.

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use mckay_core::emit::{kostka_render, render_operator, render_table};
use mckay_core::{
    adams_conjecture_check, macdonald_basis, op_d, op_e, op_gamma, op_pi, run_verify, Basis, Error, Format,
    LinOperator, OdotRing, Rat, Specialization, VerifyConfig,
};

/// Largest degree accepted unless `MCKAY_MAX_N` raises it.
const DEFAULT_MAX_N: usize = 7;

#[derive(Parser)]
#[command(
    name = "mckay",
    version,
    about = "Exact product tables on symmetric functions from tensor products on Hilb^n(C^2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    P,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Latex,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "Gamma", alias = "gamma")]
    Gamma,
    #[value(name = "Pi", alias = "pi")]
    Pi,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table of Λⁿ in the chosen basis.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "s")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "latex")]
        format: FormatArg,
        /// Exponent in q = t^A; defaults to n + 2.
        #[arg(long = "A")]
        a: Option<u32>,
    },
    /// Matrix of a closed-form operator on Λⁿ.
    Op {
        #[arg(long, value_enum)]
        name: OpName,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "p")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Specialized q,t-Kostka matrix.
    Macdonald {
        #[arg(long)]
        n: usize,
        #[arg(long = "A")]
        a: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Compares the Adams operators with Σ_k j^k 𝓔_k for j = 0..=J.
    Adams {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        j: usize,
        #[arg(long = "A")]
        a: Option<u32>,
    },
    /// Runs the invariant suite; exits nonzero on a hard failure.
    Verify {
        #[arg(long = "max-n", default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        triples: usize,
    },
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::P => Basis::P,
            BasisArg::S => Basis::S,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn max_n() -> anyhow::Result<usize> {
    match std::env::var("MCKAY_MAX_N") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::Usage(format!("MCKAY_MAX_N must be a positive integer, got '{v}'")).into()),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_n(n: usize) -> anyhow::Result<()> {
    let cap = max_n()?;
    if n == 0 || n > cap {
        return Err(Error::Usage(format!(
            "n must satisfy 1 ≤ n ≤ {cap} (set MCKAY_MAX_N to raise the cap)"
        ))
        .into());
    }
    Ok(())
}

fn named_operator(name: OpName, n: usize) -> LinOperator<Rat> {
    match name {
        OpName::D => op_d(n),
        OpName::E => op_e(n),
        OpName::Gamma => op_gamma(n),
        OpName::Pi => op_pi(n),
    }
}

fn op_label(name: OpName) -> &'static str {
    match name {
        OpName::D => "D",
        OpName::E => "E",
        OpName::Gamma => "Gamma",
        OpName::Pi => "Pi",
    }
}

/// Returns the text to print and whether the run succeeded.
fn run(cli: Cli) -> anyhow::Result<(String, bool)> {
    match cli.command {
        Command::Table { n, basis, format, a } => {
            check_n(n)?;
            let ring = OdotRing::new(n, a).context("building the product ring")?;
            Ok((render_table(&ring.table(basis.into()), format.into()), true))
        }
        Command::Op { name, n, basis, format } => {
            check_n(n)?;
            let op = named_operator(name, n).change_basis(basis.into());
            Ok((render_operator(op_label(name), &op, format.into()), true))
        }
        Command::Macdonald { n, a, format } => {
            check_n(n)?;
            let spec = match a {
                Some(a) => Specialization::new(n, a)?,
                None => Specialization::default_for(n),
            };
            let mb = macdonald_basis(n, spec)?;
            Ok((kostka_render(n, mb.spec().a(), mb.kostka_matrix(), format.into()), true))
        }
        Command::Adams { n, j, a } => {
            check_n(n)?;
            let rep = adams_conjecture_check(n, j, a)?;
            Ok((serde_json::to_string_pretty(&rep)? + "\n", true))
        }
        Command::Verify { max_n, seed, triples } => {
            check_n(max_n)?;
            let cfg = VerifyConfig {
                max_n,
                seed,
                random_triples: triples,
                ..VerifyConfig::default()
            };
            let rep = run_verify(&cfg);
            eprint!("{}", rep.summary());
            Ok((serde_json::to_string_pretty(&rep.to_json())? + "\n", rep.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            // Usage errors share clap's exit status.
            match e.downcast_ref::<Error>() {
                Some(Error::Usage(_)) | Some(Error::InvalidSpecialization { .. }) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
