//! `clambda`: spectra, verification suites, normal ordering and identity
//! proofs for C_λ-extended oscillator algebras.
//!
//! Exit codes: 0 success, 1 verification or proof failure, 2 invalid input.

mod args;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use clambda_core::fock::{build_fock_rep, spectrum_closed_form};
use clambda_core::suite::{self, RunConfig, Suite};
use clambda_core::symbolic::{self, parse, ProofStatus, Rewriter};
use clambda_core::{AlgebraParams, Exec};

#[derive(Parser)]
#[command(
    name = "clambda",
    version,
    about = "C_lambda-extended oscillator algebra toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and diagonalized Hamiltonian spectrum.
    Spectrum {
        #[arg(long, default_value_t = 2)]
        lambda: usize,
        /// `re+imi;…` for γ_1 … γ_{λ-1}; zero when omitted.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Fock-space truncation.
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Number of levels to print (at most dim - 1).
        #[arg(long, default_value_t = 10)]
        levels: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and write a JSON report.
    Verify {
        /// Suite name, comma-separated list, or `all`.
        suite: String,
        /// Restrict every suite to this λ.
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Bilateral basis window `a..b`.
        #[arg(long, allow_hyphen_values = true, default_value = "-32..32")]
        window: String,
        /// Override the per-suite tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
        /// Seeded γ draws per λ.
        #[arg(long, default_value_t = 3)]
        draws: usize,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Print the normal form of an expression.
    NormalOrder {
        #[arg(long)]
        lambda: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: NormalFormat,
    },
    /// Decide `LHS == RHS`; accepts `LHS RHS`, `LHS == RHS` or one
    /// argument containing `==`.
    Prove {
        #[arg(long)]
        lambda: usize,
        #[arg(required = true, num_args = 1..=3, allow_hyphen_values = true)]
        sides: Vec<String>,
    },
}

enum Failure {
    /// Verification or proof failed: exit 1.
    Check,
    /// Invalid input: exit 2.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum {
            lambda,
            gamma,
            dim,
            levels,
            format,
            out,
        } => cmd_spectrum(lambda, gamma.as_deref(), dim, levels, format, out),
        Command::Verify {
            suite,
            lambda,
            gamma,
            dim,
            window,
            tol,
            seed,
            draws,
            out,
            sequential,
        } => {
            let gamma = match gamma {
                Some(g) => Some(args::parse_gamma(&g).map_err(Failure::Input)?),
                None => None,
            };
            let config = RunConfig {
                suites: Suite::parse_list(&suite)?,
                lambdas: lambda.map(|l| vec![l]),
                gamma: gamma.map(|g| g.iter().map(|c| [c.re, c.im]).collect()),
                draws,
                dim,
                window: args::parse_window(&window).map_err(Failure::Input)?,
                tol,
                seed,
            };
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            cmd_verify(&config, exec, out)
        }
        Command::NormalOrder {
            lambda,
            expr,
            format,
        } => cmd_normal_order(lambda, &expr, format),
        Command::Prove { lambda, sides } => {
            let (lhs, rhs) = split_sides(&sides)?;
            cmd_prove(lambda, &lhs, &rhs)
        }
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn params_from(lambda: usize, gamma: Option<&str>) -> Result<AlgebraParams, Failure> {
    Ok(match gamma {
        Some(g) => AlgebraParams::new(lambda, args::parse_gamma(g).map_err(Failure::Input)?)?,
        None => AlgebraParams::undeformed(lambda)?,
    })
}

#[derive(Serialize)]
struct SpectrumRow {
    n: u64,
    k: u64,
    mu: u64,
    #[serde(rename = "E_closed")]
    e_closed: f64,
    #[serde(rename = "E_diag")]
    e_diag: f64,
    delta: f64,
}

#[derive(Serialize)]
struct SpectrumTable {
    schema: u32,
    lambda: usize,
    gamma: Vec<[f64; 2]>,
    dim: usize,
    normalization: clambda_core::fock::Normalization,
    rows: Vec<SpectrumRow>,
}

fn cmd_spectrum(
    lambda: usize,
    gamma: Option<&str>,
    dim: usize,
    levels: usize,
    format: TableFormat,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let params = params_from(lambda, gamma)?;
    if levels == 0 || levels > dim.saturating_sub(1) {
        return Err(Failure::Input(format!(
            "levels must be in 1..={} for dim = {dim}",
            dim.saturating_sub(1)
        )));
    }
    let rep = build_fock_rep(&params, dim)?;
    let diag = rep.diagonalized_spectrum();
    let rows: Vec<SpectrumRow> = spectrum_closed_form(&params, levels as u64 - 1)
        .into_iter()
        .map(|l| {
            let e_diag = diag[l.n as usize];
            SpectrumRow {
                n: l.n,
                k: l.k,
                mu: l.mu,
                e_closed: l.energy,
                e_diag,
                delta: (l.energy - e_diag).abs(),
            }
        })
        .collect();
    let text = match format {
        TableFormat::Csv => {
            let mut s = String::from("n,k,mu,E_closed,E_diag,delta\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n, r.k, r.mu, r.e_closed, r.e_diag, r.delta
                ));
            }
            s
        }
        TableFormat::Json => {
            let table = SpectrumTable {
                schema: clambda_core::report::SCHEMA_VERSION,
                lambda,
                gamma: params.gamma().iter().map(|c| [c.re, c.im]).collect(),
                dim,
                normalization: rep.normalization(),
                rows,
            };
            serde_json::to_string_pretty(&table)? + "\n"
        }
    };
    emit(out, &text)
}

fn cmd_verify(config: &RunConfig, exec: Exec, out: Option<PathBuf>) -> Result<(), Failure> {
    let report = suite::run(config, exec)?;
    let json = serde_json::to_string_pretty(&report)? + "\n";
    emit(out, &json)?;
    eprintln!(
        "{} entries: {} passed, {} failed",
        report.summary.total, report.summary.passed, report.summary.failed
    );
    for v in &report.verdicts {
        eprintln!(
            "  {:<14} {:<34} {:>5} entries  matched everywhere: [{}] ({:?})",
            v.suite,
            v.identity,
            v.entries,
            v.matched_everywhere.join(", "),
            v.matched_form
        );
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn parse_expr(src: &str, lambda: usize) -> Result<symbolic::OperatorExpr, Failure> {
    parse(src, lambda).map_err(|e| Failure::Input(format!("{e}\n{}", e.render(src))))
}

fn cmd_normal_order(lambda: usize, src: &str, format: NormalFormat) -> Result<(), Failure> {
    if lambda < 2 {
        return Err(Failure::Input(format!(
            "lambda must be at least 2, got {lambda}"
        )));
    }
    let expr = parse_expr(src, lambda)?;
    let nf = Rewriter::new(lambda).normal_order_expr(&expr)?;
    let text = match format {
        NormalFormat::Text => nf.to_string() + "\n",
        NormalFormat::Json => serde_json::to_string_pretty(&nf.to_json())? + "\n",
    };
    emit(None, &text)
}

fn split_sides(sides: &[String]) -> Result<(String, String), Failure> {
    match sides {
        [one] => one
            .split_once("==")
            .map(|(l, r)| (l.trim().to_string(), r.trim().to_string()))
            .ok_or_else(|| Failure::Input("expected LHS == RHS".into())),
        [l, r] => Ok((l.clone(), r.clone())),
        [l, eq, r] if eq == "==" => Ok((l.clone(), r.clone())),
        _ => Err(Failure::Input("expected LHS RHS or LHS == RHS".into())),
    }
}

fn cmd_prove(lambda: usize, lhs: &str, rhs: &str) -> Result<(), Failure> {
    if lambda < 2 {
        return Err(Failure::Input(format!(
            "lambda must be at least 2, got {lambda}"
        )));
    }
    let l = parse_expr(lhs, lambda)?;
    let r = parse_expr(rhs, lambda)?;
    let status = symbolic::prove_identity(&l, &r, lambda)?;
    println!("{status}");
    match status {
        ProofStatus::Fail { .. } => Err(Failure::Check),
        _ => Ok(()),
    }
}
