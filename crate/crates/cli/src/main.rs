mod commands;
mod golden;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use output::{Format, Outcome, EXIT_BUDGET, EXIT_FAIL};

/// Invariants of diagonal and general forms over finite, p-adic and Laurent series fields.
#[derive(Parser)]
#[command(name = "hforms", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Limit on evaluations for exhaustive searches over general forms.
    #[arg(long, global = true, env = "HFORMS_BUDGET", default_value_t = 100_000_000)]
    budget_evals: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree over F_p.
    #[arg(long, default_value_t = 1)]
    f: u32,
}

#[derive(Args)]
struct ValuedArgs {
    /// Residue characteristic.
    #[arg(long)]
    p: u64,
    /// Residue degree.
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Ramification index (p-adic fields).
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Use F_{p^f}((t_1))...((t_N)) instead of a p-adic field.
    #[arg(long)]
    tower: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// d-th level s_d(F_q).
    Level {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: u32,
    },
    /// Diagonal u-invariant u_diag(d, F_q).
    Udiag {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: u32,
    },
    /// Waring number: every sum of d-th powers is a sum of this many.
    Waring {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: u32,
    },
    /// Isotropy of a diagonal (`--coeffs a1,a2,...`) or general (`--poly`) form over F_q.
    Isotropy {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, conflicts_with = "poly")]
        coeffs: Option<String>,
        /// `c*x1^e1*x2^e2 + ...`
        #[arg(long)]
        poly: Option<String>,
    },
    /// Isotropy of a valued diagonal form (`u@v`, `u@(v1,...,vn)`), or u_diag without --coeffs.
    Padic {
        #[command(flatten)]
        field: ValuedArgs,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Upper bounds for u_diag(d, K) and the exact value.
    Bounds {
        #[command(flatten)]
        field: ValuedArgs,
        #[arg(long)]
        d: u32,
    },
    /// Invariants for every prime power in a range.
    Table {
        /// Degree or inclusive range `A..B`.
        #[arg(long)]
        d: String,
        /// Inclusive range of field sizes `A..B`.
        #[arg(long)]
        q_range: String,
        /// Comma-separated subset of q,d,gcd,s_d,u_diag,waring,kneser_bound.
        #[arg(long)]
        columns: Option<String>,
    },
    /// Build an explicit form and check its claimed property.
    Construct {
        /// tensor-lift, prime-lift, norm-form, compose, power or iterated-laurent.
        recipe: String,
        /// Characteristic (for --alg-closed, that of the base field; 0 allowed).
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        /// Exponent for `power`.
        #[arg(long)]
        m: Option<u32>,
        /// Number of Laurent layers for `iterated-laurent`.
        #[arg(long)]
        n: Option<usize>,
        /// Tower over an algebraically closed field.
        #[arg(long)]
        alg_closed: bool,
        /// Limit on terms of intermediate polynomials.
        #[arg(long, default_value_t = 1_000_000)]
        term_limit: usize,
    },
    /// Recompute the reference values and report match or mismatch for each.
    Verify,
}

fn run(cli: &Cli) -> Result<Outcome> {
    use commands::*;
    let budget = cli.budget_evals;
    match &cli.command {
        Command::Level { field, d } => level_cmd(&finite_field(field.p, field.f)?, *d),
        Command::Udiag { field, d } => udiag_cmd(&finite_field(field.p, field.f)?, *d),
        Command::Waring { field, d } => waring_cmd(&finite_field(field.p, field.f)?, *d),
        Command::Isotropy { field, d, coeffs, poly } => isotropy_cmd(
            &finite_field(field.p, field.f)?,
            *d,
            coeffs.as_deref(),
            poly.as_deref(),
            budget,
        ),
        Command::Padic { field, d, coeffs } => {
            padic_cmd(&valued_field(field.p, field.f, field.e, field.tower)?, *d, coeffs.as_deref())
        }
        Command::Bounds { field, d } => bounds_cmd(&valued_field(field.p, field.f, field.e, field.tower)?, *d),
        Command::Table { d, q_range, columns } => table_cmd(d, q_range, columns.as_deref()),
        Command::Construct {
            recipe,
            p,
            f,
            d,
            coeffs,
            poly,
            m,
            n,
            alg_closed,
            term_limit,
        } => construct_cmd(&ConstructArgs {
            recipe,
            p: *p,
            f: *f,
            d: *d,
            coeffs: coeffs.as_deref(),
            poly: poly.as_deref(),
            m: *m,
            layers: *n,
            alg_closed: *alg_closed,
            budget,
            term_limit: *term_limit,
        }),
        Command::Verify => golden::verify_cmd(),
    }
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<hforms::Error>() {
        Some(hforms::Error::SearchBudget { .. } | hforms::Error::TermBudget { .. }) => EXIT_BUDGET,
        _ => EXIT_FAIL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAIL } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(&cli).and_then(|o| Ok((o.render(cli.format)?, o.code))) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                EXIT_FAIL
            } else {
                code
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    };
    ExitCode::from(code as u8)
}
