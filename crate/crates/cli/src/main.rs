mod commands;
mod output;
mod quantity;
mod spec;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;
use crate::quantity::Quantity;
use crate::spec::{IndexSpec, RangeSpec};

/// Generalized Euler totients over elementary symmetric polynomial
/// constraints, their zero counts over prime fields, and restricted linear
/// congruences.
///
/// Exit status: 0 success, 1 invalid input, 2 a comparison disagreed,
/// 3 an enumeration exceeded its tuple budget.
#[derive(Debug, Parser)]
#[command(name = "symtotient", version)]
struct Cli {
    /// Maximum number of tuples any single enumeration may visit.
    #[arg(long, global = true, env = "SYMTOTIENT_BUDGET")]
    budget: Option<u64>,

    /// Output format (default: text, or csv for `table`).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Joint,
    Individual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FnArg {
    Id,
    One,
    Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Symfield,
    Totient,
    Congruence,
    Menon,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Joint or individual totient of an elementary symmetric system mod n.
    Totient(TotientArgs),
    /// Number of common zeros of e_j, j in J, over F_p^k.
    Zeros(ZerosArgs),
    /// Solutions of a1*x1 + ... + ak*xk = b (mod n) with each e_j(x), j in J, a unit.
    Congruence(CongruenceArgs),
    /// Both sides of the Menon-type identity.
    Menon(MenonArgs),
    /// Generalized Ramanujan sum g_k(1, n) * c(m, n).
    Ramanujan(RamanujanArgs),
    /// One record per point of a parameter grid.
    Table(TableArgs),
    /// Run the closed-form vs enumeration sweeps.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct MethodFlag {
    /// Evaluation route; `both` compares the two and exits 2 on disagreement.
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    method: MethodArg,
}

#[derive(Debug, Args)]
struct TotientArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: usize,
    /// Constraint indices: comma list of j and a..b ranges; `1..k` means all.
    #[arg(long = "J")]
    j: IndexSpec,
    #[arg(long, value_enum, default_value_t = ModeArg::Joint)]
    mode: ModeArg,
    #[command(flatten)]
    method: MethodFlag,
}

#[derive(Debug, Args)]
struct ZerosArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: usize,
    #[arg(long = "J")]
    j: IndexSpec,
    #[command(flatten)]
    method: MethodFlag,
}

#[derive(Debug, Args)]
struct CongruenceArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    /// Comma-separated coefficients a1..ak.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    #[arg(long = "J")]
    j: IndexSpec,
    #[command(flatten)]
    method: MethodFlag,
}

#[derive(Debug, Args)]
struct MenonArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: usize,
    /// Must contain 1.
    #[arg(long = "J")]
    j: IndexSpec,
    #[arg(long, value_enum)]
    f: FnArg,
}

#[derive(Debug, Args)]
struct RamanujanArgs {
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: usize,
    #[arg(long = "J")]
    j: IndexSpec,
    #[command(flatten)]
    method: MethodFlag,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    quantity: Quantity,
    /// Inclusive range a..b, or a single value.
    #[arg(long)]
    n_range: Option<RangeSpec>,
    #[arg(long)]
    k_range: Option<RangeSpec>,
    /// Primes in the inclusive range.
    #[arg(long)]
    p_range: Option<RangeSpec>,
    /// Right-hand sides for g3/g4/ramanujan_sum (default 1); g3/g4 omit m
    /// with gcd(m, n) > 1.
    #[arg(long)]
    m_range: Option<RangeSpec>,
    /// Constraint indices for zeros/varphi/phi.
    #[arg(long = "J")]
    j: Option<IndexSpec>,
    #[command(flatten)]
    method: MethodFlag,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Treat skipped (over-budget) cells as failures.
    #[arg(long)]
    strict: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(failure) => {
            if !failure.is_broken_pipe() {
                eprintln!("error: {failure}");
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
