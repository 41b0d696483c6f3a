mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "arithcx",
    version,
    about = "Arithmetic complexes over integer-valued polynomials"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print bases and differentials of C(w0, tail).
    Complex(ComplexArgs),
    /// Run the structural checks on α for a range of d.
    Verify(VerifyArgs),
    /// Print α for one d and check it.
    Iso(IsoArgs),
    /// Homology of an integer specialization of C(w0, tail).
    Homology(HomologyArgs),
    /// Stable cohomology of ribbon and two-column shapes.
    Sheaf {
        #[command(subcommand)]
        shape: SheafCommand,
    },
    /// Seeded run of the combinatorial identities.
    Identities(IdentitiesArgs),
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    /// First weight: `x`, `-x`, `x+c`, `-x-c`, or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub w0: String,
    /// Remaining weights as comma-separated nonnegative integers.
    #[arg(long, default_value = "")]
    pub tail: String,
}

#[derive(Args, Debug)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub weights: WeightArgs,
    /// Evaluate at x = m.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<i64>,
    /// Reduce modulo the prime p (requires integer entries).
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest d to check.
    #[arg(long, default_value_t = 4)]
    pub max_d: usize,
    /// Check a single d instead of 1..=max-d.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IsoArgs {
    #[arg(long)]
    pub d: usize,
    /// Compare with the built-in reference matrices (d = 3 only).
    #[arg(long)]
    pub golden: bool,
    /// Also check the chain-map identity at x = m over Z.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<i64>,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<i64>,
    /// Dimensions over F_p instead of groups over Z.
    #[arg(long = "mod", conflicts_with = "rational")]
    pub modulus: Option<u64>,
    /// Dimensions over Q.
    #[arg(long)]
    pub rational: bool,
}

#[derive(Subcommand, Debug)]
pub enum SheafCommand {
    /// A ribbon, given as λ/μ or directly by its column heights.
    Ribbon(RibbonArgs),
    /// The partition with columns of lengths m ≥ d.
    TwoColumn(TwoColumnArgs),
}

#[derive(Args, Debug)]
pub struct RibbonArgs {
    #[arg(long, conflicts_with = "columns", required_unless_present = "columns")]
    pub lambda: Option<String>,
    #[arg(long, default_value = "", requires = "lambda")]
    pub mu: String,
    /// Column heights, leftmost first.
    #[arg(long)]
    pub columns: Option<String>,
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
}

#[derive(Args, Debug)]
pub struct TwoColumnArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    /// Compare with the cohomology of the hook.
    #[arg(long)]
    pub check_duality: bool,
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    #[arg(long, env = "RH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let failures: Vec<_> = outcome.reports.iter().filter(|r| !r.pass).collect();
            if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                let witness = serde_json::json!({ "failures": failures });
                eprintln!("{witness}");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
