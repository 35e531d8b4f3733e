//! `metdim`: compute and verify metric dimension variants from the shell.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when a search budget runs
//! out, 3 when `verify` finds an `n` where the closed form fails.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metdim::families::{Family, TheoremKind};
use metdim::ilp::ModelKind;
use metdim::{SearchBudget, VariantKind};

#[derive(Parser, Debug)]
#[command(name = "metdim", version, about = "Metric dimension variants of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an exact dimension with an optimality certificate.
    Dim(DimArgs),
    /// Write the fault-tolerant or local 0/1 program, optionally solving it.
    Model(ModelArgs),
    /// Describe a polytope instance: size, diameter, closed forms, witnesses.
    Family(FamilyArgs),
    /// Verify a closed-form dimension over a range of n.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Polytope instance, `S:n` or `U:n`.
    #[arg(long)]
    family: Option<String>,
    /// Edge-list file, or `-` for stdin.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Wall-clock limit per search in seconds.
    #[arg(long, env = "METDIM_BUDGET_SECS")]
    budget_secs: Option<f64>,
    /// Node limit per search.
    #[arg(long)]
    max_nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(s) = self.budget_secs {
            b = b.with_seconds(s);
        }
        if let Some(n) = self.max_nodes {
            b = b.with_subsets(n);
        }
        b
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
    Lp,
    /// Edge-list text (`family` only).
    Edges,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Exact,
    Ilp,
    /// Both solvers; the report carries both values.
    Both,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[arg(long, value_parser = parse_variant)]
    variant: VariantKind,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// `ftmd` or `lmd`.
    #[arg(long, value_parser = parse_model_kind)]
    variant: ModelKind,
    #[command(flatten)]
    source: Source,
    /// Serialization of the model: `lp` or `json`.
    #[arg(long, value_enum, default_value = "lp")]
    format: Format,
    /// Where to write the model.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Solve with the built-in branch-and-bound and print the solution.
    #[arg(long)]
    solve: bool,
    /// With `--solve`, also run the exact solver and report both values.
    #[arg(long, requires = "solve")]
    compare: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// `S:n` or `U:n`.
    #[arg(long)]
    family: String,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Also compare the closed-form distance tables with BFS.
    #[arg(long)]
    tables: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `S` or `U`.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// `local` or `strong`.
    #[arg(long, value_parser = parse_theorem_kind)]
    variant: TheoremKind,
    /// Inclusive range `a..b`, `a >= 3`.
    #[arg(long, value_parser = parse_range)]
    range: (usize, usize),
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn parse_variant(s: &str) -> Result<VariantKind, String> {
    s.parse()
}

fn parse_model_kind(s: &str) -> Result<ModelKind, String> {
    match s.parse()? {
        ModelKind::Custom => Err("expected ftmd or lmd".into()),
        kind => Ok(kind),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: metdim::families::FamilyError| e.to_string())
}

fn parse_theorem_kind(s: &str) -> Result<TheoremKind, String> {
    let kind: VariantKind = s.parse()?;
    TheoremKind::try_from(kind).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad bound {t:?}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a < 3 {
        return Err("range must start at 3 or later".into());
    }
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::Status::InputError as u8 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Dim(args) => commands::dim(args),
        Command::Model(args) => commands::model(args),
        Command::Family(args) => commands::family(args),
        Command::Verify(args) => commands::verify(args),
    };
    match outcome {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::Status::InputError as u8)
        }
    }
}
