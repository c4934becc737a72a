use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twistforge_cli::commands::{fixtures_dir, load_spec, parse_eval};
use twistforge_cli::report::to_json;
use twistforge_cli::{cmd_pairs, cmd_twist, cmd_verify, prepare, selftest, Budgets, CliError, Mode, TwistOptions};

#[derive(Parser)]
#[command(name = "twistforge", version, about = "Exact twists of non-hyperelliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Largest automorphism group the closure may produce.
    #[arg(long, default_value_t = 1000)]
    budget_closure: usize,
    /// Table lookups allowed for the subgroup search.
    #[arg(long, default_value_t = 10_000_000)]
    budget_subgroups: u64,
    /// Table lookups allowed for counting automorphisms of each G.
    #[arg(long, default_value_t = 10_000_000)]
    budget_automorphisms: u64,
}

impl From<BudgetArgs> for Budgets {
    fn from(b: BudgetArgs) -> Self {
        Budgets { closure: b.budget_closure, subgroup_nodes: b.budget_subgroups, automorphism_nodes: b.budget_automorphisms }
    }
}

#[derive(Args)]
struct Common {
    /// Curve-spec file; relative paths that do not exist are looked up in
    /// the fixture directory.
    spec: PathBuf,
    /// Also write the JSON report to this file (`-` prints it instead of text).
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Nf,
    Ff,
}

#[derive(Subcommand)]
enum Command {
    /// Check the automorphism group against the canonical ideal.
    Verify(Common),
    /// Enumerate the pairs (G, H) and their solution counts.
    Pairs(Common),
    /// Compute all twists with their equations.
    Twist {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "nf")]
        mode: ModeArg,
        /// Frobenius exponent b (acting as ζ_N ↦ ζ_N^b); finite-field mode.
        #[arg(long, allow_hyphen_values = true)]
        frobenius: Option<i64>,
        /// Specialise the Kummer parameters, e.g. `m=2,n=3`.
        #[arg(long)]
        eval: Option<String>,
        /// Skip the averaging-operator cross-check of the fixed space.
        #[arg(long)]
        no_cross_check: bool,
    },
    /// Run the built-in acceptance checks on the shipped genus-6 fixture.
    Selftest,
}

fn resolve(p: &Path) -> PathBuf {
    if p.exists() || p.is_absolute() {
        return p.to_path_buf();
    }
    let candidate = fixtures_dir().join(p);
    if candidate.exists() {
        candidate
    } else {
        p.to_path_buf()
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) {
    let mut lock = std::io::stdout().lock();
    let _ = lock.write_all(text.as_bytes()).and_then(|()| lock.flush());
}

fn emit<T: serde::Serialize + std::fmt::Display>(doc: &T, json: &Option<PathBuf>) -> Result<(), CliError> {
    match json {
        Some(p) if p.as_os_str() == "-" => out(&(to_json(doc) + "\n")),
        Some(p) => {
            out(&doc.to_string());
            std::fs::write(p, to_json(doc) + "\n").map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
        }
        None => out(&doc.to_string()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify(c) => {
            let spec = load_spec(&resolve(&c.spec))?;
            let (report, _) = cmd_verify(&spec, &c.budgets.into())?;
            emit(&report, &c.json)?;
            Ok(report.all_passed())
        }
        Command::Pairs(c) => {
            let spec = load_spec(&resolve(&c.spec))?;
            let budgets = c.budgets.into();
            let gamma = prepare(&spec, &budgets)?;
            let (report, _) = cmd_pairs(&spec, &gamma, &budgets)?;
            emit(&report, &c.json)?;
            Ok(true)
        }
        Command::Twist { common, mode, frobenius, eval, no_cross_check } => {
            let mode = match (mode, frobenius) {
                (ModeArg::Nf, None) => Mode::NumberField,
                (ModeArg::Nf, Some(_)) => return Err(CliError::Usage("--frobenius requires --mode ff".into())),
                (ModeArg::Ff, Some(b)) => Mode::FiniteField { frobenius: b },
                (ModeArg::Ff, None) => return Err(CliError::Usage("--mode ff requires --frobenius".into())),
            };
            let opts = TwistOptions {
                mode,
                eval: eval.as_deref().map(parse_eval).transpose()?,
                cross_check: !no_cross_check,
                equations: true,
                budgets: common.budgets.into(),
            };
            let spec = load_spec(&resolve(&common.spec))?;
            let gamma = prepare(&spec, &opts.budgets)?;
            let doc = cmd_twist(&spec, &gamma, &opts)?;
            emit(&doc, &common.json)?;
            Ok(doc.all_passed)
        }
        Command::Selftest => {
            let outcome = selftest::run_selftest(&mut std::io::stdout())?;
            Ok(outcome.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("twistforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
