mod commands;
mod label;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schurkit::homalg::DEFAULT_BUDGET;

use crate::label::Label;
use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "schurkit", version, about = "Exact computations in strict polynomial functors over GF(p)")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: Config,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Characteristic (a prime).
    #[arg(short, global = true)]
    pub p: Option<usize>,
    /// Number of variables.
    #[arg(short, global = true)]
    pub n: Option<usize>,
    /// Degree; defaults to the weight of the labels, or to p.
    #[arg(short, global = true)]
    pub d: Option<usize>,
    /// Row bound for Spanier-Whitehead duality.
    #[arg(short, global = true)]
    pub k: Option<usize>,
    /// Highest Ext degree; defaults to 2n.
    #[arg(long, global = true)]
    pub qmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Directory for cached structure constants.
    #[arg(long, global = true, env = "SCHURKIT_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Largest linear system (in matrix entries) a resolution step may build.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Blocks of Λ(d,n) with p-cores and α.
    Blocks,
    /// Ext tables: `ext closed A B`, `ext brute A B`, or `ext --compare A B`.
    Ext {
        /// Optional backend (`closed` or `brute`) followed by two labels.
        #[arg(num_args = 2..=3, required = true)]
        args: Vec<String>,
        /// Run both backends and compare.
        #[arg(long)]
        compare: bool,
    },
    /// Spanier-Whitehead duality.
    Sw {
        #[command(subcommand)]
        cmd: SwCommand,
    },
    /// The Yoneda algebra of the simples in the principal block.
    Yoneda {
        /// Print the full multiplication table.
        #[arg(long)]
        table: bool,
        /// Products to evaluate, as `b2_00*b0_00`.
        products: Vec<String>,
    },
    /// Cohomology dimensions of the derived Schur functor against the case lists.
    Rs { label: Label },
    /// Cohomology of the derived truncation adjoint, into `m` variables.
    Rjstar {
        label: Label,
        /// Variables of the larger category; defaults to n + 1.
        #[arg(short, long)]
        m: Option<usize>,
    },
    /// Character of the costandard (or, with --simple, the simple) module.
    Character {
        lambda: String,
        #[arg(long)]
        simple: bool,
    },
    /// Builds a module and prints its shape.
    Module {
        label: Label,
        /// Also print the action of the algebra generators.
        #[arg(long)]
        dump_full: bool,
    },
    /// Runs acceptance criteria.
    Verify {
        /// p3n2, full or extended.
        #[arg(long, default_value = "p3n2")]
        suite: String,
        /// Only these criteria (repeatable).
        #[arg(long)]
        criterion: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SwCommand {
    /// The complement label in the n x k rectangle.
    Hat { lambda: String },
    /// Littlewood-Richardson expansion of (n^k)/λ.
    Lr { lambda: String },
    /// The character identity for λ.
    Char { lambda: String },
    /// Brute Ext on both sides of the duality.
    Ext { a: Label, b: Label },
}

/// Usage errors exit 2, resource guards 3, everything else 1.
fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(se) = e.downcast_ref::<schurkit::Error>() {
        return match se {
            schurkit::Error::Invalid(_) => 2,
            schurkit::Error::ResourceGuard(_) => 3,
            _ => 1,
        };
    }
    if e.downcast_ref::<commands::UsageError>().is_some() {
        return 2;
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.cfg, &cli.cmd) {
        Ok(rep) => {
            println!("{}", rep.render(cli.cfg.format));
            if rep.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
