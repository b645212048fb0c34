//! `racg`: command-line front end for the racg library.
//!
//! Exit codes: 0 when every check passes, 1 for a failed computation or a
//! violated hypothesis, 2 for malformed input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Parser)]
#[command(
    name = "racg",
    version,
    about = "Right-angled Coxeter groups and their Hecke-von Neumann algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest ball (number of elements) any computation may enumerate.
    #[arg(long, global = true, default_value_t = racg::coxeter::DEFAULT_BALL_CAP)]
    pub max_ball: usize,
}

#[derive(Debug, clap::Args)]
pub struct GroupArg {
    /// Group file (TOML, or JSON with a .json extension).
    #[arg(long)]
    pub group: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators, commutation edges and irreducible components.
    Info {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Elements of the ball of the given radius, by length.
    Ball {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Rational growth series and its verified Taylor coefficients.
    Growth {
        #[command(flatten)]
        group: GroupArg,
        /// Number of Taylor coefficients to print.
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Radius of convergence of the growth series.
    Rho {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Factor or factor ⊕ C classification at q.
    Classify {
        #[command(flatten)]
        group: GroupArg,
        /// Exact rational `a/b` or decimal.
        #[arg(long)]
        q: String,
    },
    /// Component structure of the graph Γ(W,S) on a ball.
    Gamma {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value_t = 2)]
        slack: usize,
        /// Also print the edge list, one `u v` pair per line.
        #[arg(long)]
        edges: bool,
    },
    /// Exact checks of the radial symbol and the central projection at q.
    ZetaCheck {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        /// Radius of the block on which the projection is tested.
        #[arg(long, default_value_t = 1)]
        inner_radius: usize,
    },
    /// Atoms of the algebra of a free product of finite abelian Coxeter groups.
    Dykema {
        /// Factor ranks, e.g. `2,1` for Z2^2 * Z2.
        #[arg(long)]
        ranks: String,
        #[arg(long)]
        q: String,
    },
    /// Evaluates a Hecke algebra expression such as `T(s)*T(s) - p*T(s)`.
    Hecke {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Specialization point, required in float mode.
        #[arg(long)]
        q: Option<String>,
    },
    /// Runs the property suites of every module.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Ball { .. } => "ball",
            Command::Growth { .. } => "growth",
            Command::Rho { .. } => "rho",
            Command::Classify { .. } => "classify",
            Command::Gamma { .. } => "gamma",
            Command::ZetaCheck { .. } => "zeta-check",
            Command::Dykema { .. } => "dykema",
            Command::Hecke { .. } => "hecke",
            Command::Verify { .. } => "verify",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let result = commands::run(&cli);
    let (report, code) = match result {
        Ok(report) => {
            let code = if report.passed { 0 } else { 1 };
            (report, code)
        }
        Err(e) => {
            let code = if e.is_input_error() { 2 } else { 1 };
            eprintln!("error: {e}");
            (Report::error(&e), code)
        }
    };
    match cli.format {
        Format::Text => print!("{}", report.text),
        Format::Json => println!("{}", report.to_json(name)),
    }
    ExitCode::from(code)
}
