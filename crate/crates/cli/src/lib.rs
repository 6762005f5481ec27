//! The `degree-game` command line.
//!
//! Every subcommand writes to caller-supplied streams so the whole surface
//! can be driven from tests. Exit codes: 0 success, 1 objective or monitor
//! failure, 2 usage.

mod play;
mod simulate;
mod tools;

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degree_game::engine::{FirstMover, Role};
use degree_game::oracle::{Objective, Pruning, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "degree-game", version, about = "Play, simulate and verify the degree-capped graph game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run seeded games of a strategy against an opponent.
    Simulate(SimulateArgs),
    /// Play a strategy against every opponent line on a small board.
    Exhaust(ExhaustArgs),
    /// Exact value of a small position.
    Solve(SolveArgs),
    /// Play against the engine in the terminal.
    Play(PlayArgs),
    /// Label a graph file with its component type.
    Classify(ClassifyArgs),
    /// Replay a trace file and run the monitors on it.
    CheckTrace(CheckTraceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RoleArg {
    Builder,
    Avoider,
    None,
}

impl From<RoleArg> for Role {
    fn from(r: RoleArg) -> Role {
        match r {
            RoleArg::Builder => Role::Builder,
            RoleArg::Avoider => Role::Avoider,
            RoleArg::None => Role::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FirstArg {
    Strategy,
    Opponent,
}

impl From<FirstArg> for FirstMover {
    fn from(f: FirstArg) -> FirstMover {
        match f {
            FirstArg::Strategy => FirstMover::Strategy,
            FirstArg::Opponent => FirstMover::Opponent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpponentArg {
    Random,
    Greedy,
    Solver,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub role: RoleArg,
    #[arg(long, value_enum, default_value = "strategy")]
    pub first: FirstArg,
    #[arg(long, value_enum, default_value = "random")]
    pub opponent: OpponentArg,
    /// Seed of game 0; game `i` uses `seed + i`.
    #[arg(long, env = "DEGREE_GAME_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub games: u64,
    /// Trace file for a single game, or a directory of
    /// `game-<i>-seed-<s>.jsonl` files when playing several.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = degree_game::engine::DEFAULT_N0)]
    pub n0: usize,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Print the summary as one JSON object.
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PruningArg {
    Canonical,
    Exact,
    None,
}

impl From<PruningArg> for Pruning {
    fn from(p: PruningArg) -> Pruning {
        match p {
            PruningArg::Canonical => Pruning::Canonical,
            PruningArg::Exact => Pruning::Exact,
            PruningArg::None => Pruning::None,
        }
    }
}

#[derive(Args, Debug)]
pub struct ExhaustArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub role: RoleArg,
    #[arg(long, value_enum, default_value = "strategy")]
    pub first: FirstArg,
    #[arg(long)]
    pub max_nodes: Option<u64>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub pruning: PruningArg,
    /// Stop lines once a Hamilton cycle or a witness settles them.
    #[arg(long)]
    pub early_stop: bool,
    #[arg(long, default_value_t = degree_game::engine::DEFAULT_N0)]
    pub n0: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Pursuer,
    Opponent,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Pursuer => Side::Pursuer,
            SideArg::Opponent => Side::Opponent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    ForceHamiltonian,
    AvoidHamiltonian,
    AvoidTwoConnected,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::ForceHamiltonian => Objective::ForceHamiltonian,
            ObjectiveArg::AvoidHamiltonian => Objective::AvoidHamiltonian,
            ObjectiveArg::AvoidTwoConnected => Objective::AvoidTwoConnected,
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Start from this graph instead of the empty one.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Side to move: the one pursuing the objective, or its opponent.
    #[arg(long, value_enum, default_value = "pursuer")]
    pub side: SideArg,
    #[arg(long, value_enum, default_value = "force-hamiltonian")]
    pub objective: ObjectiveArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HumanRole {
    Builder,
    Avoider,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlayFirst {
    Human,
    Engine,
}

#[derive(Args, Debug)]
pub struct PlayArgs {
    /// Defaults to 3 when the engine avoids and 4 when it builds.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// The human's side; the engine plays the other strategy.
    #[arg(long, value_enum, default_value = "builder")]
    pub human: HumanRole,
    #[arg(long, value_enum, default_value = "human")]
    pub first: PlayFirst,
    /// Hide the engine's rule tags.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Graph in the text or JSON format.
    pub graph: PathBuf,
    /// Classify the component of this vertex instead of the whole graph.
    #[arg(long)]
    pub root: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CheckTraceArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate::simulate(&a, out, err),
        Command::Exhaust(a) => tools::exhaust(&a, out),
        Command::Solve(a) => tools::solve(&a, out),
        Command::Play(a) => play::play(&a, input, out),
        Command::Classify(a) => tools::classify(&a, out),
        Command::CheckTrace(a) => tools::check_trace(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAIL
        }
    }
}

/// A subcommand that could not finish.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Failed(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

pub(crate) type CmdResult = Result<i32, Failure>;
