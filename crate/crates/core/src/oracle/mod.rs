//! Ground truth: Hamiltonicity, 2-connectivity, canonical forms, exact
//! minimax on tiny boards, and exhaustive adversaries for strategies.

mod canon;
mod exhaust;
mod hamilton;
mod solve;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_form, canonical_form_bounded, canonical_key, CanonicalForm, DEFAULT_CANON_BOUND};
pub use exhaust::{exhaust_adversary, ExhaustOptions, ExhaustReport, LineError, Pruning, TerminalClass};
pub use hamilton::{articulation_points, hamilton_cycle, is_hamilton_cycle, is_two_connected};
pub use solve::{default_solver_bound, solve, solve_bounded, SolveResult, SolverStrategy};

use crate::graph::GameGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the exact bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),
}

/// Which player is about to move, relative to the player pursuing the objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Pursuer = 0,
    Opponent = 1,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Pursuer => Side::Opponent,
            Side::Opponent => Side::Pursuer,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    ForceHamiltonian,
    AvoidHamiltonian,
    AvoidTwoConnected,
}

impl Objective {
    /// Whether the objective holds on a finished game.
    pub fn holds_on_terminal(self, g: &GameGraph) -> bool {
        match self {
            Objective::ForceHamiltonian => hamilton_cycle(g).is_some(),
            Objective::AvoidHamiltonian => hamilton_cycle(g).is_none(),
            Objective::AvoidTwoConnected => !is_two_connected(g),
        }
    }

    /// Outcome already fixed by a monotone feature of a non-terminal
    /// position: Hamilton cycles and witnesses survive every added edge.
    pub fn decided_early(self, g: &GameGraph) -> Option<bool> {
        if crate::graph::has_witness(g).is_some() {
            return Some(self != Objective::ForceHamiltonian);
        }
        if hamilton_cycle(g).is_some() {
            return Some(self == Objective::ForceHamiltonian);
        }
        None
    }
}
