use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{GameGraph, MoveEdge};
use crate::oracle::{default_solver_bound, solve, Objective, Side};

use super::EngineError;

/// Who plays against the strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OpponentKind {
    Random { seed: u64 },
    Greedy { seed: u64 },
    Solver,
    Scripted { moves: Vec<MoveEdge> },
    Interactive,
}

impl OpponentKind {
    pub fn name(&self) -> &'static str {
        match self {
            OpponentKind::Random { .. } => "random",
            OpponentKind::Greedy { .. } => "greedy",
            OpponentKind::Solver => "solver",
            OpponentKind::Scripted { .. } => "scripted",
            OpponentKind::Interactive => "human",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            OpponentKind::Random { seed } | OpponentKind::Greedy { seed } => *seed,
            _ => 0,
        }
    }
}

/// Which way the greedy opponent leans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyAim {
    /// Join components, so a cut structure is hard to build.
    Connect,
    /// Pile onto low-degree built vertices, where path ends live.
    Crowd,
}

/// A running opponent with its own random stream.
#[derive(Clone, Debug)]
pub struct Opponent {
    pub kind: OpponentKind,
    rng: ChaCha8Rng,
    cursor: usize,
    /// Objective of the strategy side, for the solver.
    pursued: Option<Objective>,
    aim: GreedyAim,
}

impl Opponent {
    pub fn new(kind: OpponentKind, pursued: Option<Objective>, aim: GreedyAim) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(kind.seed());
        Opponent { kind, rng, cursor: 0, pursued, aim }
    }

    pub fn next_move(&mut self, g: &GameGraph) -> Result<MoveEdge, EngineError> {
        let moves = g.legal_moves();
        if moves.is_empty() {
            return Err(EngineError::GameOver);
        }
        match &self.kind {
            OpponentKind::Random { .. } => Ok(*moves.choose(&mut self.rng).unwrap()),
            OpponentKind::Greedy { .. } => Ok(greedy_move(g, &moves, self.aim, &mut self.rng)),
            OpponentKind::Solver => match self.pursued {
                Some(obj) if g.n() <= default_solver_bound(g.k()) => {
                    let r = solve(g, Side::Opponent, obj).map_err(|e| EngineError::InvalidConfig(e.to_string()))?;
                    Ok(r.principal_move.expect("legal moves exist"))
                }
                _ => Ok(*moves.choose(&mut self.rng).unwrap()),
            },
            OpponentKind::Scripted { moves: script } => {
                let m = *script.get(self.cursor).ok_or(EngineError::ScriptExhausted { index: self.cursor })?;
                self.cursor += 1;
                g.check_move(m).map_err(|e| EngineError::IllegalMoveByOpponent { edge: m, reason: e.to_string() })?;
                Ok(m)
            }
            OpponentKind::Interactive => Err(EngineError::NeedsInput),
        }
    }
}

/// Highest score wins; ties go to the smaller degree sum (or larger, when
/// crowding), then to a seeded random choice.
///
/// `Connect` scores a move 3 when it joins two built components, 2 when it
/// attaches a fresh vertex to a built one, 1 for two fresh vertices and 0
/// inside one component. `Crowd` scores the number of built endpoints of
/// degree at most 2.
pub fn greedy_move(g: &GameGraph, moves: &[MoveEdge], aim: GreedyAim, rng: &mut ChaCha8Rng) -> MoveEdge {
    let ids = g.component_ids();
    let score = |m: &MoveEdge| -> (i64, i64) {
        let (a, b) = (m.u, m.v);
        let deg = (g.degree(a) + g.degree(b)) as i64;
        match aim {
            GreedyAim::Connect => {
                let s = match (g.is_isolated(a), g.is_isolated(b)) {
                    (false, false) if ids[a] != ids[b] => 3,
                    (false, false) => 0,
                    (true, true) => 1,
                    _ => 2,
                };
                (s, -deg)
            }
            GreedyAim::Crowd => {
                let s = [a, b].iter().filter(|&&x| !g.is_isolated(x) && g.degree(x) <= 2).count() as i64;
                (s, deg)
            }
        }
    };
    let best = moves.iter().map(score).max().unwrap();
    let top: Vec<MoveEdge> = moves.iter().copied().filter(|m| score(m) == best).collect();
    *top.choose(rng).unwrap()
}
