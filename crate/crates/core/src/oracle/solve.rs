use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{GameGraph, MoveEdge};
use crate::strategy::{Strategy, StrategyDecision, StrategyError};

use super::canon::canonical_form_bounded;
use super::{Objective, OracleError, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub objective: Objective,
    pub side: Side,
    pub pursuer_wins: bool,
    pub mover_wins: bool,
    pub principal_move: Option<MoveEdge>,
    pub nodes_expanded: u64,
}

/// Largest pool solved exactly for a cap: 7 vertices at k = 3, 6 otherwise.
pub fn default_solver_bound(k: usize) -> usize {
    if k <= 3 {
        7
    } else {
        6
    }
}

pub fn solve(g: &GameGraph, side: Side, objective: Objective) -> Result<SolveResult, OracleError> {
    solve_bounded(g, side, objective, default_solver_bound(g.k()))
}

/// Exact value of the position with `side` to move, memoized on canonical
/// forms. The principal move is the lowest edge achieving the mover's value.
pub fn solve_bounded(g: &GameGraph, side: Side, objective: Objective, bound: usize) -> Result<SolveResult, OracleError> {
    if g.n() > bound {
        return Err(OracleError::TooLarge { n: g.n(), bound });
    }
    let mut solver = Solver { objective, table: HashMap::new(), nodes: 0, bound };
    let moves = g.legal_moves();
    let (pursuer_wins, principal_move) = if moves.is_empty() {
        (solver.value(g, side)?, None)
    } else {
        let mover_is_pursuer = side == Side::Pursuer;
        let mut best = None;
        for m in moves {
            let child = g.with_edge(m).expect("legal move");
            let v = solver.value(&child, side.flip())?;
            if v == mover_is_pursuer {
                best = Some((v, m));
                break;
            }
            if best.is_none() {
                best = Some((v, m));
            }
        }
        let (v, m) = best.unwrap();
        (v, Some(m))
    };
    let mover_wins = pursuer_wins == (side == Side::Pursuer);
    Ok(SolveResult { objective, side, pursuer_wins, mover_wins, principal_move, nodes_expanded: solver.nodes })
}

struct Solver {
    objective: Objective,
    table: HashMap<Vec<u8>, bool>,
    nodes: u64,
    bound: usize,
}

impl Solver {
    /// Whether the pursuer wins from `g` with `side` to move.
    fn value(&mut self, g: &GameGraph, side: Side) -> Result<bool, OracleError> {
        let key = canonical_form_bounded(g, side, self.bound)?.key;
        if let Some(&v) = self.table.get(&key) {
            return Ok(v);
        }
        self.nodes += 1;
        let v = if let Some(v) = self.objective.decided_early(g) {
            v
        } else {
            let moves = g.legal_moves();
            if moves.is_empty() {
                self.objective.holds_on_terminal(g)
            } else {
                let want = side == Side::Pursuer;
                let mut result = !want;
                for m in moves {
                    let child = g.with_edge(m).expect("legal move");
                    if self.value(&child, side.flip())? == want {
                        result = want;
                        break;
                    }
                }
                result
            }
        };
        self.table.insert(key, v);
        Ok(v)
    }
}

/// Plays the solver's principal move for the pursuer.
#[derive(Clone, Debug)]
pub struct SolverStrategy {
    pub objective: Objective,
}

impl Strategy for SolverStrategy {
    fn respond(&mut self, g: &GameGraph, _opp: Option<MoveEdge>) -> Result<StrategyDecision, StrategyError> {
        let r = solve(g, Side::Pursuer, self.objective)
            .map_err(|e| StrategyError::Precondition(e.to_string()))?;
        let m = r.principal_move.ok_or(StrategyError::NoLegalMove)?;
        Ok(StrategyDecision { edge: m, rule: "solver-principal".into() })
    }
}
