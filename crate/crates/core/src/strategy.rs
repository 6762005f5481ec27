use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GameGraph, GraphError, MoveEdge, Vertex};

/// A chosen edge together with the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyDecision {
    pub edge: MoveEdge,
    pub rule: String,
}

impl StrategyDecision {
    pub fn new(a: Vertex, b: Vertex, rule: impl Into<String>) -> Self {
        StrategyDecision { edge: MoveEdge::new(a, b), rule: rule.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no legal move remains")]
    NoLegalMove,
    #[error("position is not an opening: {0}")]
    BadOpening(String),
    #[error("no path state to respond from")]
    NoPathState,
    #[error("mandated reply {edge} under {rule} is illegal: {reason}")]
    IllegalReply { edge: MoveEdge, rule: String, reason: GraphError },
    #[error("strategy break under {rule}: {detail}")]
    StrategyBreak { rule: String, detail: String },
    #[error("no valid pairing of the four degree-2 vertices")]
    NoValidPairing,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A deterministic player that answers the opponent's last move.
///
/// `respond` is called on the strategy's turn with the current position and
/// the opponent's previous edge (absent on an opening move). The returned
/// edge is assumed to be played.
pub trait Strategy: Clone {
    fn respond(&mut self, g: &GameGraph, opp: Option<MoveEdge>) -> Result<StrategyDecision, StrategyError>;

    /// Per-vertex marks describing the strategy's internal state, used to
    /// colour positions before canonicalization.
    fn marks(&self, n: usize) -> Vec<u32> {
        vec![0; n]
    }

    /// Extra state not attached to vertices.
    fn phase_code(&self) -> u32 {
        0
    }

    /// Invariants that must hold right after the strategy's own move.
    fn check(&self, _g: &GameGraph) -> Result<(), String> {
        Ok(())
    }
}

/// Checks legality of a decision before it is handed back.
pub(crate) fn legal(g: &GameGraph, d: StrategyDecision) -> Result<StrategyDecision, StrategyError> {
    match g.check_move(d.edge) {
        Ok(()) => Ok(d),
        Err(reason) => Err(StrategyError::IllegalReply { edge: d.edge, rule: d.rule, reason }),
    }
}
