//! Engine, strategies, and exact oracles for the degree-capped graph game.
//!
//! Two players alternately add edges to a fixed pool of `n` vertices, never
//! letting a vertex exceed degree `k`. The game ends when no legal edge is
//! left. For `k >= 4` the [`builder`] forces a Hamiltonian final graph; for
//! `k = 3` the [`avoider`] forces a final graph that is not 2-connected.

pub mod avoider;
pub mod builder;
pub mod classify;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod strategy;

pub use avoider::{avoider_respond, pair_four_degree2, AvoiderPlan, AvoiderStrategy, Phase};
pub use builder::{builder_close, builder_open, builder_respond, BuilderStrategy, HamPathState};
pub use engine::{run_game, FirstMover, Game, GameConfig, GameTrace, OpponentKind, Role};
pub use graph::{component_view, freedom, has_witness, ComponentView, FreedomStats, GameGraph, GraphError, MoveEdge, Vertex, Witness};
pub use strategy::{Strategy, StrategyDecision, StrategyError};
