//! Runs games between a strategy and an opponent and records them.

pub mod monitor;
pub mod opponent;
pub mod trace;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::avoider::AvoiderStrategy;
use crate::builder::BuilderStrategy;
use crate::classify::label_components;
use crate::graph::{component_view, has_witness, GameGraph, GraphError, GraphJson, MoveEdge, Vertex};
use crate::oracle::{hamilton_cycle, is_hamilton_cycle, is_two_connected, Objective};
use crate::strategy::{Strategy, StrategyDecision, StrategyError};

pub use monitor::{run_monitors, MonitorReport, Violation};
pub use opponent::{greedy_move, GreedyAim, Opponent, OpponentKind};
pub use trace::{replay, GameTrace, MoveRecord, Outcome, WitnessRef};

/// Default size from which the avoider's endgame is expected to appear.
pub const DEFAULT_N0: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("opponent played illegal edge {edge}: {reason}")]
    IllegalMoveByOpponent { edge: MoveEdge, reason: String },
    #[error("scripted opponent ran out of moves at script index {index}")]
    ScriptExhausted { index: usize },
    #[error("the interactive opponent must supply a move")]
    NeedsInput,
    #[error("the game is over")]
    GameOver,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("trace parse error on line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("replay mismatch at move {index}: {detail}")]
    ReplayMismatch { index: usize, detail: String },
}

/// Which side the scripted strategy plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Builder,
    Avoider,
    /// Both sides play the opponent's kind of move; no objective.
    None,
}

impl Role {
    pub fn objective(self) -> Option<Objective> {
        match self {
            Role::Builder => Some(Objective::ForceHamiltonian),
            Role::Avoider => Some(Objective::AvoidTwoConnected),
            Role::None => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FirstMover {
    Strategy,
    Opponent,
}

fn default_n0() -> usize {
    DEFAULT_N0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub n: usize,
    pub k: usize,
    pub role: Role,
    pub first: FirstMover,
    pub opponent: OpponentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_graph: Option<GraphJson>,
    #[serde(default = "default_n0")]
    pub n0: usize,
}

impl GameConfig {
    pub fn new(n: usize, k: usize, role: Role, first: FirstMover, opponent: OpponentKind) -> Self {
        GameConfig { n, k, role, first, opponent, initial_graph: None, n0: DEFAULT_N0 }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |s: String| Err(EngineError::InvalidConfig(s));
        if self.n == 0 || self.k == 0 {
            return bad(format!("need n >= 1 and k >= 1, got n = {} and k = {}", self.n, self.k));
        }
        match self.role {
            Role::Builder if self.k < 4 => {
                return bad(format!(
                    "the builder strategy needs k >= 4, got k = {} (at k = 3 the avoider wins on large boards)",
                    self.k
                ))
            }
            Role::Avoider if self.k != 3 => {
                return bad(format!(
                    "the avoider strategy plays k = 3, got k = {} (for k >= 4 the builder wins)",
                    self.k
                ))
            }
            _ => {}
        }
        if let Some(j) = &self.initial_graph {
            if j.n != self.n || j.k != self.k {
                return bad("initial graph does not match n and k".into());
            }
            if self.role == Role::Builder && !j.edges.is_empty() {
                return bad("the builder starts from the empty graph".into());
            }
        }
        Ok(())
    }

    pub fn initial(&self) -> Result<GameGraph, EngineError> {
        match &self.initial_graph {
            Some(j) => Ok(GameGraph::try_from(j.clone())?),
            None => Ok(GameGraph::new(self.n, self.k)),
        }
    }
}

/// Vertex whose component snapshots report on: the lowest built vertex of a
/// non-empty start, else the lower end of the first edge.
pub fn snapshot_root(initial: &GameGraph, first_edge: Option<MoveEdge>) -> Option<Vertex> {
    initial
        .vertices()
        .find(|&v| !initial.is_isolated(v))
        .or(first_edge.map(|e| e.u))
}

/// Per-position numbers recorded after each move.
pub fn snapshot(g: &GameGraph, root: Vertex) -> (i64, i64, Vec<String>, Option<WitnessRef>) {
    let view = component_view(g, root).expect("root in range");
    let labels = if g.k() == 3 {
        label_components(g, root).iter().map(|l| l.label.as_str().to_string()).collect()
    } else {
        Vec::new()
    };
    let witness = has_witness(g).map(|w| WitnessRef { kind: w.kind().to_string(), at: w.at() });
    (view.f_of_c(g), view.e_of_d(g), labels, witness)
}

#[derive(Clone, Debug)]
enum Player {
    Builder(BuilderStrategy),
    Avoider(AvoiderStrategy),
    Idle(ChaCha8Rng),
}

/// A game in progress. Drive it with [`Game::step`], or feed opponent moves
/// by hand with [`Game::play_opponent`].
#[derive(Clone, Debug)]
pub struct Game {
    config: GameConfig,
    initial: GameGraph,
    g: GameGraph,
    player: Player,
    opponent: Opponent,
    records: Vec<MoveRecord>,
    last_opp: Option<MoveEdge>,
    root: Option<Vertex>,
    check_failures: u64,
}

impl Game {
    pub fn new(config: GameConfig) -> Result<Game, EngineError> {
        config.validate()?;
        let initial = config.initial()?;
        let root = snapshot_root(&initial, None);
        let player = match config.role {
            Role::Builder => Player::Builder(BuilderStrategy::new()),
            Role::Avoider => Player::Avoider(match root {
                Some(r) => AvoiderStrategy::with_root(r),
                None => AvoiderStrategy::new(),
            }),
            Role::None => Player::Idle(ChaCha8Rng::seed_from_u64(config.opponent.seed() ^ 0x5eed_5eed)),
        };
        let aim = if config.role == Role::Builder { GreedyAim::Crowd } else { GreedyAim::Connect };
        let opponent = Opponent::new(config.opponent.clone(), config.role.objective(), aim);
        Ok(Game { g: initial.clone(), initial, player, opponent, records: Vec::new(), last_opp: None, root, check_failures: 0, config })
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn graph(&self) -> &GameGraph {
        &self.g
    }

    pub fn records(&self) -> &[MoveRecord] {
        &self.records
    }

    pub fn is_over(&self) -> bool {
        self.g.is_terminal()
    }

    pub fn strategy_to_move(&self) -> bool {
        (self.records.len() % 2 == 0) == (self.config.first == FirstMover::Strategy)
    }

    /// Player number (1 moves first) of the strategy side.
    pub fn strategy_player(&self) -> u8 {
        if self.config.first == FirstMover::Strategy {
            1
        } else {
            2
        }
    }

    /// Plays one move by whoever is on turn.
    pub fn step(&mut self) -> Result<&MoveRecord, EngineError> {
        if self.is_over() {
            return Err(EngineError::GameOver);
        }
        if self.strategy_to_move() {
            self.play_strategy()
        } else {
            let m = self.opponent.next_move(&self.g)?;
            let rule = self.opponent.kind.name();
            self.play_opponent(m, rule)
        }
    }

    pub fn play_strategy(&mut self) -> Result<&MoveRecord, EngineError> {
        if self.is_over() {
            return Err(EngineError::GameOver);
        }
        let opp = self.last_opp;
        let d = match &mut self.player {
            Player::Builder(s) => s.respond(&self.g, opp)?,
            Player::Avoider(s) => s.respond(&self.g, opp)?,
            Player::Idle(rng) => StrategyDecision { edge: *self.g.legal_moves().choose(rng).unwrap(), rule: "random".into() },
        };
        if let Err(reason) = self.g.check_move(d.edge) {
            return Err(StrategyError::IllegalReply { edge: d.edge, rule: d.rule, reason }.into());
        }
        self.g.add_edge(d.edge)?;
        let ok = match &self.player {
            Player::Builder(s) => s.check(&self.g),
            Player::Avoider(s) => s.check(&self.g),
            Player::Idle(_) => Ok(()),
        };
        if ok.is_err() {
            self.check_failures += 1;
        }
        self.last_opp = None;
        Ok(self.record(d.edge, d.rule, self.strategy_player()))
    }

    /// Plays `m` for the opponent, tagging it with `rule`.
    pub fn play_opponent(&mut self, m: MoveEdge, rule: &str) -> Result<&MoveRecord, EngineError> {
        if self.is_over() {
            return Err(EngineError::GameOver);
        }
        self.g
            .add_edge(m)
            .map_err(|e| EngineError::IllegalMoveByOpponent { edge: m, reason: e.to_string() })?;
        self.last_opp = Some(m);
        Ok(self.record(m, rule.to_string(), 3 - self.strategy_player()))
    }

    fn record(&mut self, edge: MoveEdge, rule: String, player: u8) -> &MoveRecord {
        let root = *self.root.get_or_insert(edge.u);
        let (f_c, e_d, labels, witness) = snapshot(&self.g, root);
        self.records.push(MoveRecord { i: self.records.len(), player, edge, rule, f_c, e_d, labels, witness });
        self.records.last().unwrap()
    }

    /// Terminal outcomes of the current position.
    pub fn outcome(&self) -> Outcome {
        let g = &self.g;
        let two_connected = is_two_connected(g);
        let path_cycle = match &self.player {
            Player::Builder(BuilderStrategy { state: Some(s) }) => Some(s.oriented()),
            _ => None,
        };
        let hamiltonian = two_connected
            && (path_cycle.is_some_and(|c| is_hamilton_cycle(g, &c)) || hamilton_cycle(g).is_some());
        let objective = self.config.role.objective();
        let objective_met = objective.map(|o| match o {
            Objective::ForceHamiltonian => hamiltonian,
            Objective::AvoidHamiltonian => !hamiltonian,
            Objective::AvoidTwoConnected => !two_connected,
        });
        Outcome {
            moves: self.records.len(),
            terminal: g.is_terminal(),
            edges: g.to_json().edges,
            hamiltonian,
            two_connected,
            witness: has_witness(g).map(|w| WitnessRef { kind: w.kind().to_string(), at: w.at() }),
            objective,
            objective_met,
            check_failures: self.check_failures,
        }
    }

    pub fn finish(self) -> GameTrace {
        let outcome = self.outcome();
        GameTrace { config: self.config, records: self.records, outcome }
    }

    pub fn initial(&self) -> &GameGraph {
        &self.initial
    }
}

/// Plays a game to the end.
pub fn run_game(config: &GameConfig) -> Result<GameTrace, EngineError> {
    let mut game = Game::new(config.clone())?;
    while !game.is_over() {
        game.step()?;
    }
    Ok(game.finish())
}
