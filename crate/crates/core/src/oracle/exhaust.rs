//! Plays a strategy against every opponent line.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{GameGraph, GraphJson, MoveEdge};
use crate::strategy::Strategy;

use super::canon::canonical_key;
use super::{Objective, OracleError};

/// How opponent nodes are merged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pruning {
    /// Isomorphism classes of the position coloured by the strategy's marks.
    #[default]
    Canonical,
    /// Identical labelled positions and strategy marks.
    Exact,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustOptions {
    pub pruning: Pruning,
    /// Stop a line once its outcome is fixed by a Hamilton cycle or a witness.
    pub early_stop: bool,
    pub max_nodes: Option<u64>,
    /// Failing lines kept verbatim in the report.
    pub keep_failures: usize,
}

impl Default for ExhaustOptions {
    fn default() -> Self {
        ExhaustOptions { pruning: Pruning::Canonical, early_stop: false, max_nodes: None, keep_failures: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalClass {
    pub graph: GraphJson,
    pub objective_held: bool,
    pub hits: u64,
}

/// A strategy error together with the moves that led to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub line: Vec<MoveEdge>,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustReport {
    pub lines: u64,
    pub nodes: u64,
    pub pruned: u64,
    pub terminal_classes: Vec<TerminalClass>,
    /// Failing terminal lines actually walked; subtrees merged by pruning
    /// are not counted again.
    pub failure_count: u64,
    pub failures: Vec<Vec<MoveEdge>>,
    pub error_count: u64,
    pub errors: Vec<LineError>,
    pub universal_success: bool,
}

/// Explores every opponent reply to `strategy`, which pursues `objective`.
///
/// Each line starts from `g0`; when `strategy_first` is set the strategy
/// moves with no previous opponent edge. A line succeeds when its terminal
/// graph satisfies the objective and the strategy neither errors, plays an
/// illegal edge, nor fails its own `check`.
pub fn exhaust_adversary<S: Strategy>(
    strategy: S,
    objective: Objective,
    strategy_first: bool,
    g0: &GameGraph,
    opts: &ExhaustOptions,
) -> Result<ExhaustReport, OracleError> {
    let mut run = Run {
        objective,
        opts,
        memo: HashMap::new(),
        classes: HashMap::new(),
        report: ExhaustReport::default(),
        line: Vec::new(),
    };
    let ok = if strategy_first {
        run.strategy_turn(g0.clone(), strategy, None)?
    } else {
        run.opponent_turn(g0, strategy)?
    };
    let mut classes: Vec<_> = run.classes.into_values().collect();
    classes.sort_by(|a, b| a.graph.edges.cmp(&b.graph.edges));
    let mut report = run.report;
    report.terminal_classes = classes;
    report.universal_success = ok && report.error_count == 0 && report.failure_count == 0;
    Ok(report)
}

struct Run<'a> {
    objective: Objective,
    opts: &'a ExhaustOptions,
    memo: HashMap<Vec<u8>, bool>,
    classes: HashMap<Vec<u8>, TerminalClass>,
    report: ExhaustReport,
    line: Vec<MoveEdge>,
}

impl Run<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.report.nodes += 1;
        match self.opts.max_nodes {
            Some(cap) if self.report.nodes > cap => Err(OracleError::Budget(cap)),
            _ => Ok(()),
        }
    }

    /// Returns `Some(outcome)` when the line ends at `g`.
    fn finished(&mut self, g: &GameGraph) -> Option<bool> {
        let held = if g.is_terminal() {
            self.objective.holds_on_terminal(g)
        } else if self.opts.early_stop {
            self.objective.decided_early(g)?
        } else {
            return None;
        };
        self.report.lines += 1;
        let key = canonical_key(g, &vec![0; g.n()]);
        self.classes
            .entry(key)
            .or_insert_with(|| TerminalClass { graph: g.to_json(), objective_held: held, hits: 0 })
            .hits += 1;
        if !held {
            self.fail();
        }
        Some(held)
    }

    fn fail(&mut self) {
        self.report.failure_count += 1;
        if self.report.failures.len() < self.opts.keep_failures {
            self.report.failures.push(self.line.clone());
        }
    }

    fn error(&mut self, error: String) -> bool {
        self.report.lines += 1;
        self.report.error_count += 1;
        if self.report.errors.len() < self.opts.keep_failures.max(1) {
            self.report.errors.push(LineError { line: self.line.clone(), error });
        }
        false
    }

    fn strategy_turn<S: Strategy>(&mut self, mut g: GameGraph, mut s: S, opp: Option<MoveEdge>) -> Result<bool, OracleError> {
        self.tick()?;
        if let Some(held) = self.finished(&g) {
            return Ok(held);
        }
        let d = match s.respond(&g, opp) {
            Ok(d) => d,
            Err(e) => return Ok(self.error(e.to_string())),
        };
        if let Err(e) = g.add_edge(d.edge) {
            return Ok(self.error(format!("illegal move {} under {}: {e}", d.edge, d.rule)));
        }
        self.line.push(d.edge);
        let result = match s.check(&g) {
            Err(e) => Ok(self.error(format!("after {} under {}: {e}", d.edge, d.rule))),
            Ok(()) => self.opponent_turn(&g, s),
        };
        self.line.pop();
        result
    }

    fn opponent_turn<S: Strategy>(&mut self, g: &GameGraph, s: S) -> Result<bool, OracleError> {
        self.tick()?;
        if let Some(held) = self.finished(g) {
            return Ok(held);
        }
        let key = self.key(g, &s);
        if let Some(k) = &key {
            if let Some(&v) = self.memo.get(k) {
                self.report.pruned += 1;
                return Ok(v);
            }
        }
        let mut all = true;
        for m in g.legal_moves() {
            let child = g.with_edge(m).expect("legal move");
            self.line.push(m);
            let ok = self.strategy_turn(child, s.clone(), Some(m))?;
            self.line.pop();
            all &= ok;
        }
        if let Some(k) = key {
            self.memo.insert(k, all);
        }
        Ok(all)
    }

    fn key<S: Strategy>(&self, g: &GameGraph, s: &S) -> Option<Vec<u8>> {
        let marks = s.marks(g.n());
        let mut key = match self.opts.pruning {
            Pruning::None => return None,
            Pruning::Canonical => canonical_key(g, &marks),
            Pruning::Exact => {
                let mut k: Vec<u8> = g.edges().iter().flat_map(|e| [e.u as u8, e.v as u8]).collect();
                k.push(0xff);
                k.extend(marks.iter().flat_map(|m| m.to_be_bytes()));
                k
            }
        };
        key.extend(s.phase_code().to_be_bytes());
        Some(key)
    }
}
