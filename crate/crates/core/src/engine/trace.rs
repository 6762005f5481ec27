//! JSON-lines game traces: a header with the configuration, one record per
//! move, and a trailer with the terminal outcomes.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::graph::{MoveEdge, Vertex};
use crate::oracle::Objective;

use super::{EngineError, Game, GameConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRef {
    pub kind: String,
    pub at: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub i: usize,
    /// 1 for the first mover, 2 for the second.
    pub player: u8,
    pub edge: MoveEdge,
    pub rule: String,
    #[serde(rename = "F_C")]
    pub f_c: i64,
    #[serde(rename = "E_D")]
    pub e_d: i64,
    pub labels: Vec<String>,
    pub witness: Option<WitnessRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub moves: usize,
    pub terminal: bool,
    pub edges: Vec<[Vertex; 2]>,
    pub hamiltonian: bool,
    pub two_connected: bool,
    pub witness: Option<WitnessRef>,
    pub objective: Option<Objective>,
    pub objective_met: Option<bool>,
    /// Moves after which the strategy's own invariant failed.
    pub check_failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTrace {
    pub config: GameConfig,
    pub records: Vec<MoveRecord>,
    pub outcome: Outcome,
}

#[derive(Serialize, Deserialize)]
struct Header {
    config: GameConfig,
}

#[derive(Serialize, Deserialize)]
struct Trailer {
    terminal: Outcome,
}

impl GameTrace {
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        let header = Header { config: self.config.clone() };
        writeln!(w, "{}", serde_json::to_string(&header)?)?;
        for r in &self.records {
            writeln!(w, "{}", serde_json::to_string(r)?)?;
        }
        writeln!(w, "{}", serde_json::to_string(&Trailer { terminal: self.outcome.clone() })?)
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<GameTrace, EngineError> {
        let lines: Vec<(usize, String)> = r
            .lines()
            .enumerate()
            .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(|e| EngineError::Parse { line: i + 1, detail: e.to_string() }))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        if lines.len() < 2 {
            return Err(EngineError::Parse { line: lines.len() + 1, detail: "need a header and a trailer".into() });
        }
        fn parse<T: for<'de> Deserialize<'de>>(line: usize, s: &str) -> Result<T, EngineError> {
            serde_json::from_str(s).map_err(|e| EngineError::Parse { line, detail: e.to_string() })
        }
        let (hl, hs) = &lines[0];
        let header: Header = parse(*hl, hs)?;
        let (tl, ts) = lines.last().unwrap();
        let trailer: Trailer = parse(*tl, ts)?;
        let records = lines[1..lines.len() - 1]
            .iter()
            .map(|(l, s)| parse::<MoveRecord>(*l, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GameTrace { config: header.config, records, outcome: trailer.terminal })
    }

    pub fn parse_jsonl(s: &str) -> Result<GameTrace, EngineError> {
        GameTrace::read_jsonl(s.as_bytes())
    }
}

/// Re-plays `trace` from its configuration.
///
/// Opponent moves are taken from the records; strategy moves are recomputed
/// and must match exactly, as must every snapshot and the trailer.
pub fn replay(trace: &GameTrace) -> Result<GameTrace, EngineError> {
    let mut game = Game::new(trace.config.clone())?;
    let mismatch = |index: usize, detail: String| EngineError::ReplayMismatch { index, detail };
    for (idx, rec) in trace.records.iter().enumerate() {
        if rec.i != idx {
            return Err(mismatch(idx, format!("record numbered {}", rec.i)));
        }
        if game.is_over() {
            return Err(mismatch(idx, "move after the game ended".into()));
        }
        let got = if game.strategy_to_move() {
            game.play_strategy().map_err(|e| mismatch(idx, e.to_string()))?
        } else {
            game.play_opponent(rec.edge, &rec.rule).map_err(|e| mismatch(idx, e.to_string()))?
        };
        if got != rec {
            return Err(mismatch(idx, diff(got, rec)));
        }
    }
    let replayed = game.finish();
    if replayed.outcome != trace.outcome {
        return Err(mismatch(trace.records.len(), "terminal outcome differs".into()));
    }
    Ok(replayed)
}

fn diff(got: &MoveRecord, want: &MoveRecord) -> String {
    let mut parts = Vec::new();
    if got.player != want.player {
        parts.push(format!("player {} vs recorded {}", got.player, want.player));
    }
    if got.edge != want.edge || got.rule != want.rule {
        parts.push(format!("move {} ({}) vs recorded {} ({})", got.edge, got.rule, want.edge, want.rule));
    }
    if got.f_c != want.f_c || got.e_d != want.e_d {
        parts.push(format!("F_C/E_D {}/{} vs recorded {}/{}", got.f_c, got.e_d, want.f_c, want.e_d));
    }
    if got.labels != want.labels {
        parts.push(format!("labels {:?} vs recorded {:?}", got.labels, want.labels));
    }
    if got.witness != want.witness {
        parts.push(format!("witness {:?} vs recorded {:?}", got.witness, want.witness));
    }
    parts.join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_game, FirstMover, OpponentKind, Role};

    #[test]
    fn round_trip_and_replay() {
        let cfg = GameConfig::new(12, 3, Role::Avoider, FirstMover::Strategy, OpponentKind::Random { seed: 5 });
        let t = run_game(&cfg).unwrap();
        let text = t.to_jsonl();
        let back = GameTrace::parse_jsonl(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(replay(&back).unwrap(), t);
        let first = text.lines().nth(1).unwrap();
        assert!(first.starts_with(r#"{"i":0,"player":1,"edge":[0,1],"rule":"avoid-open","F_C":4,"E_D":0"#), "{first}");
    }

    #[test]
    fn tampered_snapshot_names_index() {
        let cfg = GameConfig::new(10, 4, Role::Builder, FirstMover::Opponent, OpponentKind::Random { seed: 2 });
        let mut t = run_game(&cfg).unwrap();
        t.records[3].f_c += 1;
        assert!(matches!(replay(&t), Err(EngineError::ReplayMismatch { index: 3, .. })));
    }

    #[test]
    fn illegal_move_names_index() {
        let cfg = GameConfig::new(10, 4, Role::Builder, FirstMover::Strategy, OpponentKind::Random { seed: 2 });
        let mut t = run_game(&cfg).unwrap();
        t.records[1].edge = t.records[0].edge;
        assert!(matches!(replay(&t), Err(EngineError::ReplayMismatch { index: 1, .. })));
    }
}
