//! Checks on recorded avoider games.
//!
//! * `freedom-budget`: after an avoider edge inside `C` and the reply,
//!   `F(C) + E(D)` never grows, and stays level exactly when the reply
//!   joined two isolated vertices.
//! * `type-h-descent`: before any witness, `E(D)` falls between type-H
//!   positions, and for `n >= n0` the game reaches the endgame.
//! * `no-type-y`: until the endgame starts, no avoider edge leaves `C` of
//!   type Y.
//!
//! The endgame starts at the first record meeting the trichotomy: `C` of
//! type H with `E(D) = 0`, a 3-regular component, or a witness.

use serde::{Deserialize, Serialize};

use crate::graph::{component_view, GameGraph};

use super::{snapshot_root, EngineError, GameTrace, MoveRecord, Role};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub name: String,
    /// Positions or move pairs actually examined.
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl MonitorReport {
    fn new(name: &str) -> Self {
        MonitorReport { name: name.into(), checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn flag(&mut self, index: usize, detail: String) {
        self.violations.push(Violation { index, detail });
    }
}

/// All monitors; empty for games without an avoider.
pub fn run_monitors(trace: &GameTrace) -> Result<Vec<MonitorReport>, EngineError> {
    if trace.config.role != Role::Avoider || trace.config.k != 3 {
        return Ok(Vec::new());
    }
    Ok(vec![freedom_budget(trace)?, type_h_descent(trace), no_type_y(trace)])
}

fn avoider_player(trace: &GameTrace) -> u8 {
    match trace.config.first {
        super::FirstMover::Strategy => 1,
        super::FirstMover::Opponent => 2,
    }
}

/// Position before record 0, then after each record.
fn positions(trace: &GameTrace) -> Result<Vec<GameGraph>, EngineError> {
    let mut g = trace.config.initial()?;
    let mut out = vec![g.clone()];
    for r in &trace.records {
        g.add_edge(r.edge)
            .map_err(|e| EngineError::ReplayMismatch { index: r.i, detail: e.to_string() })?;
        out.push(g.clone());
    }
    Ok(out)
}

/// Uses the recorded `F_C` and `E_D`; the graphs rebuilt from the edges only
/// decide which steps are gated and whether a reply joined isolated vertices.
pub fn freedom_budget(trace: &GameTrace) -> Result<MonitorReport, EngineError> {
    let mut rep = MonitorReport::new("freedom-budget");
    let pos = positions(trace)?;
    let Some(root) = snapshot_root(&pos[0], trace.records.first().map(|r| r.edge)) else {
        return Ok(rep);
    };
    let recorded = |i: usize| -> i64 {
        if i == 0 {
            let v = component_view(&pos[0], root).expect("root in range");
            v.f_of_c(&pos[0]) + v.e_of_d(&pos[0])
        } else {
            trace.records[i - 1].f_c + trace.records[i - 1].e_d
        }
    };
    let me = avoider_player(trace);
    for (i, r) in trace.records.iter().enumerate() {
        if r.player != me || i + 1 >= trace.records.len() {
            continue;
        }
        let before = &pos[i];
        let c = before.component_of(root);
        if before.is_isolated(root) || !c.contains(&r.edge.u) || !c.contains(&r.edge.v) {
            continue;
        }
        rep.checked += 1;
        let reply = trace.records[i + 1].edge;
        let iso_iso = pos[i + 1].is_isolated(reply.u) && pos[i + 1].is_isolated(reply.v);
        let (s0, s2) = (recorded(i), recorded(i + 2));
        if s2 > s0 || (s2 == s0) != iso_iso {
            rep.flag(i + 1, format!("F(C)+E(D) went {s0} -> {s2} around reply {reply} (iso-iso: {iso_iso})"));
        }
    }
    Ok(rep)
}

pub fn type_h_descent(trace: &GameTrace) -> MonitorReport {
    let mut rep = MonitorReport::new("type-h-descent");
    let prefix: Vec<_> = trace.records.iter().take_while(|r| r.witness.is_none()).collect();
    let h: Vec<(usize, i64)> = prefix
        .iter()
        .filter(|r| r.labels.first().map(String::as_str) == Some("type-H"))
        .map(|r| (r.i, r.e_d))
        .collect();
    let next_after = |from: usize| h.iter().copied().find(|&(j, _)| j > from + 1);
    for &(a, y) in &h {
        rep.checked += 1;
        let Some((b, yb)) = next_after(a) else { continue };
        if yb > y {
            rep.flag(b, format!("type H at {a} with E(D)={y}, next at {b} has E(D)={yb}"));
        } else if yb == y {
            if let Some((c, yc)) = next_after(b) {
                if yc >= y {
                    rep.flag(c, format!("E(D)={y} at type-H moves {a} and {b}, still {yc} at {c}"));
                }
            }
        }
    }
    if trace.config.n >= trace.config.n0 {
        rep.checked += 1;
        if !trace.records.iter().any(endgame) {
            rep.flag(trace.records.len(), "no type-H position with E(D)=0 and no witness".into());
        }
    }
    rep
}

/// Whether the position after `r` meets the trichotomy.
pub fn endgame(r: &MoveRecord) -> bool {
    r.witness.is_some()
        || r.labels.iter().any(|l| l == "3-regular")
        || (r.labels.first().map(String::as_str) == Some("type-H") && r.e_d == 0)
}

pub fn no_type_y(trace: &GameTrace) -> MonitorReport {
    let mut rep = MonitorReport::new("no-type-y");
    let me = avoider_player(trace);
    for r in &trace.records {
        if r.player == me {
            rep.checked += 1;
            if r.labels.first().map(String::as_str) == Some("type-Y") {
                rep.flag(r.i, format!("{} under {} left C of type Y", r.edge, r.rule));
            }
        }
        if endgame(r) {
            break;
        }
    }
    rep
}
