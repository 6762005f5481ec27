use std::io::{BufRead, Write};

use degree_game::classify::label_components;
use degree_game::engine::{FirstMover, Game, GameConfig, OpponentKind, Role};
use degree_game::{component_view, has_witness, GameGraph, GraphError, MoveEdge};

use crate::{CmdResult, Failure, HumanRole, PlayArgs, PlayFirst, EXIT_OK};

/// Reason shown when the human's edge is refused.
pub(crate) fn illegal_reason(e: &GraphError) -> String {
    match e {
        GraphError::SelfLoop(_) => "illegal: self-loop".into(),
        GraphError::DegreeCapExceeded { vertex, cap } => format!("illegal: degree cap (vertex {vertex} already has degree {cap})"),
        GraphError::DuplicateEdge(a, b) => format!("illegal: edge ({a}, {b}) already present"),
        GraphError::OutOfRange { vertex, n } => format!("illegal: vertex {vertex} out of range for n = {n}"),
        other => format!("illegal: {other}"),
    }
}

fn parse_edge(line: &str) -> Option<MoveEdge> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Some(MoveEdge { u: a.min(b), v: a.max(b) }),
        _ => None,
    }
}

fn show(g: &GameGraph, root: Option<usize>, out: &mut dyn Write) -> std::io::Result<()> {
    let edges: Vec<String> = g.edges().iter().map(|e| format!("{}-{}", e.u, e.v)).collect();
    writeln!(out, "edges: {}", if edges.is_empty() { "(none)".into() } else { edges.join(" ") })?;
    let degrees: Vec<String> = g.vertices().map(|v| format!("{v}:{}", g.degree(v))).collect();
    writeln!(out, "degrees: {}", degrees.join(" "))?;
    if let Some(r) = root {
        let view = component_view(g, r).expect("root in range");
        let mut line = format!("F(C)={} E(D)={}", view.f_of_c(g), view.e_of_d(g));
        if g.k() == 3 {
            let labels: Vec<&str> = label_components(g, r).iter().map(|l| l.label.as_str()).collect();
            line.push_str(&format!("  C: {}", labels[0]));
            if labels.len() > 1 {
                line.push_str(&format!("  D: {}", labels[1..].join(", ")));
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub(crate) fn play(a: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> CmdResult {
    let engine_role = match a.human {
        HumanRole::Builder => Role::Avoider,
        HumanRole::Avoider => Role::Builder,
    };
    let k = a.k.unwrap_or(if engine_role == Role::Avoider { 3 } else { 4 });
    let first = match a.first {
        PlayFirst::Engine => FirstMover::Strategy,
        PlayFirst::Human => FirstMover::Opponent,
    };
    let cfg = GameConfig::new(a.n, k, engine_role, first, OpponentKind::Interactive);
    let mut game = Game::new(cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "n = {}, k = {}; you play {:?}, the engine plays {:?}", a.n, k, a.human, engine_role)?;
    writeln!(out, "enter an edge as `u v`; `show` prints the position, `quit` ends the session")?;
    let mut announced = false;
    let mut line = String::new();
    while !game.is_over() {
        if game.strategy_to_move() {
            let r = game.play_strategy().map_err(|e| Failure::Failed(e.to_string()))?.clone();
            if a.quiet {
                writeln!(out, "engine: {} {}", r.edge.u, r.edge.v)?;
            } else {
                writeln!(out, "engine: {} {}  [{}]", r.edge.u, r.edge.v, r.rule)?;
            }
        } else {
            show(game.graph(), game.records().first().map(|_| root_of(&game)), out)?;
            write!(out, "your move> ")?;
            out.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 {
                writeln!(out, "\nsession ended")?;
                return Ok(EXIT_OK);
            }
            let cmd = line.trim();
            match cmd {
                "" => continue,
                "quit" | "exit" => {
                    writeln!(out, "session ended")?;
                    return Ok(EXIT_OK);
                }
                "show" => continue,
                _ => {}
            }
            let Some(m) = parse_edge(cmd) else {
                writeln!(out, "expected two vertex numbers `u v`")?;
                continue;
            };
            if let Err(e) = game.graph().check_move(m) {
                writeln!(out, "{}", illegal_reason(&e))?;
                continue;
            }
            game.play_opponent(m, "human").map_err(|e| Failure::Failed(e.to_string()))?;
        }
        if !announced {
            if let Some(w) = has_witness(game.graph()) {
                writeln!(out, "witness: {w}")?;
                announced = true;
            }
        }
    }
    let g = game.graph();
    show(g, Some(root_of(&game)), out)?;
    let o = game.outcome();
    writeln!(out, "game over after {} moves", o.moves)?;
    writeln!(out, "hamiltonian: {}", o.hamiltonian)?;
    writeln!(out, "not 2-connected: {}", !o.two_connected)?;
    match has_witness(g) {
        Some(w) => writeln!(out, "witness: {w}")?,
        None => writeln!(out, "witness: none")?,
    }
    Ok(EXIT_OK)
}

/// Same root the trace snapshots use.
fn root_of(game: &Game) -> usize {
    degree_game::engine::snapshot_root(game.initial(), game.records().first().map(|r| r.edge)).unwrap_or(0)
}
