use std::fs;
use std::io::Write;
use std::path::Path;

use degree_game::classify::{classify_component, classify_graph_type_a, Label};
use degree_game::engine::{replay, run_monitors, GameTrace, Role};
use degree_game::oracle::{exhaust_adversary, solve as solve_position, ExhaustOptions, ExhaustReport, Objective, OracleError, DEFAULT_CANON_BOUND};
use degree_game::{AvoiderStrategy, BuilderStrategy, GameGraph};
use serde_json::json;

use crate::{CheckTraceArgs, ClassifyArgs, CmdResult, ExhaustArgs, Failure, SolveArgs, EXIT_FAIL, EXIT_OK};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<GameGraph, Failure> {
    GameGraph::parse_any(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub(crate) fn exhaust(a: &ExhaustArgs, out: &mut dyn Write) -> CmdResult {
    let role = Role::from(a.role);
    match role {
        Role::Builder if a.k < 4 => return Err(Failure::Usage("the builder strategy needs k >= 4".into())),
        Role::Avoider if a.k != 3 => return Err(Failure::Usage("the avoider strategy plays k = 3".into())),
        Role::None => return Err(Failure::Usage("exhaust needs --role builder or --role avoider".into())),
        _ => {}
    }
    if a.n > DEFAULT_CANON_BOUND {
        return Err(Failure::Usage(OracleError::TooLarge { n: a.n, bound: DEFAULT_CANON_BOUND }.to_string()));
    }
    let opts = ExhaustOptions { pruning: a.pruning.into(), early_stop: a.early_stop, max_nodes: a.max_nodes, ..Default::default() };
    let g = GameGraph::new(a.n, a.k);
    let first = a.first == crate::FirstArg::Strategy;
    let objective = role.objective().expect("strategy role");
    let report = match role {
        Role::Builder => exhaust_adversary(BuilderStrategy::new(), objective, first, &g, &opts),
        _ => exhaust_adversary(AvoiderStrategy::new(), objective, first, &g, &opts),
    };
    let report: ExhaustReport = match report {
        Ok(r) => r,
        Err(e @ OracleError::Budget(_)) => return Err(Failure::Failed(format!("{e}; no verdict"))),
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    let label = if objective == Objective::ForceHamiltonian { "hamiltonian" } else { "not 2-connected" };
    if a.json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["objective"] = json!(label);
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "lines explored: {}", report.lines)?;
        writeln!(out, "nodes: {}", report.nodes)?;
        writeln!(out, "isomorphism-pruned nodes: {}", report.pruned)?;
        writeln!(out, "terminal classes: {}", report.terminal_classes.len())?;
        writeln!(out, "{label} on every line: {}", if report.universal_success { "yes" } else { "no" })?;
        writeln!(out, "failing lines: {}  strategy errors: {}", report.failure_count, report.error_count)?;
        for line in report.failures.iter().take(3) {
            let moves: Vec<String> = line.iter().map(|m| m.to_string()).collect();
            writeln!(out, "  failing line: {}", moves.join(" "))?;
        }
        for e in report.errors.iter().take(3) {
            writeln!(out, "  error: {}", e.error)?;
        }
        if role == Role::Avoider && a.n < a.n0 {
            writeln!(out, "note: n = {} is below n0 = {}; the avoider is only guaranteed on large boards", a.n, a.n0)?;
        }
    }
    Ok(if report.universal_success { EXIT_OK } else { EXIT_FAIL })
}

fn solve_graph(a: &SolveArgs) -> Result<GameGraph, Failure> {
    match (&a.graph, a.n, a.k) {
        (Some(p), _, _) => {
            let g = read_graph(p)?;
            if a.n.is_some_and(|n| n != g.n()) || a.k.is_some_and(|k| k != g.k()) {
                return Err(Failure::Usage("--n/--k disagree with the graph file".into()));
            }
            Ok(g)
        }
        (None, Some(n), Some(k)) if n >= 1 && k >= 1 => Ok(GameGraph::new(n, k)),
        _ => Err(Failure::Usage("give --n and --k (both at least 1), or --graph".into())),
    }
}

pub(crate) fn solve(a: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let g = solve_graph(a)?;
    let r = solve_position(&g, a.side.into(), a.objective.into()).map_err(|e| Failure::Usage(e.to_string()))?;
    let v = json!({
        "k": g.k(),
        "n": g.n(),
        "side": r.side,
        "objective": r.objective,
        "mover_wins": r.mover_wins,
        "principal_move": r.principal_move,
        "nodes": r.nodes_expanded,
    });
    writeln!(out, "{v}")?;
    Ok(EXIT_OK)
}

pub(crate) fn classify(a: &ClassifyArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.graph)?;
    if g.k() != 3 {
        return Err(Failure::Usage(format!("the component types are defined for k = 3, got k = {}", g.k())));
    }
    let (label, evidence) = match a.root {
        Some(r) if r >= g.n() => return Err(Failure::Usage(format!("root {r} out of range"))),
        Some(r) => {
            let l = classify_component(&g, &g.component_of(r)).map_err(|e| Failure::Failed(e.to_string()))?;
            (l.label, l.evidence)
        }
        None => match classify_graph_type_a(&g) {
            Some(ev) => {
                let mut e = vec![ev.edge.0, ev.edge.1];
                e.extend(ev.pairs.iter().flat_map(|&(p, q)| [p, q]));
                (Label::TypeA, e)
            }
            None => match g.vertices().find(|&v| !g.is_isolated(v)) {
                Some(v) => {
                    let l = classify_component(&g, &g.component_of(v)).map_err(|e| Failure::Failed(e.to_string()))?;
                    (l.label, l.evidence)
                }
                None => (Label::Other, Vec::new()),
            },
        },
    };
    writeln!(out, "{}", json!({"label": label, "evidence": evidence}))?;
    Ok(EXIT_OK)
}

pub(crate) fn check_trace(a: &CheckTraceArgs, out: &mut dyn Write) -> CmdResult {
    let text = read(&a.trace)?;
    let trace = GameTrace::parse_jsonl(&text).map_err(|e| Failure::Failed(e.to_string()))?;
    let replay_result = replay(&trace);
    let monitors = run_monitors(&trace).map_err(|e| Failure::Failed(e.to_string()))?;
    let ok = replay_result.is_ok() && monitors.iter().all(|m| m.passed());
    if a.json {
        let v = json!({
            "moves": trace.records.len(),
            "replay": replay_result.as_ref().err().map(|e| e.to_string()),
            "monitors": monitors,
            "success": ok,
        });
        writeln!(out, "{v}")?;
    } else {
        match &replay_result {
            Ok(_) => writeln!(out, "replay: ok ({} moves)", trace.records.len())?,
            Err(e) => writeln!(out, "replay: FAIL: {e}")?,
        }
        for m in &monitors {
            if m.passed() {
                writeln!(out, "monitor {}: pass ({} checked)", m.name, m.checked)?;
            } else {
                writeln!(out, "monitor {}: FAIL ({} violations)", m.name, m.violations.len())?;
                for v in m.violations.iter().take(5) {
                    writeln!(out, "  move {}: {}", v.index, v.detail)?;
                }
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}
